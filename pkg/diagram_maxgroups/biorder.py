"""Quadrados de idempotentes, diamantes ligados e rótulos de permutação."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import itertools
import logging
from typing import Iterable, Sequence

from sympy.combinatorics import Permutation
from tqdm import tqdm

from . import diagram as dg
from .diagram import Partition
from .green import DClassData, DClassError
from .monoids import MonoidHandle

logger = logging.getLogger(__name__)

ORIENTATIONS = ("LR", "RL", "UD", "DU")
HORIZONTAL = "h"
VERTICAL = "v"


class LabelError(ValueError):
    pass


@dataclass(frozen=True)
class Square:
    e: object
    f: object
    g: object
    h: object

    @property
    def corners(self) -> tuple:
        return self.e, self.f, self.g, self.h

    @property
    def is_degenerate(self) -> bool:
        return self.e == self.f or self.e == self.g


@dataclass(frozen=True)
class SingularWitness:
    square: Square
    orientation: str
    u: object

    @property
    def orientation_class(self) -> str:
        return HORIZONTAL if self.orientation in ("LR", "RL") else VERTICAL


@dataclass(frozen=True)
class LinkedDiamond:
    """(s,u;v,w) por índices de P_D, com uma projeção p testemunha e o total de testemunhas."""

    s: int
    u: int
    v: int
    w: int
    p: object
    witnesses: int = 1

    @property
    def is_degenerate(self) -> bool:
        return (
            self.s == self.u
            or self.v == self.w
            or (self.s == self.v and self.u == self.w)
        )

    @property
    def is_triangle(self) -> bool:
        return self.s == self.v


def _mul(h: MonoidHandle, *xs):
    out = xs[0]
    for x in xs[1:]:
        out = h.product(out, x)
    return out


def natural_order_leq(h: MonoidHandle, e, f) -> bool:
    return h.product(e, f) == e and h.product(f, e) == e


def basic_pairs(h: MonoidHandle, idempotents: Sequence | None = None) -> tuple[tuple, ...]:
    """Pares (e,f) com {ef, fe} ∩ {e, f} não vazio."""
    es = h.idempotents() if idempotents is None else idempotents
    out = []
    for e in es:
        for f in es:
            ef, fe = h.product(e, f), h.product(f, e)
            if ef in (e, f) or fe in (e, f):
                out.append((e, f))
    return tuple(out)


def square_from_corners(d: DClassData, e, f, g, h) -> Square:
    for x in (e, f, g, h):
        if x not in d.idempotent_index:
            raise DClassError(f"Não é idempotente da classe D: {d.format(x)}")
    if not (
        d.r_index(e) == d.r_index(f)
        and d.r_index(g) == d.r_index(h)
        and d.l_index(e) == d.l_index(g)
        and d.l_index(f) == d.l_index(h)
    ):
        raise DClassError("Os cantos não formam um quadrado (e R f, g R h, e L g, f L h)")
    return Square(e, f, g, h)


def is_lr_singular(h: MonoidHandle, sq: Square, u) -> bool:
    e, f, g, hh = sq.corners
    return (
        h.product(u, e) == e
        and h.product(u, g) == g
        and h.product(e, u) == f
        and h.product(g, u) == hh
    )


def is_rl_singular(h: MonoidHandle, sq: Square, u) -> bool:
    return is_lr_singular(h, Square(sq.f, sq.e, sq.h, sq.g), u)


def is_ud_singular(h: MonoidHandle, sq: Square, u) -> bool:
    e, f, g, hh = sq.corners
    return (
        h.product(e, u) == e
        and h.product(f, u) == f
        and h.product(u, e) == g
        and h.product(u, f) == hh
    )


def is_du_singular(h: MonoidHandle, sq: Square, u) -> bool:
    return is_ud_singular(h, Square(sq.g, sq.h, sq.e, sq.f), u)


_CHECKS = {
    "LR": is_lr_singular,
    "RL": is_rl_singular,
    "UD": is_ud_singular,
    "DU": is_du_singular,
}

# cantos que ficam abaixo de u na ordem natural, por orientação
_BELOW_U = {
    "LR": lambda sq: (sq.f, sq.h),
    "RL": lambda sq: (sq.e, sq.g),
    "UD": lambda sq: (sq.g, sq.h),
    "DU": lambda sq: (sq.e, sq.f),
}


def _nt_order(h: MonoidHandle, es: Iterable) -> list:
    return sorted(es, key=lambda u: sum(h.nt_stats(u)))


def find_singularizers(h: MonoidHandle, sq: Square) -> list[SingularWitness]:
    out = []
    for u in _nt_order(h, h.idempotents()):
        for orientation in ORIENTATIONS:
            below = _BELOW_U[orientation](sq)
            if not all(natural_order_leq(h, x, u) for x in below):
                continue
            if _CHECKS[orientation](h, sq, u):
                out.append(SingularWitness(sq, orientation, u))
    return out


def square_key(d: DClassData, w: SingularWitness) -> tuple:
    sq = w.square
    rows = tuple(sorted({d.r_index(sq.e), d.r_index(sq.g)}))
    cols = tuple(sorted({d.l_index(sq.e), d.l_index(sq.f)}))
    return (w.orientation_class, rows, cols)


def _lr_from(d: DClassData, u) -> list[SingularWitness]:
    h = d.handle
    stable = [i for i, p in enumerate(d.projections) if h.product(u, p) == p]
    if len(stable) < 2:
        return []
    out = []
    for q_i, q in enumerate(d.projections):
        x = h.product(q, u)
        if h.d_key(x) != d.rank:
            continue
        q_j = d.l_index(x)
        if q_j == q_i:
            continue
        rows = [i for i in stable if (i, q_i) in d.friendly and (i, q_j) in d.friendly]
        for a, b in itertools.combinations(rows, 2):
            sq = Square(
                d.idempotent_at(a, q_i), d.idempotent_at(a, q_j),
                d.idempotent_at(b, q_i), d.idempotent_at(b, q_j),
            )
            if is_lr_singular(h, sq, u):
                out.append(SingularWitness(sq, "LR", u))
    return out


def _ud_from(d: DClassData, u) -> list[SingularWitness]:
    h = d.handle
    stable = [j for j, q in enumerate(d.projections) if h.product(q, u) == q]
    if len(stable) < 2:
        return []
    out = []
    for p_i, p in enumerate(d.projections):
        x = h.product(u, p)
        if h.d_key(x) != d.rank:
            continue
        p_j = d.r_index(x)
        if p_j == p_i:
            continue
        cols = [j for j in stable if (p_i, j) in d.friendly and (p_j, j) in d.friendly]
        for a, b in itertools.combinations(cols, 2):
            sq = Square(
                d.idempotent_at(p_i, a), d.idempotent_at(p_i, b),
                d.idempotent_at(p_j, a), d.idempotent_at(p_j, b),
            )
            if is_ud_singular(h, sq, u):
                out.append(SingularWitness(sq, "UD", u))
    return out


def _scan_chunk(d: DClassData, chunk: Sequence) -> list[SingularWitness]:
    out: list[SingularWitness] = []
    for u in chunk:
        out.extend(_lr_from(d, u))
        out.extend(_ud_from(d, u))
    return out


def enumerate_singular_squares(
    d: DClassData, *, threads: int = 1, progress: bool = False
) -> tuple[SingularWitness, ...]:
    """Quadrados singulares não degenerados, um por (classe de orientação, linhas, colunas)."""
    if not d.is_star:
        return enumerate_singular_squares_brute(d, progress=progress)
    h = d.handle
    candidates = _nt_order(h, h.idempotents())
    found: dict[tuple, SingularWitness] = {}
    if threads > 1:
        size = max(1, len(candidates) // (4 * threads))
        chunks = [candidates[i : i + size] for i in range(0, len(candidates), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(tqdm(
                pool.map(lambda c: _scan_chunk(d, c), chunks),
                total=len(chunks), disable=not progress, desc="quadrados",
            ))
        # os blocos voltam na ordem de entrada, então a primeira testemunha continua a mesma
        for batch in results:
            for w in batch:
                found.setdefault(square_key(d, w), w)
    else:
        for u in tqdm(candidates, disable=not progress, desc="quadrados"):
            for w in _scan_chunk(d, [u]):
                found.setdefault(square_key(d, w), w)
    logger.debug("%s posto %d: %d quadrados singulares", h.label, d.rank, len(found))
    return tuple(found[k] for k in sorted(found))


def enumerate_singular_squares_brute(
    d: DClassData, *, progress: bool = False
) -> tuple[SingularWitness, ...]:
    """Busca exaustiva: todo retângulo de H-grupos, todo arranjo e todo u."""
    h = d.handle
    candidates = _nt_order(h, h.idempotents())
    found: dict[tuple, SingularWitness] = {}
    row_pairs = list(itertools.combinations(range(d.row_count), 2))
    for i1, i2 in tqdm(row_pairs, disable=not progress, desc="quadrados"):
        for j1, j2 in itertools.combinations(range(d.column_count), 2):
            cells = [d.idempotent_at(i, j) for i in (i1, i2) for j in (j1, j2)]
            if any(c is None for c in cells):
                continue
            for (top, bottom), (left, right) in itertools.product(
                ((i1, i2), (i2, i1)), ((j1, j2), (j2, j1))
            ):
                sq = Square(
                    d.idempotent_at(top, left), d.idempotent_at(top, right),
                    d.idempotent_at(bottom, left), d.idempotent_at(bottom, right),
                )
                for u in candidates:
                    for orientation, check in (("LR", is_lr_singular), ("UD", is_ud_singular)):
                        w = SingularWitness(sq, orientation, u)
                        key = square_key(d, w)
                        if key not in found and check(h, sq, u):
                            found[key] = w
    return tuple(found[k] for k in sorted(found))


def is_linked_pair(h: MonoidHandle, p, s, u) -> bool:
    """(s,u) p-ligado: s = spups e u = upspu."""
    return _mul(h, s, p, u, p, s) == s and _mul(h, u, p, s, p, u) == u


def _conjugates(d: DClassData, p) -> dict[int, int]:
    h = d.handle
    idx = d.projection_index
    out = {}
    for i, s in enumerate(d.projections):
        v = _mul(h, p, s, p)
        if v in idx:
            out[i] = idx[v]
    return out


def enumerate_linked_diamonds(
    d: DClassData, *, progress: bool = False
) -> tuple[LinkedDiamond, ...]:
    h = d.handle
    if not d.is_star:
        raise DClassError("Diamantes ligados exigem um semigrupo com involução")
    F = d.friendly
    first: dict[tuple[int, int, int, int], object] = {}
    counts: dict[tuple[int, int, int, int], int] = {}
    for p in tqdm(h.projections(), disable=not progress, desc="diamantes"):
        conj = _conjugates(d, p)
        for s, v in conj.items():
            if (s, v) not in F:
                continue
            for u, w in conj.items():
                if (s, w) in F and (u, v) in F and (u, w) in F:
                    key = (s, u, v, w)
                    first.setdefault(key, p)
                    counts[key] = counts.get(key, 0) + 1
    out = tuple(LinkedDiamond(*k, p=first[k], witnesses=counts[k]) for k in sorted(first))
    logger.debug("%s posto %d: %d diamantes ligados", h.label, d.rank, len(out))
    return out


def linked_triangles(diamonds: Iterable[LinkedDiamond]) -> tuple[LinkedDiamond, ...]:
    """Triângulos (s,u,w): diamantes com v = s."""
    return tuple(dm for dm in diamonds if dm.is_triangle)


def linked_pairs(diamonds: Iterable[LinkedDiamond]) -> frozenset[tuple[int, int]]:
    return frozenset((dm.s, dm.u) for dm in diamonds)


def linked_square(d: DClassData, dm: LinkedDiamond) -> Square:
    h = d.handle
    P = d.projections
    s, u, v, w = P[dm.s], P[dm.u], P[dm.v], P[dm.w]
    return Square(h.product(s, v), h.product(s, w), h.product(u, v), h.product(u, w))


def is_p_linked(d: DClassData, dm: LinkedDiamond) -> bool:
    h = d.handle
    P = d.projections
    pairs = ((dm.s, dm.v), (dm.s, dm.w), (dm.u, dm.v), (dm.u, dm.w))
    return (
        all(pair in d.friendly for pair in pairs)
        and _mul(h, dm.p, P[dm.s], dm.p) == P[dm.v]
        and _mul(h, dm.p, P[dm.u], dm.p) == P[dm.w]
    )


def all_singular_witnesses(d: DClassData, *, progress: bool = False) -> tuple[SingularWitness, ...]:
    """Todas as testemunhas LR e UD encontradas a partir de cada idempotente u, sem deduplicar."""
    if not d.is_star:
        raise DClassError("A busca construtiva exige um semigrupo com involução")
    h = d.handle
    out: list[SingularWitness] = []
    for u in tqdm(_nt_order(h, h.idempotents()), disable=not progress, desc="testemunhas"):
        out.extend(_scan_chunk(d, [u]))
    return tuple(out)


def linked_square_singularizations(
    d: DClassData, dm: LinkedDiamond
) -> tuple[SingularWitness, SingularWitness]:
    """(sv sw; v vw) e (uv uw; wv w), ambos UD-singularizados por p."""
    h = d.handle
    v, w = d.projections[dm.v], d.projections[dm.w]
    sq = linked_square(d, dm)
    top = Square(sq.e, sq.f, v, h.product(v, w))
    bottom = Square(sq.g, sq.h, h.product(w, v), w)
    return SingularWitness(top, "UD", dm.p), SingularWitness(bottom, "UD", dm.p)


def projection_singularizations(
    h: MonoidHandle, w: SingularWitness
) -> tuple[SingularWitness, SingularWitness]:
    """De um quadrado LR-singularizado por u = pq, com p = uu*: (e ep; g gp) e (f ep; h gp) por p."""
    if w.orientation != "LR":
        raise DClassError(f"Esperava orientação LR, recebido {w.orientation}")
    p = h.product(w.u, h.star(w.u))
    e, f, g, hh = w.square.corners
    ep, gp = h.product(e, p), h.product(g, p)
    return (
        SingularWitness(Square(e, ep, g, gp), "LR", p),
        SingularWitness(Square(f, ep, hh, gp), "LR", p),
    )


def diamonds_from_projection_square(
    d: DClassData, w: SingularWitness
) -> tuple[LinkedDiamond, LinkedDiamond]:
    """Quadrado (sv sw; uv uw) LR-singularizado por uma projeção p: diamantes (s,v;s,w) e (u,v;u,w)."""
    h = d.handle
    if w.orientation != "LR" or h.star(w.u) != w.u:
        raise DClassError("Exige um quadrado LR-singularizado por uma projeção")
    e, f, g, _ = w.square.corners
    idx = d.projection_index
    s = idx[h.product(e, h.star(e))]
    u = idx[h.product(g, h.star(g))]
    v = idx[h.product(h.star(e), e)]
    x = idx[h.product(h.star(f), f)]
    return LinkedDiamond(s, v, s, x, w.u), LinkedDiamond(u, v, u, x, w.u)


def is_nt_reducing(h: MonoidHandle, sq: Square) -> bool:
    """Base no canto inferior direito: NTu(e2) < NTu(e) e NTd(e3) < NTd(e)."""
    if sq.is_degenerate:
        return False
    ntu_e, ntd_e = h.nt_stats(sq.h)
    return h.nt_stats(sq.f)[0] < ntu_e and h.nt_stats(sq.g)[1] < ntd_e


def ehresmann_square(e: Partition) -> SingularWitness:
    """(R(e)eD(e) R(e)e; eD(e) e), RL-singularizado por D(e)."""
    d_e, r_e = dg.d_projection(e), dg.r_projection(e)
    re = dg.multiply(r_e, e)
    sq = Square(dg.multiply(re, d_e), re, dg.multiply(e, d_e), e)
    return SingularWitness(sq, "RL", d_e)


def kernel_merge_square(e: Partition) -> SingularWitness | None:
    """Quadrado (fD(e) f; eD(e) e) com f obtido fundindo um bloco superior a uma transversal."""
    if dg.equivalence_leq(dg.ker(e), dg.coker(e)):
        return None
    parts = dg.blocks(e)
    uppers = [k for k, (up, low) in enumerate(parts) if up and not low]
    trans = [k for k, (up, low) in enumerate(parts) if up and low]
    if not uppers or not trans:
        return None
    a = uppers[0]
    component = dg.join_equivalences(dg.ker(e), dg.coker(e))
    home = component[min(parts[a][0]) - 1]
    same = [k for k in trans if component[min(parts[k][0]) - 1] == home]
    b = (same or trans)[0]
    merged = [
        list(up) + [-i for i in low]
        for k, (up, low) in enumerate(parts)
        if k not in (a, b)
    ]
    merged.append(list(parts[a][0]) + list(parts[b][0]) + [-i for i in parts[b][1]])
    f = dg.partition_from_blocks(e.degree, merged)
    d_e = dg.d_projection(e)
    sq = Square(dg.multiply(f, d_e), f, dg.multiply(e, d_e), e)
    return SingularWitness(sq, "RL", d_e)


def _starred_transpose(w: SingularWitness) -> SingularWitness:
    a, b, c, d = (dg.involution(x) for x in w.square.corners)
    flipped = {"RL": "DU", "LR": "UD", "UD": "LR", "DU": "RL"}[w.orientation]
    return SingularWitness(Square(a, c, b, d), flipped, dg.involution(w.u))


def loose_blocks_square(e: Partition) -> SingularWitness | None:
    """Quadrado para uma projeção com pelo menos dois blocos não transversais."""
    parts = dg.blocks(e)
    trans = [up for up, low in parts if up and low]
    uppers = [up for up, low in parts if up and not low]
    if not trans or len(uppers) < 2 or not dg.is_projection(e):
        return None
    A, B, C = trans[0], uppers[0], uppers[1]
    rest = [
        list(up) + [-i for i in low]
        for up, low in parts
        if up not in (A, B, C) and low not in (A, B, C)
    ]

    def build(*chunks: Iterable[int]) -> Partition:
        return dg.partition_from_blocks(e.degree, rest + [list(c) for c in chunks])

    def low(xs: Iterable[int]) -> list[int]:
        return [-i for i in xs]

    e1 = build([*A, *C, *low(A), *low(B)], B, low(C))
    e2 = build([*A, *C, *low(A)], B, low(B), low(C))
    e3 = build([*A, *low(A), *low(B)], B, C, low(C))
    u = build([*A, *low(A), *low(B)], B, [*C, *low(C)])
    return SingularWitness(Square(e1, e2, e3, e), "RL", u)


def nt_reducing_square(h: MonoidHandle, e: Partition) -> SingularWitness | None:
    """Quadrado singular NT-redutor com base e, quando uma das construções se aplica."""
    if dg.is_projection(e):
        w = loose_blocks_square(e)
    elif not dg.equivalence_leq(dg.ker(e), dg.coker(e)):
        w = kernel_merge_square(e)
    else:
        w = kernel_merge_square(dg.involution(e))
        w = _starred_transpose(w) if w is not None else None
    if w is None:
        return None
    if not _CHECKS[w.orientation](h, w.square, w.u) or not is_nt_reducing(h, w.square):
        logger.debug("construção não NT-redutora para %s", dg.format_partition(e))
        return None
    return w


def label_prime(e: Partition) -> tuple[tuple[int, int], ...]:
    """λ′(e): mínimo superior ↦ mínimo inferior de cada transversal."""
    pairs = tuple(sorted((min(up), min(low)) for up, low in dg.transversals(e)))
    if not pairs:
        raise LabelError(f"Rótulo indefinido para posto 0: {dg.format_partition(e)}")
    return pairs


def label(e: Partition) -> Permutation:
    pairs = label_prime(e)
    lowers = sorted(b for _, b in pairs)
    return Permutation([lowers.index(b) for _, b in pairs])


def is_coxeter_idempotent(e: Partition) -> bool:
    image = label(e).array_form
    moved = [k for k, v in enumerate(image) if k != v]
    return len(moved) == 2 and moved[1] == moved[0] + 1
