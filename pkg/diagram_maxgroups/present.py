"""Apresentações dos subgrupos maximais e simplificação de Tietze."""

from __future__ import annotations

from dataclasses import dataclass, replace
import logging
from typing import Iterable, Sequence

import numpy as np

from .biorder import LinkedDiamond, SingularWitness, Square, basic_pairs, linked_square
from .ghgraph import TreeSet, build_gh_graph, verify_spanning_tree
from .green import DClassData, sandwich_set
from .monoids import MonoidHandle

logger = logging.getLogger(__name__)

Letter = tuple[int, int]
Word = tuple[Letter, ...]

DEFAULT_TIETZE_BUDGET = 200_000
DEFAULT_MAX_SUBSTITUTION = 12
DEFAULT_MAX_DOC_GENERATORS = 500
SHORTEN_MAX_RELATORS = 50


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    budget_exhausted: bool = False

    @property
    def total_length(self) -> int:
        return sum(len(w) for w in self.relators)


@dataclass(frozen=True)
class SemigroupPresentationDoc:
    family: str
    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]


def free_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, x in word:
        if out and out[-1][0] == g and out[-1][1] == -x:
            out.pop()
        else:
            out.append((g, x))
    return tuple(out)


def cyclic_reduce(word: Iterable[Letter]) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def invert(word: Sequence[Letter]) -> Word:
    return tuple((g, -x) for g, x in reversed(word))


def canonical_relator(word: Iterable[Letter]) -> Word:
    """Menor rotação de w ou w⁻¹, depois das reduções livre e cíclica."""
    w = cyclic_reduce(word)
    if not w:
        return w
    candidates = []
    for v in (w, invert(w)):
        candidates.extend(v[k:] + v[:k] for k in range(len(v)))
    return min(candidates)


def normalize(p: GroupPresentation) -> GroupPresentation:
    rels = sorted({canonical_relator(w) for w in p.relators} - {()})
    return replace(p, relators=tuple(rels))


def _check_tree(d: DClassData, t: TreeSet) -> None:
    if not verify_spanning_tree(build_gh_graph(d), t):
        raise PresentationError(f"A árvore {t.kind} não é geradora do grafo de Graham–Houghton")


def _square_relators(
    d: DClassData, squares: Iterable[SingularWitness | Square], index: dict
) -> list[Word]:
    seen: set[tuple] = set()
    out = []
    for item in squares:
        sq = item.square if isinstance(item, SingularWitness) else item
        if sq.is_degenerate:
            continue
        key = (
            frozenset({d.r_index(sq.e), d.r_index(sq.g)}),
            frozenset({d.l_index(sq.e), d.l_index(sq.f)}),
        )
        if key in seen:
            continue
        seen.add(key)
        e, f, g, h = (index[x] for x in sq.corners)
        out.append(((e, -1), (f, 1), (h, -1), (g, 1)))
    return out


def _idempotent_generators(d: DClassData) -> tuple[tuple[str, ...], dict]:
    names = tuple(f"a[{d.format(e)}]" for e in d.idempotents)
    return names, dict(d.idempotent_index)


def presn_ig(d: DClassData, t: TreeSet, squares: Iterable[SingularWitness | Square]) -> GroupPresentation:
    _check_tree(d, t)
    names, index = _idempotent_generators(d)
    rels: list[Word] = [((index[e], 1),) for e in sorted(t.edges, key=index.__getitem__)]
    rels.extend(_square_relators(d, squares, index))
    logger.debug("IG: %d geradores, %d relatores", len(names), len(rels))
    return GroupPresentation(names, tuple(rels))


def _inverse_relators(d: DClassData, index: dict) -> list[Word]:
    h = d.handle
    out = []
    for e in d.idempotents:
        k, ks = index[e], index[h.star(e)]
        if k <= ks:
            out.append(((k, 1), (ks, 1)))
    return out


def presn_pg_squares(
    d: DClassData, t: TreeSet, squares: Iterable[SingularWitness | Square]
) -> GroupPresentation:
    if not d.is_star:
        raise PresentationError("Apresentação PG exige um semigrupo com involução")
    missing = [p for p in d.projections if p not in t.edges]
    if missing:
        raise PresentationError(f"P_D não está contido na árvore: falta {d.format(missing[0])}")
    base = presn_ig(d, t, squares)
    _, index = _idempotent_generators(d)
    return replace(base, relators=base.relators + tuple(_inverse_relators(d, index)))


def _check_friendliness_tree(d: DClassData, tree: Sequence[tuple[int, int]]) -> None:
    reached = {tree[0][0]} if tree else {0}
    for parent, child in tree:
        if (parent, child) not in d.friendly or parent not in reached or child in reached:
            raise PresentationError(f"Árvore dirigida inválida na aresta ({parent},{child})")
        reached.add(child)
    if len(reached) != len(d.projections):
        raise PresentationError("A árvore dirigida não alcança todas as projeções")


def _pair_generators(d: DClassData) -> tuple[tuple[str, ...], dict[tuple[int, int], int]]:
    pairs = sorted(d.friendly)
    return tuple(f"a[{i},{j}]" for i, j in pairs), {pq: k for k, pq in enumerate(pairs)}


def _linked_base(d: DClassData, tree: Sequence[tuple[int, int]]) -> tuple[tuple[str, ...], dict, list[Word]]:
    _check_friendliness_tree(d, tree)
    names, idx = _pair_generators(d)
    rels: list[Word] = [((idx[pc], 1),) for pc in tree]
    rels.extend(((idx[(i, i)], 1),) for i in range(len(d.projections)))
    rels.extend(
        ((idx[(i, j)], 1), (idx[(j, i)], 1)) for i, j in sorted(d.friendly) if i < j
    )
    return names, idx, rels


def presn_pg_linked(
    d: DClassData, diamonds: Iterable[LinkedDiamond], tree: Sequence[tuple[int, int]]
) -> GroupPresentation:
    names, idx, rels = _linked_base(d, tree)
    for dm in diamonds:
        if dm.is_degenerate:
            continue
        rels.append((
            (idx[(dm.s, dm.v)], -1), (idx[(dm.s, dm.w)], 1),
            (idx[(dm.u, dm.w)], -1), (idx[(dm.u, dm.v)], 1),
        ))
    return GroupPresentation(names, tuple(rels))


def presn_pg_triangles(
    d: DClassData, diamonds: Iterable[LinkedDiamond], tree: Sequence[tuple[int, int]]
) -> GroupPresentation:
    """Variante com a_{u,s} a_{s,w} = a_{u,w} para cada triângulo ligado (s,u,w)."""
    names, idx, rels = _linked_base(d, tree)
    for dm in diamonds:
        if not dm.is_triangle or dm.is_degenerate or dm.w == dm.s:
            continue
        rels.append(((idx[(dm.u, dm.s)], 1), (idx[(dm.s, dm.w)], 1), (idx[(dm.u, dm.w)], -1)))
    return GroupPresentation(names, tuple(rels))


def presn_pg_linked_squares(
    d: DClassData, diamonds: Iterable[LinkedDiamond], tree: Sequence[tuple[int, int]]
) -> GroupPresentation:
    """Mesma apresentação sobre a_e: a_e = 1 em T ∪ P_D, a_e = a_{e*}⁻¹ e quadrados ligados."""
    _check_friendliness_tree(d, tree)
    h = d.handle
    names, index = _idempotent_generators(d)
    P = d.projections
    trivial = {h.product(P[i], P[j]) for i, j in tree} | set(P)
    rels: list[Word] = [((index[e], 1),) for e in sorted(trivial, key=index.__getitem__)]
    rels.extend(_inverse_relators(d, index))
    squares = [linked_square(d, dm) for dm in diamonds if not dm.is_degenerate]
    rels.extend(_square_relators(d, squares, index))
    return GroupPresentation(names, tuple(rels))


def quotient(p: GroupPresentation, names: Iterable[str]) -> GroupPresentation:
    lookup = {name: k for k, name in enumerate(p.generators)}
    extra = []
    for name in names:
        if name not in lookup:
            raise PresentationError(f"Gerador desconhecido: {name}")
        extra.append(((lookup[name], 1),))
    return replace(p, relators=p.relators + tuple(extra))


def exponent_matrix(p: GroupPresentation) -> np.ndarray:
    """Somas de expoentes: uma linha por relator, uma coluna por gerador."""
    m = np.zeros((len(p.relators), len(p.generators)), dtype=np.int64)
    for row, word in enumerate(p.relators):
        for g, x in word:
            m[row, g] += x
    return m


# Tietze


def _occurrences(word: Word, g: int) -> int:
    return sum(1 for k, _ in word if k == g)


def _solve_for(word: Word, g: int) -> Word:
    """Com g ocorrendo uma vez em w = 1, devolve a palavra igual a g."""
    pos = next(k for k, (x, _) in enumerate(word) if x == g)
    rotated = word[pos:] + word[:pos]
    rest = rotated[1:]
    return invert(rest) if rotated[0][1] == 1 else rest


def _pick_elimination(
    rels: dict[int, Word], max_substitution_length: int
) -> tuple[int, int] | None:
    """(gerador, id do relator que o define), ou None quando nada mais é eliminável."""
    for phase_limit in (1, 2, max_substitution_length):
        best: dict[int, tuple[tuple[int, Word], int]] = {}
        for rid, w in rels.items():
            if len(w) > phase_limit:
                continue
            if phase_limit == 2 and (len(w) != 2 or w[0][0] == w[1][0]):
                continue
            for g in {x for x, _ in w}:
                if _occurrences(w, g) != 1:
                    continue
                rank = (len(w), w)
                if g not in best or rank < best[g][0]:
                    best[g] = (rank, rid)
        if best:
            g = min(best)
            return g, best[g][1]
    return None


def _shorten_by(r: Word, s: Word) -> Word | None:
    """Troca um trecho de r que cobre mais da metade de s pelo inverso do resto de s."""
    n = len(s)
    need = n // 2 + 1
    if len(r) < need:
        return None
    r_rotations = [r[k:] + r[:k] for k in range(len(r))]
    for v in (s, invert(s)):
        for k in range(n):
            sr = v[k:] + v[:k]
            for rr in r_rotations:
                if rr[:need] != sr[:need]:
                    continue
                m = need
                while m < n and m < len(rr) and rr[m] == sr[m]:
                    m += 1
                return canonical_relator(invert(sr[m:]) + rr[m:])
    return None


def _shorten_relators(rels: dict[int, Word]) -> bool:
    """Um passo de encurtamento entre dois relatores; False quando nenhum par encurta."""
    for rid in sorted(rels):
        for sid in sorted(rels):
            if rid == sid:
                continue
            new = _shorten_by(rels[rid], rels[sid])
            if new is None:
                continue
            if new and new not in rels.values():
                rels[rid] = new
            else:
                del rels[rid]
            return True
    return False


def _index_relators(rels: dict[int, Word]) -> tuple[dict[int, set[int]], set[Word]]:
    where: dict[int, set[int]] = {}
    for rid, w in rels.items():
        for g, _ in w:
            where.setdefault(g, set()).add(rid)
    return where, set(rels.values())


def tietze_simplify(
    p: GroupPresentation,
    budget: int = DEFAULT_TIETZE_BUDGET,
    max_substitution_length: int = DEFAULT_MAX_SUBSTITUTION,
) -> GroupPresentation:
    """Eliminação determinística: sempre o menor gerador eliminável.

    Com poucos relatores restantes, alterna com o encurtamento mútuo de relatores até nada mudar.
    """
    p = normalize(p)
    rels: dict[int, Word] = dict(enumerate(p.relators))
    where, present = _index_relators(rels)
    alive = set(range(len(p.generators)))
    steps = 0
    exhausted = False
    while True:
        choice = _pick_elimination(rels, max_substitution_length)
        if choice is None:
            trial = dict(rels)
            if len(rels) > SHORTEN_MAX_RELATORS or not _shorten_relators(trial):
                break
            if steps >= budget:
                exhausted = True
                break
            steps += 1
            rels = trial
            where, present = _index_relators(rels)
            continue
        if steps >= budget:
            exhausted = True
            break
        steps += 1
        g, rid = choice
        defining = rels.pop(rid)
        present.discard(defining)
        value = _solve_for(defining, g)
        for x, _ in defining:
            where.get(x, set()).discard(rid)
        alive.discard(g)
        for other in sorted(where.pop(g, set())):
            old = rels.pop(other)
            present.discard(old)
            for x, _ in old:
                where.get(x, set()).discard(other)
            new: list[Letter] = []
            for x, e in old:
                if x == g:
                    new.extend(value if e == 1 else invert(value))
                else:
                    new.append((x, e))
            word = canonical_relator(new)
            if word and word not in present:
                rels[other] = word
                present.add(word)
                for x, _ in word:
                    where.setdefault(x, set()).add(other)
    keep = sorted(alive)
    renumber = {old: new for new, old in enumerate(keep)}
    out = GroupPresentation(
        tuple(p.generators[k] for k in keep),
        tuple(tuple((renumber[x], e) for x, e in w) for w in rels.values()),
        budget_exhausted=exhausted,
    )
    out = normalize(out)
    logger.debug(
        "Tietze: %d → %d geradores, %d → %d relatores (comprimento %d) em %d passos",
        len(p.generators), len(out.generators), len(p.relators), len(out.relators), out.total_length, steps,
    )
    return out


# Emissão


def _cas_word(word: Word, names: Sequence[str]) -> str:
    if not word:
        return "One(F)"
    parts = []
    k = 0
    while k < len(word):
        g, x = word[k]
        run = 1
        while k + run < len(word) and word[k + run] == (g, x):
            run += 1
        power = run * x
        parts.append(names[g] if power == 1 else f"{names[g]}^{power}")
        k += run
    return "*".join(parts)


def to_cas(p: GroupPresentation) -> str:
    short = [f"a{k + 1}" for k in range(len(p.generators))]
    lines = [f"# {s} = {name}" for s, name in zip(short, p.generators)]
    quoted = ",".join(f'"{s}"' for s in short)
    lines.append(f"F := FreeGroup({quoted});")
    lines.extend(f"{s} := F.{k + 1};" for k, s in enumerate(short))
    rels = ", ".join(_cas_word(w, short) for w in p.relators)
    lines.append(f"rels := [ {rels} ];" if rels else "rels := [ ];")
    return "\n".join(lines) + "\n"


def format_word(word: Word, names: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(names[g] if x == 1 else f"{names[g]}^-1" for g, x in word)


def format_presentation(p: GroupPresentation) -> str:
    lines = [f"geradores ({len(p.generators)}):"]
    lines.extend(f"  {name}" for name in p.generators)
    lines.append(f"relatores ({len(p.relators)}):")
    lines.extend(f"  {format_word(w, p.generators)}" for w in p.relators)
    if p.budget_exhausted:
        lines.append("(orçamento de Tietze esgotado)")
    return "\n".join(lines) + "\n"


def presentation_to_dict(p: GroupPresentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [[[g, x] for g, x in w] for w in p.relators],
        "budget_exhausted": p.budget_exhausted,
    }


def presentation_from_dict(payload: dict) -> GroupPresentation:
    return GroupPresentation(
        tuple(payload["generators"]),
        tuple(tuple((int(g), int(x)) for g, x in w) for w in payload["relators"]),
        bool(payload.get("budget_exhausted", False)),
    )


def emit_semigroup_presentations(
    h: MonoidHandle, family: str = "ig", max_generators: int = DEFAULT_MAX_DOC_GENERATORS
) -> SemigroupPresentationDoc:
    """Apresentações de IG(E), RIG(E), PG(P) ou PG sobre X_E, em forma textual."""
    fmt = h.format_element
    es = h.idempotents()
    ps = h.projections()
    if family in ("ig", "rig", "pg-e"):
        pool = es
    elif family == "pg":
        pool = ps
    else:
        raise PresentationError(f"Família de apresentação desconhecida: {family!r}")
    if family in ("pg", "pg-e") and not h.is_star:
        raise PresentationError(f"{h.label} não tem involução")
    if len(pool) > max_generators:
        raise PresentationError(f"{len(pool)} geradores excede o limite {max_generators}")

    def x(e) -> str:
        return f"x[{fmt(e)}]"

    rels: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    if family in ("ig", "rig", "pg-e"):
        for e, f in basic_pairs(h, es):
            rels.append(((x(e), x(f)), (x(h.product(e, f)),)))
    if family == "rig":
        for e in es:
            for f in es:
                for s in sandwich_set(h, e, f):
                    rels.append(((x(e), x(s), x(f)), (x(e), x(f))))
    if family == "pg-e":
        for p in ps:
            for q in ps:
                rels.append(((x(p), x(q)), (x(h.product(p, q)),)))
    if family == "pg":
        for p in ps:
            rels.append(((x(p), x(p)), (x(p),)))
        for p in ps:
            for q in ps:
                rels.append(((x(p), x(q), x(p), x(q)), (x(p), x(q))))
        for p in ps:
            for q in ps:
                rels.append(((x(p), x(q), x(p)), (x(h.product(h.product(p, q), p)),)))
    return SemigroupPresentationDoc(family, tuple(x(e) for e in pool), tuple(rels))


def format_semigroup_doc(doc: SemigroupPresentationDoc) -> str:
    lines = [f"# {doc.family}: {len(doc.generators)} geradores, {len(doc.relations)} relações"]
    lines.extend(doc.generators)
    lines.append("")
    lines.extend(f"{' '.join(lhs)} = {' '.join(rhs)}" for lhs, rhs in doc.relations)
    return "\n".join(lines) + "\n"
