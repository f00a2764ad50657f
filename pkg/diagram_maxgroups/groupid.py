from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
import re
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import ZZ, Matrix, Rational
from sympy.core.intfunc import igcdex
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.free_groups import free_group
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .biorder import LabelError, label
from .green import DClassData
from .present import (
    DEFAULT_MAX_SUBSTITUTION,
    DEFAULT_TIETZE_BUDGET,
    GroupPresentation,
    Word,
    exponent_matrix,
    format_word,
    quotient,
    tietze_simplify,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000
CYCLIC_MAX_COSETS = 50_000

FREE = "FREE"
FINITE = "FINITE"
Z_CROSS_FINITE = "Z_CROSS_FINITE"
UNKNOWN = "UNKNOWN"

_PAIR_NAME = re.compile(r"^a\[(\d+),(\d+)\]$")


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " × ".join(parts) or "1"


@dataclass(frozen=True)
class CosetTable:
    complete: bool
    order: int | None
    table: tuple[tuple[int, ...], ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class LabelCheck:
    valid: bool
    image_order: int
    failed_relators: tuple[int, ...] = ()


@dataclass(frozen=True)
class IdentifyHints:
    """O que se espera do grupo: S_r ou Z×S_r, com rótulos e geradores para o quociente."""

    symmetric_degree: int | None = None
    z_cross: bool = False
    labels: Mapping[str, Permutation] | None = None
    quotient_choices: tuple[str, ...] = ()


@dataclass(frozen=True)
class Verdict:
    kind: str
    rank: int | None = None
    order: int | None = None
    tag: str | None = None
    certification: str | None = None
    evidence: tuple[str, ...] = ()


def _normalize_diagonal(values: Iterable[int]) -> list[int]:
    diag = [abs(int(v)) for v in values]
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = math.gcd(a, b)
            diag[i], diag[j] = g, (a * b // g if g else 0)
    return diag


def smith_normal_form(matrix: Sequence[Sequence[int]] | np.ndarray) -> tuple[int, ...]:
    """Diagonal d_1 | d_2 | … | d_k da forma normal de Smith, com zeros ao final."""
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2 or 0 in arr.shape:
        return ()
    n_rows, n_cols = arr.shape
    rows = [[int(x) for x in row] for row in arr.tolist()]
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (n_rows, n_cols), ZZ)
    diag = _normalize_diagonal(invariant_factors(dm))
    diag += [0] * (min(n_rows, n_cols) - len(diag))
    return tuple(diag)


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    k = len(p.generators)
    if not p.relators:
        return AbelianInvariants(k, ())
    diag = smith_normal_form(exponent_matrix(p))
    nonzero = [d for d in diag if d != 0]
    return AbelianInvariants(k - len(nonzero), tuple(d for d in nonzero if d > 1))


def todd_coxeter(p: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumeração de classes laterais do subgrupo trivial (estratégia HLT)."""
    if not p.generators:
        return CosetTable(True, 1, ((),))
    F, *gens = free_group(",".join(f"x{k}" for k in range(len(p.generators))))
    relators = []
    for word in p.relators:
        w = F.identity
        for g, x in word:
            w = w * gens[g] ** x
        relators.append(w)
    table = coset_enumeration_r(FpGroup(F, relators), [], max_cosets=max_cosets, incomplete=True)
    if not table.is_complete():
        logger.debug("Todd–Coxeter incompleto com limite %d", max_cosets)
        return CosetTable(False, None)
    table.compress()
    table.standardize()
    rows = tuple(tuple(row) for row in table.table)
    logger.debug("Todd–Coxeter: ordem %d", len(rows))
    return CosetTable(True, len(rows), rows)


def check_label_homomorphism(
    p: GroupPresentation, assignment: Mapping[str, Permutation]
) -> LabelCheck:
    """Cada relator deve ir na identidade; composição da esquerda para a direita."""
    perms = [assignment[name] for name in p.generators]
    degree = max((x.size for x in perms), default=1)
    failed = []
    for k, word in enumerate(p.relators):
        image = Permutation(degree - 1)
        for g, x in word:
            image = image * (perms[g] if x == 1 else ~perms[g])
        if not image.is_Identity:
            failed.append(k)
    group = PermutationGroup(perms or [Permutation(degree - 1)])
    return LabelCheck(not failed, int(group.order()), tuple(failed))


def permutation_label_assignment(d: DClassData, p: GroupPresentation) -> dict[str, Permutation]:
    """λ(e) para a_e e λ(pq) para a[p,q]."""
    h = d.handle
    by_text = {f"a[{d.format(e)}]": e for e in d.idempotents}
    out = {}
    for name in p.generators:
        if name in by_text:
            out[name] = label(by_text[name])
            continue
        m = _PAIR_NAME.match(name)
        if m is None:
            raise LabelError(f"Gerador sem rótulo: {name}")
        i, j = int(m.group(1)), int(m.group(2))
        out[name] = label(h.product(d.projections[i], d.projections[j]))
    return out


def render_verdict(v: Verdict) -> str:
    if v.kind == FREE:
        if v.rank == 0:
            return "trivial"
        if v.rank == 1:
            return "Z (free rank 1)"
        return f"free of rank {v.rank}"
    if v.kind == FINITE:
        if v.tag:
            return f"{v.tag} (order {v.order}, {v.certification or 'computed'})"
        return "trivial" if v.order == 1 else f"finite of order {v.order}"
    if v.kind == Z_CROSS_FINITE:
        return f"consistent with Z×{v.tag} ({v.certification})"
    return "unknown"


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "kind": v.kind,
        "rank": v.rank,
        "order": v.order,
        "tag": v.tag,
        "certification": v.certification,
        "rendered": render_verdict(v),
        "evidence": list(v.evidence),
    }


def abelian_coordinates(p: GroupPresentation) -> tuple[int, ...] | None:
    """Imagens primitivas dos geradores em Z quando o posto livre da abelianização é 1, senão None."""
    if not p.generators:
        return None
    m = Matrix(exponent_matrix(p).tolist()) if p.relators else Matrix.zeros(1, len(p.generators))
    basis = m.nullspace()
    if len(basis) != 1:
        return None
    values = [Rational(x) for x in basis[0]]
    den = math.lcm(*(int(x.q) for x in values))
    ints = [int(x * den) for x in values]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


def _unit_word(coords: Sequence[int]) -> Word | None:
    """Palavra a_1^{c_1} … a_k^{c_k} com Σ c_i v_i = 1 (Bézout)."""
    g, coeffs = 0, []
    for v in coords:
        s, t, g = igcdex(g, v)
        coeffs = [s * c for c in coeffs] + [t]
    if g != 1:
        return None
    word: list[tuple[int, int]] = []
    for k, c in enumerate(coeffs):
        word.extend([(k, 1 if c > 0 else -1)] * abs(int(c)))
    return tuple(word)


def subgroup_index(p: GroupPresentation, word: Word, max_cosets: int = DEFAULT_MAX_COSETS) -> int | None:
    """Índice de ⟨word⟩ por enumeração de classes laterais; None se não completar."""
    F, *gens = free_group(",".join(f"x{k}" for k in range(len(p.generators))))

    def element(w: Word):
        out = F.identity
        for g, x in w:
            out = out * gens[g] ** x
        return out

    fp = FpGroup(F, [element(w) for w in p.relators])
    table = coset_enumeration_r(fp, [element(word)], max_cosets=max_cosets, incomplete=True)
    if not table.is_complete():
        return None
    table.compress()
    return len(table.table)


def collapse_infinite_cyclic(
    p: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS
) -> GroupPresentation | None:
    """⟨t | ⟩ quando a abelianização é Z e a palavra que vai em 1 gera o grupo (índice 1).

    G = ⟨w⟩ é cíclico e G^ab = Z, logo G ≅ Z e a apresentação de um gerador é equivalente.
    """
    if abelianization(p) != AbelianInvariants(1, ()):
        return None
    coords = abelian_coordinates(p)
    word = _unit_word(coords) if coords is not None else None
    if not word:
        return None
    index = subgroup_index(p, word, min(max_cosets, CYCLIC_MAX_COSETS))
    logger.debug("⟨%s⟩: índice %s", format_word(word, p.generators), index)
    if index != 1:
        return None
    name = p.generators[word[0][0]] if len(word) == 1 else f"({format_word(word, p.generators)})"
    return GroupPresentation((name,), ())


def _simplify(
    p: GroupPresentation, budget: int, max_sub: int, max_cosets: int = DEFAULT_MAX_COSETS
) -> tuple[GroupPresentation, str]:
    s = tietze_simplify(p, budget, max_sub)
    note = (
        f"tietze: {len(p.generators)} → {len(s.generators)} geradores, "
        f"{len(p.relators)} → {len(s.relators)} relatores"
    )
    if s.budget_exhausted:
        note += " (orçamento esgotado)"
    if s.relators:
        cyclic = collapse_infinite_cyclic(s, max_cosets)
        if cyclic is not None:
            note += f"; abelianização Z e ⟨{cyclic.generators[0]}⟩ de índice 1: cíclico infinito"
            s = cyclic
    return s, note


def simplify_group(
    p: GroupPresentation,
    budget: int = DEFAULT_TIETZE_BUDGET,
    max_substitution_length: int = DEFAULT_MAX_SUBSTITUTION,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> GroupPresentation:
    """Tietze e, quando certificado, o colapso para ⟨t | ⟩."""
    return _simplify(p, budget, max_substitution_length, max_cosets)[0]


def _symmetric_verdict(
    p: GroupPresentation, s: GroupPresentation, hints: IdentifyHints, evidence: list[str], max_cosets: int
) -> Verdict:
    """S_r: Todd–Coxeter dá r! e os rótulos definem uma sobrejeção sobre S_r."""
    r = hints.symmetric_degree or 0
    target = math.factorial(r)
    table = todd_coxeter(s, max_cosets)
    evidence.append(f"todd-coxeter: ordem {table.order}" if table.complete else "todd-coxeter: incompleto")
    check = check_label_homomorphism(p, hints.labels or {})
    evidence.append(f"rótulos: {'válido' if check.valid else 'inválido'}, imagem de ordem {check.image_order}")
    if table.complete and table.order == target and check.valid and check.image_order == target:
        return Verdict(FINITE, order=target, tag=f"S_{r}", certification="certified", evidence=tuple(evidence))
    return Verdict(UNKNOWN, evidence=tuple(evidence))


def _z_cross_verdict(
    p: GroupPresentation,
    inv: AbelianInvariants,
    hints: IdentifyHints,
    evidence: list[str],
    budget: int,
    max_sub: int,
    max_cosets: int,
) -> Verdict:
    """Z×S_r parcial: abelianização, quocientes por a_t e rótulos."""
    r = hints.symmetric_degree or 0
    target = math.factorial(r)
    expected = AbelianInvariants(1, () if r <= 1 else (2,))
    ok = inv == expected
    for name in hints.quotient_choices[:2]:
        q, _ = _simplify(quotient(p, [name]), budget, max_sub, max_cosets)
        table = todd_coxeter(q, max_cosets)
        evidence.append(
            f"quociente por {name}: ordem {table.order}" if table.complete
            else f"quociente por {name}: incompleto"
        )
        ok = ok and table.complete and table.order == target
    if not hints.quotient_choices:
        ok = False
    check = check_label_homomorphism(p, hints.labels or {})
    evidence.append(f"rótulos: {'válido' if check.valid else 'inválido'}, imagem de ordem {check.image_order}")
    ok = ok and check.valid and check.image_order == target
    if ok:
        return Verdict(
            Z_CROSS_FINITE, order=target, tag=f"S_{r}", certification="partial", evidence=tuple(evidence)
        )
    return Verdict(UNKNOWN, evidence=tuple(evidence))


def identify(
    p: GroupPresentation,
    hints: IdentifyHints | None = None,
    *,
    budget: int = DEFAULT_TIETZE_BUDGET,
    max_substitution_length: int = DEFAULT_MAX_SUBSTITUTION,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> Verdict:
    hints = hints or IdentifyHints()
    s, note = _simplify(p, budget, max_substitution_length, max_cosets)
    evidence = [note]

    if hints.symmetric_degree is not None and not hints.z_cross:
        return _symmetric_verdict(p, s, hints, evidence, max_cosets)

    inv = abelianization(s)
    evidence.append(f"abelianização: {inv}")
    if hints.z_cross:
        return _z_cross_verdict(p, inv, hints, evidence, budget, max_substitution_length, max_cosets)

    if not s.relators:
        if not s.generators:
            return Verdict(FINITE, order=1, evidence=tuple(evidence))
        return Verdict(FREE, rank=len(s.generators), evidence=tuple(evidence))

    if inv.free_rank == 0:
        table = todd_coxeter(s, max_cosets)
        if table.complete:
            evidence.append(f"todd-coxeter: ordem {table.order}")
            return Verdict(FINITE, order=table.order, evidence=tuple(evidence))
        evidence.append("todd-coxeter: incompleto")
    logger.info("Veredito desconhecido: %s", "; ".join(evidence))
    return Verdict(UNKNOWN, evidence=tuple(evidence))
