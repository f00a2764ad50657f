"""Classes D e relações de Green."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import logging
from typing import Hashable, Iterable

import pandas as pd

from .monoids import MonoidHandle

logger = logging.getLogger(__name__)

DCLASS_FORMAT_VERSION = 1


class DClassError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DClassData:
    """Classe D regular com R/L indexadas por projeções (ou por chaves, sem involução)."""

    handle: MonoidHandle
    rank: int
    elements: tuple
    projections: tuple
    idempotents: tuple
    r_keys: tuple[Hashable, ...]
    l_keys: tuple[Hashable, ...]
    friendly: frozenset[tuple[int, int]]
    strata: dict[tuple[int, int], tuple] = field(repr=False)

    @cached_property
    def projection_index(self) -> dict:
        return {p: i for i, p in enumerate(self.projections)}

    @cached_property
    def idempotent_index(self) -> dict:
        return {e: i for i, e in enumerate(self.idempotents)}

    @cached_property
    def _r_lookup(self) -> dict[Hashable, int]:
        return {k: i for i, k in enumerate(self.r_keys)}

    @cached_property
    def _l_lookup(self) -> dict[Hashable, int]:
        return {k: i for i, k in enumerate(self.l_keys)}

    @cached_property
    def _grid(self) -> dict[tuple[int, int], object]:
        return {self.edge(e): e for e in self.idempotents}

    @property
    def is_star(self) -> bool:
        return self.handle.is_star

    @property
    def row_count(self) -> int:
        return len(self.r_keys)

    @property
    def column_count(self) -> int:
        return len(self.l_keys)

    def r_index(self, x) -> int:
        h = self.handle
        if h.is_star:
            return self.projection_index[h.product(x, h.star(x))]
        return self._r_lookup[h.r_key(x)]

    def l_index(self, x) -> int:
        h = self.handle
        if h.is_star:
            return self.projection_index[h.product(h.star(x), x)]
        return self._l_lookup[h.l_key(x)]

    def edge(self, e) -> tuple[int, int]:
        return self.r_index(e), self.l_index(e)

    def idempotent_at(self, i: int, j: int):
        """Identidade do H-grupo R_i ∩ L_j, ou None quando não é grupo."""
        return self._grid.get((i, j))

    def is_friendly(self, p, q) -> bool:
        idx = self.projection_index
        return (idx[p], idx[q]) in self.friendly

    def format(self, x) -> str:
        return self.handle.format_element(x)


def r_related(h: MonoidHandle, a, b) -> bool:
    return h.r_key(a) == h.r_key(b)


def l_related(h: MonoidHandle, a, b) -> bool:
    return h.l_key(a) == h.l_key(b)


def h_related(h: MonoidHandle, a, b) -> bool:
    return r_related(h, a, b) and l_related(h, a, b)


def d_related(h: MonoidHandle, a, b) -> bool:
    return h.d_key(a) == h.d_key(b)


def right_ideal(h: MonoidHandle, a) -> frozenset:
    return frozenset({a} | {h.product(a, x) for x in h.elements()})


def left_ideal(h: MonoidHandle, a) -> frozenset:
    return frozenset({a} | {h.product(x, a) for x in h.elements()})


def principal_ideal_oracle(h: MonoidHandle, relation: str = "R") -> dict:
    """Classes R ou L por força bruta: a ~ b se os ideais principais coincidem."""
    ideal = {"R": right_ideal, "L": left_ideal}.get(relation)
    if ideal is None:
        raise DClassError(f"Relação desconhecida: {relation!r}")
    return {a: ideal(h, a) for a in h.elements()}


def _is_idempotent(h: MonoidHandle, e) -> bool:
    return h.product(e, e) == e


def sandwich_set(h: MonoidHandle, e, f) -> tuple:
    """S(e,f) = { x ∈ E : e x f = e f, f x e = x }."""
    for x in (e, f):
        if not _is_idempotent(h, x):
            raise DClassError(f"Não é idempotente: {h.format_element(x)}")
    ef = h.product(e, f)
    out = []
    for x in h.idempotents():
        if h.product(h.product(e, x), f) == ef and h.product(h.product(f, x), e) == x:
            out.append(x)
    return tuple(out)


def _strata(h: MonoidHandle, idempotents: Iterable) -> dict[tuple[int, int], tuple]:
    groups: dict[tuple[int, int], list] = {}
    for e in idempotents:
        groups.setdefault(h.nt_stats(e), []).append(e)
    return {k: tuple(v) for k, v in sorted(groups.items())}


def dclass_data(h: MonoidHandle, r: int) -> DClassData:
    if h.kind == "Adjacency" and r != 1:
        raise DClassError("No semigrupo de adjacência só a classe D não nula é considerada (posto 1)")
    members = tuple(x for x in h.elements() if h.d_key(x) == r)
    if not members:
        raise DClassError(f"Classe D vazia em {h.label} para posto {r}")
    return _assemble(h, r, members, tuple(e for e in h.idempotents() if h.d_key(e) == r))


def _friendly_pairs(h: MonoidHandle, projections: tuple) -> frozenset[tuple[int, int]]:
    return frozenset(
        (i, j)
        for i, p in enumerate(projections)
        for j, q in enumerate(projections)
        if h.product(h.product(p, q), p) == p and h.product(h.product(q, p), q) == q
    )


def _assemble(
    h: MonoidHandle,
    r: int,
    members: tuple,
    idempotents: tuple,
    projections: tuple | None = None,
    friendly: frozenset[tuple[int, int]] | None = None,
) -> DClassData:
    if h.is_star:
        if projections is None:
            projections = tuple(p for p in h.projections() if h.d_key(p) == r)
        if friendly is None:
            friendly = _friendly_pairs(h, projections)
        r_keys = tuple(h.r_key(p) for p in projections)
        l_keys = tuple(h.l_key(p) for p in projections)
    else:
        projections = ()
        r_keys = tuple(dict.fromkeys(h.r_key(x) for x in members))
        l_keys = tuple(dict.fromkeys(h.l_key(x) for x in members))
        friendly = frozenset()

    d = DClassData(
        handle=h,
        rank=r,
        elements=members,
        projections=projections,
        idempotents=idempotents,
        r_keys=r_keys,
        l_keys=l_keys,
        friendly=friendly,
        strata=_strata(h, idempotents),
    )
    _check_invariants(d)
    logger.debug(
        "%s posto %d: |D|=%d |P_D|=%d |E_D|=%d",
        h.label, r, len(members), len(projections), len(idempotents),
    )
    return d


def _check_invariants(d: DClassData) -> None:
    h = d.handle
    if len(d._grid) != len(d.idempotents):
        raise DClassError("Dois idempotentes no mesmo H-grupo")
    if not h.is_star:
        return
    products = {h.product(d.projections[i], d.projections[j]) for i, j in d.friendly}
    if len(d.friendly) != len(d.idempotents) or products != set(d.idempotents):
        raise DClassError("(p,q) ↦ pq não é uma bijeção F_D → E_D")


def h_class_idempotent(d: DClassData, p, q):
    if p not in d.projection_index or q not in d.projection_index:
        raise DClassError("Projeção fora da classe D")
    if not d.is_friendly(p, q):
        return None
    return d.handle.product(p, q)


def strata_table(d: DClassData) -> pd.DataFrame:
    """|E^k_l| com linhas NTu = k e colunas NTd = l."""
    rows = [{"ntu": k, "ntd": l, "count": len(es)} for (k, l), es in d.strata.items()]
    frame = pd.DataFrame(rows, columns=["ntu", "ntd", "count"])
    table = frame.pivot_table(index="ntu", columns="ntd", values="count", fill_value=0, aggfunc="sum")
    return table.astype(int)


def stratum_projections(d: DClassData, k: int) -> tuple:
    """P_k: projeções com k blocos superiores não transversais."""
    h = d.handle
    return tuple(p for p in d.projections if h.nt_stats(p)[0] == k)


def f_set(d: DClassData) -> tuple:
    """Conjunto F a partir do qual os demais geradores são eliminados."""
    h = d.handle
    if d.rank == 0:
        base = [e for e in d.idempotents if 1 in h.nt_stats(e)]
        return tuple(dict.fromkeys(base + list(stratum_projections(d, 2))))
    p1 = set(stratum_projections(d, 1))
    return tuple(
        e for e in d.idempotents
        if 0 in h.nt_stats(e) or e in p1
    )


def to_dict(d: DClassData) -> dict:
    fmt = d.handle.format_element
    return {
        "version": DCLASS_FORMAT_VERSION,
        "rank": d.rank,
        "elements": [fmt(x) for x in d.elements],
        "projections": [fmt(p) for p in d.projections],
        "idempotents": [fmt(e) for e in d.idempotents],
        "friendly": sorted([i, j] for i, j in d.friendly),
    }


def from_dict(h: MonoidHandle, payload: dict) -> DClassData:
    if payload.get("version") != DCLASS_FORMAT_VERSION:
        raise DClassError(f"Versão de classe D incompatível: {payload.get('version')!r}")
    parse = h.parse_element
    r = int(payload["rank"])
    members = tuple(parse(t) for t in payload["elements"])
    idempotents = tuple(parse(t) for t in payload["idempotents"])
    projections = tuple(parse(t) for t in payload["projections"]) if h.is_star else None
    friendly = frozenset((int(i), int(j)) for i, j in payload["friendly"]) if h.is_star else None
    return _assemble(h, r, members, idempotents, projections, friendly)
