"""Critérios de aceitação executáveis, com resultado em DataFrame."""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache
import logging
import math
from typing import Callable

import pandas as pd
from tqdm import tqdm

from . import diagram as dg
from .biorder import (
    Square,
    all_singular_witnesses,
    diamonds_from_projection_square,
    enumerate_linked_diamonds,
    find_singularizers,
    is_lr_singular,
    is_p_linked,
    is_ud_singular,
    label,
    linked_square,
    linked_square_singularizations,
    nt_reducing_square,
    projection_singularizations,
)
from .config import RunConfig
from .ghgraph import build_gh_graph, is_connected
from .green import DClassData, f_set, principal_ideal_oracle, r_related, l_related
from .groupid import FINITE, FREE, Z_CROSS_FINITE, Verdict, smith_normal_form, todd_coxeter
from .io import load_dclass
from .monoids import AdjacencySemigroup, MonoidHandle, make_handle
from .pipeline import GroupArtifacts, build_group_artifacts
from .present import GroupPresentation

logger = logging.getLogger(__name__)

WORKED_A = "1 4; 2 3 4' 5'; 5 6; 1' 2' 6'; 3'"
WORKED_B = "1 2; 3 4 1'; 5 5' 6'; 6; 2' 3'; 4'"
WORKED_AB = "1 4; 2 3 1' 5' 6'; 5 6; 2' 3'; 4'"

# retângulos de idempotentes sem singularizador, em P_2 e P_3
BAND_P2 = ("1 2 1' 2'", "1 2 1'; 2'", "1 1' 2'; 2", "1 1'; 2; 2'")
BAND_P3 = (
    "1 2 3 1' 2'; 3'",
    "1 2 3 2' 3'; 1'",
    "1; 2 1' 2'; 3; 3'",
    "1; 2 2' 3'; 3; 1'",
)
# quadrado vertical de P_3 e o seu singularizador UD
UD_SQUARE_P3 = ("1 1'; 2; 3; 2' 3'", "1 1' 2' 3'; 2; 3", "1 1'; 2 3; 2' 3'", "1 1' 2' 3'; 2 3")
UD_WITNESS_P3 = "1 1'; 2 3 2' 3'"

ADJACENCY_GRAPHS = {
    "K3": ([("a", "b"), ("b", "c"), ("a", "c")], 1),
    "C4": ([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], 1),
    "P3": ([("a", "b"), ("b", "c")], 0),
}

Check = Callable[[RunConfig, bool], tuple[bool, str]]


@lru_cache(maxsize=None)
def _handle(kind: str, n: int, cap: int) -> MonoidHandle:
    return make_handle(kind, n, degree_cap=cap)


def _dclass(cfg: RunConfig, kind: str, n: int, r: int) -> DClassData:
    return load_dclass(_handle(kind, n, cfg.degree_cap), r, cfg.cache_dir, use_cache=cfg.use_cache)


def _group(cfg: RunConfig, kind: str, n: int, r: int, family: str) -> GroupArtifacts:
    run = replace(cfg, kind=kind, n=n, rank=r, family=family, tree="auto", graph=None)
    return build_group_artifacts(run, _handle(kind, n, cfg.degree_cap))


def free_rank_of(v: Verdict) -> int | None:
    """Posto livre do veredito; o grupo trivial conta como livre de posto 0."""
    if v.kind == FREE:
        return v.rank
    if v.kind == FINITE and v.order == 1:
        return 0
    return None


def _worked_product(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    a, b = dg.parse_partition(WORKED_A), dg.parse_partition(WORKED_B)
    ab, floats = dg.multiply_with_floats(a, b)
    ok = ab == dg.parse_partition(WORKED_AB) and floats == 1
    return ok, f"ab = {dg.format_partition(ab)}, Φ = {floats}"


def _idempotent_characterization(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    bad = []
    for n in (2, 3, 4):
        for x in _handle("Pn", n, cfg.degree_cap).elements():
            if dg.idempotent_components(x).certified != dg.is_idempotent(x):
                bad.append(dg.format_partition(x))
    return not bad, f"{len(bad)} divergências" + (f", ex.: {bad[0]}" if bad else "")


def _green_oracle(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    h = _handle("Pn", 3, cfg.degree_cap)
    ok = True
    for relation, related in (("R", r_related), ("L", l_related)):
        ideals = principal_ideal_oracle(h, relation)
        xs = h.elements()
        for i, a in enumerate(xs):
            for b in xs[i:]:
                if (ideals[a] == ideals[b]) != related(h, a, b):
                    ok = False
                    break
    return ok, f"{len(h.elements())} elementos, todos os pares"


def _counts(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    degrees = (3, 4, 5) if include_slow else (3, 4)
    found, ok = [], True
    for n in degrees:
        d = _dclass(cfg, "Pn", n, n - 1)
        c = math.comb(n, 2)
        got = (len(d.projections), len(d.idempotents))
        ok = ok and got == (n + c, n + 5 * c)
        found.append(f"n={n}: {got}")
    return ok, "; ".join(found)


def _gh_connected(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    bad = [
        (n, r)
        for n in range(1, 5)
        for r in range(n)
        if not is_connected(build_gh_graph(_dclass(cfg, "Pn", n, r)))
    ]
    return not bad, f"desconexos: {bad}" if bad else "todas as classes D(n,r), n ≤ 4"


def _ig_top(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok, found = True, []
    for n in (3, 4):
        art = _group(cfg, "Pn", n, n - 1, "ig")
        expected = (n - 1) * (3 * n - 2) // 2
        got = free_rank_of(art.verdict)
        ok = ok and got == expected and not art.squares
        found.append(f"n={n}: posto livre {got}, {len(art.squares)} quadrados")
    return ok, "; ".join(found)


def _pg_top(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok, found = True, []
    for n in (3, 4):
        got = free_rank_of(_group(cfg, "Pn", n, n - 1, "pg").verdict)
        ok = ok and got == math.comb(n - 1, 2)
        found.append(f"n={n}: {got}")
    return ok, "; ".join(found)


def _pg_symmetric(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    cases = [(3, 1), (4, 1), (4, 2)] + ([(5, 3)] if include_slow else [])
    ok, found = True, []
    for n, r in cases:
        v = _group(cfg, "Pn", n, r, "pg").verdict
        ok = ok and v.kind == FINITE and v.tag == f"S_{r}" and v.order == math.factorial(r)
        ok = ok and v.certification == "certified"
        found.append(f"({n},{r}): {v.kind} {v.order}")
    return ok, "; ".join(found)


def _pg_rank0(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    orders = {n: _group(cfg, "Pn", n, 0, "pg-linked").verdict for n in range(1, 5)}
    ok = all(v.kind == FINITE and v.order == 1 for v in orders.values())
    return ok, "; ".join(f"n={n}: {v.kind} {v.order}" for n, v in orders.items())


def _ig_rank0(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    found = {n: _group(cfg, "Pn", n, 0, "ig") for n in (2, 3, 4)}
    ok = all(
        a.verdict.kind == FREE
        and a.verdict.rank == 1
        and a.tree is not None
        and a.tree.kind == "T_rank0"
        and (len(a.simplified.generators), a.simplified.relators) == (1, ())
        for a in found.values()
    )
    return ok, "; ".join(f"n={n}: {a.verdict.kind} {a.verdict.rank}" for n, a in found.items())


def _ig_z_cross(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok, found = True, []
    for n, r in ((3, 1), (4, 1), (4, 2)):
        v = _group(cfg, "Pn", n, r, "ig").verdict
        ok = ok and v.kind == Z_CROSS_FINITE and v.order == math.factorial(r) and v.certification == "partial"
        found.append(f"({n},{r}): {v.kind} {v.order}")
    return ok, "; ".join(found)


def _brauer(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    art = _group(cfg, "Brauer", 4, 0, "pg-linked")
    d = art.dclass
    formula = (len(d.idempotents) - 3 * len(d.projections)) // 2 + 1
    got = free_rank_of(art.verdict)
    squares = free_rank_of(_group(cfg, "Brauer", 4, 0, "pg").verdict)
    ok = (len(d.projections), len(d.idempotents)) == (3, 9) and formula == 1 and got == squares == 1
    return ok, f"|P_D|={len(d.projections)} |E_D|={len(d.idempotents)} posto livre {got} (quadrados: {squares})"


def _adjacency(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok, found = True, []
    for name, (edges, expected) in ADJACENCY_GRAPHS.items():
        h = AdjacencySemigroup.from_edges(edges)
        run = replace(cfg, kind="Adjacency", n=len(h.vertices), rank=1, family="pg-linked", tree="auto")
        got = free_rank_of(build_group_artifacts(run, h).verdict)
        squares = free_rank_of(build_group_artifacts(replace(run, family="pg"), h).verdict)
        ok = ok and got == squares == expected
        found.append(f"{name}: {got}" if got == squares else f"{name}: {got} ≠ {squares} (quadrados)")
    return ok, "; ".join(found)


def _square_constructions(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok = True
    counts = [0, 0, 0]
    for r in range(3):
        d = _dclass(cfg, "Pn", 3, r)
        h = d.handle
        for dm in enumerate_linked_diamonds(d):
            if dm.is_degenerate:
                continue
            counts[0] += 1
            ok = ok and all(is_ud_singular(h, w.square, w.u) for w in linked_square_singularizations(d, dm))
        for w in all_singular_witnesses(d):
            if w.orientation != "LR":
                continue
            counts[1] += 1
            ok = ok and all(is_lr_singular(h, x.square, x.u) for x in projection_singularizations(h, w))
            if h.star(w.u) != w.u:
                continue
            counts[2] += 1
            for dm, corner in zip(diamonds_from_projection_square(d, w), (w.square.f, w.square.h)):
                ok = ok and is_p_linked(d, dm) and linked_square(d, dm).f == corner
    return ok, f"{counts[0]} quadrados ligados, {counts[1]} testemunhas LR, {counts[2]} por projeções"


def _nt_reduction(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    ok, found = True, []
    for n, r in ((3, 1), (4, 1), (4, 2)):
        d = _dclass(cfg, "Pn", n, r)
        h = d.handle
        keep = set(f_set(d))
        missing = [e for e in d.idempotents if e not in keep and nt_reducing_square(h, e) is None]
        labels_ok = all(label(p).is_Identity for p in d.projections) and all(
            label(h.star(e)) == ~label(e) for e in d.idempotents
        )
        ok = ok and not missing and labels_ok
        found.append(f"({n},{r}): {len(d.idempotents) - len(keep)} fora de F, {len(missing)} sem quadrado")
    return ok, "; ".join(found)


def _counterexamples(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    out = []
    for n, texts in ((2, BAND_P2), (3, BAND_P3)):
        h = _handle("Pn", n, cfg.degree_cap)
        sq = Square(*(dg.parse_partition(t, n) for t in texts))
        out.append(not find_singularizers(h, sq))
    h = _handle("Pn", 3, cfg.degree_cap)
    sq = Square(*(dg.parse_partition(t, 3) for t in UD_SQUARE_P3))
    u = dg.parse_partition(UD_WITNESS_P3, 3)
    witnesses = find_singularizers(h, sq)
    out.append(any(w.orientation == "UD" and w.u == u for w in witnesses))
    out.append(all(w.orientation_class == "v" for w in witnesses))
    return all(out), f"P_2 vazio={out[0]}, P_3 vazio={out[1]}, testemunha UD={out[2]}"


def _tooling(cfg: RunConfig, include_slow: bool) -> tuple[bool, str]:
    cyclic = GroupPresentation(("a",), (((0, 1),) * 3,))
    s3 = GroupPresentation(
        ("s1", "s2"),
        (((0, 1), (0, 1)), ((1, 1), (1, 1)), ((0, 1), (1, 1)) * 3),
    )
    orders = (todd_coxeter(cyclic, cfg.max_cosets).order, todd_coxeter(s3, cfg.max_cosets).order)
    snf = smith_normal_form([[2, 0], [0, 3]])
    return orders == (3, 6) and snf == (1, 6), f"ordens {orders}, SNF {snf}"


CRITERIA: tuple[tuple[int, str, Check], ...] = (
    (1, "produto exemplo em P_6 e Φ = 1", _worked_product),
    (2, "caracterização dos idempotentes, n ≤ 4", _idempotent_characterization),
    (3, "R e L por ideais principais em P_3", _green_oracle),
    (4, "|P(n,n−1)| e |E(n,n−1)|", _counts),
    (5, "grafo de Graham–Houghton conexo", _gh_connected),
    (6, "IG no posto n−1 é livre", _ig_top),
    (7, "PG no posto n−1 é livre", _pg_top),
    (8, "PG no posto 1..n−2 é S_r", _pg_symmetric),
    (9, "PG no posto 0 é trivial", _pg_rank0),
    (10, "IG no posto 0 é Z", _ig_rank0),
    (11, "IG no posto 1..n−2 compatível com Z×S_r", _ig_z_cross),
    (12, "B_4 posto 0 livre de posto 1", _brauer),
    (13, "semigrupos de adjacência livres de posto k−n+1", _adjacency),
    (14, "quadrados ligados e singulares em P_3", _square_constructions),
    (15, "quadrados NT-redutores e rótulos", _nt_reduction),
    (16, "retângulos não singulares e quadrado UD", _counterexamples),
    (17, "Todd–Coxeter e forma normal de Smith", _tooling),
)


def run_acceptance(cfg: RunConfig | None = None, include_slow: bool = False) -> pd.DataFrame:
    cfg = cfg or RunConfig.default()
    rows = []
    for number, description, check in tqdm(CRITERIA, disable=not cfg.progress, desc="aceitação"):
        try:
            passed, detail = check(cfg, include_slow)
        except ValueError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        logger.info("critério %d: %s (%s)", number, "ok" if passed else "FALHOU", detail)
        rows.append({"criterion": number, "description": description, "passed": passed, "detail": detail})
    return pd.DataFrame(rows, columns=["criterion", "description", "passed", "detail"])
