from __future__ import annotations

from dataclasses import dataclass
import logging

import pandas as pd

from .biorder import LinkedDiamond, SingularWitness, enumerate_linked_diamonds, enumerate_singular_squares
from .config import RunConfig
from .ghgraph import GHGraph, TreeSet, build_gh_graph, cycle_rank, friendliness_tree, is_connected, named_tree
from .green import DClassData, stratum_projections, strata_table
from .groupid import (
    IdentifyHints,
    Verdict,
    identify,
    permutation_label_assignment,
    render_verdict,
    simplify_group,
)
from .io import load_dclass, load_edge_list
from .monoids import AdjacencySemigroup, MonoidHandle, make_handle
from .present import (
    GroupPresentation,
    presn_ig,
    presn_pg_linked,
    presn_pg_squares,
    presn_pg_triangles,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DClassArtifacts:
    handle: MonoidHandle
    dclass: DClassData
    graph: GHGraph
    strata: pd.DataFrame
    summary: dict


@dataclass(frozen=True)
class GroupArtifacts:
    config: RunConfig
    dclass: DClassData
    graph: GHGraph
    tree: TreeSet | None
    friendliness: tuple[tuple[int, int], ...]
    squares: tuple[SingularWitness, ...]
    diamonds: tuple[LinkedDiamond, ...]
    presentation: GroupPresentation
    simplified: GroupPresentation
    hints: IdentifyHints
    verdict: Verdict

    @property
    def rendered(self) -> str:
        return render_verdict(self.verdict)


def load_handle(cfg: RunConfig) -> MonoidHandle:
    if cfg.kind == "Adjacency":
        pairs, isolated = load_edge_list(cfg.graph)
        return AdjacencySemigroup.from_edges(pairs, isolated)
    return make_handle(cfg.kind, cfg.n, degree_cap=cfg.degree_cap)


def _middle_rank(h: MonoidHandle, r: int) -> bool:
    return h.kind == "Pn" and 1 <= r <= h.n - 2


def resolve_tree_kind(cfg: RunConfig, h: MonoidHandle) -> str:
    """Árvore padrão: T_s / T_rank0 para IG em P_n, T_pg para PG em P_n, busca em largura no resto."""
    if cfg.tree != "auto":
        return cfg.tree
    if cfg.family == "ig":
        if _middle_rank(h, cfg.rank):
            return "t_s"
        if h.kind == "Pn" and cfg.rank == 0 and h.n >= 2:
            return "t_rank0"
        return "bfs"
    return "t_pg" if _middle_rank(h, cfg.rank) else "bfs-pg"


def identification_hints(cfg: RunConfig, d: DClassData, p: GroupPresentation) -> IdentifyHints:
    h = d.handle
    if not _middle_rank(h, d.rank):
        return IdentifyHints()
    labels = permutation_label_assignment(d, p)
    if cfg.family != "ig":
        return IdentifyHints(symmetric_degree=d.rank, labels=labels)
    p1 = sorted(stratum_projections(d, 1), key=lambda t: t.labeling)
    choices = tuple(f"a[{d.format(t)}]" for t in p1[:2])
    return IdentifyHints(symmetric_degree=d.rank, z_cross=True, labels=labels, quotient_choices=choices)


def build_dclass_artifacts(cfg: RunConfig, handle: MonoidHandle | None = None) -> DClassArtifacts:
    cfg.validate(require_graph=handle is None)
    h = handle if handle is not None else load_handle(cfg)
    d = load_dclass(h, cfg.rank, cfg.cache_dir, use_cache=cfg.use_cache)
    g = build_gh_graph(d)
    summary = {
        "monoid": h.label,
        "rank": d.rank,
        "D": len(d.elements),
        "P_D": len(d.projections),
        "E_D": len(d.idempotents),
        "I": d.row_count,
        "J": d.column_count,
        "connected": is_connected(g),
        "cycle_rank": cycle_rank(g),
    }
    return DClassArtifacts(h, d, g, strata_table(d), summary)


def build_group_artifacts(cfg: RunConfig, handle: MonoidHandle | None = None) -> GroupArtifacts:
    base = build_dclass_artifacts(cfg, handle)
    d, g = base.dclass, base.graph

    tree: TreeSet | None = None
    ftree: tuple[tuple[int, int], ...] = ()
    squares: tuple[SingularWitness, ...] = ()
    diamonds: tuple[LinkedDiamond, ...] = ()
    if cfg.family in ("ig", "pg"):
        tree = named_tree(resolve_tree_kind(cfg, base.handle), d, g)
        squares = enumerate_singular_squares(d, threads=cfg.threads, progress=cfg.progress)
        builder = presn_ig if cfg.family == "ig" else presn_pg_squares
        p = builder(d, tree, squares)
    else:
        ftree = friendliness_tree(d)
        diamonds = enumerate_linked_diamonds(d, progress=cfg.progress)
        builder = presn_pg_linked if cfg.family == "pg-linked" else presn_pg_triangles
        p = builder(d, diamonds, ftree)

    simplified = simplify_group(p, cfg.tietze_budget, cfg.max_substitution_length, cfg.max_cosets)
    hints = identification_hints(cfg, d, p)
    verdict = identify(
        p,
        hints,
        budget=cfg.tietze_budget,
        max_substitution_length=cfg.max_substitution_length,
        max_cosets=cfg.max_cosets,
    )
    logger.info("%s posto %d (%s): %s", base.handle.label, d.rank, cfg.family, render_verdict(verdict))
    return GroupArtifacts(
        config=cfg,
        dclass=d,
        graph=g,
        tree=tree,
        friendliness=ftree,
        squares=squares,
        diamonds=diamonds,
        presentation=p,
        simplified=simplified,
        hints=hints,
        verdict=verdict,
    )
