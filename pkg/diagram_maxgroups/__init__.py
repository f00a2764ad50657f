"""Subgrupos maximais de semigrupos livres gerados por idempotentes e projeções em monoides de diagramas."""

from .acceptance import run_acceptance
from .config import RunConfig
from .diagram import multiply, parse_partition
from .io import load_dclass, load_edge_list
from .monoids import make_handle
from .pipeline import build_dclass_artifacts, build_group_artifacts

__all__ = [
    "RunConfig",
    "build_dclass_artifacts",
    "build_group_artifacts",
    "load_dclass",
    "load_edge_list",
    "make_handle",
    "multiply",
    "parse_partition",
    "run_acceptance",
]
