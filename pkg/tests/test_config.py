from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import pytest

from diagram_maxgroups.config import CACHE_ENV, ConfigError, RunConfig, default_cache_dir


def test_default_is_valid() -> None:
    cfg = RunConfig.default()

    assert cfg.validate() is cfg
    assert (cfg.kind, cfg.n, cfg.rank, cfg.family) == ("Pn", 3, 0, "ig")
    assert cfg.max_cosets == 1_000_000
    assert cfg.degree_cap == 8


def test_cache_dir_from_environment(monkeypatch, tmp_path) -> None:
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_dir() == tmp_path

    monkeypatch.delenv(CACHE_ENV)
    assert default_cache_dir() == Path(".cache") / "diagram_maxgroups"


@pytest.mark.parametrize(
    "changes",
    [
        {"kind": "Sn"},
        {"family": "rig"},
        {"output_format": "xml"},
        {"tree": "t_x"},
        {"n": 9},
        {"n": 0},
        {"rank": 4},
        {"kind": "Tn", "rank": 0},
        {"kind": "Brauer", "n": 4, "rank": 1},
        {"kind": "Tn", "rank": 1, "family": "pg"},
        {"kind": "Brauer", "n": 4, "rank": 0, "tree": "t_s"},
        {"threads": 0},
        {"max_cosets": 0},
    ],
)
def test_invalid_configurations(changes: dict) -> None:
    with pytest.raises(ConfigError):
        replace(RunConfig.default(), **changes).validate()


def test_adjacency_needs_graph_file(tmp_path) -> None:
    cfg = replace(RunConfig.default(), kind="Adjacency", rank=1)

    with pytest.raises(ConfigError):
        cfg.validate()
    with pytest.raises(ConfigError):
        replace(cfg, graph=tmp_path / "nada.txt").validate()
    assert cfg.validate(require_graph=False) is cfg
    with pytest.raises(ConfigError):
        replace(cfg, rank=0).validate(require_graph=False)


def test_adjacency_with_existing_file(tmp_path) -> None:
    path = tmp_path / "k3.txt"
    path.write_text("a b\nb c\na c\n", encoding="utf-8")

    assert replace(RunConfig.default(), kind="Adjacency", rank=1, graph=path).validate()


def test_degree_cap_can_be_raised() -> None:
    cfg = replace(RunConfig.default(), n=9, degree_cap=9)

    assert cfg.validate() is cfg
