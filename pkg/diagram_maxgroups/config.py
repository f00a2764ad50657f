from __future__ import annotations

from dataclasses import dataclass
import os
from pathlib import Path

from .groupid import DEFAULT_MAX_COSETS
from .monoids import DEFAULT_DEGREE_CAP
from .present import DEFAULT_MAX_SUBSTITUTION, DEFAULT_TIETZE_BUDGET

CACHE_ENV = "DIAGRAM_MAXGROUPS_CACHE"

MONOID_KINDS = ("Pn", "Brauer", "Tn", "Adjacency")
FAMILIES = ("ig", "pg", "pg-linked", "pg-triangles")
TREE_KINDS = ("auto", "bfs", "bfs-pg", "t_s", "t_pg", "t_rank0")
OUTPUT_FORMATS = ("text", "json", "cas", "dot")


class ConfigError(ValueError):
    pass


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path(".cache") / "diagram_maxgroups")


@dataclass(frozen=True)
class RunConfig:
    kind: str
    n: int
    graph: Path | None
    rank: int
    tree: str
    family: str
    output_format: str
    cache_dir: Path
    max_cosets: int
    threads: int
    degree_cap: int
    tietze_budget: int
    max_substitution_length: int
    progress: bool
    use_cache: bool

    @staticmethod
    def default() -> "RunConfig":
        return RunConfig(
            kind="Pn",
            n=3,
            graph=None,
            rank=0,
            tree="auto",
            family="ig",
            output_format="text",
            cache_dir=default_cache_dir(),
            max_cosets=DEFAULT_MAX_COSETS,
            threads=1,
            degree_cap=DEFAULT_DEGREE_CAP,
            tietze_budget=DEFAULT_TIETZE_BUDGET,
            max_substitution_length=DEFAULT_MAX_SUBSTITUTION,
            progress=False,
            use_cache=True,
        )

    def validate(self, *, require_graph: bool = True) -> "RunConfig":
        """Confere as pré-condições dos módulos antes de qualquer cálculo."""
        _one_of("monoide", self.kind, MONOID_KINDS)
        _one_of("família", self.family, FAMILIES)
        _one_of("árvore", self.tree, TREE_KINDS)
        _one_of("formato", self.output_format, OUTPUT_FORMATS)
        if self.kind == "Adjacency":
            if require_graph and self.graph is None:
                raise ConfigError("Semigrupo de adjacência exige --graph com a lista de arestas")
            if require_graph and not Path(self.graph).is_file():
                raise ConfigError(f"Arquivo de grafo não encontrado: {self.graph}")
            if self.rank != 1:
                raise ConfigError("No semigrupo de adjacência só o posto 1 (classe não nula) é aceito")
        else:
            if not 1 <= self.n <= self.degree_cap:
                raise ConfigError(f"Grau n={self.n} fora de 1..{self.degree_cap}")
            low = 1 if self.kind == "Tn" else 0
            if not low <= self.rank <= self.n:
                raise ConfigError(f"Posto {self.rank} fora de {low}..{self.n} para {self.kind}")
            if self.kind == "Brauer" and (self.n - self.rank) % 2:
                raise ConfigError(f"Em B_{self.n} o posto deve ter a paridade de n, recebido {self.rank}")
        if self.family != "ig" and self.kind == "Tn":
            raise ConfigError(f"A família {self.family!r} exige involução; T_n não tem")
        if self.tree in ("t_s", "t_pg", "t_rank0") and self.kind != "Pn":
            raise ConfigError(f"A árvore {self.tree!r} só existe para P_n")
        for name in ("max_cosets", "threads", "tietze_budget", "max_substitution_length"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} deve ser positivo")
        return self


def _one_of(what: str, value: str, allowed: tuple[str, ...]) -> None:
    if value not in allowed:
        raise ConfigError(f"{what.capitalize()} desconhecido(a): {value!r} (opções: {', '.join(allowed)})")
