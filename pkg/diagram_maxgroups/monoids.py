"""Monoides finitos sobre os quais as classes D são montadas."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import itertools
import logging
from typing import Hashable, Iterable, Iterator, Protocol, Sequence

import networkx as nx
import pandas as pd

from . import diagram as dg
from .diagram import Partition

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 8


class MonoidError(ValueError):
    pass


class MonoidHandle(Protocol):
    kind: str

    @property
    def label(self) -> str: ...

    @property
    def is_star(self) -> bool: ...

    def elements(self) -> tuple: ...

    def idempotents(self) -> tuple: ...

    def projections(self) -> tuple: ...

    def product(self, x, y): ...

    def star(self, x): ...

    def is_idempotent(self, x) -> bool: ...

    def d_key(self, x) -> int: ...

    def r_key(self, x) -> Hashable: ...

    def l_key(self, x) -> Hashable: ...

    def nt_stats(self, x) -> tuple[int, int]: ...

    def format_element(self, x) -> str: ...

    def parse_element(self, text: str): ...


def restricted_growth_strings(length: int) -> Iterator[tuple[int, ...]]:
    """Partições de conjunto de `length` pontos, já em forma canônica."""
    if length == 0:
        yield ()
        return
    word = [0] * length

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            yield tuple(word)
            return
        for v in range(top + 2):
            word[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def perfect_matchings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for tail in perfect_matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + tail


def _check_degree(n: int, cap: int) -> None:
    if n < 1:
        raise MonoidError(f"Grau inválido: {n}")
    if n > cap:
        raise MonoidError(f"Grau {n} excede o limite {cap} (use --degree-cap para aumentar)")


class _EnumeratedHandle:
    """Listas ambientes (elementos, idempotentes, projeções) calculadas uma vez."""

    def elements(self) -> tuple:
        return self._elements

    def idempotents(self) -> tuple:
        return self._idempotents

    def projections(self) -> tuple:
        return self._projections

    @cached_property
    def _elements(self) -> tuple:
        out = tuple(self._enumerate())
        logger.debug("%s: %d elementos", self.label, len(out))
        return out

    @cached_property
    def _idempotents(self) -> tuple:
        out = tuple(x for x in self.elements() if self.is_idempotent(x))
        logger.debug("%s: %d idempotentes", self.label, len(out))
        return out

    @cached_property
    def _projections(self) -> tuple:
        if not self.is_star:
            return ()
        return tuple(e for e in self.idempotents() if self.star(e) == e)

    def is_idempotent(self, x) -> bool:
        return self.product(x, x) == x


class _PartitionFamily(_EnumeratedHandle):
    n: int
    degree_cap: int

    def __post_init__(self) -> None:
        _check_degree(self.n, self.degree_cap)

    @property
    def is_star(self) -> bool:
        return True

    def product(self, x: Partition, y: Partition) -> Partition:
        return dg.multiply(x, y)

    def star(self, x: Partition) -> Partition:
        return dg.involution(x)

    def is_idempotent(self, x: Partition) -> bool:
        return dg.is_idempotent(x)

    def d_key(self, x: Partition) -> int:
        return dg.rank(x)

    def r_key(self, x: Partition) -> Hashable:
        return (dg.ker(x), dg.dom(x))

    def l_key(self, x: Partition) -> Hashable:
        return (dg.coker(x), dg.codom(x))

    def nt_stats(self, x: Partition) -> tuple[int, int]:
        return dg.ntu(x), dg.ntd(x)

    def format_element(self, x: Partition) -> str:
        return dg.format_partition(x)

    def parse_element(self, text: str) -> Partition:
        x = dg.parse_partition(text, self.n)
        if not self.contains(x):
            raise MonoidError(f"Elemento fora de {self.label}: {text!r}")
        return x

    def contains(self, x: Partition) -> bool:
        return x.degree == self.n


@dataclass(frozen=True)
class PartitionMonoid(_PartitionFamily):
    n: int
    degree_cap: int = DEFAULT_DEGREE_CAP
    kind: str = "Pn"

    @property
    def label(self) -> str:
        return f"P_{self.n}"

    def _enumerate(self) -> Iterator[Partition]:
        for word in restricted_growth_strings(2 * self.n):
            yield Partition(self.n, word)


@dataclass(frozen=True)
class BrauerMonoid(_PartitionFamily):
    n: int
    degree_cap: int = DEFAULT_DEGREE_CAP
    kind: str = "Brauer"

    @property
    def label(self) -> str:
        return f"B_{self.n}"

    def _enumerate(self) -> Iterator[Partition]:
        points = list(range(1, self.n + 1)) + [-i for i in range(1, self.n + 1)]
        found = [
            dg.partition_from_blocks(self.n, matching)
            for matching in perfect_matchings(points)
        ]
        yield from sorted(found, key=lambda a: a.labeling)

    def contains(self, x: Partition) -> bool:
        return x.degree == self.n and all(
            len(up) + len(low) == 2 for up, low in dg.blocks(x)
        )


@dataclass(frozen=True)
class TransformationMonoid(_PartitionFamily):
    """T_n dentro de P_n: domínio cheio e cokernel trivial, sem involução."""

    n: int
    degree_cap: int = DEFAULT_DEGREE_CAP
    kind: str = "Tn"

    @property
    def label(self) -> str:
        return f"T_{self.n}"

    @property
    def is_star(self) -> bool:
        return False

    def star(self, x: Partition) -> Partition:
        raise MonoidError(f"{self.label} não tem involução")

    def _enumerate(self) -> Iterator[Partition]:
        found = [self.from_map(f) for f in itertools.product(range(self.n), repeat=self.n)]
        yield from sorted(found, key=lambda a: a.labeling)

    def from_map(self, images: Sequence[int]) -> Partition:
        """Partição de i ↦ images[i-1] (valores 0-based)."""
        image = set(images)
        labels = list(images) + [j if j in image else self.n + j for j in range(self.n)]
        return Partition(self.n, dg.canonical_labels(labels))

    def contains(self, x: Partition) -> bool:
        n = self.n
        return (
            x.degree == n
            and len(dg.dom(x)) == n
            and dg.class_count(dg.coker(x)) == n
        )


@dataclass(frozen=True)
class AdjacencyElement:
    left: str | None
    right: str | None

    @property
    def is_zero(self) -> bool:
        return self.left is None

    def __str__(self) -> str:
        return "0" if self.is_zero else f"({self.left},{self.right})"


ZERO = AdjacencyElement(None, None)


@dataclass(frozen=True)
class AdjacencySemigroup(_EnumeratedHandle):
    """Semigrupo de adjacência de um grafo simétrico e reflexivo, com zero."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    kind: str = "Adjacency"

    def __post_init__(self) -> None:
        known = set(self.vertices)
        for p, q in self.edges:
            if p not in known or q not in known:
                raise MonoidError(f"Aresta com vértice desconhecido: ({p},{q})")
            if (q, p) not in self.edges:
                raise MonoidError(f"Aresta sem simétrica: ({p},{q})")
        for p in self.vertices:
            if (p, p) not in self.edges:
                raise MonoidError(f"Vértice sem laço: {p}")
        if not nx.is_connected(self.graph):
            raise MonoidError("O grafo simples subjacente não é conexo")

    @staticmethod
    def from_edges(pairs: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> "AdjacencySemigroup":
        """Fecha a lista de arestas por simetria e acrescenta os laços."""
        verts = set(vertices)
        edges: set[tuple[str, str]] = set()
        for p, q in pairs:
            verts.update((p, q))
            edges.update({(p, q), (q, p)})
        if not verts:
            raise MonoidError("Grafo sem vértices")
        edges.update((p, p) for p in verts)
        return AdjacencySemigroup(tuple(sorted(verts)), frozenset(edges))

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((p, q) for p, q in self.edges if p != q)
        return g

    @property
    def simple_edge_count(self) -> int:
        return self.graph.number_of_edges()

    @property
    def label(self) -> str:
        return f"A(Γ) com {len(self.vertices)} vértices e {self.simple_edge_count} arestas"

    @property
    def is_star(self) -> bool:
        return True

    def _enumerate(self) -> Iterator[AdjacencyElement]:
        yield ZERO
        for p, q in itertools.product(self.vertices, repeat=2):
            yield AdjacencyElement(p, q)

    def product(self, x: AdjacencyElement, y: AdjacencyElement) -> AdjacencyElement:
        if x.is_zero or y.is_zero or (x.right, y.left) not in self.edges:
            return ZERO
        return AdjacencyElement(x.left, y.right)

    def star(self, x: AdjacencyElement) -> AdjacencyElement:
        return x if x.is_zero else AdjacencyElement(x.right, x.left)

    def d_key(self, x: AdjacencyElement) -> int:
        return 0 if x.is_zero else 1

    def r_key(self, x: AdjacencyElement) -> Hashable:
        return x.left

    def l_key(self, x: AdjacencyElement) -> Hashable:
        return x.right

    def nt_stats(self, x: AdjacencyElement) -> tuple[int, int]:
        return 0, 0

    def format_element(self, x: AdjacencyElement) -> str:
        return str(x)

    def parse_element(self, text: str) -> AdjacencyElement:
        raw = text.strip()
        if raw == "0":
            return ZERO
        if not (raw.startswith("(") and raw.endswith(")")) or raw.count(",") != 1:
            raise MonoidError(f"Elemento de adjacência inválido: {text!r}")
        p, q = (s.strip() for s in raw[1:-1].split(","))
        if p not in self.vertices or q not in self.vertices:
            raise MonoidError(f"Vértice desconhecido em {text!r}")
        return AdjacencyElement(p, q)


def make_handle(
    kind: str,
    n: int = 0,
    *,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    edges: Iterable[tuple[str, str]] | None = None,
) -> MonoidHandle:
    if kind == "Pn":
        return PartitionMonoid(n, degree_cap)
    if kind == "Brauer":
        return BrauerMonoid(n, degree_cap)
    if kind == "Tn":
        return TransformationMonoid(n, degree_cap)
    if kind == "Adjacency":
        if edges is None:
            raise MonoidError("Semigrupo de adjacência exige uma lista de arestas")
        return AdjacencySemigroup.from_edges(edges)
    raise MonoidError(f"Tipo de monoide desconhecido: {kind!r}")


def elements(h: MonoidHandle) -> tuple:
    return h.elements()


def product(h: MonoidHandle, x, y):
    return h.product(x, y)


def star(h: MonoidHandle, x):
    return h.star(x)


def monoid_stats(h: MonoidHandle) -> pd.DataFrame:
    """Contagens de elementos, idempotentes e projeções por classe D (posto)."""
    projections = set(h.projections())
    rows: dict[int, dict[str, int]] = {}
    idempotents = set(h.idempotents())
    for x in h.elements():
        row = rows.setdefault(h.d_key(x), {"elements": 0, "idempotents": 0, "projections": 0})
        row["elements"] += 1
        if x in idempotents:
            row["idempotents"] += 1
            if x in projections:
                row["projections"] += 1
    out = pd.DataFrame.from_dict(rows, orient="index").sort_index()
    out.index.name = "rank"
    return out
