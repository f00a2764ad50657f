"""Grafo de Graham–Houghton da classe D e árvores geradoras nomeadas."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import itertools
from typing import Iterable

import networkx as nx

from . import diagram as dg
from .diagram import Partition
from .green import DClassData
from .monoids import MonoidHandle, restricted_growth_strings


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GHGraph:
    """Grafo de Graham–Houghton: vértices ("I", i) e ("J", j), arestas = E_D."""

    dclass: DClassData
    edges: dict[object, tuple[int, int]]

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(range(self.dclass.row_count))

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(range(self.dclass.column_count))

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(("I", i) for i in self.left)
        g.add_nodes_from(("J", j) for j in self.right)
        for e, (i, j) in self.edges.items():
            g.add_edge(("I", i), ("J", j), idempotent=e)
        return g

    def endpoints(self, e) -> tuple[tuple[str, int], tuple[str, int]]:
        if e not in self.edges:
            raise GraphError(f"Não é aresta do grafo: {self.dclass.format(e)}")
        i, j = self.edges[e]
        return ("I", i), ("J", j)


@dataclass(frozen=True)
class TreeSet:
    edges: frozenset
    kind: str
    scope: frozenset | None = None

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edges


def build_gh_graph(d: DClassData) -> GHGraph:
    return GHGraph(d, {e: d.edge(e) for e in d.idempotents})


def is_connected(g: GHGraph) -> bool:
    return nx.is_connected(g.graph)


def cycle_rank(g: GHGraph) -> int:
    return len(g.edges) - len(g.left) - len(g.right) + nx.number_connected_components(g.graph)


def vertex_strata(g: GHGraph) -> dict[int, tuple[frozenset, frozenset]]:
    """k ↦ (I_k, J_k), pelo NTu da projeção que indexa cada vértice."""
    d = g.dclass
    h = d.handle
    out: dict[int, tuple[set, set]] = {}
    for i, p in enumerate(d.projections):
        k = h.nt_stats(p)[0]
        rows, cols = out.setdefault(k, (set(), set()))
        rows.add(("I", i))
        cols.add(("J", i))
    return {k: (frozenset(a), frozenset(b)) for k, (a, b) in sorted(out.items())}


def induced_scope(g: GHGraph, rows: Iterable[int], cols: Iterable[int]) -> frozenset:
    """Vértices de I_k (k em rows) e J_k (k em cols)."""
    strata = vertex_strata(g)
    out: set = set()
    for k in rows:
        out |= strata.get(k, (frozenset(), frozenset()))[0]
    for k in cols:
        out |= strata.get(k, (frozenset(), frozenset()))[1]
    return frozenset(out)


def verify_spanning_tree(g: GHGraph, t: TreeSet, scope: Iterable | None = None) -> bool:
    nodes = frozenset(g.graph.nodes) if scope is None else frozenset(scope)
    if scope is None and t.scope is not None:
        nodes = t.scope
    if not nodes or len(t.edges) != len(nodes) - 1:
        return False
    sub = nx.Graph()
    sub.add_nodes_from(nodes)
    for e in t.edges:
        if e not in g.edges:
            return False
        a, b = g.endpoints(e)
        if a not in nodes or b not in nodes:
            return False
        sub.add_edge(a, b)
    return nx.is_connected(sub)


def _tree_from_node_pairs(g: GHGraph, pairs: Iterable[tuple], kind: str) -> TreeSet:
    graph = g.graph
    return TreeSet(frozenset(graph.edges[a, b]["idempotent"] for a, b in pairs), kind)


def spanning_tree_bfs(g: GHGraph, root: tuple[str, int] = ("I", 0)) -> TreeSet:
    if not is_connected(g):
        raise GraphError("Grafo de Graham–Houghton desconexo")
    return _tree_from_node_pairs(g, nx.bfs_edges(g.graph, root), "generic")


def spanning_tree_containing(g: GHGraph, required: Iterable, kind: str = "generic-pg") -> TreeSet:
    """Árvore geradora que contém as arestas pedidas (Kruskal com peso 0 nelas)."""
    if not is_connected(g):
        raise GraphError("Grafo de Graham–Houghton desconexo")
    wanted = frozenset(required)
    weighted = g.graph.copy()
    for a, b, data in weighted.edges(data=True):
        data["weight"] = 0 if data["idempotent"] in wanted else 1
    tree = nx.minimum_spanning_tree(weighted, weight="weight", algorithm="kruskal")
    out = _tree_from_node_pairs(g, tree.edges(), kind)
    if not wanted <= out.edges:
        raise GraphError("As arestas exigidas contêm um ciclo")
    return out


def friendliness_tree(d: DClassData, root: int = 0) -> tuple[tuple[int, int], ...]:
    """Arestas (pai, filho) de uma árvore geradora dirigida de F_D com raiz p0."""
    g = nx.Graph()
    g.add_nodes_from(range(len(d.projections)))
    g.add_edges_from(sorted((i, j) for i, j in d.friendly if i != j))
    if not g.number_of_nodes():
        raise GraphError("Classe D sem projeções")
    if not nx.is_connected(g):
        raise GraphError("Relação de amizade desconexa")
    return tuple(nx.bfs_edges(g, root))


# Árvores nomeadas em P_n


def _set_partitions(n: int) -> list[tuple[frozenset[int], ...]]:
    out = []
    for word in restricted_growth_strings(n):
        out.append(dg.equivalence_classes(word))
    return out


def _check_rank(n: int, r: int) -> None:
    if not 1 <= r <= n - 2:
        raise GraphError(f"Posto {r} fora do intervalo 1..{n - 2} para n={n}")


def e_vc(n: int, classes: Iterable[frozenset[int]], chosen: Iterable[int]) -> Partition:
    """e_{V,C}: cada bloco V_i com o ponto inferior c′ de C em V_i; resto em singletons inferiores."""
    cs = set(chosen)
    blocks: list[list[int]] = []
    for block in classes:
        hit = sorted(block & cs)
        if len(hit) != 1:
            raise GraphError(f"C={sorted(cs)} não é transversal de V")
        blocks.append(list(block) + [-hit[0]])
    blocks.extend([-j] for j in range(1, n + 1) if j not in cs)
    return dg.partition_from_blocks(n, blocks)


def interval_kernel(n: int, chosen: Iterable[int]) -> tuple[frozenset[int], ...]:
    """V(C): intervalos [1,c1], (c1,c2], …, (c_{r-1}, n]."""
    cs = sorted(chosen)
    cuts = [0] + cs[:-1] + [n]
    return tuple(frozenset(range(a + 1, b + 1)) for a, b in zip(cuts, cuts[1:]))


def t_lex(n: int, r: int) -> TreeSet:
    _check_rank(n, r)
    edges: set[Partition] = set()
    for classes in _set_partitions(n):
        if len(classes) == r:
            edges.add(e_vc(n, classes, (min(b) for b in classes)))
    for chosen in itertools.combinations(range(1, n + 1), r):
        edges.add(e_vc(n, interval_kernel(n, chosen), chosen))
    return TreeSet(frozenset(edges), "T_lex")


def projections_of_rank(n: int, r: int) -> tuple[Partition, ...]:
    """P(n,r): para cada ker σ, r classes transversais X ∪ X′ e as demais separadas."""
    out = []
    for classes in _set_partitions(n):
        for trans in itertools.combinations(range(len(classes)), r):
            blocks: list[list[int]] = []
            for k, block in enumerate(classes):
                if k in trans:
                    blocks.append(list(block) + [-i for i in block])
                else:
                    blocks.extend([list(block), [-i for i in block]])
            out.append(dg.partition_from_blocks(n, blocks))
    return tuple(sorted(out, key=lambda p: p.labeling))


def stratum(projections: Iterable[Partition], k: int) -> tuple[Partition, ...]:
    return tuple(p for p in projections if dg.ntu(p) == k)


def e_p(p: Partition) -> Partition:
    n = p.degree
    parts = dg.blocks(p)
    trans = sorted((up for up, low in parts if up and low), key=min)
    loose = [up for up, low in parts if up and not low]
    first = list(trans[0]) + [x for b in loose for x in b] + [-i for i in trans[0]]
    blocks = [first] + [list(a) + [-i for i in a] for a in trans[1:]]
    blocks.extend([-i for i in b] for b in loose)
    return dg.partition_from_blocks(n, blocks)


def t_fd(n: int, r: int) -> TreeSet:
    base = t_lex(n, r)
    projections = projections_of_rank(n, r)
    extra = {e_p(p) for k in range(1, n - r) for p in stratum(projections, k)}
    return TreeSet(base.edges | frozenset(extra), "T_fd")


def t_fc(n: int, r: int) -> TreeSet:
    return TreeSet(frozenset(dg.involution(e) for e in t_fd(n, r).edges), "T_fc")


def t_s(n: int, r: int, s: Partition | None = None) -> TreeSet:
    _check_rank(n, r)
    p0 = stratum(projections_of_rank(n, r), 0)
    if s is None:
        s = p0[0]
    if s not in p0:
        raise GraphError(f"s não pertence a P_0({n},{r}): {dg.format_partition(s)}")
    return TreeSet(t_fd(n, r).edges | t_fc(n, r).edges | {s}, "T_s")


def t_pg(n: int, r: int) -> TreeSet:
    return TreeSet(t_fd(n, r).edges | frozenset(projections_of_rank(n, r)), "T_pg")


def t_rank0(n: int) -> TreeSet:
    if n < 2:
        raise GraphError(f"t_rank0 exige n ≥ 2, recebido {n}")
    full = (frozenset(range(1, n + 1)),)
    edges = set()
    for classes in _set_partitions(n):
        lower = [[-i for i in b] for b in classes]
        edges.add(dg.partition_from_blocks(n, [list(full[0])] + lower))
        edges.add(dg.partition_from_blocks(n, [list(b) for b in classes] + [[-i for i in full[0]]]))
    return TreeSet(frozenset(edges), "T_rank0")


def named_tree(kind: str, d: DClassData, g: GHGraph) -> TreeSet:
    """Árvore pelo nome usado na configuração."""
    h: MonoidHandle = d.handle
    n = getattr(h, "n", 0)
    if kind == "bfs":
        return spanning_tree_bfs(g)
    if kind == "bfs-pg":
        return spanning_tree_containing(g, d.projections)
    if h.kind != "Pn":
        raise GraphError(f"Árvore {kind!r} só está definida para P_n")
    if kind == "t_s":
        return t_s(n, d.rank)
    if kind == "t_pg":
        return t_pg(n, d.rank)
    if kind == "t_rank0":
        return t_rank0(n)
    raise GraphError(f"Tipo de árvore desconhecido: {kind!r}")


def to_dot(g: GHGraph, tree: TreeSet | None = None) -> str:
    d = g.dclass
    lines = ["graph gh {", "\tgraph [rankdir=LR];"]
    for side, count in (("I", len(g.left)), ("J", len(g.right))):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for k in range(count):
            lines.append(f'\t\t"{side}{k}" [label="{side.lower()}{k}", shape=circle];')
        lines.append("\t}")
    for e, (i, j) in g.edges.items():
        style = "color=red, penwidth=2" if tree is not None and e in tree.edges else "color=gray"
        lines.append(f'\t"I{i}" -- "J{j}" [{style}, tooltip="{d.format(e)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dict(h: MonoidHandle, t: TreeSet) -> dict:
    return {"kind": t.kind, "edges": sorted(h.format_element(e) for e in t.edges)}


def tree_from_dict(h: MonoidHandle, payload: dict) -> TreeSet:
    return TreeSet(frozenset(h.parse_element(s) for s in payload["edges"]), str(payload["kind"]))
