"""Concrete simple graphs and the power graph of a finite abelian group"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from utils import config
from utils.errors import CapExceededError, GroupError
from utils.group_utils import GroupElement, GroupSpec, cyclic_subgroup, elements


@dataclass(frozen=True)
class Graph:
    """Adjacency stored as one bitmask per vertex"""

    vertex_count: int
    rows: Tuple[int, ...]
    labels: Optional[Tuple[GroupElement, ...]] = None

    def __post_init__(self):
        if len(self.rows) != self.vertex_count:
            raise ValueError("one adjacency row per vertex is required")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("one label per vertex is required")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        row = self.rows[v]
        return [u for u in range(self.vertex_count) if row >> u & 1]


def from_edges(vertex_count: int, edges: Iterable[Tuple[int, int]], labels=None) -> Graph:
    rows = [0] * vertex_count
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(vertex_count, tuple(rows), tuple(labels) if labels is not None else None)


def build_power_graph(G: GroupSpec, cap: Optional[int] = None) -> Graph:
    """Edge {a, b} iff a != b and one of them is a multiple of the other"""
    cap = config.ENUM_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(f"power graph of {G}", G.order, cap)
    labels = list(elements(G, cap))
    index = {a: i for i, a in enumerate(labels)}
    rows = [0] * len(labels)
    for i, a in enumerate(labels):
        for b in cyclic_subgroup(G, a):
            j = index[b]
            if j != i:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(len(labels), tuple(rows), tuple(labels))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range for a graph on {g.vertex_count} vertices")


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return bin(g.rows[v]).count("1")


def degree_sequence(g: Graph) -> Tuple[int, ...]:
    """Degrees in non-increasing order"""
    return tuple(sorted((bin(row).count("1") for row in g.rows), reverse=True))


def edge_count(g: Graph) -> int:
    return sum(bin(row).count("1") for row in g.rows) // 2


def vertex_of(g: Graph, element: Sequence[int]) -> int:
    if g.labels is None:
        raise GroupError("graph carries no group element labels")
    try:
        return g.labels.index(tuple(element))
    except ValueError:
        raise GroupError(f"{tuple(element)} is not a vertex label") from None


def edge_list(g: Graph) -> List[Tuple[int, int]]:
    """Edges as sorted (u, v) pairs with u < v"""
    return [(u, v) for u in range(g.vertex_count) for v in g.neighbors(u) if u < v]


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in edge_list(g))


def to_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    graph.add_edges_from(edge_list(g))
    return graph


def is_planar_graph(g: Graph) -> bool:
    is_planar, _ = nx.check_planarity(to_networkx(g))
    return is_planar


def is_flower_graph(g: Graph) -> bool:
    """A block graph (every block a clique) with exactly one cut vertex"""
    graph = to_networkx(g)
    if g.vertex_count == 0 or not nx.is_connected(graph):
        return False
    if len(list(nx.articulation_points(graph))) != 1:
        return False
    for block in nx.biconnected_components(graph):
        k = len(block)
        if graph.subgraph(block).number_of_edges() != k * (k - 1) // 2:
            return False
    return True
