"""Finite simple undirected graphs with stable integer vertex ids.

Graphs are immutable values: every edit returns a new graph and keeps the
ids (and labels) of the vertices it did not touch.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class Graph:
    __slots__ = ("_vertices", "_edges", "_nbrs", "_labels", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable = (), labels: dict | None = None):
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        nbrs: dict[int, set[int]] = {v: set() for v in vs}
        es = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"loop at vertex {a}")
            if a not in vset or b not in vset:
                raise GraphError(f"edge {a}-{b} uses a vertex outside the graph")
            es.add(_pair(a, b))
            nbrs[a].add(b)
            nbrs[b].add(a)
        self._vertices = vs
        self._edges = frozenset(es)
        self._nbrs = {v: frozenset(n) for v, n in nbrs.items()}
        self._labels = {v: str(lab) for v, lab in (labels or {}).items() if v in vset}
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable = ()) -> "Graph":
        return cls(range(n), edges)

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        """Edges as sorted pairs ``(a, b)`` with ``a < b``."""
        return self._edges

    @property
    def labels(self) -> dict:
        return dict(self._labels)

    @property
    def adjacency(self) -> dict:
        """Vertex -> frozenset of neighbours (shared, do not mutate)."""
        return self._nbrs

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._nbrs

    def neighbors(self, v: int) -> frozenset:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def adjacent(self, a: int, b: int) -> bool:
        return b in self._nbrs[a]

    def label(self, v: int) -> str:
        return self._labels.get(v, str(v))

    def sorted_edges(self) -> list:
        return sorted(self._edges)

    def pairs(self) -> list:
        """All unordered pairs of distinct vertices, lexicographically."""
        return list(itertools.combinations(self._vertices, 2))

    def non_edges(self) -> list:
        return [p for p in self.pairs() if p not in self._edges]

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(keep, (e for e in self._edges if e[0] in keep and e[1] in keep),
                     {v: lab for v, lab in self._labels.items() if v in keep})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._vertices == other._vertices and self._edges == other._edges
                and self._labels == other._labels)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges, tuple(sorted(self._labels.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


class EditMode(enum.Enum):
    REMOVE = "remove"
    ADD = "add"
    TOGGLE = "toggle"


def normalize_pairs(g: Graph, pairs: Iterable) -> frozenset:
    out = set()
    for a, b in pairs:
        if a == b:
            raise GraphError(f"pair {a}-{b} has equal endpoints")
        if a not in g or b not in g:
            raise GraphError(f"pair {a}-{b} uses a vertex outside the graph")
        out.add(_pair(a, b))
    return frozenset(out)


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    s = set(s)
    missing = [v for v in s if v not in g]
    if missing:
        raise GraphError(f"vertex {min(missing)} is not in the graph")
    return g.induced(v for v in g.vertices if v not in s)


def edit_edges(g: Graph, f: Iterable, mode: EditMode = EditMode.TOGGLE) -> Graph:
    f = normalize_pairs(g, f)
    mode = EditMode(mode)
    if mode is EditMode.REMOVE:
        if not f <= g.edges:
            raise GraphError(f"cannot remove non-edge {min(f - g.edges)}")
        edges = g.edges - f
    elif mode is EditMode.ADD:
        if f & g.edges:
            raise GraphError(f"cannot add existing edge {min(f & g.edges)}")
        edges = g.edges | f
    else:
        edges = g.edges ^ f
    return Graph(g.vertices, edges, g.labels)


def complement(g: Graph) -> Graph:
    return Graph(g.vertices, g.non_edges(), g.labels)


def disjoint_union(graphs: Iterable[Graph]) -> tuple[Graph, list[dict]]:
    """Relabel consecutively; also return each input's old->new id map."""
    vertices, edges, labels, maps = [], [], {}, []
    nxt = 0
    for g in graphs:
        mp = {}
        for v in g.vertices:
            mp[v] = nxt
            if v in g.labels:
                labels[nxt] = g.label(v)
            vertices.append(nxt)
            nxt += 1
        edges.extend((mp[a], mp[b]) for a, b in g.edges)
        maps.append(mp)
    return Graph(vertices, edges, labels), maps


# -- gadget ------------------------------------------------------------------

class Role(enum.Enum):
    BRANCHING = "BRANCHING"
    SUBDIVISION = "SUBDIVISION"
    PENDANT = "PENDANT"


@dataclass(frozen=True)
class GadgetGraph:
    """A graph with every edge subdivided and ``k+3`` pendants per original vertex.

    ``origin`` maps a branching vertex to its original vertex, a subdivision
    vertex to its original edge, and a pendant to the original vertex it hangs
    from.
    """
    graph: Graph
    role: dict
    origin: dict
    k: int

    def vertices_with(self, role: Role) -> list:
        return [v for v in self.graph.vertices if self.role[v] is role]

    def subdivision_of(self) -> dict:
        """Original edge -> subdivision vertex."""
        return {self.origin[v]: v for v in self.vertices_with(Role.SUBDIVISION)}


def gadgetize(g: Graph, k: int) -> GadgetGraph:
    if k < 0:
        raise GraphError("budget must be non-negative")
    role: dict = {}
    origin: dict = {}
    edges = []
    labels = {}
    branch = {}
    nxt = 0
    for v in g.vertices:
        branch[v] = nxt
        role[nxt], origin[nxt] = Role.BRANCHING, v
        labels[nxt] = g.label(v)
        nxt += 1
    for a, b in g.sorted_edges():
        role[nxt], origin[nxt] = Role.SUBDIVISION, (a, b)
        labels[nxt] = f"e{g.label(a)}_{g.label(b)}"
        edges += [(branch[a], nxt), (nxt, branch[b])]
        nxt += 1
    for v in g.vertices:
        for j in range(1, k + 4):
            role[nxt], origin[nxt] = Role.PENDANT, v
            labels[nxt] = f"p{g.label(v)}_{j}"
            edges.append((branch[v], nxt))
            nxt += 1
    return GadgetGraph(Graph(range(nxt), edges, labels), role, origin, k)


# -- named graphs ------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on vertices 0..n-1 (one per edge subset of K_n)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for i, p in enumerate(pairs) if mask >> i & 1))
