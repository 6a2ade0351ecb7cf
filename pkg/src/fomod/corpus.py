"""Named example formulas used by the tests, the CLI and the generators."""
from __future__ import annotations

from .formula import Formula, parse
from .graph import Graph

VERTEX_COVER_TEXT = "A u. A v. !(u ~ v)"
DIAMETER_TWO_TEXT = "A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))"
CLIQUE_NEIGHBORHOOD_TEXT = "E x. A y. A z. ((x ~ y) & (x ~ z)) -> ((y = z) | (y ~ z))"
NO_ISOLATED_TEXT = "A u. E v. u ~ v"
CLUSTER_TEXT = "A x. A y. A z. ((x ~ y) & (y ~ z)) -> ((x = z) | (x ~ z))"
HAS_EDGE_TEXT = "E x. E y. x ~ y"
TRIANGLE_FREE_TEXT = "A x. A y. A z. !((x ~ y) & (y ~ z) & (x ~ z))"
W_WITNESS_TEXT = (
    "A x. E y1. E y2. E y3. E y4. "
    "(x ~ y1) & (x ~ y2) & (x ~ y3) & (x ~ y4) & (y1 ~ y2) & (y1 ~ y3) & "
    "(y2 ~ y3) & (y2 ~ y4) & (y3 ~ y4) & !(y1 = y4) & !(y1 ~ y4)"
)

VERTEX_COVER = parse(VERTEX_COVER_TEXT)
DIAMETER_TWO = parse(DIAMETER_TWO_TEXT)
CLIQUE_NEIGHBORHOOD = parse(CLIQUE_NEIGHBORHOOD_TEXT)
NO_ISOLATED = parse(NO_ISOLATED_TEXT)
CLUSTER = parse(CLUSTER_TEXT)
HAS_EDGE = parse(HAS_EDGE_TEXT)
TRIANGLE_FREE = parse(TRIANGLE_FREE_TEXT)
W_WITNESS = parse(W_WITNESS_TEXT)

CORPUS: dict[str, Formula] = {
    "vertex-cover": VERTEX_COVER,
    "diameter-two": DIAMETER_TWO,
    "clique-neighborhood": CLIQUE_NEIGHBORHOOD,
    "no-isolated": NO_ISOLATED,
    "cluster": CLUSTER,
    "has-edge": HAS_EDGE,
    "triangle-free": TRIANGLE_FREE,
    "w-witness": W_WITNESS,
}


def witness_graph() -> Graph:
    """The graph W: vertex 0 (the root x) joined to 1..4, and 1..4 forming
    a K4 minus the edge 1-4."""
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
    return Graph.from_edges(5, edges)
