"""Graph modification towards first-order properties.

Parse and classify prenex formulas over the graph vocabulary (adjacency and
equality), model-check them, and decide whether at most ``k`` vertex
deletions or edge deletions / additions / toggles make a graph satisfy one.
"""
from .formula import (Formula, FormulaError, FormulaSyntaxError, PrefixClass, Side, build_vertex_formula,
                      classify, complement_formula, open_formula, parse, pretty)
from .graph import (EditMode, GadgetGraph, Graph, GraphError, Role, complement, delete_vertices, edit_edges,
                    gadgetize)
from .graphio import read_graph, write_graph
from .modelcheck import find_violating_tuple, models
from .solvers import (ModificationInstance, Outcome, Solution, Status, Variant, brute_force, dispatch,
                      solve_edge_sigma2, solve_sigma1, solve_vertex_pi1, solve_vertex_sigma3)

__version__ = "0.1.0"

__all__ = [
    "Formula", "FormulaError", "FormulaSyntaxError", "PrefixClass", "Side", "build_vertex_formula",
    "classify", "complement_formula", "open_formula", "parse", "pretty",
    "EditMode", "GadgetGraph", "Graph", "GraphError", "Role", "complement", "delete_vertices", "edit_edges",
    "gadgetize", "read_graph", "write_graph", "find_violating_tuple", "models",
    "ModificationInstance", "Outcome", "Solution", "Status", "Variant", "brute_force", "dispatch",
    "solve_edge_sigma2", "solve_sigma1", "solve_vertex_pi1", "solve_vertex_sigma3",
]
