"""Solvers for graph modification towards a first-order property.

Given a graph ``G``, a sentence ``f`` and a budget ``k``, the four problem
variants ask for at most ``k`` vertex deletions, edge deletions, edge
additions or pair toggles after which the graph models ``f``.

* :func:`solve_vertex_sigma3` - bounded search for prefixes ``E*A*E*``;
* :func:`solve_edge_sigma2` - bounded search for prefixes ``E*A*``
  (edge removal and editing; completion goes through the complement);
* :func:`solve_sigma1` - polynomial algorithms for purely existential formulas;
* :func:`solve_vertex_pi1` - hitting-set kernel plus bounded search for purely
  universal formulas;
* :func:`brute_force` - exhaustive reference oracle;
* :func:`dispatch` - picks the strongest method the written prefix permits.

Every returned :class:`Solution` has been re-checked with the model checker;
a failing check raises :class:`VerificationError`.
"""
from __future__ import annotations

import enum
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterable

from .formula import Formula, FormulaError, classify, complement_formula, open_formula, prefix_matches
from .graph import EditMode, Graph, complement, delete_vertices, edit_edges, normalize_pairs
from .hitting import (HitStats, HittingFamily, extract_hitting_family, hitting_set,  # noqa: F401
                      kernelize_hitting_family, sunflower_bound)
from .modelcheck import first_violator, models


class Variant(enum.Enum):
    VERTEX_REMOVAL = "vertex"
    EDGE_REMOVAL = "edge-removal"
    EDGE_COMPLETION = "edge-completion"
    EDGE_EDITING = "edge-editing"

    @property
    def is_edge(self) -> bool:
        return self is not Variant.VERTEX_REMOVAL


_EDIT_MODE = {
    Variant.EDGE_REMOVAL: EditMode.REMOVE,
    Variant.EDGE_COMPLETION: EditMode.ADD,
    Variant.EDGE_EDITING: EditMode.TOGGLE,
}


class VerificationError(RuntimeError):
    """A certificate failed re-verification (a solver bug, never expected)."""


@dataclass(frozen=True)
class ModificationInstance:
    variant: Variant
    graph: Graph
    formula: Formula
    k: int

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.formula.is_sentence:
            raise FormulaError("the target formula must not have free variables")
        if self.k < 0:
            raise ValueError("budget must be non-negative")


@dataclass
class SearchStats:
    method: str = ""
    nodes: int = 0
    tuples_examined: int = 0
    max_depth: int = 0
    max_branching: int = 0
    outer_tuples: int = 0
    wall_ms: float = 0.0
    # limits the search promised to respect, for assertions
    branching_limit: int | None = None
    depth_limit: int | None = None

    def node(self, depth: int) -> None:
        self.nodes += 1
        if depth > self.max_depth:
            self.max_depth = depth

    def branch(self, width: int) -> None:
        if width > self.max_branching:
            self.max_branching = width

    def report(self) -> dict:
        return {
            "method": self.method,
            "nodes": self.nodes,
            "tuples": self.tuples_examined,
            "depth": self.max_depth,
            "branching": self.max_branching,
            "outer_tuples": self.outer_tuples,
            "wall_ms": f"{self.wall_ms:.3f}",
        }


@dataclass
class Solution:
    variant: Variant
    certificate: frozenset
    stats: SearchStats = field(default_factory=SearchStats)
    verified: bool = False

    @property
    def size(self) -> int:
        return len(self.certificate)

    def sorted_certificate(self) -> list:
        return sorted(self.certificate)


def apply_certificate(variant: Variant, g: Graph, certificate: Iterable) -> Graph:
    variant = Variant(variant)
    if variant is Variant.VERTEX_REMOVAL:
        return delete_vertices(g, certificate)
    return edit_edges(g, certificate, _EDIT_MODE[variant])


def verify(inst: ModificationInstance, certificate: Iterable) -> bool:
    cert = list(certificate)
    if len(set(cert)) > inst.k:
        return False
    try:
        result = apply_certificate(inst.variant, inst.graph, cert)
    except ValueError:
        return False
    return models(result, inst.formula)


def _certify(inst: ModificationInstance, certificate, stats: SearchStats) -> Solution:
    if inst.variant.is_edge:
        certificate = normalize_pairs(inst.graph, certificate)
    else:
        certificate = frozenset(certificate)
    if not verify(inst, certificate):
        raise VerificationError(
            f"{stats.method or 'solver'} produced a certificate that does not verify: {sorted(certificate)}")
    return Solution(inst.variant, certificate, stats, verified=True)


def _check_prefix(f: Formula, pattern: str, what: str) -> None:
    if not f.is_sentence:
        raise FormulaError("the target formula must not have free variables")
    if not prefix_matches(f, pattern):
        raise FormulaError(f"prefix {f.quantifier_string or '(empty)'} is not of the form {what}")


def _leading(f: Formula, q: str) -> int:
    s = f.quantifier_string
    return len(s) - len(s.lstrip(q))


# -- vertex removal, E*A*E* ----------------------------------------------------

def solve_vertex_sigma3(g: Graph, f: Formula, k: int, stats: SearchStats | None = None) -> Solution | None:
    """Bounded search tree for ``f = E x1..xr A y1..ys E z1..zt. chi``.

    For every r-tuple ``u`` (never deleted), repeatedly find the least
    s-tuple ``v`` violating ``f`` opened at ``u`` in the current graph and
    branch on deleting one of the vertices of ``v`` outside ``u``.  Search
    trees have depth at most ``k`` and branching at most ``s``.
    """
    _check_prefix(f, "E*A*E*", "E*A*E*")
    inst = ModificationInstance(Variant.VERTEX_REMOVAL, g, f, k)
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or "vertex-sigma3"
    r = _leading(f, "E")
    rest = open_formula(f, r)
    s = _leading(rest, "A")
    stats.branching_limit, stats.depth_limit = s, k
    start = time.perf_counter()

    def search(u: tuple, deleted: frozenset, failed: set):
        stats.node(len(deleted))
        current = delete_vertices(g, deleted) if deleted else g
        v, examined = first_violator(current, u, rest, s)
        stats.tuples_examined += examined
        if v is None:
            return deleted
        if len(deleted) >= k:
            return None
        options = sorted(set(v) - set(u))
        stats.branch(len(options))
        for x in options:
            child = deleted | {x}
            if child in failed:
                continue
            found = search(u, child, failed)
            if found is not None:
                return found
            failed.add(child)
        return None

    try:
        for u in itertools.product(g.vertices, repeat=r):
            stats.outer_tuples += 1
            found = search(u, frozenset(), set())
            if found is not None:
                return _certify(inst, found, stats)
        return None
    finally:
        stats.wall_ms += (time.perf_counter() - start) * 1000


# -- edge removal / editing, E*A* ------------------------------------------------

class EdgeMode(enum.Enum):
    REMOVAL = "removal"
    EDITING = "editing"


def solve_edge_sigma2(g: Graph, f: Formula, k: int, mode: EdgeMode | str = EdgeMode.REMOVAL,
                      stats: SearchStats | None = None) -> Solution | None:
    """Bounded search tree for ``f = E x1..xr A y1..ys. chi``.

    For every r-tuple ``u``, the least violating s-tuple ``v`` is witnessed
    on the subgraph induced by ``u v``, so every solution extending the
    current edit set must change a pair inside it.  Removal branches on the
    current edges among ``u v``; editing on all pairs among ``u v`` not
    edited yet on this path.  At most ``C(r+s, 2)`` children per node.
    """
    mode = EdgeMode(mode)
    _check_prefix(f, "E*A*", "E*A*")
    variant = Variant.EDGE_REMOVAL if mode is EdgeMode.REMOVAL else Variant.EDGE_EDITING
    inst = ModificationInstance(variant, g, f, k)
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or f"edge-sigma2-{mode.value}"
    r = _leading(f, "E")
    rest = open_formula(f, r)
    s = len(rest.prefix)
    stats.branching_limit, stats.depth_limit = math.comb(r + s, 2), k
    start = time.perf_counter()

    def search(u: tuple, edited: frozenset, failed: set):
        stats.node(len(edited))
        current = Graph(g.vertices, g.edges ^ edited, g.labels) if edited else g
        v, examined = first_violator(current, u, rest, s)
        stats.tuples_examined += examined
        if v is None:
            return edited
        if len(edited) >= k:
            return None
        span = sorted(set(u) | set(v))
        if mode is EdgeMode.REMOVAL:
            options = [p for p in itertools.combinations(span, 2) if p in current.edges]
        else:
            options = [p for p in itertools.combinations(span, 2) if p not in edited]
        stats.branch(len(options))
        for p in options:
            child = edited | {p}
            if child in failed:
                continue
            found = search(u, child, failed)
            if found is not None:
                return found
            failed.add(child)
        return None

    try:
        for u in itertools.product(g.vertices, repeat=r):
            stats.outer_tuples += 1
            found = search(u, frozenset(), set())
            if found is not None:
                return _certify(inst, found, stats)
        return None
    finally:
        stats.wall_ms += (time.perf_counter() - start) * 1000


def solve_edge_completion(g: Graph, f: Formula, k: int, stats: SearchStats | None = None) -> Solution | None:
    """Edge completion through the complement: adding ``F`` to ``g`` gives a
    model of ``f`` iff removing ``F`` from the complement gives a model of
    the complemented formula."""
    _check_prefix(f, "E*A*", "E*A*")
    inst = ModificationInstance(Variant.EDGE_COMPLETION, g, f, k)
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or "edge-sigma2-completion"
    sol = solve_edge_sigma2(complement(g), complement_formula(f), k, EdgeMode.REMOVAL, stats)
    if sol is None:
        return None
    return _certify(inst, sol.certificate, stats)


# -- purely existential formulas ---------------------------------------------------

def solve_sigma1(g: Graph, f: Formula, k: int, variant: Variant | str,
                 stats: SearchStats | None = None) -> Solution | None:
    """Polynomial algorithms for ``f = E x1..xr. chi``.

    Deleting vertices cannot create witnesses, so the vertex variant is a
    yes-instance iff ``g`` already models ``f``.  For edge variants a
    solution only needs to touch pairs inside the vertex set of one witness
    tuple, so it suffices to try every vertex set ``U`` of size
    ``min(r, n)`` and every admissible pair set inside ``U``.
    """
    variant = Variant(variant)
    _check_prefix(f, "E*", "E*")
    inst = ModificationInstance(variant, g, f, k)
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or "sigma1"
    start = time.perf_counter()
    try:
        if variant is Variant.VERTEX_REMOVAL:
            stats.node(0)
            stats.tuples_examined += 1
            return _certify(inst, (), stats) if models(g, f) else None
        r = len(f.prefix)
        mode = _EDIT_MODE[variant]
        for subset in itertools.combinations(g.vertices, min(r, g.n)):
            stats.outer_tuples += 1
            local = g.induced(subset)
            if mode is EditMode.REMOVE:
                candidates = local.sorted_edges()
            elif mode is EditMode.ADD:
                candidates = local.non_edges()
            else:
                candidates = local.pairs()
            for size in range(min(k, len(candidates)) + 1):
                for pairs in itertools.combinations(candidates, size):
                    stats.node(size)
                    stats.tuples_examined += 1
                    if models(edit_edges(local, pairs, mode), f) and verify(inst, pairs):
                        return _certify(inst, pairs, stats)
        return None
    finally:
        stats.wall_ms += (time.perf_counter() - start) * 1000


# -- purely universal formulas -------------------------------------------------------

def solve_vertex_pi1(g: Graph, f: Formula, k: int, stats: SearchStats | None = None) -> Solution | None:
    """Vertex removal for ``f = A x1..xr. chi`` as r-bounded hitting set:
    extract the family of violated tuple vertex sets, shrink it with the
    sunflower kernel, and search for a hitting set of size at most ``k``."""
    _check_prefix(f, "A*", "A*")
    inst = ModificationInstance(Variant.VERTEX_REMOVAL, g, f, k)
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or "vertex-pi1-hitting-set"
    stats.branching_limit, stats.depth_limit = len(f.prefix), k
    start = time.perf_counter()
    try:
        fam = extract_hitting_family(g, f)
        stats.tuples_examined += g.n ** len(f.prefix)
        kernel = kernelize_hitting_family(fam, k)
        hs = HitStats()
        found = hitting_set(kernel, k, hs)
        stats.nodes += hs.nodes
        stats.max_depth = max(stats.max_depth, hs.max_depth)
        stats.branch(hs.max_branching)
        return None if found is None else _certify(inst, found, stats)
    finally:
        stats.wall_ms += (time.perf_counter() - start) * 1000


# -- oracle ----------------------------------------------------------------------------

def candidate_moves(inst: ModificationInstance) -> list:
    g = inst.graph
    if inst.variant is Variant.VERTEX_REMOVAL:
        return list(g.vertices)
    if inst.variant is Variant.EDGE_REMOVAL:
        return g.sorted_edges()
    if inst.variant is Variant.EDGE_COMPLETION:
        return g.non_edges()
    return g.pairs()


def brute_force(inst: ModificationInstance, stats: SearchStats | None = None) -> Solution | None:
    """Try every certificate of size ``0..k`` in order of size, then
    lexicographically; the first one that works is also a smallest one."""
    stats = stats if stats is not None else SearchStats()
    stats.method = stats.method or "brute-force"
    start = time.perf_counter()
    moves = candidate_moves(inst)
    try:
        for size in range(min(inst.k, len(moves)) + 1):
            for cert in itertools.combinations(moves, size):
                stats.node(size)
                if models(apply_certificate(inst.variant, inst.graph, cert), inst.formula):
                    return _certify(inst, cert, stats)
        return None
    finally:
        stats.wall_ms += (time.perf_counter() - start) * 1000


def minimum_solution_size(variant: Variant | str, g: Graph, f: Formula, limit: int | None = None) -> int | None:
    """Smallest certificate size by brute force (``None`` if none up to ``limit``)."""
    inst = ModificationInstance(variant, g, f, 0)
    moves = candidate_moves(inst)
    top = len(moves) if limit is None else min(limit, len(moves))
    for size in range(top + 1):
        for cert in itertools.combinations(moves, size):
            if models(apply_certificate(inst.variant, g, cert), f):
                return size
    return None


# -- dispatch ----------------------------------------------------------------------------

class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNSUPPORTED = "UNSUPPORTED"


@dataclass
class Outcome:
    status: Status
    method: str
    stats: SearchStats
    solution: Solution | None = None
    reason: str = ""


VERTEX_HARDNESS = ("vertex removal is W[2]-hard for some formulas with prefix class Pi 3, and no FPT "
                   "algorithm is known for prefixes outside E*A*E*")
EDGE_HARDNESS = ("edge removal, completion and editing are W[2]-hard for some formulas with prefix class "
                 "Pi 2, and no FPT algorithm is known for prefixes outside E*A*")


def choose_method(inst: ModificationInstance) -> str | None:
    """Name of the method :func:`dispatch` would use, ``None`` if unsupported."""
    f = inst.formula
    if prefix_matches(f, "E*"):
        return "sigma1"
    if inst.variant is Variant.VERTEX_REMOVAL:
        if prefix_matches(f, "A*"):
            return "vertex-pi1-hitting-set"
        if prefix_matches(f, "E*A*E*"):
            return "vertex-sigma3"
        return None
    if prefix_matches(f, "E*A*"):
        return {Variant.EDGE_REMOVAL: "edge-sigma2-removal",
                Variant.EDGE_EDITING: "edge-sigma2-editing",
                Variant.EDGE_COMPLETION: "edge-sigma2-completion"}[inst.variant]
    return None


def dispatch(inst: ModificationInstance, brute_force_fallback: bool = False) -> Outcome:
    """Solve with the strongest method the written prefix admits.

    Exhausting an admissible search is a definitive NO.  Prefixes outside
    the tractable classes are UNSUPPORTED unless ``brute_force_fallback``
    is set, in which case the exhaustive oracle decides.
    """
    method = choose_method(inst)
    stats = SearchStats(method=method or "")
    g, f, k = inst.graph, inst.formula, inst.k
    if method is None:
        hardness = VERTEX_HARDNESS if inst.variant is Variant.VERTEX_REMOVAL else EDGE_HARDNESS
        reason = f"prefix {f.quantifier_string} ({classify(f)}): {hardness}"
        if not brute_force_fallback:
            return Outcome(Status.UNSUPPORTED, "none", stats, reason=reason)
        stats.method = method = "brute-force"
        sol = brute_force(inst, stats)
    elif method == "sigma1":
        sol = solve_sigma1(g, f, k, inst.variant, stats)
    elif method == "vertex-pi1-hitting-set":
        sol = solve_vertex_pi1(g, f, k, stats)
    elif method == "vertex-sigma3":
        sol = solve_vertex_sigma3(g, f, k, stats)
    elif method == "edge-sigma2-completion":
        sol = solve_edge_completion(g, f, k, stats)
    else:
        mode = EdgeMode.REMOVAL if inst.variant is Variant.EDGE_REMOVAL else EdgeMode.EDITING
        sol = solve_edge_sigma2(g, f, k, mode, stats)
    if sol is None:
        return Outcome(Status.NO, method, stats)
    return Outcome(Status.YES, method, stats, solution=sol)
