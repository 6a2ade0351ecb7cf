"""Instance transformations between graph modification problems.

* :func:`edge_to_vertex` - edge removal towards ``f`` becomes vertex removal
  towards ``build_vertex_formula(f)`` on the subdivided, pendant-protected
  gadget graph, with the same budget;
* :func:`removal_to_completion` / :func:`completion_to_removal` - edge
  removal towards ``f`` on ``G`` is edge completion towards the complemented
  formula on the complement graph;
* :func:`cross_compose_clique` - packs many Clique instances of equal size
  into one vertex-removal instance that is a yes-instance iff one of them is.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .formula import FORALL, Formula, FormulaError, build_vertex_formula, complement_formula
from .graph import GadgetGraph, Graph, GraphError, Role, complement, disjoint_union, gadgetize
from .corpus import CLIQUE_NEIGHBORHOOD
from .solvers import ModificationInstance, Variant


@dataclass(frozen=True)
class ReductionOutput:
    """An output instance plus the map from its certificates to certificates
    of the input instance."""
    instance: ModificationInstance
    source: ModificationInstance
    translate: Callable
    gadget: GadgetGraph | None = None

    def translate_back(self, certificate) -> frozenset:
        return frozenset(self.translate(frozenset(certificate)))


def edge_to_vertex(g: Graph, f: Formula, k: int) -> ReductionOutput:
    """Edge removal on ``g`` becomes vertex removal on the gadget graph.

    A vertex solution maps back to the original edges of the deleted
    subdivision vertices; deleted pendants are dropped (they never help).
    """
    if not f.is_sentence:
        raise FormulaError("edge-to-vertex reduction needs a sentence")
    if FORALL not in {q for q, _ in f.prefix}:
        raise FormulaError("edge-to-vertex reduction needs a formula with a universal quantifier")
    source = ModificationInstance(Variant.EDGE_REMOVAL, g, f, k)
    gadget = gadgetize(g, k)
    psi = build_vertex_formula(f)
    instance = ModificationInstance(Variant.VERTEX_REMOVAL, gadget.graph, psi, k)

    def translate(s: frozenset) -> frozenset:
        return frozenset(gadget.origin[v] for v in s if gadget.role[v] is Role.SUBDIVISION)

    return ReductionOutput(instance, source, translate, gadget)


def _identity(pairs: frozenset) -> frozenset:
    return pairs


def removal_to_completion(inst: ModificationInstance) -> ReductionOutput:
    """``(G, k)`` for edge removal towards ``f`` is equivalent to
    ``(co-G, k)`` for edge completion towards the complemented formula;
    pair certificates carry over unchanged."""
    if inst.variant is not Variant.EDGE_REMOVAL:
        raise ValueError(f"expected an edge-removal instance, got {inst.variant.value}")
    out = ModificationInstance(Variant.EDGE_COMPLETION, complement(inst.graph),
                               complement_formula(inst.formula), inst.k)
    return ReductionOutput(out, inst, _identity)


def completion_to_removal(inst: ModificationInstance) -> ReductionOutput:
    """Inverse direction of :func:`removal_to_completion`."""
    if inst.variant is not Variant.EDGE_COMPLETION:
        raise ValueError(f"expected an edge-completion instance, got {inst.variant.value}")
    out = ModificationInstance(Variant.EDGE_REMOVAL, complement(inst.graph),
                               complement_formula(inst.formula), inst.k)
    return ReductionOutput(out, inst, _identity)


@dataclass(frozen=True)
class Composition:
    instance: ModificationInstance
    copies: list        # per input: old id -> new id
    apexes: list        # per input: list of apex vertex ids


def cross_compose_clique(instances: Sequence[tuple[Graph, int]]) -> Composition:
    """One vertex-removal instance that is yes iff some input graph has a
    clique on at least ``k`` vertices.

    Each input (all with ``n`` vertices and the same ``k``) is copied and
    joined to ``n - k + 2`` fresh apex vertices; the target formula says some
    vertex has a clique neighbourhood, and the budget is ``n - k``.
    """
    if not instances:
        raise ValueError("need at least one instance")
    n = instances[0][0].n
    k = instances[0][1]
    for i, (g, ki) in enumerate(instances):
        if g.n != n:
            raise GraphError(f"instance {i} has {g.n} vertices, expected {n}")
        if ki != k:
            raise ValueError(f"instance {i} has k={ki}, expected {k}")
    if not 1 <= k <= n:
        raise ValueError(f"clique size k={k} must satisfy 1 <= k <= n={n}")
    apex_count = n - k + 2
    pieces = []
    for g, _ in instances:
        # copy on ids 0..n-1, apexes n..n+apex_count-1, joined to every copy vertex
        dense = {v: i for i, v in enumerate(g.vertices)}
        edges = [(dense[a], dense[b]) for a, b in g.edges]
        edges += [(n + j, i) for j in range(apex_count) for i in range(n)]
        pieces.append(Graph(range(n + apex_count), edges))
    union, maps = disjoint_union(pieces)
    copies, apexes = [], []
    for (g, _), mp in zip(instances, maps):
        dense = {v: i for i, v in enumerate(g.vertices)}
        copies.append({v: mp[dense[v]] for v in g.vertices})
        apexes.append([mp[n + j] for j in range(apex_count)])
    inst = ModificationInstance(Variant.VERTEX_REMOVAL, union, CLIQUE_NEIGHBORHOOD, n - k)
    return Composition(inst, copies, apexes)


def has_clique(g: Graph, k: int) -> bool:
    """Brute-force clique check."""
    return any(all(g.adjacent(a, b) for a, b in itertools.combinations(c, 2))
               for c in itertools.combinations(g.vertices, k))
