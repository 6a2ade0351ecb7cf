import random

import pytest

from fomod.corpus import CLIQUE_NEIGHBORHOOD, CLUSTER, CORPUS, HAS_EDGE, NO_ISOLATED, VERTEX_COVER
from fomod.formula import FORALL, FormulaError, build_vertex_formula
from fomod.graph import Graph, GraphError, Role, complete_graph, delete_vertices, empty_graph, path_graph
from fomod.modelcheck import models
from fomod.reductions import (completion_to_removal, cross_compose_clique, edge_to_vertex, has_clique,
                              removal_to_completion)
from fomod.solvers import ModificationInstance, Variant, apply_certificate, brute_force, solve_vertex_sigma3

from conftest import graphs_up_to

K3 = complete_graph(3)


def test_edge_to_vertex_shape():
    red = edge_to_vertex(K3, NO_ISOLATED, 1)
    assert red.instance.variant is Variant.VERTEX_REMOVAL
    assert red.instance.graph.n == 18 and red.instance.k == 1
    assert red.source.variant is Variant.EDGE_REMOVAL
    with pytest.raises(FormulaError):
        edge_to_vertex(K3, HAS_EDGE, 1)


def test_witness_map_drops_pendants():
    red = edge_to_vertex(path_graph(3), NO_ISOLATED, 2)
    gg = red.gadget
    sub = gg.subdivision_of()[(0, 1)]
    pendant = gg.vertices_with(Role.PENDANT)[0]
    assert red.translate_back({sub, pendant}) == frozenset({(0, 1)})


def forall_formulas():
    return [(n, f) for n, f in CORPUS.items() if FORALL in {q for q, _ in f.prefix} and len(f.prefix) <= 3]


@pytest.mark.parametrize("name, f", forall_formulas(), ids=[n for n, _ in forall_formulas()])
def test_edge_to_vertex_equivalence(name, f):
    for g in graphs_up_to(3):
        for k in (0, 1):
            red = edge_to_vertex(g, f, k)
            a = brute_force(red.source)
            b = brute_force(red.instance)
            assert (a is None) == (b is None), (name, g, k)
            if b is not None:
                back = red.translate_back(b.certificate)
                assert len(back) <= k
                assert models(apply_certificate(Variant.EDGE_REMOVAL, g, back), f)


def test_pendant_deletions_keep_gamma():
    rng = random.Random(7)
    for g in graphs_up_to(3):
        for f in (NO_ISOLATED, VERTEX_COVER, CLUSTER):
            parts = build_vertex_formula(f, with_intermediates=True)
            k = rng.randint(0, 2)
            red = edge_to_vertex(g, f, k)
            pendants = red.gadget.vertices_with(Role.PENDANT)
            s = rng.sample(pendants, min(len(pendants), rng.randint(0, k)))
            h = delete_vertices(red.gadget.graph, s)
            assert models(g, f) == models(h, parts.gamma) == models(h, parts.psi)


def test_alpha_restricted_to_branching_vertices():
    for g in graphs_up_to(3):
        parts = build_vertex_formula(NO_ISOLATED, with_intermediates=True)
        gg = edge_to_vertex(g, NO_ISOLATED, 0).gadget
        branch = gg.vertices_with(Role.BRANCHING)
        dom = {x: branch for _, x in NO_ISOLATED.prefix}
        assert models(gg.graph, parts.alpha, restriction=dom) == models(g, NO_ISOLATED)


def test_removal_completion_duality():
    inst = ModificationInstance(Variant.EDGE_REMOVAL, K3, VERTEX_COVER, 3)
    red = removal_to_completion(inst)
    assert red.instance.variant is Variant.EDGE_COMPLETION
    assert red.instance.graph == empty_graph(3)
    a, b = brute_force(inst), brute_force(red.instance)
    assert (a is None) == (b is None)
    assert red.translate_back(b.certificate) == b.certificate
    assert models(apply_certificate(Variant.EDGE_REMOVAL, K3, b.certificate), VERTEX_COVER)
    back = completion_to_removal(red.instance)
    assert back.instance.graph == inst.graph and back.instance.variant is Variant.EDGE_REMOVAL
    for g in graphs_up_to(3):
        assert models(g, back.instance.formula) == models(g, inst.formula)
    with pytest.raises(ValueError):
        removal_to_completion(red.instance)
    with pytest.raises(ValueError):
        completion_to_removal(inst)


def test_cross_composition_examples():
    yes = cross_compose_clique([(K3, 3), (path_graph(3), 3)])
    assert yes.instance.k == 0 and yes.instance.formula == CLIQUE_NEIGHBORHOOD
    assert yes.instance.graph.n == 2 * (3 + 3 - 3 + 2)
    assert solve_vertex_sigma3(yes.instance.graph, yes.instance.formula, 0) is not None
    no = cross_compose_clique([(path_graph(3), 3), (path_graph(3), 3)])
    assert solve_vertex_sigma3(no.instance.graph, no.instance.formula, 0) is None


def test_cross_composition_validation():
    with pytest.raises(GraphError):
        cross_compose_clique([(K3, 2), (path_graph(4), 2)])
    with pytest.raises(ValueError):
        cross_compose_clique([(K3, 2), (K3, 3)])
    with pytest.raises(ValueError):
        cross_compose_clique([(K3, 4)])
    with pytest.raises(ValueError):
        cross_compose_clique([(K3, 0)])
    with pytest.raises(ValueError):
        cross_compose_clique([])


def test_cross_composition_structure():
    comp = cross_compose_clique([(path_graph(4), 2), (empty_graph(4), 2)])
    g = comp.instance.graph
    for i, apexes in enumerate(comp.apexes):
        assert len(apexes) == 4 - 2 + 2
        for a in apexes:
            assert g.neighbors(a) == frozenset(comp.copies[i].values())


def test_has_clique():
    assert has_clique(K3, 3) and not has_clique(path_graph(3), 3)
    assert has_clique(Graph.from_edges(1), 1)
