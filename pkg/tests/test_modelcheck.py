import itertools

import pytest

from fomod.corpus import CORPUS, DIAMETER_TWO, NO_ISOLATED, VERTEX_COVER
from fomod.formula import FormulaError, complement_formula, evaluate_matrix, open_formula, parse
from fomod.graph import Graph, all_graphs, complement, complete_graph, empty_graph, path_graph
from fomod.modelcheck import EvalCounter, find_violating_tuple, first_violator, models

from conftest import graphs_up_to


def reference(g, f, assignment=()):
    """Truth table of the matrix over every complete assignment, folded by the prefix."""
    env0 = dict(zip(f.free_vars, assignment))

    def go(i, env):
        if i == len(f.prefix):
            return evaluate_matrix(f.matrix, lambda a: env[a.left] == env[a.right] if type(a).__name__ == "Eq"
                                   else g.adjacent(env[a.left], env[a.right]))
        q, x = f.prefix[i]
        vals = [go(i + 1, {**env, x: v}) for v in g.vertices]
        return any(vals) if q.value == "E" else all(vals)
    return go(0, env0)


def test_spot_values():
    assert models(Graph.from_edges(1), VERTEX_COVER)
    assert models(complete_graph(3), DIAMETER_TWO)
    assert not models(path_graph(4), DIAMETER_TWO)


def test_empty_graph_convention():
    g = Graph()
    assert models(g, VERTEX_COVER)               # universal: true
    assert not models(g, parse("E x. x = x"))    # existential: false
    assert models(g, parse("A x. E y. x ~ y"))


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("engine", ["fast", "naive"])
def test_engines_match_reference(name, engine):
    f = CORPUS[name]
    for g in graphs_up_to(4):
        assert models(g, f, engine=engine) == reference(g, f), (name, g)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_complement_semantics(name):
    f = CORPUS[name]
    cf = complement_formula(f)
    for g in graphs_up_to(4):
        assert models(g, f) == models(complement(g), cf)


def test_opened_formula_assignments():
    f = open_formula(DIAMETER_TWO, 2)
    g = path_graph(4)
    for u, v in itertools.product(g.vertices, repeat=2):
        assert models(g, f, (u, v)) == models(g, f, (u, v), engine="naive") == reference(g, f, (u, v))
    with pytest.raises(ValueError):
        models(g, f, (0,))
    with pytest.raises(ValueError):
        models(g, f, (0, 9))


def test_restriction():
    g = path_graph(4)
    full = {"u": g.vertices, "v": g.vertices, "w": g.vertices}
    assert models(g, DIAMETER_TWO, restriction=full) == models(g, DIAMETER_TWO)
    # restricted to the first three vertices, P4 has diameter 2
    part = {"u": (0, 1, 2), "v": (0, 1, 2)}
    assert models(g, DIAMETER_TWO, restriction=part)
    with pytest.raises(FormulaError):
        models(g, DIAMETER_TWO, restriction={"q": (0,)})


def test_restriction_all_graphs():
    f = CORPUS["clique-neighborhood"]
    for g in graphs_up_to(4):
        dom = {x: g.vertices for x in f.bound_vars}
        assert models(g, f, restriction=dom) == models(g, f)
        if g.n:
            half = {"x": g.vertices[: (g.n + 1) // 2]}
            assert models(g, f, restriction=half) == models(g, f, restriction=half, engine="naive")


def test_counter_bound():
    for g in graphs_up_to(4):
        for f in (VERTEX_COVER, DIAMETER_TWO, NO_ISOLATED):
            for engine in ("naive", "fast"):
                c = EvalCounter()
                models(g, f, engine=engine, counter=c)
                assert c.evaluations <= max(1, g.n ** len(f.prefix))


def test_violating_tuple_examples():
    assert find_violating_tuple(complete_graph(2), (), VERTEX_COVER) == (0, 1)
    assert find_violating_tuple(empty_graph(3), (), VERTEX_COVER) is None
    assert find_violating_tuple(path_graph(4), (), DIAMETER_TWO) == (0, 3)
    with pytest.raises(FormulaError):
        find_violating_tuple(path_graph(2), (), parse("E x. A y. x ~ y"))


def test_violating_tuple_is_least():
    for g in all_graphs(4):
        for f in (VERTEX_COVER, DIAMETER_TWO, NO_ISOLATED):
            s = len(f.prefix) - len(f.quantifier_string.lstrip("A"))
            opened = open_formula(f, s)
            expected = next((v for v in itertools.product(g.vertices, repeat=s)
                             if not models(g, opened, v, engine="naive")), None)
            assert find_violating_tuple(g, (), f) == expected
            v, examined = first_violator(g, (), f, s)
            assert examined <= g.n ** s


def test_violating_tuple_with_outer_assignment():
    f = open_formula(CORPUS["clique-neighborhood"], 1)
    g = path_graph(3)
    assert find_violating_tuple(g, (1,), f) == (0, 2)
    assert find_violating_tuple(g, (0,), f) is None
    assert first_violator(g, (0,), f, 0) == (None, 1)
    assert first_violator(g, (1,), f, 0) == ((), 1)


def test_deterministic():
    g = path_graph(5)
    assert all(find_violating_tuple(g, (), DIAMETER_TWO) == (0, 3) for _ in range(3))
