"""Model checking of prenex formulas on graphs by exhaustive expansion.

Two engines share the same Tarskian semantics (an existential over an empty
domain is false, a universal is true):

``naive``
    Nested iteration over the prefix in order, evaluating the matrix on each
    complete assignment.  Slow but obviously correct; used as the reference.
``fast`` (default)
    The prefix is pushed into the matrix where that is an equivalence on
    every domain, including the empty one (an existential through a
    disjunction or past conjuncts that do not mention its variable, dually
    for universals), cheaper conjuncts are ordered first, and the result is
    compiled to Python generator expressions.  Worst case is still
    ``n ** (number of variables)``, but relativised formulas such as the
    gadget formulas finish in milliseconds instead of hours.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .formula import (EXISTS, FORALL, Adj, And, Const, Eq, Formula, FormulaError, Not, Or,
                      Quantifier, evaluate_matrix, nnf, open_formula)
from .graph import Graph


class EvalCounter:
    """Counts matrix evaluations (naive engine) or evaluations of maximal
    quantifier-free subformulas (fast engine)."""

    def __init__(self):
        self.evaluations = 0

    def tick(self) -> bool:
        self.evaluations += 1
        return True


def _always() -> bool:
    return True


# -- miniscoping --------------------------------------------------------------

@dataclass(frozen=True)
class _Q:
    quantifier: Quantifier
    var: str
    body: object


@functools.lru_cache(maxsize=None)
def _free(node) -> frozenset:
    if isinstance(node, (Adj, Eq)):
        return frozenset((node.left, node.right))
    if isinstance(node, Const):
        return frozenset()
    if isinstance(node, Not):
        return _free(node.arg)
    if isinstance(node, (And, Or)):
        return frozenset().union(*(_free(c) for c in node.args))
    if isinstance(node, _Q):
        return _free(node.body) - {node.var}
    raise TypeError(node)


def _flatten(node, kind):
    out = []
    for c in node.args:
        if isinstance(c, kind):
            out.extend(_flatten(c, kind))
        else:
            out.append(c)
    return out


def _push(q: Quantifier, x: str, body):
    if x not in _free(body):
        return _Q(q, x, body)
    # a quantifier distributes over its own connective, and jumps the other
    # connective's arguments that do not mention its variable
    dual_kind = And if q is FORALL else Or
    other_kind = Or if q is FORALL else And
    if isinstance(body, dual_kind):
        parts = _flatten(body, dual_kind)
        return dual_kind(tuple(_push(q, x, c) for c in parts))
    if isinstance(body, other_kind):
        parts = _flatten(body, other_kind)
        inside = [c for c in parts if x in _free(c)]
        outside = [c for c in parts if x not in _free(c)]
        inner = _push(q, x, inside[0]) if len(inside) == 1 else _Q(q, x, other_kind(tuple(inside)))
        return other_kind(tuple(outside) + (inner,)) if outside else inner
    return _Q(q, x, body)


def _cost(node) -> tuple:
    if isinstance(node, _Q):
        d, s = _cost(node.body)
        return d + 1, s + 1
    if isinstance(node, (And, Or)):
        costs = [_cost(c) for c in node.args]
        return max(c[0] for c in costs), sum(c[1] for c in costs) + 1
    if isinstance(node, Not):
        return _cost(node.arg)
    return 0, 1


def _order(node):
    if isinstance(node, _Q):
        return _Q(node.quantifier, node.var, _order(node.body))
    if isinstance(node, (And, Or)):
        kind = type(node)
        parts = [_order(c) for c in _flatten(node, kind)]
        parts.sort(key=_cost)
        return kind(tuple(parts))
    return node


def miniscope(f: Formula):
    """Prefix pushed into the NNF matrix; the result mixes matrix nodes and quantifier nodes."""
    body = nnf(f.matrix)
    for q, x in reversed(f.prefix):
        body = _push(q, x, body)
    return _order(body)


# -- code generation -----------------------------------------------------------

def _emit(node, names: dict, instrument: bool) -> str:
    if instrument and _cost(node)[0] == 0:
        return f"(_tick() and {_emit(node, names, False)})"
    if isinstance(node, Adj):
        if node.left == node.right:
            return "False"
        return f"({names[node.right]} in N[{names[node.left]}])"
    if isinstance(node, Eq):
        if node.left == node.right:
            return "True"
        return f"({names[node.left]} == {names[node.right]})"
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Not):
        return f"(not {_emit(node.arg, names, instrument)})"
    if isinstance(node, (And, Or)):
        op = " and " if isinstance(node, And) else " or "
        return "(" + op.join(_emit(c, names, instrument) for c in node.args) + ")"
    if isinstance(node, _Q):
        v = names[node.var]
        body = _emit(node.body, names, instrument)
        if node.var not in _free(node.body):
            if node.quantifier is EXISTS:
                return f"(bool(d{v}) and {body})"
            return f"(not d{v} or {body})"
        fn = "any" if node.quantifier is EXISTS else "all"
        return f"{fn}({body} for {v} in d{v})"
    raise TypeError(node)


@functools.lru_cache(maxsize=2048)
def _compile(f: Formula, instrument: bool = False):
    """Compile ``f`` into ``check(N, _tick, *domains, *free_values)``, or
    ``None`` if the generated code cannot be compiled."""
    names = {v: f"v{i}" for i, v in enumerate(f.free_vars + f.bound_vars)}
    expr = _emit(miniscope(f), names, instrument)
    params = ["N", "_tick"] + [f"d{names[v]}" for v in f.bound_vars] + [names[v] for v in f.free_vars]
    src = f"def _check({', '.join(params)}):\n    return {expr}\n"
    namespace: dict = {}
    try:
        exec(compile(src, "<fomod formula>", "exec"), namespace)
    except (SyntaxError, RecursionError, MemoryError):
        return None
    return namespace["_check"]


# -- public API -----------------------------------------------------------------

def _domains(g: Graph, bound: Sequence[str], restriction: Mapping | None) -> list:
    allv = g.vertices
    if not restriction:
        return [allv] * len(bound)
    unknown = set(restriction) - set(bound)
    if unknown:
        raise FormulaError(f"restricted variable {sorted(unknown)[0]!r} is not quantified")
    out = []
    for v in bound:
        if v in restriction:
            dom = tuple(sorted(set(restriction[v])))
            if any(x not in g for x in dom):
                raise ValueError(f"domain of {v!r} leaves the vertex set")
            out.append(dom)
        else:
            out.append(allv)
    return out


def _check_assignment(g: Graph, f: Formula, assignment: tuple) -> None:
    if len(assignment) != len(f.free_vars):
        raise ValueError(f"formula has {len(f.free_vars)} free variables, assignment has {len(assignment)} vertices")
    for v in assignment:
        if v not in g:
            raise ValueError(f"assigned vertex {v} is not in the graph")


def _naive(g: Graph, f: Formula, env: dict, domains: list, i: int, counter) -> bool:
    if i == len(f.prefix):
        if counter is not None:
            counter.tick()
        def value(atom):
            a, b = env[atom.left], env[atom.right]
            return a == b if isinstance(atom, Eq) else g.adjacent(a, b)
        return evaluate_matrix(f.matrix, value)
    q, x = f.prefix[i]
    for v in domains[i]:
        env[x] = v
        val = _naive(g, f, env, domains, i + 1, counter)
        if val and q is EXISTS:
            return True
        if not val and q is FORALL:
            return False
    return q is FORALL


def models(g: Graph, f: Formula, assignment: Iterable[int] = (), restriction: Mapping | None = None,
           *, engine: str = "fast", counter: EvalCounter | None = None) -> bool:
    """Whether ``(g, assignment) |= f``; free variables take the assigned
    vertices in order, and ``restriction`` optionally narrows the range of
    some quantified variables."""
    assignment = tuple(assignment)
    _check_assignment(g, f, assignment)
    domains = _domains(g, f.bound_vars, restriction)
    fn = _compile(f, counter is not None) if engine == "fast" else None
    if fn is None:
        if engine not in ("fast", "naive"):
            raise ValueError(f"unknown engine {engine!r}")
        env = dict(zip(f.free_vars, assignment))
        return _naive(g, f, env, domains, 0, counter)
    tick = counter.tick if counter is not None else _always
    return fn(g.adjacency, tick, *domains, *assignment)


def leading_universal_block(f: Formula) -> int:
    n = 0
    for q, _ in f.prefix:
        if q is not FORALL:
            break
        n += 1
    return n


def first_violator(g: Graph, u: Sequence[int], f_open: Formula, s: int,
                   engine: str = "fast") -> tuple[tuple | None, int]:
    """Lexicographically least ``s``-tuple ``v`` with ``(g, u v) |/= f_open``
    opened at its first ``s`` variables (which must all be universal).

    The tuple is fixed one coordinate at a time: the least vertex whose
    remaining formula is still falsifiable.  Returns ``(v or None, rank)``
    where ``rank`` is the number of s-tuples up to and including ``v`` in
    lexicographic order (all ``n ** s`` of them if there is no violator).
    """
    u = tuple(u)
    _check_assignment(g, f_open, u)
    if any(q is not FORALL for q, _ in f_open.prefix[:s]):
        raise FormulaError("the violated block must be universal")
    if s == 0:
        return (None, 1) if models(g, f_open, u, engine=engine) else ((), 1)
    if models(g, f_open, u, engine=engine):
        return None, g.n ** s
    vs = g.vertices
    v: tuple = ()
    for i in range(1, s + 1):
        opened = open_formula(f_open, i)
        # a falsifiable prefix always has a falsifiable one-vertex extension
        v += (next(x for x in vs if not models(g, opened, u + v + (x,), engine=engine)),)
    pos = {x: i for i, x in enumerate(vs)}
    rank = 0
    for x in v:
        rank = rank * len(vs) + pos[x]
    return v, rank + 1


def find_violating_tuple(g: Graph, u: Sequence[int], f_open: Formula) -> tuple | None:
    """Least tuple for the leading universal block of ``f_open`` that falsifies it.

    ``f_open`` is a formula opened at the variables bound to ``u``; its
    prefix must start with a universal block (an empty prefix is treated as
    a block of length zero, returning ``()`` iff the formula is false).
    """
    s = leading_universal_block(f_open)
    if s == 0 and f_open.prefix:
        raise FormulaError("the prefix after the opened variables does not start with a universal block")
    v, _ = first_violator(g, u, f_open, s)
    return v
