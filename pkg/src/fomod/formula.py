"""Prenex first-order formulas over the graph vocabulary {~, =}.

A formula is a quantifier prefix plus a quantifier-free matrix.  Matrices are
trees of frozen dataclasses, so formulas are hashable values and can be used
as cache keys by the model checker.

Concrete syntax::

    free x, y;                 # optional free-variable declaration
    A u. E v.                  # quantifier prefix
    (u ~ v) & !(u = x)         # matrix

Connectives by increasing binding strength: ``<->`` (left assoc), ``->``
(right assoc), ``|``, ``&``, ``!``.  ``a != b`` is sugar for ``!(a = b)``.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Union


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# -- matrix ------------------------------------------------------------------

@dataclass(frozen=True)
class Adj:
    left: str
    right: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Matrix"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    left: "Matrix"
    right: "Matrix"


@dataclass(frozen=True)
class Iff:
    left: "Matrix"
    right: "Matrix"


Atom = Union[Adj, Eq]
Matrix = Union[Adj, Eq, Const, Not, And, Or, Implies, Iff]

TRUE = Const(True)
FALSE = Const(False)


def conj(*args: Matrix) -> Matrix:
    """Conjunction that collapses the 0- and 1-argument cases."""
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(tuple(args))


def disj(*args: Matrix) -> Matrix:
    if not args:
        return FALSE
    if len(args) == 1:
        return args[0]
    return Or(tuple(args))


def children(m: Matrix) -> tuple:
    if isinstance(m, Not):
        return (m.arg,)
    if isinstance(m, (And, Or)):
        return m.args
    if isinstance(m, (Implies, Iff)):
        return (m.left, m.right)
    return ()


def atoms(m: Matrix) -> Iterator[Atom]:
    """Atom occurrences in left-to-right order (with repetitions)."""
    if isinstance(m, (Adj, Eq)):
        yield m
        return
    for c in children(m):
        yield from atoms(c)


def matrix_variables(m: Matrix) -> set[str]:
    out: set[str] = set()
    for a in atoms(m):
        out.add(a.left)
        out.add(a.right)
    return out


def map_atoms(m: Matrix, fn: Callable[[Atom], Matrix]) -> Matrix:
    if isinstance(m, (Adj, Eq)):
        return fn(m)
    if isinstance(m, Const):
        return m
    if isinstance(m, Not):
        return Not(map_atoms(m.arg, fn))
    if isinstance(m, And):
        return And(tuple(map_atoms(c, fn) for c in m.args))
    if isinstance(m, Or):
        return Or(tuple(map_atoms(c, fn) for c in m.args))
    if isinstance(m, Implies):
        return Implies(map_atoms(m.left, fn), map_atoms(m.right, fn))
    if isinstance(m, Iff):
        return Iff(map_atoms(m.left, fn), map_atoms(m.right, fn))
    raise TypeError(f"not a matrix node: {m!r}")


def evaluate_matrix(m: Matrix, atom_value: Callable[[Atom], bool]) -> bool:
    """Evaluate ``m`` given a truth value for every atom."""
    if isinstance(m, (Adj, Eq)):
        return atom_value(m)
    if isinstance(m, Const):
        return m.value
    if isinstance(m, Not):
        return not evaluate_matrix(m.arg, atom_value)
    if isinstance(m, And):
        return all(evaluate_matrix(c, atom_value) for c in m.args)
    if isinstance(m, Or):
        return any(evaluate_matrix(c, atom_value) for c in m.args)
    if isinstance(m, Implies):
        return (not evaluate_matrix(m.left, atom_value)) or evaluate_matrix(m.right, atom_value)
    if isinstance(m, Iff):
        return evaluate_matrix(m.left, atom_value) == evaluate_matrix(m.right, atom_value)
    raise TypeError(f"not a matrix node: {m!r}")


# -- formulas ----------------------------------------------------------------

class Quantifier(enum.Enum):
    FORALL = "A"
    EXISTS = "E"

    def __str__(self) -> str:
        return self.value


FORALL = Quantifier.FORALL
EXISTS = Quantifier.EXISTS


@dataclass(frozen=True)
class Formula:
    prefix: tuple = ()
    matrix: Matrix = TRUE
    free_vars: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((Quantifier(q), v) for q, v in self.prefix))
        object.__setattr__(self, "free_vars", tuple(self.free_vars))
        bound = [v for _, v in self.prefix]
        seen: set[str] = set()
        for v in bound:
            if v in seen:
                raise FormulaError(f"variable {v!r} is quantified twice")
            seen.add(v)
        if len(set(self.free_vars)) != len(self.free_vars):
            raise FormulaError("duplicate free variable")
        clash = seen & set(self.free_vars)
        if clash:
            raise FormulaError(f"variable {sorted(clash)[0]!r} is both free and quantified")
        loose = matrix_variables(self.matrix) - seen - set(self.free_vars)
        if loose:
            raise FormulaError(f"variable {sorted(loose)[0]!r} is neither quantified nor declared free")

    @property
    def bound_vars(self) -> tuple:
        return tuple(v for _, v in self.prefix)

    @property
    def variables(self) -> tuple:
        return self.free_vars + self.bound_vars

    @property
    def is_sentence(self) -> bool:
        return not self.free_vars

    @property
    def quantifier_string(self) -> str:
        return "".join(q.value for q, _ in self.prefix)

    def blocks(self) -> list[tuple[Quantifier, tuple]]:
        """Maximal runs of equal quantifiers."""
        return [(q, tuple(v for _, v in grp))
                for q, grp in itertools.groupby(self.prefix, key=lambda p: p[0])]

    def __str__(self) -> str:
        return pretty(self)


# -- prefix classes ----------------------------------------------------------

class Side(enum.Enum):
    SIGMA = "Sigma"
    PI = "Pi"


@dataclass(frozen=True)
class PrefixClass:
    level: int
    side: Side
    minimal: bool = True

    def within(self, level: int, side: Side) -> bool:
        """Whether formulas of this class also lie in ``side``-``level``.

        Quantifier blocks may be empty, so any class of level s sits inside
        both classes of every level s' > s.
        """
        if level > self.level:
            return True
        if level < self.level:
            return False
        return self.level == 0 or side == self.side

    def __str__(self) -> str:
        if self.level == 0:
            return "Sigma 0 (= Pi 0)"
        return f"{self.side.value} {self.level}"


def classify(f: Formula) -> PrefixClass:
    """Minimal prefix class: one level per block of the written prefix."""
    blocks = f.blocks()
    if not blocks:
        return PrefixClass(0, Side.SIGMA)
    side = Side.SIGMA if blocks[0][0] is EXISTS else Side.PI
    return PrefixClass(len(blocks), side)


def prefix_matches(f: Formula, pattern: str) -> bool:
    """Match the prefix against a pattern over ``E``/``A`` such as ``E*A*E*``."""
    return re.fullmatch(pattern, f.quantifier_string) is not None


# -- syntactic operations ----------------------------------------------------

def open_formula(f: Formula, r: int) -> Formula:
    """Drop the first ``r`` quantifiers; their variables become free (in order)."""
    if r < 0 or r > len(f.prefix):
        raise FormulaError(f"cannot open {r} variables of a prefix of length {len(f.prefix)}")
    opened = tuple(v for _, v in f.prefix[:r])
    return Formula(f.prefix[r:], f.matrix, f.free_vars + opened)


def complement_formula(f: Formula) -> Formula:
    """Rewrite ``a ~ b`` as ``!(a = b) & !(a ~ b)``; G |= f iff co-G |= result."""
    def swap(a: Atom) -> Matrix:
        if isinstance(a, Adj):
            return And((Not(Eq(a.left, a.right)), Not(Adj(a.left, a.right))))
        return a
    return Formula(f.prefix, map_atoms(f.matrix, swap), f.free_vars)


def _eliminate(m: Matrix) -> Matrix:
    if isinstance(m, (Adj, Eq, Const)):
        return m
    if isinstance(m, Not):
        return Not(_eliminate(m.arg))
    if isinstance(m, And):
        return And(tuple(_eliminate(c) for c in m.args))
    if isinstance(m, Or):
        return Or(tuple(_eliminate(c) for c in m.args))
    if isinstance(m, Implies):
        return Or((Not(_eliminate(m.left)), _eliminate(m.right)))
    if isinstance(m, Iff):
        a, b = _eliminate(m.left), _eliminate(m.right)
        return And((Or((Not(a), b)), Or((a, Not(b)))))
    raise TypeError(f"not a matrix node: {m!r}")


def nnf(m: Matrix, negate: bool = False) -> Matrix:
    """Negation normal form using only And/Or/Not-over-atom and constants."""
    if isinstance(m, (Adj, Eq)):
        return Not(m) if negate else m
    if isinstance(m, Const):
        return Const(m.value != negate)
    if isinstance(m, Not):
        return nnf(m.arg, not negate)
    if isinstance(m, And):
        parts = tuple(nnf(c, negate) for c in m.args)
        return Or(parts) if negate else And(parts)
    if isinstance(m, Or):
        parts = tuple(nnf(c, negate) for c in m.args)
        return And(parts) if negate else Or(parts)
    if isinstance(m, Implies):
        return nnf(Or((Not(m.left), m.right)), negate)
    if isinstance(m, Iff):
        return nnf(_eliminate(m), negate)
    raise TypeError(f"not a matrix node: {m!r}")


def _clauses(m: Matrix) -> list[list[Matrix]]:
    # m is in NNF
    if isinstance(m, Const):
        return [] if m.value else [[]]
    if isinstance(m, (Adj, Eq, Not)):
        return [[m]]
    if isinstance(m, And):
        return [cl for c in m.args for cl in _clauses(c)]
    if isinstance(m, Or):
        out: list[list[Matrix]] = [[]]
        for c in m.args:
            out = [left + right for left in out for right in _clauses(c)]
        return out
    raise TypeError(f"unexpected node in NNF: {m!r}")


def from_clauses(clauses: list[list[Matrix]]) -> Matrix:
    if any(not cl for cl in clauses):
        return FALSE
    return conj(*(disj(*cl) for cl in clauses))


def to_cnf(m: Matrix) -> Matrix:
    """Distributive CNF expansion; no fresh variables, no literal merging."""
    return from_clauses(_clauses(nnf(m)))


def cnf_clauses(m: Matrix) -> list[list[Matrix]]:
    """Clause list of a matrix already produced by :func:`to_cnf`."""
    if m == TRUE:
        return []
    if m == FALSE:
        return [[]]
    parts = m.args if isinstance(m, And) else (m,)
    return [list(p.args) if isinstance(p, Or) else [p] for p in parts]


def is_literal(m: Matrix) -> bool:
    return isinstance(m, (Adj, Eq)) or (isinstance(m, Not) and isinstance(m.arg, (Adj, Eq)))


def is_cnf(m: Matrix) -> bool:
    if isinstance(m, Const):
        return True
    parts = m.args if isinstance(m, And) else (m,)
    for p in parts:
        lits = p.args if isinstance(p, Or) else (p,)
        if not lits or not all(is_literal(x) for x in lits):
            return False
    return True


# -- edge-removal to vertex-removal formula ----------------------------------

class VertexFormulas(NamedTuple):
    psi: Formula
    gamma: Formula
    alpha: Formula
    positive: int  # positive adjacency occurrences in the CNF matrix
    negative: int  # negated adjacency occurrences


def _fresh(base: str, used: set[str]) -> str:
    name = base
    while name in used:
        name += "_"
    used.add(name)
    return name


def build_vertex_formula(f: Formula, with_intermediates: bool = False):
    """Formula for the subdivided-graph version of an edge-removal problem.

    On the gadget graph (edges subdivided, k+3 pendants on every original
    vertex), original vertices are exactly those of degree >= 3, and two of
    them are adjacent in the input graph iff they are distinct and share a
    neighbour.  The result relativises ``f`` to that situation and adds an
    "every vertex has a neighbour" guard, which fails as soon as an original
    vertex is deleted.

    Returns ``psi`` or, with ``with_intermediates``, a :class:`VertexFormulas`
    that also carries ``gamma`` (no guard) and ``alpha`` (adjacency rewritten,
    no relativisation).
    """
    if not f.is_sentence:
        raise FormulaError("vertex formula construction needs a sentence")
    if FORALL not in {q for q, _ in f.prefix}:
        raise FormulaError("vertex formula construction needs a formula with a universal quantifier")

    used = set(f.variables)
    clauses = cnf_clauses(to_cnf(f.matrix))
    ys: list[str] = []
    zs: list[str] = []

    def rewrite(lit: Matrix) -> Matrix:
        if isinstance(lit, Adj):
            y = _fresh(f"y{len(ys) + 1}", used)
            ys.append(y)
            a, b = lit.left, lit.right
            return And((Not(Eq(a, b)), Adj(a, y), Adj(y, b)))
        if isinstance(lit, Not) and isinstance(lit.arg, Adj):
            z = _fresh(f"z{len(zs) + 1}", used)
            zs.append(z)
            a, b = lit.arg.left, lit.arg.right
            return Or((Eq(a, b), Not(Adj(a, z)), Not(Adj(z, b))))
        return lit

    chi = from_clauses([[rewrite(lit) for lit in cl] for cl in clauses])
    y_block = [(EXISTS, y) for y in ys]
    z_block = [(FORALL, z) for z in zs]
    tail = y_block + z_block if f.prefix[-1][0] is EXISTS else z_block + y_block
    alpha = Formula(f.prefix + tuple(tail), chi)

    # relativise x_p, ..., x_1 to vertices with three distinct neighbours
    prefix: list = list(tail)
    mu = chi
    for i in range(len(f.prefix), 0, -1):
        q, x = f.prefix[i - 1]
        r1, r2, r3 = (_fresh(f"r{i}_{j}", used) for j in (1, 2, 3))
        distinct = And((Not(Eq(r1, r2)), Not(Eq(r1, r3)), Not(Eq(r2, r3))))
        attached = And((Adj(x, r1), Adj(x, r2), Adj(x, r3)))
        if q is EXISTS:
            mu = And((distinct, attached, mu))
        else:
            mu = Implies(And((distinct, attached)), mu)
        prefix = [(q, x), (q, r1), (q, r2), (q, r3)] + prefix
    gamma = Formula(tuple(prefix), mu)

    # no-isolated-vertex guard: A s1 after the leading E-run, E s2 at the next E
    quants = [q for q, _ in prefix]
    first_all = quants.index(FORALL)
    next_exists = next((j for j in range(first_all, len(quants)) if quants[j] is EXISTS), len(quants))
    s1, s2 = _fresh("s1", used), _fresh("s2", used)
    psi_prefix = (prefix[:first_all] + [(FORALL, s1)] + prefix[first_all:next_exists]
                  + [(EXISTS, s2)] + prefix[next_exists:])
    psi = Formula(tuple(psi_prefix), And((Adj(s1, s2), mu)))

    if not with_intermediates:
        return psi
    positive = sum(isinstance(lit, Adj) for cl in clauses for lit in cl)
    return VertexFormulas(psi, gamma, alpha, positive, len(zs))


# -- printing ----------------------------------------------------------------

_BINARY = (And, Or, Implies, Iff)


def _operand(m: Matrix) -> str:
    if isinstance(m, (Const, Not)):
        return _pm(m)
    return f"({_pm(m)})"


def _pm(m: Matrix) -> str:
    if isinstance(m, Adj):
        return f"{m.left} ~ {m.right}"
    if isinstance(m, Eq):
        return f"{m.left} = {m.right}"
    if isinstance(m, Const):
        return "true" if m.value else "false"
    if isinstance(m, Not):
        return "!" + _operand(m.arg)
    if isinstance(m, (And, Or)):
        if len(m.args) < 2:
            raise FormulaError(f"cannot print {type(m).__name__} with {len(m.args)} arguments")
        op = " & " if isinstance(m, And) else " | "
        return op.join(_operand(c) for c in m.args)
    if isinstance(m, Implies):
        return f"{_operand(m.left)} -> {_operand(m.right)}"
    if isinstance(m, Iff):
        return f"{_operand(m.left)} <-> {_operand(m.right)}"
    raise TypeError(f"not a matrix node: {m!r}")


def pretty_matrix(m: Matrix) -> str:
    return _pm(m)


def pretty(f: Formula) -> str:
    parts = []
    if f.free_vars:
        parts.append("free " + ", ".join(f.free_vars) + ";")
    parts.extend(f"{q.value} {v}." for q, v in f.prefix)
    parts.append(_pm(f.matrix))
    return " ".join(parts)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<op><->|->|!=|[~=!&|().;,])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

_KEYWORDS = {"A", "E", "true", "false", "free"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = mo.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, mo.group(), line, pos - line_start + 1))
        for i, ch in enumerate(mo.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = mo.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


@dataclass
class _Parser:
    toks: list
    pos: int = 0
    seen_vars: list = field(default_factory=list)

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return FormulaSyntaxError(message, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text or tok.kind == "ident" and text not in _KEYWORDS:
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def ident(self) -> _Tok:
        tok = self.next()
        if tok.kind != "ident" or tok.text in _KEYWORDS:
            raise self.error(f"expected a variable, found {tok.text or 'end of input'!r}", tok)
        self.seen_vars.append(tok)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.text == text and tok.kind in ("op", "ident")

    def matrix(self) -> Matrix:
        left = self.implication()
        while self.at("<->"):
            self.next()
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Matrix:
        left = self.disjunction()
        if self.at("->"):
            self.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Matrix:
        args = [self.conjunction()]
        while self.at("|"):
            self.next()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> Matrix:
        args = [self.unary()]
        while self.at("&"):
            self.next()
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Matrix:
        tok = self.peek()
        if self.at("!"):
            self.next()
            return Not(self.unary())
        if self.at("("):
            self.next()
            inner = self.matrix()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text in ("true", "false"):
            self.next()
            return Const(tok.text == "true")
        if tok.kind == "ident" and tok.text in ("A", "E"):
            raise self.error("quantifiers must all appear in the prefix (prenex form)")
        left = self.ident().text
        op = self.next()
        if op.text not in ("~", "=", "!="):
            raise self.error(f"expected '~', '=' or '!=', found {op.text or 'end of input'!r}", op)
        right = self.ident().text
        if op.text == "~":
            return Adj(left, right)
        if op.text == "=":
            return Eq(left, right)
        return Not(Eq(left, right))


def parse(text: str, free: tuple = ()) -> Formula:
    """Parse a prenex formula.  Free variables come from a ``free ...;`` header
    and/or the ``free`` argument (header first)."""
    p = _Parser(_tokenize(text))
    free_vars: list[str] = []
    if p.peek().kind == "ident" and p.peek().text == "free":
        p.next()
        free_vars.append(p.ident().text)
        while p.at(","):
            p.next()
            free_vars.append(p.ident().text)
        p.expect(";")
    free_vars.extend(free)
    if len(set(free_vars)) != len(free_vars):
        raise FormulaError("duplicate free variable")

    prefix = []
    bound: set[str] = set()
    while p.peek().kind == "ident" and p.peek().text in ("A", "E") and p.toks[p.pos + 1].kind == "ident":
        q = Quantifier(p.next().text)
        tok = p.ident()
        if tok.text in bound:
            raise p.error(f"variable {tok.text!r} is quantified twice", tok)
        if tok.text in free_vars:
            raise p.error(f"variable {tok.text!r} is declared free and quantified", tok)
        bound.add(tok.text)
        p.expect(".")
        prefix.append((q, tok.text))

    mark = len(p.seen_vars)
    m = p.matrix()
    if p.peek().kind != "eof":
        raise p.error(f"unexpected {p.peek().text!r}")
    for tok in p.seen_vars[mark:]:
        if tok.text not in bound and tok.text not in free_vars:
            raise p.error(f"variable {tok.text!r} is neither quantified nor declared free", tok)
    return Formula(tuple(prefix), m, tuple(free_vars))
