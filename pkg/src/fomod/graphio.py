"""Reading and writing graphs: plain edge lists and DIMACS ``p edge`` files.

Edge-list files hold one ``u v`` pair per line; a line with a single token
declares a (possibly isolated) vertex; ``#`` starts a comment.  Tokens that
are all non-negative integers are used as vertex ids, otherwise they are
treated as labels and ids are assigned in order of first appearance.

Gadget graphs are written as an edge list followed by a ``[roles]`` section
with ``vertex ROLE origin`` rows; :func:`read_graph` stops at that section.
"""
from __future__ import annotations

import os
from pathlib import Path

from .graph import GadgetGraph, Graph, GraphError, Role

DIMACS_SUFFIXES = (".dimacs", ".col", ".dim")


class GraphFormatError(GraphError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    tokens_per_line = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if line == "[roles]":
            break
        if not line:
            continue
        toks = line.split()
        if len(toks) > 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v' or a single vertex, got {raw.strip()!r}")
        tokens_per_line.append((lineno, toks))

    numeric = all(t.isdigit() for _, toks in tokens_per_line for t in toks)
    ids: dict[str, int] = {}
    labels: dict[int, str] = {}

    def vid(tok: str) -> int:
        if numeric:
            return int(tok)
        if tok not in ids:
            ids[tok] = len(ids)
            labels[ids[tok]] = tok
        return ids[tok]

    vertices, edges, seen = set(), [], set()
    for lineno, toks in tokens_per_line:
        vs = [vid(t) for t in toks]
        vertices.update(vs)
        if len(vs) == 2:
            a, b = vs
            if a == b:
                raise GraphFormatError(f"line {lineno}: loop at vertex {toks[0]}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {toks[0]} {toks[1]}")
            seen.add(key)
            edges.append(key)
    return Graph(vertices, edges, labels)


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: malformed problem line {line!r}")
            try:
                n, m = int(toks[2]), int(toks[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer sizes in {line!r}") from None
        elif toks[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(toks) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge line {line!r}")
            try:
                a, b = int(toks[1]) - 1, int(toks[2]) - 1
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
            if not (0 <= a < n and 0 <= b < n):
                raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n}")
            if a == b:
                raise GraphFormatError(f"line {lineno}: loop at vertex {a + 1}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {a + 1} {b + 1}")
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {toks[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge n m' line")
    if m != len(edges):
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def _is_dimacs(path: Path, text: str) -> bool:
    if path.suffix.lower() in DIMACS_SUFFIXES:
        return True
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith(("c", "#")):
            return line.startswith("p ")
    return False


def read_graph(path: str | os.PathLike) -> Graph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_dimacs(text) if _is_dimacs(path, text) else parse_edge_list(text)


def format_edge_list(g: Graph) -> str:
    name = g.label if g.labels else str
    lines = [f"{name(a)} {name(b)}" for a, b in g.sorted_edges()]
    lines += [name(v) for v in g.vertices if g.degree(v) == 0]
    return "\n".join(lines) + "\n" if lines else ""


def format_dimacs(g: Graph) -> str:
    index = {v: i + 1 for i, v in enumerate(g.vertices)}
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {index[a]} {index[b]}" for a, b in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: str | os.PathLike, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "dimacs" if path.suffix.lower() in DIMACS_SUFFIXES else "edges"
    text = format_dimacs(g) if fmt == "dimacs" else format_edge_list(g)
    path.write_text(text, encoding="utf-8")


def _origin_text(gg: GadgetGraph, v: int) -> str:
    o = gg.origin[v]
    return f"{o[0]}-{o[1]}" if gg.role[v] is Role.SUBDIVISION else str(o)


def format_role_table(gg: GadgetGraph) -> str:
    rows = [f"k {gg.k}"]
    rows += [f"{v} {gg.role[v].value} {_origin_text(gg, v)}" for v in gg.graph.vertices]
    return "\n".join(rows) + "\n"


def format_gadget(gg: GadgetGraph) -> str:
    # ids, not labels: the role table refers to vertex ids
    g = gg.graph
    lines = [f"{a} {b}" for a, b in g.sorted_edges()]
    lines += [str(v) for v in g.vertices if g.degree(v) == 0]
    return "\n".join(lines) + "\n[roles]\n" + format_role_table(gg)


def write_gadget(gg: GadgetGraph, path: str | os.PathLike) -> None:
    Path(path).write_text(format_gadget(gg), encoding="utf-8")


def parse_role_table(text: str) -> tuple[int, dict, dict]:
    k, role, origin = None, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line or line == "[roles]":
            continue
        toks = line.split()
        if toks[0] == "k" and len(toks) == 2:
            k = int(toks[1])
            continue
        if len(toks) != 3:
            raise GraphFormatError(f"role table line {lineno}: expected 'vertex ROLE origin'")
        v, r = int(toks[0]), Role(toks[1])
        role[v] = r
        if r is Role.SUBDIVISION:
            a, b = toks[2].split("-")
            origin[v] = (int(a), int(b))
        else:
            origin[v] = int(toks[2])
    if k is None:
        raise GraphFormatError("role table lacks a 'k' row")
    return k, role, origin


def read_gadget(path: str | os.PathLike) -> GadgetGraph:
    text = Path(path).read_text(encoding="utf-8")
    head, sep, tail = text.partition("[roles]")
    if not sep:
        raise GraphFormatError("no [roles] section")
    g = parse_edge_list(head)
    k, role, origin = parse_role_table(tail)
    if set(role) != set(g.vertices):
        raise GraphFormatError("role table does not cover the vertex set")
    return GadgetGraph(g, role, origin, k)
