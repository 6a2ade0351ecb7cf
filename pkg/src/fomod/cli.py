"""Command-line front end: ``fomod classify|check|solve|reduce|kernelize|gen``.

Reports are ``key=value`` lines on stdout.  Exit codes: 0 for YES / true,
1 for NO / false, 2 for UNSUPPORTED, 3 for usage, input and other errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .corpus import CORPUS
from .formula import FormulaError, classify, parse, pretty
from .graph import (Graph, GraphError, complete_graph, cycle_graph, empty_graph, path_graph,
                    petersen_graph)
from .graphio import format_edge_list, format_gadget, format_role_table, read_graph, write_graph
from .hitting import extract_hitting_family, kernelize_hitting_family, sunflower_bound
from .modelcheck import models
from .reductions import completion_to_removal, cross_compose_clique, edge_to_vertex, removal_to_completion
from .solvers import ModificationInstance, Status, Variant, dispatch

EXIT_YES, EXIT_NO, EXIT_UNSUPPORTED, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which means UNSUPPORTED here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _emit(key: str, value) -> None:
    if isinstance(value, bool):
        value = "true" if value else "false"
    print(f"{key}={value}")


def load_formula(name_or_path: str):
    """A formula file, or the name of a built-in formula."""
    path = Path(name_or_path)
    if path.exists():
        return parse(path.read_text(encoding="utf-8"))
    if name_or_path in CORPUS:
        return CORPUS[name_or_path]
    raise UsageError(f"no formula file or built-in formula named {name_or_path!r}")


def _format_vertex_set(g: Graph, vs) -> str:
    return ",".join(g.label(v) for v in sorted(vs))


def _format_pairs(g: Graph, pairs) -> str:
    return ",".join(f"{g.label(a)}-{g.label(b)}" for a, b in sorted(pairs))


def _parse_assignment(g: Graph, text: str | None) -> tuple:
    if not text:
        return ()
    by_label = {g.label(v): v for v in g.vertices}
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in by_label:
            raise UsageError(f"unknown vertex {tok!r} in assignment")
        out.append(by_label[tok])
    return tuple(out)


# -- subcommands -------------------------------------------------------------------

def cmd_classify(args) -> int:
    f = load_formula(args.formula)
    pc = classify(f)
    print(f"{pc}, {len(f.variables)} variables")
    return EXIT_YES


def cmd_check(args) -> int:
    g = read_graph(args.graph)
    f = load_formula(args.formula)
    value = models(g, f, _parse_assignment(g, args.assign), engine=args.engine)
    print("true" if value else "false")
    return EXIT_YES if value else EXIT_NO


VARIANTS = {v.value: v for v in Variant}


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    f = load_formula(args.formula)
    inst = ModificationInstance(VARIANTS[args.variant], g, f, args.k)
    out = dispatch(inst, brute_force_fallback=args.brute_force)
    _emit("outcome", out.status.value)
    _emit("variant", inst.variant.value)
    _emit("class", classify(f))
    _emit("prefix", f.quantifier_string or "-")
    _emit("variables", len(f.variables))
    _emit("n", g.n)
    _emit("m", g.m)
    _emit("k", inst.k)
    _emit("method", out.method)
    if out.status is Status.UNSUPPORTED:
        _emit("reason", out.reason)
        return EXIT_UNSUPPORTED
    if out.solution is not None:
        sol = out.solution
        cert = (_format_vertex_set(g, sol.certificate) if inst.variant is Variant.VERTEX_REMOVAL
                else _format_pairs(g, sol.certificate))
        _emit("certificate_size", sol.size)
        _emit("certificate", cert)
        _emit("verified", sol.verified)
    for key, value in out.stats.report().items():
        if key != "method":
            _emit(key, value)
    return EXIT_YES if out.status is Status.YES else EXIT_NO


def _write_instance(prefix: str | None, graph_text: str, formula_text: str, witness_text: str) -> dict:
    if prefix is None:
        return {}
    paths = {"graph_file": f"{prefix}.el", "formula_file": f"{prefix}.fol", "witness_file": f"{prefix}.witness"}
    Path(paths["graph_file"]).write_text(graph_text, encoding="utf-8")
    Path(paths["formula_file"]).write_text(formula_text + "\n", encoding="utf-8")
    Path(paths["witness_file"]).write_text(witness_text, encoding="utf-8")
    return paths


def _print_sections(graph_text: str, formula_text: str, witness_text: str) -> None:
    print("[graph]")
    sys.stdout.write(graph_text)
    print("[formula]")
    print(formula_text)
    print("[witness]")
    sys.stdout.write(witness_text)


def cmd_reduce(args) -> int:
    g = read_graph(args.graph)
    f = load_formula(args.formula)
    if args.kind == "edge-to-vertex":
        red = edge_to_vertex(g, f, args.k)
        graph_text = format_gadget(red.gadget)
        witness = "# vertex ROLE origin; a solution maps back to the origins of its SUBDIVISION vertices\n"
        witness += format_role_table(red.gadget)
    else:
        variant = Variant.EDGE_REMOVAL if args.kind == "removal-to-completion" else Variant.EDGE_COMPLETION
        inst = ModificationInstance(variant, g, f, args.k)
        red = removal_to_completion(inst) if variant is Variant.EDGE_REMOVAL else completion_to_removal(inst)
        graph_text = format_edge_list(red.instance.graph)
        witness = "identity\n"
    out = red.instance
    formula_text = pretty(out.formula)
    _emit("variant", out.variant.value)
    _emit("n", out.graph.n)
    _emit("m", out.graph.m)
    _emit("k", out.k)
    _emit("class", classify(out.formula))
    paths = _write_instance(args.out, graph_text, formula_text, witness)
    for key, value in paths.items():
        _emit(key, value)
    if not paths:
        _print_sections(graph_text, formula_text, witness)
    return EXIT_YES


def cmd_kernelize(args) -> int:
    g = read_graph(args.graph)
    f = load_formula(args.formula)
    fam = extract_hitting_family(g, f)
    kernel = kernelize_hitting_family(fam, args.k)
    _emit("r", len(f.prefix))
    _emit("k", args.k)
    _emit("family_size", len(fam))
    _emit("kernel_size", len(kernel))
    _emit("bound", sunflower_bound(len(f.prefix), args.k))
    _emit("trivially_no", frozenset() in kernel.sets)
    for s in kernel.sets:
        print("set " + " ".join(g.label(v) for v in sorted(s)))
    return EXIT_YES


NAMED_GRAPHS = {
    "petersen": lambda n: petersen_graph(),
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "empty": empty_graph,
}


def cmd_gen_cross_clique(args) -> int:
    graphs = [read_graph(p) for p in args.graphs]
    comp = cross_compose_clique([(g, args.k) for g in graphs])
    inst = comp.instance
    graph_text = format_edge_list(inst.graph)
    formula_text = pretty(inst.formula)
    witness = "# copy INPUT NEW-VERTEX ORIGINAL-VERTEX | apex INPUT NEW-VERTEX\n"
    for i, mp in enumerate(comp.copies):
        witness += "".join(f"copy {i} {w} {graphs[i].label(v)}\n" for v, w in sorted(mp.items()))
        witness += "".join(f"apex {i} {w}\n" for w in comp.apexes[i])
    _emit("variant", inst.variant.value)
    _emit("t", len(graphs))
    _emit("n", inst.graph.n)
    _emit("m", inst.graph.m)
    _emit("k_prime", inst.k)
    _emit("class", classify(inst.formula))
    paths = _write_instance(args.out, graph_text, formula_text, witness)
    for key, value in paths.items():
        _emit(key, value)
    if not paths:
        _print_sections(graph_text, formula_text, witness)
    return EXIT_YES


def cmd_gen_graph(args) -> int:
    g = NAMED_GRAPHS[args.name](args.size)
    if args.out:
        write_graph(g, args.out)
        _emit("graph_file", args.out)
    else:
        sys.stdout.write(format_edge_list(g))
    return EXIT_YES


def cmd_gen_formula(args) -> int:
    if args.name is None:
        for name, f in CORPUS.items():
            print(f"{name}: {pretty(f)}")
        return EXIT_YES
    text = pretty(CORPUS[args.name]) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit("formula_file", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fomod", description="Graph modification towards first-order properties.")
    p.add_argument("--version", action="version", version=f"fomod {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="print the prefix class and variable count of a formula")
    c.add_argument("formula", help="formula file or built-in formula name")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check", help="model-check a formula on a graph")
    c.add_argument("graph")
    c.add_argument("formula")
    c.add_argument("--assign", help="comma-separated vertices for the free variables, in order")
    c.add_argument("--engine", choices=("fast", "naive"), default="fast")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("solve", help="solve a modification instance")
    c.add_argument("variant", choices=sorted(VARIANTS))
    c.add_argument("graph")
    c.add_argument("formula")
    c.add_argument("k", type=int)
    c.add_argument("--brute-force", action="store_true",
                   help="decide unsupported prefix classes by exhaustive search")
    c.set_defaults(func=cmd_solve)

    c = sub.add_parser("reduce", help="transform an instance")
    c.add_argument("kind", choices=("edge-to-vertex", "removal-to-completion", "completion-to-removal"))
    c.add_argument("graph")
    c.add_argument("formula")
    c.add_argument("k", type=int)
    c.add_argument("--out", metavar="PREFIX", help="write PREFIX.el, PREFIX.fol and PREFIX.witness")
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("kernelize", help="hitting-set kernel of a universal formula's vertex-removal instance")
    c.add_argument("graph")
    c.add_argument("formula")
    c.add_argument("k", type=int)
    c.set_defaults(func=cmd_kernelize)

    gen = sub.add_parser("gen", help="generate instances, named graphs or built-in formulas")
    gsub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c = gsub.add_parser("cross-clique", help="compose Clique instances into one vertex-removal instance")
    c.add_argument("graphs", nargs="+", help="graph files, all with the same number of vertices")
    c.add_argument("--k", type=int, required=True, help="clique size")
    c.add_argument("--out", metavar="PREFIX", help="write PREFIX.el, PREFIX.fol and PREFIX.witness")
    c.set_defaults(func=cmd_gen_cross_clique)
    c = gsub.add_parser("graph", help="write a named graph as an edge list")
    c.add_argument("name", choices=sorted(NAMED_GRAPHS))
    c.add_argument("size", type=int, nargs="?", default=0, help="number of vertices (ignored for petersen)")
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_gen_graph)
    c = gsub.add_parser("formula", help="print a built-in formula (all of them without a name)")
    c.add_argument("name", nargs="?", choices=sorted(CORPUS))
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_gen_formula)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors, --help, --version
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    if getattr(args, "k", None) is not None and args.k < 0:
        print("fomod: error: budget must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (UsageError, FormulaError, GraphError, ValueError, OSError) as e:
        print(f"fomod: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
