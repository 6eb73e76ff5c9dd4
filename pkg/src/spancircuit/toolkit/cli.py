"""Command-line front end.

Every solving command prints a verdict line, ``YES weight=<w>`` or ``NO``,
followed by the witness labels in sorted order, one per line.  Exit status
is 0 when the command ran, 1 on usage or input errors and 2 when an internal
consistency check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from ..ctse import CtseInstance, solve_ctse
from ..ctse import is_solution as ctse_ok
from ..decomp import ConflictTree, compose, validate
from ..emwc import EmwcInstance, InvariantError, ParamPair, extra_weight, solve_emwc
from ..emwc import is_solution as emwc_ok
from ..gf2 import is_circuit
from ..graph import MultiGraph
from ..solvers import solve_sc, solve_wmsc
from .formats import (
    FormatError,
    dumps_instance,
    dumps_matrix,
    dumps_tree,
    loads_graph,
    loads_instance,
    loads_tree,
    parse_vertex,
)
from .generators import gen_clique_reduction, gen_random_tree
from ..decomp import BasicNode


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _split(values: Sequence[str] | None) -> list[str]:
    out: list[str] = []
    for v in values or ():
        out += [x for x in v.split(",") if x]
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(out: TextIO, witness, weight) -> None:
    if witness is None:
        print("NO", file=out)
        return
    print(f"YES weight={weight}", file=out)
    for x in sorted(witness):
        print(x, file=out)


def _write(args, text: str, out: TextIO) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        out.write(text)


def _tree_instance(args, kind: str):
    if args.instance:
        got, fields = loads_instance(_read(args.instance))
        if got != kind:
            raise UsageError(f"expected a {kind} instance, got {got}")
        return fields
    if not args.tree:
        raise UsageError("give --tree or --instance")
    fields = {"tree": loads_tree(_read(args.tree)), "terminals": frozenset(_split(args.terminals))}
    if kind == "wmsc":
        if args.budget is None:
            raise UsageError("--budget is required")
        fields["budget"] = args.budget
    return fields


def _graph_instance(args, kind: str):
    if args.instance:
        got, fields = loads_instance(_read(args.instance))
        if got != kind:
            raise UsageError(f"expected a {kind} instance, got {got}")
        return fields
    if not args.graph:
        raise UsageError("give --graph or --instance")
    if args.k is None:
        raise UsageError("-k is required")
    fields = {"graph": loads_graph(_read(args.graph)), "terminals": frozenset(_split(args.terminals)), "k": args.k}
    if kind == "emwc":
        fields["r1"] = frozenset(parse_vertex(v) for v in _split(args.r1))
        fields["r2"] = frozenset(parse_vertex(v) for v in _split(args.r2))
    return fields


def _check_terminals(tree: ConflictTree, terminals) -> None:
    missing = set(terminals) - tree.ground
    if missing:
        raise UsageError(f"unknown terminal labels: {', '.join(sorted(missing))}")


# -- commands -------------------------------------------------------------------


def cmd_solve_msc(args, out):
    f = _tree_instance(args, "wmsc")
    _check_terminals(f["tree"], f["terminals"])
    res = solve_wmsc(f["tree"], None, f["terminals"], f["budget"])
    _emit(out, res.witness, res.weight)


def cmd_solve_sc(args, out):
    f = _tree_instance(args, "scir")
    _check_terminals(f["tree"], f["terminals"])
    res = solve_sc(f["tree"], f["terminals"])
    _emit(out, res.witness, res.weight)


def cmd_solve_emwc(args, out):
    f = _graph_instance(args, "emwc")
    inst = EmwcInstance(f["graph"], f["terminals"], f["r1"], f["r2"], f["k"])
    params = None
    if args.p is not None or args.q is not None:
        base = ParamPair.default(inst.k)
        params = ParamPair(base.p if args.p is None else args.p, base.q if args.q is None else args.q)
    c = solve_emwc(inst, params, mode=args.mode, seed=args.seed)
    _emit(out, c, None if c is None else extra_weight(inst.graph, c, inst.terminals))


def cmd_solve_ctse(args, out):
    f = _graph_instance(args, "ctse")
    inst = CtseInstance(f["graph"], f["terminals"], f["k"])
    c = solve_ctse(inst, mode=args.mode, seed=args.seed)
    _emit(out, c, None if c is None else inst.graph.total_weight(c - inst.terminals))


def cmd_compose(args, out):
    tree = loads_tree(_read(args.tree))
    v = validate(tree)
    if not v:
        raise UsageError("invalid conflict tree: " + "; ".join(v.problems))
    _write(args, dumps_matrix(compose(tree)), out)


def cmd_validate_tree(args, out):
    v = validate(loads_tree(_read(args.tree)))
    print("VALID" if v else "INVALID", file=out)
    for p in v.problems:
        print(p, file=out)


def cmd_gen(args, out):
    if args.what == "random":
        tree = gen_random_tree(args.seed, args.max_nodes, args.max_elements)
        _write(args, dumps_tree(tree), out)
        return
    if not args.graph or args.k is None or not args.partition:
        raise UsageError("clique-reduction needs --graph, -k and --partition")
    g = loads_graph(_read(args.graph))
    parts = [[parse_vertex(v) for v in p.split(",") if v] for p in args.partition.split(";")]
    red = gen_clique_reduction(g, args.k, parts)
    tree = ConflictTree((BasicNode.cographic(red.graph),))
    _write(args, dumps_instance("wmsc", tree=tree, terminals=red.terminals, budget=red.budget), out)


def _read_witness(text: str) -> frozenset[str]:
    labels = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("YES") or line == "NO":
            continue
        labels.append(line)
    return frozenset(labels)


def cmd_verify(args, out):
    kind, f = loads_instance(_read(args.instance))
    c = _read_witness(_read(args.witness))
    ok, weight = False, None
    if kind in ("wmsc", "scir"):
        tree: ConflictTree = f["tree"]
        m = compose(tree)
        if c <= frozenset(m.labels) and f["terminals"] <= c and is_circuit(m, c):
            w = tree.weights()
            weight = sum(w[x] for x in c) if kind == "wmsc" else len(c)
            ok = kind == "scir" or weight <= f["budget"]
    elif kind == "emwc":
        g: MultiGraph = f["graph"]
        inst = EmwcInstance(g, f["terminals"], f["r1"], f["r2"], f["k"])
        if c <= frozenset(g.edges) and emwc_ok(inst, c):
            ok, weight = True, extra_weight(g, c, inst.terminals)
    elif kind == "ctse":
        g = f["graph"]
        inst = CtseInstance(g, f["terminals"], f["k"])
        if c <= frozenset(g.edges) and ctse_ok(inst, c):
            ok, weight = True, g.total_weight(c - inst.terminals)
    _emit(out, c if ok else None, weight)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spancircuit", description="Spanning circuits in regular matroids given as conflict trees.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def tree_cmd(name, fn, help, budget):
        s = sub.add_parser(name, help=help)
        s.add_argument("--tree", help="conflict-tree JSON file")
        s.add_argument("--instance", help="instance JSON file (instead of --tree)")
        s.add_argument("--terminals", nargs="*", help="terminal labels (space or comma separated)")
        if budget:
            s.add_argument("--budget", type=int, help="total weight bound")
        s.set_defaults(fn=fn)

    tree_cmd("solve-msc", cmd_solve_msc, "minimum spanning circuit", True)
    tree_cmd("solve-sc", cmd_solve_sc, "spanning circuit", False)

    def graph_cmd(name, fn, help, emwc):
        s = sub.add_parser(name, help=help)
        s.add_argument("--graph", help="graph text file")
        s.add_argument("--instance", help="instance JSON file (instead of --graph)")
        s.add_argument("--terminals", nargs="*", help="terminal edge labels")
        s.add_argument("-k", type=int, help="budget for the non-terminal weight")
        s.add_argument("--mode", choices=("derandomized", "randomized"), default="derandomized")
        s.add_argument("--seed", type=int)
        if emwc:
            s.add_argument("--r1", nargs="*", help="vertices on the first side")
            s.add_argument("--r2", nargs="*", help="vertices on the second side")
            s.add_argument("-p", type=int, help="override the separation size bound")
            s.add_argument("-q", type=int, help="override the separation side bound")
        s.set_defaults(fn=fn)

    graph_cmd("solve-emwc", cmd_solve_emwc, "minimal cut-set through terminal edges", True)
    graph_cmd("solve-ctse", cmd_solve_ctse, "cheapest cycle through terminal edges", False)

    s = sub.add_parser("compose", help="print the GF(2) matrix of a conflict tree")
    s.add_argument("--tree", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("validate-tree", help="check conflict-tree invariants")
    s.add_argument("--tree", required=True)
    s.set_defaults(fn=cmd_validate_tree)

    s = sub.add_parser("gen", help="generate instances")
    s.add_argument("what", choices=("random", "clique-reduction"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-nodes", type=int, default=3)
    s.add_argument("--max-elements", type=int, default=20)
    s.add_argument("--graph", help="regular source graph (clique-reduction)")
    s.add_argument("-k", type=int, help="clique size (clique-reduction)")
    s.add_argument("--partition", help="parts as 'a,b;c,d' (clique-reduction)")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("verify", help="re-check a witness against an instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--witness", required=True)
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return 1
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 1
    try:
        args.fn(args, out)
    except (UsageError, FormatError, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant failed: {exc}", file=err)
        return 2
    except Exception as exc:  # keep the exit-code contract for anything unforeseen
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
