"""Command-line entry point: ``clawdiamond <subcommand> ...`` or ``python -m clawdiamond``.

Exit codes: 0 success, 1 parse or contract error, 2 refused by a scale guard.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import domino, generators, kernel, reductions, sat, solvers
from .graph import (
    ContractError,
    Graph,
    GraphFormatError,
    induced_subgraph,
    parse_edge_list,
    parse_graph,
    write_graph,
    write_instance,
)
from .obstructions import NoInstance, build_modulator, is_claw_diamond_free, is_hds


class _Fail(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _solution_text(result: solvers.SolveResult) -> str:
    if not result.answer:
        return "SOLUTION no\n"
    lines = ["SOLUTION yes"] + [f"d {u + 1} {v + 1}" for u, v in sorted(result.witness)]
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    _emit(args, _solution_text(solvers.solve_branching(g, args.k)))
    return 0


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.graph))
    result = solvers.brute_force_min_hds(g, args.k, max_subsets=args.max_subsets)
    text = _solution_text(result.result)
    if args.all_minimal:
        text += "".join(
            "m " + " ".join(f"{u + 1}-{v + 1}" for u, v in sorted(f)) + "\n" for f in result.minimal
        )
    _emit(args, text)
    return 0


def cmd_kernelize(args) -> int:
    g = parse_graph(_read(args.graph))
    res = kernel.kernelize_full(g, args.k, max_quads=args.max_quads)
    _emit(args, write_instance(res.graph, res.k))
    if args.layout and res.layout is not None:
        Path(args.layout).write_text(reductions.write_layout(res.layout), encoding="utf-8")
    return 0


def cmd_compress(args) -> int:
    g = parse_graph(_read(args.graph))
    comp = kernel.compress_report(g, args.k)
    header = f"c status {comp.status}\n" if comp.status else ""
    _emit(args, header + kernel.write_annotated(comp.instance))
    return 0


def cmd_decompose(args) -> int:
    g = parse_graph(_read(args.graph))
    d = domino.bag_decomposition(g)
    lines = [f"b {i + 1}: " + " ".join(str(v + 1) for v in sorted(bag)) for i, bag in enumerate(d.bags)]
    _emit(args, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_reduce_sat(args) -> int:
    phi = sat.parse_dimacs(_read(args.cnf))
    if not reductions.is_strict_3sat(phi):
        phi = reductions.cnf_to_3sat(phi)
        print("c input normalized to strict 3SAT", file=sys.stderr)
    if not phi.clauses:
        g, k, layout = Graph(0), 0, None
    else:
        g, k, layout = reductions.sat3_to_graph(phi)
    _emit(args, write_instance(g, k))
    if args.layout and layout is not None:
        Path(args.layout).write_text(reductions.write_layout(layout), encoding="utf-8")
    return 0


def cmd_encode_annotated(args) -> int:
    a = kernel.parse_annotated(_read(args.instance))
    phi, var_map = reductions.annotated_to_cnf(a, max_quads=args.max_quads)
    comments = [f"d {v} {e[0] + 1} {e[1] + 1}" for v, e in sorted(var_map.items())]
    _emit(args, sat.write_dimacs(phi, comments))
    return 0


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    f = parse_edge_list(_read(args.deletions))
    for u, v in f:
        if u >= g.n or v >= g.n or not g.has_edge(u, v):
            raise _Fail(f"deletion {u + 1} {v + 1} is not an edge of the graph")
    ok = is_hds(g, f)
    _emit(args, f"HDS {'yes' if ok else 'no'}\nsize {len(set(f))}\n")
    return 0


def cmd_gen_random(args) -> int:
    _emit(args, write_graph(generators.gen_random(args.seed, args.n, args.p)))
    return 0


def cmd_gen_domino(args) -> int:
    _emit(args, write_graph(generators.gen_domino(args.seed, args.n, args.p)))
    return 0


def cmd_gen_3sat(args) -> int:
    try:
        phi = generators.gen_3sat(args.seed, args.n, args.m)
    except ValueError as exc:
        raise _Fail(str(exc)) from None
    _emit(args, sat.write_dimacs(phi))
    return 0


def check_invariants(g, k: int) -> list[tuple[str, bool, str]]:
    """Run the structural checks of the pipeline on ``(g, k)``; one (name, ok, detail) per check."""
    out = []
    mod = build_modulator(g, k)
    if isinstance(mod, NoInstance):
        out.append(("modulator", True, f"no-instance certified by {len(mod.packing)} edge-disjoint obstructions"))
        return out
    out.append(("modulator-size", len(mod.x) <= 4 * k, f"|X|={len(mod.x)} <= {4 * k}"))
    rest = [v for v in range(g.n) if v not in mod.x]
    sub, _ = induced_subgraph(g, rest)
    out.append(("outside-modulator-free", is_claw_diamond_free(sub), "G - X has no claw or diamond"))
    d = domino.decompose_outside(g, mod.x, check=False)
    report = domino.validate_decomposition(g, d)
    out.append(("bag-decomposition", report.ok, str(report)))
    try:
        att = domino.compute_attachment(g, mod.x, d)
    except domino.ModulatorViolation as exc:
        out.append(("attachment", False, str(exc)))
        return out
    out.append(("attachment", True, f"{len(att.attached_bags())} attached bags"))
    two_nbrs = all(
        att.is_attached(x, b)
        for x in mod.x
        for b, bag in enumerate(d.bags)
        if sum(g.has_edge(x, v) for v in bag) >= 2
    )
    out.append(("two-neighbors-attached", two_nbrs, "bags with >= 2 neighbors of x are attached to x"))
    try:
        comp = kernel.compress_report(g, k)
    except kernel.KernelBoundError as exc:
        out.append(("size-chain", False, str(exc)))
        return out
    out.append(("size-chain", True, " ".join(f"|{key.upper()}|={val}" for key, val in comp.sizes().items())))
    return out


def cmd_check_invariants(args) -> int:
    g = parse_graph(_read(args.graph))
    results = check_invariants(g, args.k)
    _emit(args, "".join(f"{'ok' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in results))
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clawdiamond", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True, k=False):
        p = sub.add_parser(name, help=help_text)
        if graph:
            p.add_argument("graph", help="graph file ('-' for stdin)")
        if k:
            p.add_argument("--k", type=int, required=True, help="deletion budget")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, "decide by bounded search tree", k=True)
    p = add("oracle", cmd_oracle, "decide by exhaustive subset enumeration", k=True)
    p.add_argument("--max-subsets", type=int, default=2_000_000)
    p.add_argument("--all-minimal", action="store_true", help="also list every minimal HDS")
    p = add("kernelize", cmd_kernelize, "full kernel: an equivalent small instance", k=True)
    p.add_argument("--layout", help="write the gadget layout sidecar here")
    p.add_argument("--max-quads", type=int, default=5_000_000)
    add("compress", cmd_compress, "compress to an annotated instance", k=True)
    add("decompose", cmd_decompose, "bags of a claw- and diamond-free graph")
    p = add("reduce-sat", cmd_reduce_sat, "3SAT formula to an edge deletion instance", graph=False)
    p.add_argument("cnf", help="DIMACS cnf file")
    p.add_argument("--layout", help="write the gadget layout sidecar here")
    p = add("encode-annotated", cmd_encode_annotated, "annotated instance to DIMACS cnf", graph=False)
    p.add_argument("instance", help="annotated instance file")
    p.add_argument("--max-quads", type=int, default=5_000_000)
    p = add("verify", cmd_verify, "check a deletion list")
    p.add_argument("deletions", help="file with 'd <u> <v>' lines")
    add("check-invariants", cmd_check_invariants, "run structural checks on an instance", k=True)
    for name, func, size_args in (
        ("gen-random", cmd_gen_random, (("--n", int), ("--p", float))),
        ("gen-domino", cmd_gen_domino, (("--n", int), ("--p", float))),
        ("gen-3sat", cmd_gen_3sat, (("--n", int), ("--m", int))),
    ):
        p = add(name, func, f"seeded generator ({name[4:]})", graph=False)
        p.add_argument("--seed", type=int, default=0)
        for flag, typ in size_args:
            p.add_argument(flag, type=typ, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except solvers.ScaleGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (_Fail, GraphFormatError, sat.FormulaError, ContractError, domino.NotDominoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
