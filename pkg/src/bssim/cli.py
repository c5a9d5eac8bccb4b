"""Command-line frontend.

Subcommands: run, profile, eval, compile, verify, explore, paths.
Exit status: 0 success/accept, 1 reject, 2 usage error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import Rational, parse_rational
from .circuits import Circuit, decide_cdp, eval_circuit, format_circuit, parse_circuit
from .compiler import CompileBounds, compile_machine, verify_compilation
from .errors import (
    ConcreteDivisionByZero,
    ParseError,
    SymbolicDivisionByZero,
    UsageError,
)
from .exploration import export_dot, reachable_graph, symbolic_paths
from .machine import Machine, RunLimits, RunStatus, check_budget, parse_machine, run
from .report import ReportDocument, run_row, to_json, to_table

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _parse_vector(text: str) -> list[Rational]:
    text = text.strip()
    if not text:
        return []
    return [parse_rational(piece) for piece in text.split(",")]


def _load_machine(path: str) -> Machine:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_machine(fh.read())


def _load_circuit(path: str) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def _load_vectors(path: str) -> list[list[Rational]]:
    vectors = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            pos = raw.find("#")
            line = (raw if pos < 0 else raw[:pos]).strip()
            if line:
                vectors.append(_parse_vector(line))
    return vectors


def _emit(doc: ReportDocument, fmt: str, out=sys.stdout) -> None:
    out.write(to_json(doc) if fmt == "json" else to_table(doc))


def _cmd_run(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    x = _parse_vector(args.input)
    limits = RunLimits(
        max_steps=args.max_steps,
        max_weak_space=args.max_weak_space,
        max_unit_space=args.max_unit_space,
    )
    result = run(machine, x, limits, trace=args.trace)
    verdict = None
    if args.budget:
        verdict = check_budget(result, len(x), args.budget)
    row = run_row(tuple(str(v) for v in x), result, verdict, with_trace=args.trace)
    _emit(ReportDocument(machine.name, args.budget, (row,)), args.format)
    if result.status in (RunStatus.ACCEPTED, RunStatus.HALTED_PLAIN):
        return EXIT_OK
    if result.status is RunStatus.REJECTED:
        return EXIT_REJECT
    return EXIT_RUNTIME


def _cmd_profile(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    vectors = _load_vectors(args.inputs)
    limits = RunLimits(max_steps=args.max_steps)
    rows = []
    for x in vectors:
        result = run(machine, x, limits)
        verdict = None
        if args.budget:
            verdict = check_budget(result, len(x), args.budget)
        rows.append(run_row(tuple(str(v) for v in x), result, verdict))
    _emit(ReportDocument(machine.name, args.budget, tuple(rows)), args.format)
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    circuit = _load_circuit(args.circuit)
    x = _parse_vector(args.input)
    values = eval_circuit(circuit, x)
    for i, v in enumerate(values, start=1):
        print(f"g{i} = {v}")
    if circuit.is_decision:
        bit = decide_cdp(circuit, x)
        print(f"decision: {bit}")
        return EXIT_OK if bit == 1 else EXIT_REJECT
    return EXIT_OK


def _cmd_compile(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    bounds = CompileBounds(n=args.inputs, T=args.steps, W=args.window)
    circuit = compile_machine(machine, bounds)
    header = [
        f"compiled from machine {machine.name}",
        f"n={bounds.n} T={bounds.T} W={bounds.W} nodes={len(machine.nodes)}",
        "wires: one-hot node/head indicators and per-cell values, step-major",
    ]
    text = format_circuit(circuit, header=header)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.output}: {circuit.size} gates, {bounds.n} inputs")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    circuit = _load_circuit(args.circuit)
    samples = _load_vectors(args.samples)
    report = verify_compilation(machine, circuit, samples, max_steps=args.max_steps)
    print(f"samples: {report.total}  matches: {report.matches}")
    for x, bit, status in report.mismatches:
        rendered = ",".join(str(v) for v in x)
        print(f"mismatch on {rendered}: circuit {bit}, machine {status}")
    return EXIT_OK if report.all_match else EXIT_RUNTIME


def _cmd_explore(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    x = _parse_vector(args.input)
    graph = reachable_graph(machine, x, RunLimits(max_steps=args.max_steps))
    summary = graph.classification.value
    if graph.lasso:
        summary += f"(prefix {graph.lasso[0]}, cycle {graph.lasso[1]})"
    if graph.error_kind:
        summary += f"({graph.error_kind})"
    print(f"classification: {summary}")
    print(f"vertices: {len(graph.vertices)}  edges: {len(graph.edges)}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(graph))
        print(f"wrote {args.dot}")
    return EXIT_OK


def _cmd_paths(args: argparse.Namespace) -> int:
    machine = _load_machine(args.machine)
    conditions = symbolic_paths(machine, args.inputs, args.depth)
    for i, path in enumerate(conditions, start=1):
        print(f"path {i}: {path.render()} (length {path.trace_length})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bssim",
        description="Simulate and profile register machines over exact rationals;"
        " evaluate and compile algebraic circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a machine on one input vector")
    p.add_argument("machine")
    p.add_argument("--input", default="", help="comma-separated rationals")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--max-weak-space", type=int, default=None)
    p.add_argument("--max-unit-space", type=int, default=None)
    p.add_argument("--budget", default=None, help="log:K | poly:K,D | const:M")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("profile", help="run a machine over a file of input vectors")
    p.add_argument("machine")
    p.add_argument("--inputs", required=True, help="file, one vector per line")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--budget", default=None, help="log:K | poly:K,D | const:M")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("eval", help="evaluate a circuit on one input vector")
    p.add_argument("circuit")
    p.add_argument("--input", default="")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("compile", help="compile a decision machine to a circuit")
    p.add_argument("machine")
    p.add_argument("-n", "--inputs", type=int, required=True)
    p.add_argument("-T", "--steps", type=int, required=True)
    p.add_argument("-W", "--window", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("verify", help="compare a compiled circuit against its machine")
    p.add_argument("machine")
    p.add_argument("circuit")
    p.add_argument("--samples", required=True, help="file, one vector per line")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("explore", help="build the reachable configuration graph")
    p.add_argument("machine")
    p.add_argument("--input", default="")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--dot", default=None, help="write the graph in DOT form")
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("paths", help="enumerate symbolic path conditions")
    p.add_argument("machine")
    p.add_argument("-n", "--inputs", type=int, required=True)
    p.add_argument("--depth", type=int, default=200)
    p.set_defaults(func=_cmd_paths)

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConcreteDivisionByZero, SymbolicDivisionByZero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
