"""Command-line interface: ``zxsearch optimize | verify | stats``.

Exit codes: 0 success, 1 input could not be read or parsed, 2 bad
configuration or oracle size budget exceeded, 3 semantic check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .diagram import Diagram, is_graph_like
from .metrics import Metric, all_metrics, metric_value
from .oracle import OracleBudgetError, compare_up_to_scalar, gflow_exists, tensor_of_diagram
from .qasm import Circuit, QasmError, circuit_to_zx, parse_qasm, unitary_of_circuit
from .search import (
    DEFAULT_RULE_ORDER,
    Extractability,
    SearchConfig,
    Strategy,
    parse_rule_order,
    search,
)
from .serialize import DiagramFormatError, deserialize, serialize

EXIT_OK, EXIT_PARSE, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2, 3

_DURATION = re.compile(r"^\s*(\d+(?:\.\d*)?|\.\d+)\s*(ms|s|m|h)?\s*$")
_UNIT = {"ms": 1e-3, "s": 1.0, "m": 60.0, "h": 3600.0, None: 1.0}


class ConfigError(ValueError):
    pass


def parse_duration(text: str) -> float | None:
    """Seconds from ``"10s"``, ``"5m"``, ``"1.5h"``, ``"250ms"`` or a bare number; ``"none"`` means no limit."""
    if text.strip().lower() in ("none", "inf", "unlimited"):
        return None
    m = _DURATION.match(text)
    if not m:
        raise ConfigError(f"bad duration {text!r} (use e.g. 10s, 5m, 1.5h)")
    return float(m.group(1)) * _UNIT[m.group(2)]


def load(path: str) -> tuple[Diagram, Circuit | None]:
    """Read a ``.qasm`` circuit or a ``.zx.json`` diagram."""
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".qasm"):
        c = parse_qasm(text)
        return circuit_to_zx(c), c
    return deserialize(text), None


def linear_map(path: str) -> np.ndarray:
    d, c = load(path)
    return unitary_of_circuit(c) if c is not None else tensor_of_diagram(d)


def _fail(code: int, msg: str) -> int:
    print(f"zxsearch: {msg}", file=sys.stderr)
    return code


def _read_errors():
    return (OSError, QasmError, DiagramFormatError, UnicodeDecodeError)


def cmd_optimize(args: argparse.Namespace) -> int:
    try:
        cfg = SearchConfig(
            strategy=Strategy(args.strategy),
            metric=Metric(args.metric),
            depth_limit=args.depth,
            time_limit=parse_duration(args.time_limit),
            rule_order=parse_rule_order(args.rule_order) if args.rule_order else DEFAULT_RULE_ORDER,
            hd_budget=args.hd_budget,
            extractability=Extractability(args.extractability),
            normalize_root=not args.no_normalize,
        )
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    try:
        d0, circuit = load(args.input)
    except _read_errors() as exc:
        return _fail(EXIT_PARSE, f"{args.input}: {exc}")

    t0 = time.perf_counter()
    result = search(d0, cfg)
    wall = time.perf_counter() - t0
    root = result.trace[0]

    report = {
        "input": args.input,
        "input_metrics": {**all_metrics(d0), "gates": len(circuit.gates) if circuit else None},
        "initial": {**_root_metrics(d0, cfg), "gates": len(circuit.gates) if circuit else None},
        "final": {**all_metrics(result.best), "gates": None},
        "metric": cfg.metric.value,
        "strategy": cfg.strategy.value,
        "depth_limit": cfg.depth_limit,
        "time_limit": cfg.time_limit,
        "rule_order": [r.value for r in cfg.rule_order],
        "hd_budget": cfg.hd_budget,
        "extractability": cfg.extractability.value,
        "best_path": [r.value for r in result.best_path],
        "nodes_expanded": result.nodes_expanded,
        "leaves_evaluated": result.leaves_evaluated,
        "terminated_by": result.terminated_by.value,
        "wall_time_s": round(wall, 6),
    }
    assert report["final"][cfg.metric.value] <= root.best_value

    if args.verify:
        try:
            ref = unitary_of_circuit(circuit) if circuit is not None else tensor_of_diagram(d0)
            fit = compare_up_to_scalar(ref, tensor_of_diagram(result.best), args.tol)
        except OracleBudgetError as exc:
            return _fail(EXIT_CONFIG, f"cannot verify: {exc}")
        report["verified"] = fit.equal
        report["verify_residual"] = fit.residual

    if args.output:
        Path(args.output).write_text(serialize(result.best), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2), encoding="utf-8")
    if args.trace:
        with open(args.trace, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["elapsed_ms", "best_value", "nodes_expanded"])
            for p in result.trace:
                w.writerow([p.elapsed_ms, p.best_value, p.nodes_expanded])

    m = cfg.metric.value
    print(f"{m}: {root.best_value} -> {result.best_value}  "
          f"({result.nodes_expanded} nodes, {result.terminated_by.value}, {wall:.2f}s)")
    if args.verify and not report["verified"]:
        return _fail(EXIT_VERIFY, f"verification failed (residual {report['verify_residual']:.3g})")
    return EXIT_OK


def _root_metrics(d0: Diagram, cfg: SearchConfig) -> dict[str, int]:
    from .diagram import to_graph_like

    return all_metrics(to_graph_like(d0) if cfg.normalize_root else d0)


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        a = linear_map(args.file_a)
        b = linear_map(args.file_b)
    except _read_errors() as exc:
        return _fail(EXIT_PARSE, str(exc))
    except OracleBudgetError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    if a.shape != b.shape:
        print(f"not equivalent: shapes {a.shape} and {b.shape} differ")
        return EXIT_VERIFY
    fit = compare_up_to_scalar(a, b, args.tol)
    print(f"lambda = {fit.scalar:.6g}")
    print(f"max residual = {fit.residual:.3e}")
    print("equivalent up to scalar" if fit.equal else "not equivalent")
    return EXIT_OK if fit.equal else EXIT_VERIFY


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        d, circuit = load(args.input)
    except _read_errors() as exc:
        return _fail(EXIT_PARSE, str(exc))
    graph_like = is_graph_like(d)
    out = {
        "tcount": metric_value(Metric.TCOUNT, d),
        "edges": metric_value(Metric.EDGES, d),
        "spiders": metric_value(Metric.SPIDERS, d),
        "graph_like": graph_like,
        "gflow": gflow_exists(d) if graph_like else None,
    }
    if circuit is not None:
        out["gates"] = len(circuit.gates)
    print(json.dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxsearch", description="Exhaustive ZX-calculus circuit optimizer.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("optimize", help="search for a diagram minimizing a metric")
    o.add_argument("input", help=".qasm circuit or .zx.json diagram")
    o.add_argument("--metric", choices=[m.value for m in Metric], default="tcount")
    o.add_argument("--strategy", choices=[s.value for s in Strategy], default="iddfs")
    o.add_argument("--depth", type=int, default=6)
    o.add_argument("--time-limit", default="60s")
    o.add_argument("--rule-order", default=None, help="comma-separated rule names, e.g. lc,pivot,f,i1")
    o.add_argument("--hd-budget", type=int, default=2)
    o.add_argument("--extractability", choices=[e.value for e in Extractability], default="always")
    o.add_argument("--no-normalize", action="store_true", help="search from the raw diagram")
    o.add_argument("--verify", action="store_true", help="check the result against the input with the tensor oracle")
    o.add_argument("--tol", type=float, default=1e-9)
    o.add_argument("-o", "--output", help="write the best diagram (.zx.json)")
    o.add_argument("--report", help="write a JSON report")
    o.add_argument("--trace", help="write the best-value trace as CSV")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="compare two files' linear maps up to scalar")
    v.add_argument("file_a")
    v.add_argument("file_b")
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="print diagram metrics as JSON")
    s.add_argument("input")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
