"""Command-line interface.

Subcommands: run (an approximation algorithm), verify (a partition file),
oracle (exact solver), gen (instance generator), sweep (seeded batches
with exact-rational ratio assertions).

Exit codes: 0 ok, 1 validation/assertion failure, 2 parse error,
3 incompatible algorithm/k, 4 oracle budget exceeded.

JSON on stdout is deterministic (sorted keys, no timings); wall-clock
timings go to stderr.  Ratios are reported as exact integer fractions
plus a decimal rendering; every bound check is an integer
cross-multiplication.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import io as gio
from .cycle_elim import approx2_report
from .generators import FAMILIES, GenSpec, generate
from .graph import DiGraph, GraphError, PathPartition, validate_partition
from .oracle import OracleBudget, OverBudgetError, exact_kpp, exact_min_singletons
from .saturation import gadget_to_dot, build_gadget
from .singleton_augment import approx1
from .two_path_augment import approx3

SCHEMA = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_INCOMPATIBLE = 3
EXIT_BUDGET = 4

ALGORITHMS = ("approx1", "approx2", "approx3")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunReport:
    """One algorithm run; the ratio is present exactly when the oracle ran
    and is the exact rational path_count / oracle_path_count."""

    algorithm: str
    k: int
    n: int
    m: int
    path_count: int
    num_singletons: int
    edge_count: int
    elapsed: float
    paths: tuple[tuple[int, ...], ...]
    oracle_path_count: int | None = None
    ratio: Fraction | None = None

    def payload(self) -> dict:
        # elapsed is deliberately left out: the JSON artifact must be
        # byte-identical across reruns; timing goes to stderr
        out = {
            "schema": SCHEMA,
            "algorithm": self.algorithm,
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "path_count": self.path_count,
            "num_singletons": self.num_singletons,
            "edge_count": self.edge_count,
            "paths": [list(p) for p in self.paths],
        }
        if self.oracle_path_count is not None:
            assert self.ratio is not None
            out["oracle_path_count"] = self.oracle_path_count
            out["ratio"] = {
                "num": self.ratio.numerator,
                "den": self.ratio.denominator,
                "decimal": f"{float(self.ratio):.6f}",
            }
        return out


def _budget() -> OracleBudget:
    cap = os.environ.get("KPATHPART_TIME_CAP")
    if cap:
        return OracleBudget(time_cap=float(cap))
    return OracleBudget()


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _ratio_payload(num: int, den: int) -> dict:
    frac = Fraction(num, den)
    return {
        "num": frac.numerator,
        "den": frac.denominator,
        "decimal": f"{num / den:.6f}",
    }


def _load_graph(path: str) -> DiGraph:
    try:
        return gio.load_graph(path)
    except (OSError, gio.ParseError) as exc:
        raise CliError(f"cannot read graph {path!r}: {exc}", EXIT_PARSE) from exc


def _run_algorithm(g: DiGraph, algo: str, k: int) -> PathPartition:
    if algo == "approx1":
        if k < 2:
            raise CliError("approx1 needs k >= 2", EXIT_INCOMPATIBLE)
        return approx1(g, k)
    if algo == "approx2":
        if k < 7:
            raise CliError("approx2 needs k >= 7", EXIT_INCOMPATIBLE)
        return approx2_report(g, k).partition
    if algo == "approx3":
        if k != 3:
            raise CliError("approx3 is defined for k = 3 only", EXIT_INCOMPATIBLE)
        return approx3(g)
    raise CliError(f"unknown algorithm {algo!r}", EXIT_INCOMPATIBLE)


def cmd_run(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    started = time.monotonic()
    partition = _run_algorithm(g, args.algo, args.k)
    elapsed = time.monotonic() - started

    report = validate_partition(g, partition)
    if not report.ok:
        print(f"internal error: invalid partition: {report.violations}", file=sys.stderr)
        return EXIT_FAIL

    if args.debug_dump:
        _write_debug_dump(g, args)

    oracle_count = None
    ratio = None
    if args.oracle:
        try:
            opt = exact_kpp(g, args.k, budget=_budget())
        except OverBudgetError as exc:
            print(f"oracle refused: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        oracle_count = opt.path_count
        ratio = Fraction(partition.path_count, opt.path_count)
    run = RunReport(
        algorithm=args.algo,
        k=args.k,
        n=g.n,
        m=g.m,
        path_count=partition.path_count,
        num_singletons=partition.num_singletons,
        edge_count=partition.edge_count,
        elapsed=elapsed,
        paths=partition.paths,
        oracle_path_count=oracle_count,
        ratio=ratio,
    )
    print(f"elapsed: {run.elapsed:.3f}s", file=sys.stderr)
    if args.out == "dot":
        sys.stdout.write(gio.partition_to_dot(g, partition))
    else:
        _emit(run.payload())
    return EXIT_OK


def _write_debug_dump(g: DiGraph, args: argparse.Namespace) -> None:
    if args.algo != "approx2":
        print("--debug-dump only applies to approx2; ignoring", file=sys.stderr)
        return
    rep = approx2_report(g, args.k)
    os.makedirs(args.debug_dump, exist_ok=True)

    def put(name: str, text: str) -> None:
        with open(os.path.join(args.debug_dump, name), "w", encoding="utf-8") as fh:
            fh.write(text)

    put("cover.dot", gio.cover_to_dot(g, rep.cover))
    put("e1.json", json.dumps(sorted(rep.instance.e1), sort_keys=True) + "\n")
    put("m.json", json.dumps(sorted(rep.m_pruned), sort_keys=True) + "\n")
    g2 = DiGraph.from_edges(g.n, rep.cover.edges | rep.m_pruned)
    put("g2.dot", gio.graph_to_dot(g2))
    forest = {
        "stars": [
            {
                "center": star.center,
                "satellites": [s.comp_id for s in star.satellites],
                "edges": [list(s.edge) for s in star.satellites],
            }
            for star in rep.forest.stars
        ],
        "isolated_two_cycles": list(rep.forest.isolated_two_cycles),
        "isolated_other": list(rep.forest.isolated_other),
    }
    put("g3.json", json.dumps(forest, sort_keys=True) + "\n")
    if rep.instance.r:
        put("gadget.dot", gadget_to_dot(build_gadget(rep.instance)))


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    try:
        partition = gio.load_partition(args.partition, k=args.k)
    except (OSError, gio.ParseError) as exc:
        print(f"cannot read partition: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = validate_partition(g, partition)
    _emit(
        {
            "schema": SCHEMA,
            "ok": report.ok,
            "violations": list(report.violations),
            "k": partition.k,
            "path_count": partition.path_count,
        }
    )
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    try:
        opt = exact_kpp(g, args.k, budget=_budget())
        payload = {
            "schema": SCHEMA,
            "k": args.k,
            "n": g.n,
            "m": g.m,
            "path_count": opt.path_count,
            "edge_count": opt.edge_count,
            "paths": [list(p) for p in opt.paths],
        }
        if args.min_singletons:
            payload["min_singletons"] = exact_min_singletons(g, args.k, budget=_budget())
    except OverBudgetError as exc:
        print(f"oracle refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(payload)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(
            family=args.family, n=args.n, edge_prob=args.edge_prob, seed=args.seed
        )
        g = generate(spec)
    except GraphError as exc:
        print(f"bad generator spec: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = gio.write_edge_list(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_range(text: str) -> range:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return range(int(lo), int(hi) + 1)
    value = int(text)
    return range(value, value + 1)


def _parse_ratio(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        bound = _parse_ratio(args.assert_ratio)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad ratio {args.assert_ratio!r}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rows = []
    violations = 0
    budget = _budget()
    for n in _parse_range(args.n_range):
        for seed in _parse_range(args.seeds):
            try:
                g = generate(
                    GenSpec(
                        family=args.family, n=n, edge_prob=args.edge_prob, seed=seed
                    )
                )
            except GraphError as exc:
                print(f"bad generator spec: {exc}", file=sys.stderr)
                return EXIT_PARSE
            partition = _run_algorithm(g, args.algo, args.k)
            rep = validate_partition(g, partition)
            if not rep.ok:
                print(f"invalid partition for n={n} seed={seed}", file=sys.stderr)
                return EXIT_FAIL
            try:
                opt = exact_kpp(g, args.k, budget=budget)
            except OverBudgetError as exc:
                print(f"oracle refused: {exc}", file=sys.stderr)
                return EXIT_BUDGET
            # alg/opt <= bound checked as alg*den <= num*opt
            ok = (
                partition.path_count * bound.denominator
                <= bound.numerator * opt.path_count
            )
            if not ok:
                violations += 1
            rows.append(
                {
                    "family": args.family,
                    "n": n,
                    "seed": seed,
                    "path_count": partition.path_count,
                    "oracle_path_count": opt.path_count,
                    "ratio": _ratio_payload(partition.path_count, opt.path_count)
                    if opt.path_count
                    else None,
                    "ok": ok,
                }
            )
    _emit(
        {
            "schema": SCHEMA,
            "algorithm": args.algo,
            "k": args.k,
            "bound": {"num": bound.numerator, "den": bound.denominator},
            "rows": rows,
            "violations": violations,
        }
    )
    return EXIT_OK if violations == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpathpart",
        description="k-path partition approximation toolkit for directed graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an approximation algorithm on an edge list")
    p_run.add_argument("input")
    p_run.add_argument("--algo", choices=ALGORITHMS, required=True)
    p_run.add_argument("--k", type=int, default=3)
    p_run.add_argument("--oracle", action="store_true", help="also run the exact solver")
    p_run.add_argument("--out", choices=("json", "dot"), default="json")
    p_run.add_argument("--debug-dump", metavar="DIR", help="write per-stage dumps")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="validate a partition JSON against a graph")
    p_verify.add_argument("input")
    p_verify.add_argument("partition")
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="exact minimum k-path partition")
    p_oracle.add_argument("input")
    p_oracle.add_argument("--k", type=int, default=3)
    p_oracle.add_argument("--min-singletons", action="store_true")
    p_oracle.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate an instance")
    p_gen.add_argument("--family", choices=FAMILIES, required=True)
    p_gen.add_argument("--n", type=int, default=0)
    p_gen.add_argument("--edge-prob", type=float, default=0.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_gen)

    p_sweep = sub.add_parser("sweep", help="seeded batch with a ratio assertion")
    p_sweep.add_argument("--family", choices=FAMILIES, required=True)
    p_sweep.add_argument("--n-range", required=True, help="N or LO:HI inclusive")
    p_sweep.add_argument("--seeds", required=True, help="S or LO:HI inclusive")
    p_sweep.add_argument("--edge-prob", type=float, default=0.0)
    p_sweep.add_argument("--k", type=int, default=3)
    p_sweep.add_argument("--algo", choices=ALGORITHMS, required=True)
    p_sweep.add_argument("--assert-ratio", required=True, help="e.g. 13/9 or 3")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except GraphError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
