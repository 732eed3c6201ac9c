"""Command-line entry point: gen, divide, check, oracle, bench, render."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._rational import ParseError, parse
from .allocation import Allocation, validate_partition
from .bench import run_bench
from .errors import FamcakeError, SearchLimitExceeded
from .fairness import evaluate
from .instance import PRESETS, Instance, gen_preset, gen_random
from .oracle import min_components, positivity_min_components
from .protocols import CRITERION_ALIASES, divide
from .render import render

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None


def _load_instance(path: str) -> Instance:
    try:
        return Instance.from_json(_load_json(path))
    except (ParseError, FamcakeError) as e:
        raise UsageError(f"{path}: {e}") from None


def _load_allocation(path: str) -> Allocation:
    data = _load_json(path)
    # accept either a bare allocation or a saved divide result
    if isinstance(data, dict) and "allocation" in data:
        data = data["allocation"]
    try:
        return Allocation.from_json(data)
    except (ParseError, FamcakeError) as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _ints(s: str, field: str) -> list[int]:
    try:
        return [int(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{field}: expected comma-separated integers, got {s!r}") from None


def cmd_gen(a) -> int:
    if a.random == (a.preset is not None):
        raise UsageError("gen: give exactly one of --preset NAME or --random")
    if a.preset is not None:
        inst = gen_preset(a.preset, k=a.k, m=a.m)
    else:
        if a.k is None or a.sizes is None:
            raise UsageError("gen --random needs --k and --sizes")
        weights = None
        if a.weights:
            weights = [parse(t, f"weights[{i}]") for i, t in enumerate(a.weights.split(","))]
        inst = gen_random(a.k, _ints(a.sizes, "sizes"), a.max_breakpoints, a.seed, weights)
    _emit(_dump(inst.to_json()), a.out)
    return EXIT_OK


def cmd_divide(a) -> int:
    inst = _load_instance(a.inp)
    res = divide(inst, a.criterion, a.method)
    _emit(_dump(res.to_json()), a.out)
    return EXIT_OK


def cmd_check(a) -> int:
    inst = _load_instance(a.inp)
    alloc = _load_allocation(a.alloc)
    verdict = validate_partition(alloc)
    if not verdict:
        raise UsageError(f"{a.alloc}: not a partition of the cake: {verdict}")
    report = evaluate(inst, alloc)
    out = report.to_json()
    out["comp"] = alloc.comp
    _emit(_dump(out), a.out)
    if a.expect is not None and not report.verdicts[CRITERION_ALIASES[a.expect]]:
        print(f"check: {CRITERION_ALIASES[a.expect]} verdict is false", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def cmd_oracle(a) -> int:
    inst = _load_instance(a.inp)
    if a.criterion == "pos":
        if a.q is None:
            raise UsageError("oracle --criterion pos needs --q")
        res = positivity_min_components(inst, a.q, a.max_comp)
    else:
        res = min_components(inst, a.criterion, a.max_comp)
    _emit(_dump(res.to_json()), a.out)
    return EXIT_OK


def cmd_bench(a) -> int:
    config = _load_json(a.config) if a.config else None
    if config is not None and not isinstance(config.get("configurations") if isinstance(config, dict) else None, list):
        raise UsageError(f"{a.config}: configurations: expected a list")
    report = run_bench(a.trials, a.seed, config, timing=a.timing, jobs=a.jobs)
    _emit(_dump(report.to_json()), a.report)
    if not report.sound:
        print("bench: some trial failed its own criterion", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def cmd_render(a) -> int:
    inst = _load_instance(a.inp)
    alloc = _load_allocation(a.alloc)
    _emit(render(inst, alloc, a.format), a.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="famcake", description="Exact fair division of an interval among groups of agents.")
    sub = p.add_subparsers(dest="command", required=True)
    crits = ["avg", "unan", "dem"]

    g = sub.add_parser("gen", help="write an instance JSON")
    g.add_argument("--preset", choices=sorted(PRESETS))
    g.add_argument("--random", action="store_true")
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--sizes", help="comma-separated family sizes")
    g.add_argument("--max-breakpoints", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--weights", help="comma-separated rationals, e.g. 1/3,2/3")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("divide", help="run a protocol")
    d.add_argument("--criterion", choices=crits, required=True)
    d.add_argument("--method", choices=["choose", "recursive", "two", "k", "entitled"])
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_divide)

    c = sub.add_parser("check", help="evaluate an allocation")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--alloc", required=True)
    c.add_argument("--expect", choices=crits)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("oracle", help="exhaustive minimum component count")
    o.add_argument("--criterion", choices=[*crits, "pos"], required=True)
    o.add_argument("--max-comp", type=int, required=True)
    o.add_argument("--q", type=int)
    o.add_argument("--in", dest="inp", required=True)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="seeded benchmark over random instances")
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--config")
    b.add_argument("--report")
    b.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identical reports)")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw an allocation")
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--alloc", required=True)
    r.add_argument("--format", choices=["svg", "text"], default="text")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except SearchLimitExceeded as e:
        print(f"famcake {args.command}: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, FamcakeError, ValueError) as e:
        print(f"famcake {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))
