"""Regenerate the component-count comparison table from seeded benchmark runs.

    python3 scripts/comparison_table.py --trials 50 --seed 0 [--report bench.json]
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

from famcake.bench import run_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--config", help="bench config JSON (default: built-in table)")
    ap.add_argument("--report", help="also write the full report JSON here")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    config = json.loads(Path(args.config).read_text()) if args.config else None
    rep = run_bench(args.trials, args.seed, config, jobs=args.jobs)
    if args.report:
        Path(args.report).write_text(json.dumps(rep.to_json(), indent=2) + "\n")

    head = f"{'configuration':<22}{'trials':>7}{'mean comp':>11}{'max comp':>10}{'impl bound':>12}  {'paper bound':<14}{'sound':>6}"
    print(head)
    print("-" * len(head))
    for name, agg in rep.aggregates.items():
        mean = float(Fraction(agg["mean_comp"]))
        bounds = ",".join(b.removesuffix("/1") for b in agg["paper_bounds"])
        print(
            f"{name:<22}{agg['trials']:>7}{mean:>11.2f}{agg['max_comp']:>10}{agg['max_impl_bound']:>12}"
            f"  {bounds:<14}{'yes' if agg['sound'] else 'NO':>6}"
        )


if __name__ == "__main__":
    main()
