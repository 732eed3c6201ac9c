"""Seeded benchmark runs comparing component counts across criteria and regimes."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ._rational import fmt
from .fairness import evaluate
from .instance import gen_random, random_weights
from .protocols import CRITERION_ALIASES, divide

# One row per line of the comparison table (equal entitlements), plus the
# unequal-entitlement regimes.
DEFAULT_CONFIG = {
    "configurations": [
        {"name": "avg-k2", "criterion": "avg", "k": 2, "sizes": [3, 3]},
        {"name": "avg-k4", "criterion": "avg", "k": 4, "sizes": [3, 3, 3, 3]},
        {"name": "avg-k3-entitled", "criterion": "avg", "k": 3, "sizes": [2, 2, 2], "weights": "random"},
        {"name": "unan-k2-choose", "criterion": "unan", "method": "choose", "k": 2, "sizes": [3, 3]},
        {"name": "unan-k4-choose", "criterion": "unan", "method": "choose", "k": 4, "sizes": [2, 2, 2, 2]},
        {"name": "unan-k4-recursive", "criterion": "unan", "method": "recursive", "k": 4, "sizes": [2, 2, 2, 2]},
        {"name": "unan-k3-entitled", "criterion": "unan", "method": "recursive", "k": 3, "sizes": [2, 2, 2], "weights": "random"},
        {"name": "dem-k2-two", "criterion": "dem", "method": "two", "k": 2, "sizes": [3, 3]},
        {"name": "dem-k4-k", "criterion": "dem", "method": "k", "k": 4, "sizes": [4, 4, 4, 4]},
        {"name": "dem-k3-entitled", "criterion": "dem", "method": "entitled", "k": 3, "sizes": [4, 4, 4], "weights": "random"},
    ]
}


@dataclass
class BenchReport:
    trials: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)

    @property
    def sound(self) -> bool:
        return all(t["verdicts"][t["criterion"]] for t in self.trials)

    def to_json(self) -> dict:
        return {"sound": self.sound, "aggregates": self.aggregates, "trials": self.trials}


def _trial(args) -> dict:
    index, seed, cfg, timing = args
    rng = random.Random(seed)
    k = cfg["k"]
    weights = cfg.get("weights")
    if weights == "random":
        weights = random_weights(rng, k)
    inst = gen_random(k, cfg["sizes"], cfg.get("max_breakpoints", 3), rng.randrange(2**32), weights)
    crit = CRITERION_ALIASES[cfg["criterion"]]
    t0 = time.perf_counter()
    res = divide(inst, crit, cfg.get("method"))
    elapsed = time.perf_counter() - t0
    verdicts = evaluate(inst, res.allocation).verdicts
    rec = {
        "index": index,
        "config": cfg.get("name", f"config{index}"),
        "seed": seed,
        "k": k,
        "n": inst.n,
        "criterion": crit,
        "method": res.protocol,
        "comp": res.comp,
        "paper_bound": None if res.paper_bound is None else fmt(res.paper_bound),
        "impl_bound": res.impl_bound,
        "verdicts": verdicts,
    }
    if timing:
        rec["wall_time"] = round(elapsed, 6)
    return rec


def run_bench(trials: int, seed: int, config: dict | None = None, timing: bool = False, jobs: int = 1) -> BenchReport:
    config = DEFAULT_CONFIG if config is None else config
    master = random.Random(seed)
    tasks = []
    for cfg in config["configurations"]:
        for _ in range(trials):
            tasks.append((len(tasks), master.randrange(2**32), cfg, timing))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            records = list(ex.map(_trial, tasks, chunksize=8))
    else:
        records = [_trial(t) for t in tasks]
    report = BenchReport(records)
    for cfg in config["configurations"]:
        name = cfg.get("name")
        rows = [r for r in records if r["config"] == name]
        if not rows:
            continue
        comps = [r["comp"] for r in rows]
        report.aggregates[name] = {
            "trials": len(rows),
            "mean_comp": fmt(Fraction(sum(comps), len(comps))),
            "max_comp": max(comps),
            "max_impl_bound": max(r["impl_bound"] for r in rows),
            "paper_bounds": sorted({r["paper_bound"] for r in rows}, key=lambda s: Fraction(s)),
            "sound": all(r["verdicts"][r["criterion"]] for r in rows),
        }
    return report
