"""Check the lower-bound constructions with the exhaustive oracles and print the results.

    python3 scripts/reproduce_bounds.py [--max-km 12]
"""

from __future__ import annotations

import argparse
import time
from math import ceil

from famcake.exact import min_cut_exact_search
from famcake.instance import gen_preset
from famcake.oracle import min_components, positivity_lower_bound, positivity_min_components
from famcake.protocols import divide, divide_democratic_two, divide_unanimous


def thm2_table(kmax: int) -> None:
    print("average criterion, unequal entitlements (thm2 preset)")
    print(f"  {'k':>3}{'2k-1':>6}{'oracle':>8}{'protocol':>10}{'seconds':>9}")
    for k in range(2, kmax + 1):
        inst = gen_preset("thm2", k=k)
        t0 = time.perf_counter()
        res = min_components(inst, "average", max_comp=2 * k + 1)
        dt = time.perf_counter() - t0
        print(f"  {k:>3}{2 * k - 1:>6}{res.min_components:>8}{divide(inst, 'avg').comp:>10}{dt:>9.2f}")


def lemma5_separation() -> None:
    inst = gen_preset("lemma5", k=2, m=3)
    print("\nunanimous vs democratic (lemma5 preset, k=2, m=3)")
    print(f"  unanimous oracle minimum: {min_components(inst, 'unan', max_comp=7).min_components} (n = {inst.n})")
    print(f"  unanimous protocol comp:  {divide_unanimous(inst, 'choose').comp}")
    print(f"  democratic oracle minimum: {min_components(inst, 'dem', max_comp=4).min_components}")
    print(f"  two-family democratic protocol comp: {divide_democratic_two(inst).comp}")


def positivity_table(max_km: int) -> None:
    print(f"\npositivity (lemma5 preset, k*m <= {max_km})")
    print(f"  {'k':>3}{'m':>3}{'q':>3}{'formula':>9}{'oracle':>8}")
    for k in range(2, max_km + 1):
        for m in range(1, max_km // k + 1):
            inst = gen_preset("lemma5", k=k, m=m)
            for q in range(1, m + 1):
                f = positivity_lower_bound(k, m, q)
                got = positivity_min_components(inst, q, max_comp=k * m).min_components
                flag = "" if got == max(ceil(f), k) else "  MISMATCH"
                print(f"  {k:>3}{m:>3}{q:>3}{str(f):>9}{got:>8}{flag}")


def exact_gap() -> None:
    ms = gen_preset("section2").measures()
    N, K = len(ms), 2
    print("\nexact division of the section2 preset agents into 2 pieces")
    print(f"  per-segment construction: {K * 4} components; reference N(K-1)+1 = {N * (K - 1) + 1}")
    for budget in range(1, 6):
        res = min_cut_exact_search(ms, K, budget)
        print(f"  budget {budget} cuts: {'infeasible' if not res.feasible else f'{res.components} components'}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-km", type=int, default=12)
    ap.add_argument("--thm2-kmax", type=int, default=3)
    args = ap.parse_args()
    thm2_table(args.thm2_kmax)
    lemma5_separation()
    positivity_table(args.max_km)
    exact_gap()


if __name__ == "__main__":
    main()
