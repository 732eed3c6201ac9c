"""Exhaustive minimum-component search over per-segment label patterns.

On a segment where every density is constant, only two things about an
allocation matter: the fraction of the segment each label receives (values are
linear in these) and the order in which the labels appear (which decides what
merges with the neighbouring segments). Any order can be rearranged so that
every label occurs at most once per segment without adding components, so a
segment's pattern is a sequence of distinct labels. For a fixed choice of
patterns, feasibility of the value requirements is a linear program.

Patterns are enumerated depth-first, left to right, with iterative deepening
on the component count, so the first feasible leaf has the minimum count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ._lp import feasible_point
from .allocation import Interval, Piece
from .errors import SearchLimitExceeded

DEFAULT_NODE_LIMIT = 5_000_000


def node_limit_from_env() -> int:
    raw = os.environ.get("FAMCAKE_SEARCH_LIMIT")
    return int(raw) if raw else DEFAULT_NODE_LIMIT


@dataclass(frozen=True)
class Requirement:
    """``sum_s coefs[s] * frac[s, label] >= rhs`` (or ``==`` when ``equality``)."""

    label: int
    coefs: tuple[Fraction, ...]
    rhs: Fraction
    equality: bool = False


@dataclass
class SearchOutcome:
    comps: int | None
    patterns: tuple[tuple[int, ...], ...] | None = None
    fractions: tuple[dict[int, Fraction], ...] | None = None
    alternative: int | None = None
    nodes: int = 0


def segment_patterns(num_labels: int) -> list[tuple[int, ...]]:
    """Sequences of distinct labels, identified by (label set, first, last)."""
    out = []
    labels = range(num_labels)
    for size in range(1, num_labels + 1):
        for subset in combinations(labels, size):
            if size == 1:
                out.append(subset)
                continue
            for f in subset:
                for l in subset:
                    if l == f:
                        continue
                    mid = tuple(x for x in subset if x not in (f, l))
                    out.append((f, *mid, l))
    return out


def _prefilter(reqs: Sequence[Requirement], supports: Sequence[frozenset]) -> bool:
    for r in reqs:
        if r.rhs > 0 and not any(c > 0 and r.label in t for c, t in zip(r.coefs, supports)):
            return False
    return True


def _solve(reqs: Sequence[Requirement], pats: Sequence[tuple[int, ...]]):
    index = {}
    for s, pat in enumerate(pats):
        for lab in pat:
            index[s, lab] = len(index)
    nv = len(index)
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for s, pat in enumerate(pats):
        row = [0] * nv
        for lab in pat:
            row[index[s, lab]] = 1
        A_eq.append(row)
        b_eq.append(1)
    for r in reqs:
        row = [Fraction(0)] * nv
        for s, c in enumerate(r.coefs):
            if c and (s, r.label) in index:
                row[index[s, r.label]] = c
        if r.equality:
            A_eq.append(row)
            b_eq.append(r.rhs)
        elif r.rhs > 0:
            A_ub.append([-v for v in row])
            b_ub.append(-r.rhs)
    x = feasible_point(nv, A_ub, b_ub, A_eq, b_eq)
    if x is None:
        return None
    return tuple({lab: x[index[s, lab]] for lab in pat} for s, pat in enumerate(pats))


def search(
    adjacent: Sequence[bool],
    num_labels: int,
    alternatives: Sequence[Sequence[Requirement]],
    max_comp: int,
    min_comp: int = 1,
    node_limit: int | None = None,
) -> SearchOutcome:
    """Minimum total components over all pattern choices satisfying some alternative.

    ``adjacent[s]`` says whether segment ``s`` touches segment ``s-1``; a label
    running across a non-adjacent boundary still starts a new component.
    """
    nseg = len(adjacent)
    limit = node_limit_from_env() if node_limit is None else node_limit
    pats_all = segment_patterns(num_labels)
    nodes = 0
    # every maximal run of adjacent segments holds at least one component
    runs_after = [0] * (nseg + 1)
    for s in range(nseg - 1, -1, -1):
        runs_after[s] = runs_after[s + 1] + (0 if adjacent[s] and s > 0 else 1)
    min_comp = max(min_comp, runs_after[0])
    chosen: list[tuple[int, ...]] = []
    # label order inside a segment does not change any value, so LPs repeat
    lp_cache: dict = {}

    def leaf():
        supports = tuple(frozenset(p) for p in chosen)
        for a, reqs in enumerate(alternatives):
            if not _prefilter(reqs, supports):
                continue
            key = (a, supports)
            if key not in lp_cache:
                lp_cache[key] = _solve(reqs, chosen)
            fr = lp_cache[key]
            if fr is not None:
                return a, fr, tuple(chosen)
        return None

    def dfs(s: int, prev: int | None, used: int, target: int):
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise SearchLimitExceeded(f"pattern search exceeded {limit} nodes")
        if s == nseg:
            if used != target:
                return None
            return leaf()
        for pat in pats_all:
            cost = len(pat) - 1
            if prev is None or not adjacent[s] or pat[0] != prev:
                cost += 1
            # later runs each need a fresh component
            if used + cost + runs_after[s + 1] > target:
                continue
            chosen.append(pat)
            found = dfs(s + 1, pat[-1], used + cost, target)
            chosen.pop()
            if found is not None:
                return found
        return None

    for c in range(min_comp, max_comp + 1):
        found = dfs(0, None, 0, c)
        if found is not None:
            a, fr, pats = found
            return SearchOutcome(c, pats, fr, a, nodes)
    return SearchOutcome(None, nodes=nodes)


def layout(segments: Sequence[Interval], patterns, fractions, num_labels: int) -> list[Piece]:
    """Realize a pattern choice: each segment is cut into its labels' shares, in pattern order."""
    parts: list[list[Interval]] = [[] for _ in range(num_labels)]
    for (a, b), pat, fr in zip(segments, patterns, fractions):
        x = a
        for lab in pat:
            y = x + fr[lab] * (b - a)
            parts[lab].append((x, y))
            x = y
    return [Piece(p) for p in parts]
