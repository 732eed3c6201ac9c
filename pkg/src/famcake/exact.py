"""Exact division of a piece among piecewise-constant measures.

Every measure is constant on each segment of the common refinement, so giving
piece ``j`` the same fraction ``share_j`` of every segment's length gives it
exactly ``share_j`` of every measure's value. This costs at most ``K*S``
components for ``S`` refinement segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _patterns
from ._rational import as_fraction
from .allocation import Interval, Piece
from .errors import MeasureError
from .measure import ValueMeasure, refinement_segments


@dataclass(frozen=True)
class ExactCutPlan:
    segments: tuple[Interval, ...]
    # for each segment, (piece index, sub-interval) in left-to-right order
    per_segment_splits: tuple[tuple[tuple[int, Interval], ...], ...]
    K: int

    def pieces(self) -> tuple[Piece, ...]:
        parts: list[list[Interval]] = [[] for _ in range(self.K)]
        for split in self.per_segment_splits:
            for j, iv in split:
                parts[j].append(iv)
        return tuple(Piece(p) for p in parts)

    @property
    def achieved_components(self) -> int:
        return sum(p.comp for p in self.pieces())

    @property
    def cuts(self) -> int:
        """Cut points strictly inside the covered region (component boundaries between pieces)."""
        runs = sum(1 for s, seg in enumerate(self.segments) if s == 0 or self.segments[s - 1][1] != seg[0])
        return self.achieved_components - runs


def _check_shares(K: int, shares) -> list[Fraction]:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if shares is None:
        return [Fraction(1, K)] * K
    shares = [as_fraction(s) for s in shares]
    if len(shares) != K or any(s < 0 for s in shares) or sum(shares) != 1:
        raise ValueError(f"shares must be {K} non-negative rationals summing to 1, got {shares}")
    return shares


def plan_exact_division(
    ms: Sequence[ValueMeasure], K: int, within: Piece | None = None, shares=None
) -> ExactCutPlan:
    within = Piece.whole() if within is None else within
    shares = _check_shares(K, shares)
    segs = refinement_segments(ms, within)
    splits = []
    for a, b in segs:
        x = a
        row = []
        for j, sh in enumerate(shares):
            y = x + sh * (b - a)
            if y > x:
                row.append((j, (x, y)))
            x = y
        splits.append(tuple(row))
    return ExactCutPlan(tuple(segs), tuple(splits), K)


def exact_division(
    ms: Sequence[ValueMeasure], K: int, within: Piece | None = None, shares=None
) -> tuple[Piece, ...]:
    """K pieces of ``within``; every measure values piece j at exactly shares[j] of ``within``."""
    return plan_exact_division(ms, K, within, shares).pieces()


def exact_ratio_cut(ms: Sequence[ValueMeasure], within: Piece, r) -> tuple[Piece, Piece]:
    """Split ``within`` into (P, rest) with every measure giving P exactly r of its value of ``within``."""
    r = as_fraction(r)
    if r < 0 or r > 1:
        raise ValueError(f"ratio {r} outside [0,1]")
    for i, m in enumerate(ms):
        if m.value(within) == 0:
            raise MeasureError(f"measure {i} has zero value on the piece being cut")
    p, q = exact_division(ms, 2, within, (r, 1 - r))
    return p, q


@dataclass(frozen=True)
class ExactSearchResult:
    feasible: bool
    plan: ExactCutPlan | None
    budget: int
    nodes_searched: int

    @property
    def components(self) -> int | None:
        return self.plan.achieved_components if self.plan else None


def min_cut_exact_search(
    ms: Sequence[ValueMeasure],
    K: int,
    budget: int,
    within: Piece | None = None,
    shares=None,
    node_limit: int | None = None,
) -> ExactSearchResult:
    """Fewest-component exact division using at most ``budget`` cuts, by exhaustive search.

    Desk scale only: the search enumerates label patterns on every refinement
    segment, roughly ``(K^2 * 2^K)^S`` leaves before pruning. Keep ``S*K``
    around 20 or below. Ties resolve to the first plan in enumeration order.
    """
    within = Piece.whole() if within is None else within
    shares = _check_shares(K, shares)
    segs = refinement_segments(ms, within)
    adjacent = [s > 0 and segs[s - 1][1] == seg[0] for s, seg in enumerate(segs)]
    reqs = []
    for m in ms:
        coefs = tuple(m.density_at(a) * (b - a) for a, b in segs)
        total = m.value(within)
        for j in range(K):
            reqs.append(_patterns.Requirement(j, coefs, shares[j] * total, equality=True))
    runs = within.comp
    out = _patterns.search(adjacent, K, [reqs], max_comp=budget + runs, node_limit=node_limit)
    if out.comps is None:
        return ExactSearchResult(False, None, budget, out.nodes)
    splits = []
    for (a, b), pat, fr in zip(segs, out.patterns, out.fractions):
        row = []
        x = a
        for lab in pat:
            y = x + fr[lab] * (b - a)
            if y > x:
                row.append((lab, (x, y)))
            x = y
        splits.append(tuple(row))
    return ExactSearchResult(True, ExactCutPlan(tuple(segs), tuple(splits), K), budget, out.nodes)
