"""Piecewise-constant value measures on the unit interval, in exact arithmetic."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._rational import ParseError, as_fraction, fmt, parse
from .allocation import Interval, Piece
from .errors import DomainError, InfeasibleTargetError, MeasureError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ValueMeasure:
    """A normalized density that is constant between consecutive breakpoints.

    ``segments`` holds ``(until, density)`` pairs; each segment starts where the
    previous one ended (the first at 0) and the last ends at 1. Adjacent
    segments with equal density are merged, so two measures compare equal iff
    they assign the same value to every piece.
    """

    segments: tuple[tuple[Fraction, Fraction], ...]
    _bps: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _cum: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        segs = []
        prev = ZERO
        for until, dens in self.segments:
            until, dens = as_fraction(until), as_fraction(dens)
            if until <= prev:
                raise MeasureError(f"breakpoints must be strictly increasing (got {until} after {prev})")
            if dens < 0:
                raise MeasureError(f"negative density {dens}")
            if segs and segs[-1][1] == dens:
                segs[-1] = (until, dens)
            else:
                segs.append((until, dens))
            prev = until
        if not segs or segs[-1][0] != ONE:
            raise MeasureError("last breakpoint must be 1")
        bps = [ZERO]
        cum = [ZERO]
        for until, dens in segs:
            cum.append(cum[-1] + dens * (until - bps[-1]))
            bps.append(until)
        if cum[-1] != ONE:
            raise MeasureError(f"measure is not normalized: total value {cum[-1]} (use ValueMeasure.rescaled)")
        object.__setattr__(self, "segments", tuple(segs))
        object.__setattr__(self, "_bps", tuple(bps))
        object.__setattr__(self, "_cum", tuple(cum))

    # -- constructors ------------------------------------------------------

    @classmethod
    def uniform(cls) -> ValueMeasure:
        return cls(((ONE, ONE),))

    @classmethod
    def rescaled(cls, segments: Iterable[Sequence]) -> ValueMeasure:
        """Build a measure from an unnormalized density by dividing by its total."""
        segs = [(as_fraction(u), as_fraction(d)) for u, d in segments]
        total = ZERO
        prev = ZERO
        for u, d in segs:
            total += d * (u - prev)
            prev = u
        if total <= 0:
            raise MeasureError("cannot rescale a density with zero total value")
        return cls(tuple((u, d / total) for u, d in segs))

    @classmethod
    def from_district_values(cls, values: Sequence) -> ValueMeasure:
        """Equal-length districts with the given (unnormalized) values."""
        m = len(values)
        if m == 0:
            raise MeasureError("need at least one district")
        # density = value / (1/m); rescaled() normalizes the total
        return cls.rescaled((Fraction(i + 1, m), as_fraction(v) * m) for i, v in enumerate(values))

    # -- queries -------------------------------------------------------------

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        """Right endpoints of the segments (the last is always 1)."""
        return self._bps[1:]

    def cdf(self, x) -> Fraction:
        """Value of ``[0, x]``."""
        x = as_fraction(x)
        if x < 0 or x > 1:
            raise DomainError(f"point {x} outside [0,1]")
        i = bisect.bisect_right(self._bps, x)
        if i >= len(self._bps):
            return ONE
        a = self._bps[i - 1]
        return self._cum[i - 1] + self.segments[i - 1][1] * (x - a)

    def density_at(self, x) -> Fraction:
        """Density on the segment containing ``x`` (right segment at a breakpoint)."""
        x = as_fraction(x)
        if x < 0 or x > 1:
            raise DomainError(f"point {x} outside [0,1]")
        i = min(bisect.bisect_right(self._bps, x), len(self.segments))
        return self.segments[i - 1][1]

    def value_interval(self, a, b) -> Fraction:
        a, b = as_fraction(a), as_fraction(b)
        if b < a:
            raise DomainError(f"interval [{a}, {b}] is reversed")
        return self.cdf(b) - self.cdf(a)

    def value(self, piece: Piece) -> Fraction:
        if not isinstance(piece, Piece):
            piece = Piece(piece)
        total = ZERO
        for a, b in piece.intervals:
            if a < 0 or b > 1:
                raise DomainError(f"interval [{a}, {b}] outside [0,1]")
            total += self.cdf(b) - self.cdf(a)
        return total

    def mark(self, start, target) -> Fraction:
        """Leftmost ``x >= start`` with ``value([start, x]) == target``."""
        start, target = as_fraction(start), as_fraction(target)
        if start < 0 or start > 1:
            raise DomainError(f"start {start} outside [0,1]")
        if target < 0:
            raise InfeasibleTargetError(f"negative target {target}")
        base = self.cdf(start)
        if target > ONE - base:
            raise InfeasibleTargetError(f"target {target} exceeds remaining value {ONE - base}")
        if target == 0:
            return start
        goal = base + target
        i = bisect.bisect_left(self._cum, goal)
        # cum[i-1] < goal <= cum[i], so segment i-1 has positive density
        return self._bps[i - 1] + (goal - self._cum[i - 1]) / self.segments[i - 1][1]

    def restrict(self, piece: Piece) -> ValueMeasure:
        """This measure conditioned on ``piece``: zero outside, renormalized inside."""
        pts = sorted({ZERO, ONE, *self.breakpoints, *(x for iv in piece.intervals for x in iv)})
        segs = []
        for a, b in zip(pts, pts[1:]):
            inside = any(c <= a and b <= d for c, d in piece.intervals)
            segs.append((b, self.density_at(a) if inside else ZERO))
        return ValueMeasure.rescaled(segs)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list:
        return [{"until": fmt(u), "density": fmt(d)} for u, d in self.segments]

    @classmethod
    def from_json(cls, data, field: str = "density") -> ValueMeasure:
        if not isinstance(data, list) or not data:
            raise ParseError(f"{field}: expected a non-empty list of segments")
        segs = []
        for i, seg in enumerate(data):
            if not isinstance(seg, dict) or set(seg) != {"until", "density"}:
                raise ParseError(f"{field}[{i}]: expected {{\"until\": \"p/q\", \"density\": \"p/q\"}}")
            segs.append((parse(seg["until"], f"{field}[{i}].until"), parse(seg["density"], f"{field}[{i}].density")))
        try:
            return cls(tuple(segs))
        except MeasureError as e:
            raise ParseError(f"{field}: {e}") from None


def common_refinement(ms: Sequence[ValueMeasure], within: Piece | None = None) -> list[Fraction]:
    """Sorted endpoints of ``within`` together with every breakpoint inside it."""
    within = Piece.whole() if within is None else within
    pts = set()
    for a, b in within.intervals:
        pts.update((a, b))
        for m in ms:
            pts.update(x for x in m.breakpoints if a < x < b)
    return sorted(pts)


def refinement_segments(ms: Sequence[ValueMeasure], within: Piece | None = None) -> list[Interval]:
    """Split ``within`` at every breakpoint of ``ms``; each measure is constant on each part."""
    within = Piece.whole() if within is None else within
    segs = []
    for a, b in within.intervals:
        inner = sorted({x for m in ms for x in m.breakpoints if a < x < b})
        pts = [a, *inner, b]
        segs.extend(zip(pts, pts[1:]))
    return segs


def average_measure(ms: Sequence[ValueMeasure]) -> ValueMeasure:
    if not ms:
        raise ValueError("average of an empty list of measures")
    n = len(ms)
    segs = []
    for a, b in refinement_segments(ms):
        segs.append((b, sum((m.density_at(a) for m in ms), ZERO) / n))
    return ValueMeasure(tuple(segs))
