"""Pieces (finite unions of intervals) and allocations of the unit cake."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._rational import ParseError, as_fraction, fmt, parse
from .errors import MalformedPieceError

Interval = tuple[Fraction, Fraction]


def canonicalize(intervals: Iterable[Sequence]) -> tuple[Interval, ...]:
    """Sort, drop zero-length intervals, and merge intervals that touch.

    Overlapping input is rejected: a piece is a disjoint union.
    """
    ivs = []
    for iv in intervals:
        if len(iv) != 2:
            raise MalformedPieceError(f"interval must be a pair, got {iv!r}")
        a, b = as_fraction(iv[0]), as_fraction(iv[1])
        if b < a:
            raise MalformedPieceError(f"interval [{a}, {b}] has right < left")
        if a < b:
            ivs.append((a, b))
    ivs.sort()
    out: list[Interval] = []
    for a, b in ivs:
        if out:
            pa, pb = out[-1]
            if a < pb:
                raise MalformedPieceError(f"intervals [{pa}, {pb}] and [{a}, {b}] overlap")
            if a == pb:
                out[-1] = (pa, b)
                continue
        out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class Piece:
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", canonicalize(self.intervals))

    @classmethod
    def interval(cls, a, b) -> Piece:
        return cls(((a, b),))

    @classmethod
    def whole(cls) -> Piece:
        return cls(((0, 1),))

    @property
    def comp(self) -> int:
        return len(self.intervals)

    @property
    def length(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    def is_empty(self) -> bool:
        return not self.intervals

    def __iter__(self):
        return iter(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def union(self, other: Piece) -> Piece:
        return Piece(self.intervals + other.minus(self).intervals)

    def intersect(self, other: Piece) -> Piece:
        out = []
        i = j = 0
        A, B = self.intervals, other.intervals
        while i < len(A) and j < len(B):
            lo = max(A[i][0], B[j][0])
            hi = min(A[i][1], B[j][1])
            if lo < hi:
                out.append((lo, hi))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return Piece(out)

    def minus(self, other: Piece) -> Piece:
        """Set difference, up to shared endpoints."""
        out = []
        for a, b in self.intervals:
            cur = a
            for c, d in other.intervals:
                if d <= cur or c >= b:
                    continue
                if c > cur:
                    out.append((cur, c))
                cur = max(cur, d)
            if cur < b:
                out.append((cur, b))
        return Piece(out)

    def to_json(self) -> list:
        return [[fmt(a), fmt(b)] for a, b in self.intervals]

    @classmethod
    def from_json(cls, data, field: str = "piece") -> Piece:
        if not isinstance(data, list):
            raise ParseError(f"{field}: expected a list of interval pairs")
        ivs = []
        for i, pair in enumerate(data):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"{field}[{i}]: expected a pair [\"p/q\", \"p/q\"]")
            ivs.append((parse(pair[0], f"{field}[{i}][0]"), parse(pair[1], f"{field}[{i}][1]")))
        return cls(ivs)

    def __str__(self):
        if not self.intervals:
            return "(empty)"
        return " u ".join(f"[{a},{b}]" for a, b in self.intervals)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    kind: str | None = None  # "gap", "overlap" or "range"
    interval: Interval | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        a, b = self.interval
        return f"invalid: {self.kind} ({a}, {b})"


@dataclass(frozen=True)
class Allocation:
    """One piece per family; ``pieces[j]`` goes to family ``j``."""

    pieces: tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "pieces", tuple(p if isinstance(p, Piece) else Piece(p) for p in self.pieces)
        )

    def __len__(self):
        return len(self.pieces)

    def __getitem__(self, j) -> Piece:
        return self.pieces[j]

    def __iter__(self):
        return iter(self.pieces)

    @property
    def comp(self) -> int:
        return comp(self)

    def to_json(self) -> list:
        return [p.to_json() for p in self.pieces]

    @classmethod
    def from_json(cls, data) -> Allocation:
        if not isinstance(data, list):
            raise ParseError("allocation: expected a list of pieces")
        return cls(tuple(Piece.from_json(p, f"allocation[{j}]") for j, p in enumerate(data)))


def comp(x: Allocation) -> int:
    """Total number of connected components over all pieces."""
    return sum(p.comp for p in x.pieces)


def validate_partition(x: Allocation, cake: Piece | None = None) -> Verdict:
    """Check that the pieces are disjoint and cover ``cake`` (default [0,1]).

    Pieces may share endpoints. Returns the first violation found scanning
    left to right.
    """
    cake = Piece.whole() if cake is None else cake
    ivs = sorted(iv for p in x.pieces for iv in p.intervals)
    lo, hi = cake.intervals[0][0], cake.intervals[-1][1]
    for a, b in ivs:
        if a < lo or b > hi:
            return Verdict(False, "range", (a, b))
    cursor = None
    for a, b in ivs:
        if cursor is not None and a < cursor:
            return Verdict(False, "overlap", (a, min(b, cursor)))
        cursor = b if cursor is None else max(cursor, b)
    covered = Piece(ivs)
    missing = cake.minus(covered)
    if missing:
        return Verdict(False, "gap", missing.intervals[0])
    extra = covered.minus(cake)
    if extra:
        return Verdict(False, "range", extra.intervals[0])
    return Verdict(True)
