"""Family aggregate valuations and the three proportionality verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from ._rational import fmt
from .allocation import Allocation, Piece
from .errors import InstanceError
from .instance import Family, Instance, nonadditive

CRITERIA = ("average", "unanimous", "democratic")


def majority(n: int) -> int:
    """Members needed for "at least half" of a family of ``n``."""
    return ceil(n / 2)


def family_values(fam: Family, piece: Piece) -> list[Fraction]:
    return [m.value(piece) for m in fam.members]


def w_avg(fam: Family, piece: Piece) -> Fraction:
    vals = family_values(fam, piece)
    return sum(vals, Fraction(0)) / len(vals)


def w_min(fam: Family, piece: Piece) -> Fraction:
    return min(family_values(fam, piece))


def median_value(values) -> Fraction:
    # ceil(n/2)-th largest: ">= w" iff at least ceil(n/2) values are >= w
    vals = sorted(values, reverse=True)
    return vals[majority(len(vals)) - 1]


def w_med(fam: Family, piece: Piece) -> Fraction:
    return median_value(family_values(fam, piece))


@dataclass(frozen=True)
class FairnessReport:
    per_agent_values: tuple[tuple[Fraction, ...], ...]
    family_avg: tuple[Fraction, ...]
    family_min: tuple[Fraction, ...]
    family_median: tuple[Fraction, ...]
    satisfied_counts: tuple[int, ...]
    verdicts: dict

    @property
    def average(self) -> bool:
        return self.verdicts["average"]

    @property
    def unanimous(self) -> bool:
        return self.verdicts["unanimous"]

    @property
    def democratic(self) -> bool:
        return self.verdicts["democratic"]

    def to_json(self) -> dict:
        return {
            "per_agent_values": [[fmt(v) for v in row] for row in self.per_agent_values],
            "family_avg": [fmt(v) for v in self.family_avg],
            "family_min": [fmt(v) for v in self.family_min],
            "family_median": [fmt(v) for v in self.family_median],
            "satisfied_counts": list(self.satisfied_counts),
            "verdicts": dict(self.verdicts),
        }


def evaluate(inst: Instance, x: Allocation) -> FairnessReport:
    if len(x) != inst.k:
        raise InstanceError(f"allocation has {len(x)} pieces for {inst.k} families")
    rows, avgs, mins, meds, sat = [], [], [], [], []
    for fam, piece in zip(inst.families, x.pieces):
        vals = family_values(fam, piece)
        rows.append(tuple(vals))
        avgs.append(sum(vals, Fraction(0)) / len(vals))
        mins.append(min(vals))
        meds.append(median_value(vals))
        sat.append(sum(1 for v in vals if v >= fam.weight))
    ws = inst.weights
    verdicts = {
        "average": all(a >= w for a, w in zip(avgs, ws)),
        "unanimous": all(m >= w for m, w in zip(mins, ws)),
        "democratic": all(c >= majority(f.size) for c, f in zip(sat, inst.families)),
    }
    return FairnessReport(tuple(rows), tuple(avgs), tuple(mins), tuple(meds), tuple(sat), verdicts)


@dataclass(frozen=True)
class NonadditivityFixture:
    family: Family
    districts: tuple[Piece, Piece, Piece]

    @property
    def cake(self) -> Piece:
        return Piece.whole()


def nonadditivity_witness() -> NonadditivityFixture:
    """Three agents, three districts: W^min of the parts sums to less than W^min of the whole."""
    fam = nonadditive().families[0]
    third = Fraction(1, 3)
    districts = tuple(Piece.interval(i * third, (i + 1) * third) for i in range(3))
    return NonadditivityFixture(fam, districts)
