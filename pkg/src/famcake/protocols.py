"""Division protocols for families, one per criterion and entitlement regime.

Every protocol returns a :class:`ProtocolResult` carrying the allocation, its
component count, the component bound of the corresponding existence theorem
(reported only) and the bound this construction guarantees (always holds).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from ._rational import fmt
from .allocation import Allocation, Piece
from .errors import UnsupportedCombinationError
from .exact import exact_division, exact_ratio_cut
from .fairness import majority
from .instance import Instance
from .measure import ValueMeasure, average_measure, refinement_segments

HALF = Fraction(1, 2)

# (family index, member measures, member labels) as seen by a recursion step
Group = tuple[int, list[ValueMeasure], list[str]]


def ceil_log2(k: int) -> int:
    return (k - 1).bit_length()


@dataclass(frozen=True)
class ProtocolResult:
    protocol: str
    allocation: Allocation
    impl_bound: int
    paper_bound: Fraction | None
    trace: tuple[str, ...] = field(default=())

    @property
    def comp(self) -> int:
        return self.allocation.comp

    def to_json(self) -> dict:
        return {
            "protocol": self.protocol,
            "allocation": self.allocation.to_json(),
            "comp": self.comp,
            "paper_bound": None if self.paper_bound is None else fmt(self.paper_bound),
            "impl_bound": self.impl_bound,
            "trace": list(self.trace),
        }


def _label(inst: Instance, j: int, i: int) -> str:
    fam = inst.families[j]
    return f"{fam.name}.{fam.member_names[i]}"


def _groups(inst: Instance, members: dict[int, list[int]] | None = None) -> list[Group]:
    out = []
    for j, fam in enumerate(inst.families):
        idx = range(fam.size) if members is None else members[j]
        out.append((j, [fam.members[i] for i in idx], [_label(inst, j, i) for i in idx]))
    return out


def _segments(ms: Sequence[ValueMeasure], within: Piece | None = None) -> int:
    return len(refinement_segments(ms, within))


def _unanimous_bound(k: int, ms: Sequence[ValueMeasure], within: Piece | None = None) -> int:
    # each node's piece meets every segment of the refinement in at most one interval
    return 1 if k == 1 else k * _segments(ms, within)


def _whole(inst: Instance, protocol: str) -> ProtocolResult:
    return ProtocolResult(protocol, Allocation((Piece.whole(),)), 1, Fraction(1), ("single family takes the whole cake",))


# -- unanimous -------------------------------------------------------------------------


def _split_groups(
    groups: list[Group], weights: list[Fraction], within: Piece, trace: list[str], chooser: bool
) -> dict[int, Piece]:
    """Recursive halving: every agent in ``groups`` ends with at least its family's share.

    ``weights`` are the families' entitlements relative to ``within``. With
    ``chooser`` (equal weights only) the last member of the last family is left
    out of the exact cut and picks the side its family joins.
    """
    if len(groups) == 1:
        return {groups[0][0]: within}
    kk = len(groups)
    l1 = kk // 2
    total = sum(weights)
    if chooser:
        r = Fraction(l1, kk)
        c_measure, c_name = groups[-1][1][-1], groups[-1][2][-1]
        ms = [m for g in groups for m in g[1]][:-1]
    else:
        r = sum(weights[:l1]) / total
        ms = [m for g in groups for m in g[1]]
    x1, x2 = exact_ratio_cut(ms, within, r)
    trace.append(f"exact cut of {within} at ratio {r}: left {x1} | right {x2}")
    order = list(range(kk))
    if chooser:
        v1, v2 = c_measure.value(x1), c_measure.value(x2)
        l2 = kk - l1
        # the chooser's family sits last, i.e. on the right by default
        if v1 * l2 > v2 * l1:
            order = [kk - 1] + list(range(kk - 1))
            trace.append(f"chooser {c_name} values left {v1}, right {v2}; family {groups[-1][0]} goes left")
        else:
            trace.append(f"chooser {c_name} values left {v1}, right {v2}; family {groups[-1][0]} stays right")
    left = sorted(order[:l1])
    right = sorted(order[l1:])
    out = {}
    out.update(_split_groups([groups[i] for i in left], [weights[i] for i in left], x1, trace, chooser))
    out.update(_split_groups([groups[i] for i in right], [weights[i] for i in right], x2, trace, chooser))
    return out


def divide_unanimous(inst: Instance, method: str = "recursive") -> ProtocolResult:
    """Every member of every family values the family's piece at least its entitlement.

    ``choose``: exact k-way division for all agents but one; that agent picks
    its family's piece (equal entitlements only). ``recursive``: recursive
    exact halving, with a chooser under equal entitlements and plain exact
    ratio cuts at the entitlement sums otherwise.
    """
    k, n = inst.k, inst.n
    if method not in ("choose", "recursive"):
        raise ValueError(f"unknown method {method!r}")
    if method == "choose" and not inst.equal_entitlements:
        raise UnsupportedCombinationError(
            "method 'choose' needs equal entitlements: with unequal pieces the chooser may pick the wrong one"
        )
    if k == 1:
        return _whole(inst, f"unanimous-{method}")
    trace: list[str] = []
    if method == "choose":
        agents = list(inst.agents())
        cj, ci, cm = agents[-1]
        ms = [m for _, _, m in agents[:-1]]
        pieces = exact_division(ms, k, Piece.whole())
        trace.append(f"exact {k}-way division for {n - 1} agents: " + "; ".join(str(p) for p in pieces))
        vals = [cm.value(p) for p in pieces]
        fav = vals.index(max(vals))
        trace.append(f"chooser {_label(inst, cj, ci)} values pieces {[str(v) for v in vals]}; takes piece {fav}")
        rest = [p for t, p in enumerate(pieces) if t != fav]
        out = []
        for j in range(k):
            out.append(pieces[fav] if j == cj else rest.pop(0))
        return ProtocolResult(
            "unanimous-choose",
            Allocation(tuple(out)),
            _unanimous_bound(k, ms),
            Fraction((n - 1) * (k - 1) + 1),
            tuple(trace),
        )
    equal = inst.equal_entitlements
    got = _split_groups(_groups(inst), list(inst.weights), Piece.whole(), trace, chooser=equal)
    lg = ceil_log2(k)
    bound = lg * (2 * n - 4) + 1 if equal else lg * (2 * n - 2) + 1
    return ProtocolResult(
        "unanimous-recursive",
        Allocation(tuple(got[j] for j in range(k))),
        _unanimous_bound(k, inst.measures()),
        Fraction(bound),
        tuple(trace),
    )


# -- average -----------------------------------------------------------------------------


def _even_paz(fams: list[tuple[int, ValueMeasure]], a: Fraction, b: Fraction, trace: list[str]) -> dict[int, Piece]:
    if len(fams) == 1:
        return {fams[0][0]: Piece.interval(a, b)}
    kk = len(fams)
    l1 = kk // 2
    marks = []
    for pos, (j, m) in enumerate(fams):
        target = Fraction(l1, kk) * m.value_interval(a, b)
        marks.append((m.mark(a, target), pos))
    marks.sort()
    cut = marks[l1 - 1][0]
    trace.append(f"on [{a},{b}] marks " + ", ".join(f"F{fams[p][0]}:{x}" for x, p in marks) + f"; cut at {cut}")
    left = sorted(p for _, p in marks[:l1])
    right = sorted(p for _, p in marks[l1:])
    out = _even_paz([fams[p] for p in left], a, cut, trace)
    out.update(_even_paz([fams[p] for p in right], cut, b, trace))
    return out


def divide_average(inst: Instance) -> ProtocolResult:
    """Each family's average member value of its piece is at least its entitlement.

    Equal entitlements: recursive halving on the family-average measures,
    giving one interval per family. Unequal: the families become single agents
    holding their average measure, divided by recursive exact ratio cuts.
    """
    k = inst.k
    if k == 1:
        return _whole(inst, "average")
    avgs = [average_measure(f.members) for f in inst.families]
    trace: list[str] = []
    if inst.equal_entitlements:
        got = _even_paz(list(enumerate(avgs)), Fraction(0), Fraction(1), trace)
        return ProtocolResult(
            "average-connected", Allocation(tuple(got[j] for j in range(k))), k, Fraction(k), tuple(trace)
        )
    groups = [(j, [avgs[j]], [f"{inst.families[j].name}.avg"]) for j in range(k)]
    got = _split_groups(groups, list(inst.weights), Piece.whole(), trace, chooser=False)
    return ProtocolResult(
        "average-entitled",
        Allocation(tuple(got[j] for j in range(k))),
        _unanimous_bound(k, avgs),
        Fraction(ceil_log2(k) * (2 * k - 2) + 1),
        tuple(trace),
    )


# -- democratic ------------------------------------------------------------------------------


def _family_median(marks: Sequence[Fraction]) -> Fraction:
    # ceil(n/2)-th smallest: enough members on either side of any cut through it
    return sorted(marks)[majority(len(marks)) - 1]


def divide_democratic_two(inst: Instance) -> ProtocolResult:
    """Two families, equal entitlements: cut midway between the families' median half-marks."""
    if inst.k != 2:
        raise UnsupportedCombinationError(f"this protocol is for exactly 2 families, got {inst.k}")
    if not inst.equal_entitlements:
        raise UnsupportedCombinationError("this protocol needs equal entitlements")
    trace = []
    meds = []
    for j, fam in enumerate(inst.families):
        marks = [m.mark(0, HALF) for m in fam.members]
        meds.append(_family_median(marks))
        trace.append(f"{fam.name} marks {[str(x) for x in marks]}, median {meds[-1]}")
    cut = (meds[0] + meds[1]) / 2
    west, east = Piece.interval(0, cut), Piece.interval(cut, 1)
    if meds[0] < meds[1]:
        pieces = (west, east)
    else:
        pieces = (east, west)
    trace.append(f"cut at {cut}; {inst.families[0].name} takes {pieces[0]}")
    return ProtocolResult("democratic-two", Allocation(pieces), 2, Fraction(2), tuple(trace))


def _alg2_bound(k: int, n: int) -> Fraction:
    h = ceil(k / 2)
    a = 2 + (h - 1) * (Fraction(n, 2) - 2)
    b = 2 + ceil_log2(h) * (n - 8)
    return min(a, Fraction(b))


def divide_democratic_k(inst: Instance, mode: str = "equal") -> ProtocolResult:
    """At least half of every family values its piece at least the entitlement.

    ``equal``: every agent marks the point where the prefix is worth
    ceil(k/2)/k; families sorted by median mark; the cake is cut at the
    ceil(k/2)-th median, and each side is divided unanimously for exactly
    ceil(n_j/2) happy members per family. ``entitled``: the first ceil(n_j/2)
    members of each family get a unanimous division with the original weights.
    """
    k, n = inst.k, inst.n
    if mode not in ("equal", "entitled"):
        raise ValueError(f"unknown mode {mode!r}")
    if k < 2:
        raise UnsupportedCombinationError("democratic protocols need k >= 2 families")
    trace: list[str] = []
    if mode == "entitled":
        chosen = {j: list(range(majority(f.size))) for j, f in enumerate(inst.families)}
        groups = _groups(inst, chosen)
        ms = [m for g in groups for m in g[1]]
        trace.append("selected " + ", ".join(x for g in groups for x in g[2]))
        got = _split_groups(groups, list(inst.weights), Piece.whole(), trace, chooser=inst.equal_entitlements)
        return ProtocolResult(
            "democratic-entitled",
            Allocation(tuple(got[j] for j in range(k))),
            _unanimous_bound(k, ms),
            Fraction(ceil_log2(k) * (n - 2) + 1),
            tuple(trace),
        )
    if not inst.equal_entitlements:
        raise UnsupportedCombinationError("mode 'equal' needs equal entitlements; use mode 'entitled'")
    h = ceil(k / 2)
    t = Fraction(h, k)
    meds = []
    for j, fam in enumerate(inst.families):
        marks = [m.mark(0, t) for m in fam.members]
        meds.append((_family_median(marks), j))
        trace.append(f"{fam.name} marks {[str(x) for x in marks]}, median {meds[-1][0]}")
    meds.sort()
    cut = meds[h - 1][0]
    west_fams = sorted(j for _, j in meds[:h])
    east_fams = sorted(j for _, j in meds[h:])
    west, east = Piece.interval(0, cut), Piece.interval(cut, 1)
    trace.append(f"cut at {cut}; west {west_fams}, east {east_fams}")
    pieces: dict[int, Piece] = {}
    impl = 0
    for side, fams in ((west, west_fams), (east, east_fams)):
        need_side = t if side is west else 1 - t
        groups = []
        for j in fams:
            fam = inst.families[j]
            happy = [i for i, m in enumerate(fam.members) if m.value(side) >= need_side]
            sel = happy[: majority(fam.size)]
            assert len(sel) == majority(fam.size), "median cut left too few happy members"
            groups.append((j, [fam.members[i] for i in sel], [_label(inst, j, i) for i in sel]))
        trace.append(f"side {side}: happy members kept " + ", ".join(x for g in groups for x in g[2]))
        side_ms = [m for g in groups for m in g[1]]
        impl += _unanimous_bound(len(fams), side_ms, side)
        pieces.update(_split_groups(groups, [Fraction(1)] * len(groups), side, trace, chooser=True))
    return ProtocolResult(
        "democratic-k",
        Allocation(tuple(pieces[j] for j in range(k))),
        impl,
        _alg2_bound(k, n),
        tuple(trace),
    )


# -- dispatch -----------------------------------------------------------------------------------

CRITERION_ALIASES = {
    "avg": "average",
    "average": "average",
    "unan": "unanimous",
    "unanimous": "unanimous",
    "dem": "democratic",
    "democratic": "democratic",
}


def divide(inst: Instance, criterion: str, method: str | None = None) -> ProtocolResult:
    """Pick the protocol for ``criterion``; ``method`` overrides the default choice.

    Democratic methods: ``two`` (k=2, equal), ``k`` (equal), ``entitled``.
    Unanimous methods: ``choose``, ``recursive``.
    """
    crit = CRITERION_ALIASES.get(criterion)
    if crit is None:
        raise ValueError(f"unknown criterion {criterion!r}")
    if inst.k == 1:
        return _whole(inst, crit)
    if crit == "average":
        if method not in (None, "default"):
            raise ValueError(f"average has no method {method!r}")
        return divide_average(inst)
    if crit == "unanimous":
        return divide_unanimous(inst, method or "recursive")
    if method is None:
        if not inst.equal_entitlements:
            method = "entitled"
        else:
            method = "two" if inst.k == 2 else "k"
    if method == "two":
        return divide_democratic_two(inst)
    if method == "k":
        return divide_democratic_k(inst, "equal")
    if method == "entitled":
        return divide_democratic_k(inst, "entitled")
    raise ValueError(f"unknown democratic method {method!r}")
