"""Brute-force minimum component counts, for checking lower bounds on small instances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import _patterns
from .allocation import Allocation
from .errors import SearchLimitExceeded
from .fairness import evaluate, majority
from .instance import Instance
from .measure import refinement_segments


@dataclass(frozen=True)
class OracleResult:
    criterion: str
    min_components: int | None  # None: infeasible within max_comp
    witness: Allocation | None
    nodes_searched: int
    max_comp: int

    @property
    def feasible(self) -> bool:
        return self.min_components is not None

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "min_components": self.min_components if self.feasible else "infeasible",
            "max_comp": self.max_comp,
            "witness": None if self.witness is None else self.witness.to_json(),
            "nodes_searched": self.nodes_searched,
        }


def _coefs(inst: Instance, segs):
    """Per agent, the value of each whole segment."""
    return [[tuple(m.density_at(a) * (b - a) for a, b in segs) for m in fam.members] for fam in inst.families]


def _alternatives(inst: Instance, criterion: str, coefs):
    R = _patterns.Requirement
    ws = inst.weights
    if criterion == "average":
        reqs = []
        for j, rows in enumerate(coefs):
            avg = tuple(sum(col, Fraction(0)) / len(rows) for col in zip(*rows))
            reqs.append(R(j, avg, ws[j]))
        return [reqs]
    if criterion == "unanimous":
        return [[R(j, row, ws[j]) for j, rows in enumerate(coefs) for row in rows]]
    if criterion == "democratic":
        choices = [combinations(range(len(rows)), majority(len(rows))) for rows in coefs]
        alts = []
        for pick in product(*choices):
            alts.append([R(j, coefs[j][i], ws[j]) for j, sel in enumerate(pick) for i in sel])
        return alts
    raise ValueError(f"unknown criterion {criterion!r}")


def min_components(inst: Instance, criterion: str, max_comp: int, node_limit: int | None = None) -> OracleResult:
    """Smallest Comp(X) over all allocations meeting ``criterion``, with a witness.

    Exhaustive over label patterns on the common refinement of all members;
    cut positions inside a segment come from an exact LP, so the answer is
    exact. Raises SearchLimitExceeded past ``node_limit`` (default from the
    FAMCAKE_SEARCH_LIMIT environment variable).
    """
    from .protocols import CRITERION_ALIASES

    crit = CRITERION_ALIASES.get(criterion, criterion)
    segs = refinement_segments(inst.measures())
    adjacent = [s > 0 for s in range(len(segs))]
    alts = _alternatives(inst, crit, _coefs(inst, segs))
    out = _patterns.search(adjacent, inst.k, alts, max_comp=max_comp, min_comp=inst.k, node_limit=node_limit)
    if out.comps is None:
        return OracleResult(crit, None, None, out.nodes, max_comp)
    witness = Allocation(tuple(_patterns.layout(segs, out.patterns, out.fractions, inst.k)))
    assert witness.comp == out.comps and evaluate(inst, witness).verdicts[crit]
    return OracleResult(crit, out.comps, witness, out.nodes, max_comp)


# -- positivity ----------------------------------------------------------------------------


def positivity_lower_bound(k: int, m: int, q: int) -> Fraction:
    """k(kq - m)/(k - 1): components needed so that q of m members per family are positive."""
    return Fraction(k * (k * q - m), k - 1)


def _positivity_patterns(k, useful, prev, run_start, restrict):
    """Candidate label sequences for one segment.

    Restricted mode keeps only labels somebody in the family values on this
    segment, the label continuing from the left, and (at a run start) any
    single label. An exchange argument shows this loses no optimum: a label
    nobody there wants can be dropped, or replaced by the continuing label,
    without raising the component count.
    """
    if not restrict:
        return _patterns.segment_patterns(k)
    base = set(useful)
    if prev is not None and not run_start:
        base.add(prev)
    out = set()
    labels = sorted(base)
    for size in range(1, len(labels) + 1):
        for sub in combinations(labels, size):
            for f in sub:
                for l in sub:
                    if size > 1 and l == f:
                        continue
                    mid = tuple(x for x in sub if x not in (f, l))
                    out.add((f,) if size == 1 else (f, *mid, l))
    if run_start:
        out.update((j,) for j in range(k))
    return sorted(out, key=lambda p: (len(p), p))


def positivity_min_components(
    inst: Instance, q: int, max_comp: int, node_limit: int | None = None, restrict: bool = True
) -> OracleResult:
    """Fewest components such that at least ``q`` members of every family value their piece positively.

    Whether a member is positive depends only on which labels occur on which
    segments, so this is a shortest-path search over (last label, set of
    positive members) states, segment by segment.
    """
    if any(q > f.size for f in inst.families) or q < 1:
        raise ValueError(f"q must be between 1 and the smallest family size, got {q}")
    limit = _patterns.node_limit_from_env() if node_limit is None else node_limit
    k = inst.k
    segs = refinement_segments(inst.measures())
    agents = list(inst.agents())
    fam_mask = [0] * k
    for idx, (j, _, _) in enumerate(agents):
        fam_mask[j] |= 1 << idx
    # bits[s][j]: members of family j with positive density on segment s
    bits = []
    for a, b in segs:
        row = [0] * k
        for idx, (j, _, m) in enumerate(agents):
            if m.density_at(a) > 0:
                row[j] |= 1 << idx
        bits.append(row)

    nodes = 0
    # state -> (cost, parent state, pattern)
    layers = [{(None, 0): (0, None, None)}]
    for s in range(len(segs)):
        useful = [j for j in range(k) if bits[s][j]]
        nxt: dict = {}
        for (prev, mask), (cost, _, _) in layers[-1].items():
            for pat in _positivity_patterns(k, useful, prev, s == 0, restrict):
                nodes += 1
                if nodes > limit:
                    raise SearchLimitExceeded(f"positivity search exceeded {limit} nodes")
                add = len(pat) - 1 + (0 if prev is not None and pat[0] == prev else 1)
                c = cost + add
                if c > max_comp:
                    continue
                nmask = mask
                for j in pat:
                    nmask |= bits[s][j]
                key = (pat[-1], nmask)
                if key not in nxt or c < nxt[key][0]:
                    nxt[key] = (c, (prev, mask), pat)
        layers.append(nxt)

    def ok(mask):
        return all(bin(mask & fm).count("1") >= q for fm in fam_mask)

    finals = sorted((v[0], key) for key, v in layers[-1].items() if ok(key[1]))
    if not finals:
        return OracleResult("positive", None, None, nodes, max_comp)
    best, key = finals[0][0], finals[0][1]
    pats = []
    for s in range(len(segs), 0, -1):
        _, parent, pat = layers[s][key]
        pats.append(pat)
        key = parent
    pats.reverse()
    fracs = [{j: Fraction(1, len(p)) for j in p} for p in pats]
    witness = Allocation(tuple(_patterns.layout(segs, pats, fracs, k)))
    assert witness.comp == best
    return OracleResult("positive", best, witness, nodes, max_comp)


def positive_counts(inst: Instance, x: Allocation) -> list[int]:
    return [sum(1 for m in fam.members if m.value(p) > 0) for fam, p in zip(inst.families, x.pieces)]
