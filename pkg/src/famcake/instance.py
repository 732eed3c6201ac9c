"""Families, instances, the named fixtures, and a seeded random generator."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ._rational import ParseError, as_fraction, fmt, parse
from .errors import InstanceError
from .measure import ValueMeasure

SECTION2_NAMES = (("Alice", "Bob", "Charlie"), ("David", "Eva", "Frankie"))
SECTION2_VALUES = (
    ((60, 30, 3, 3), (50, 40, 3, 3), (10, 80, 3, 3)),
    ((3, 3, 60, 30), (3, 3, 60, 30), (3, 3, 0, 90)),
)


@dataclass(frozen=True)
class Family:
    name: str
    weight: Fraction
    members: tuple[ValueMeasure, ...]
    member_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weight", as_fraction(self.weight))
        object.__setattr__(self, "members", tuple(self.members))
        if self.weight <= 0:
            raise InstanceError(f"family {self.name!r}: weight must be positive, got {self.weight}")
        if not self.members:
            raise InstanceError(f"family {self.name!r}: needs at least one member")
        names = tuple(self.member_names) or tuple(f"{self.name}.{i}" for i in range(len(self.members)))
        if len(names) != len(self.members):
            raise InstanceError(f"family {self.name!r}: {len(names)} names for {len(self.members)} members")
        object.__setattr__(self, "member_names", names)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Instance:
    families: tuple[Family, ...]

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        if not self.families:
            raise InstanceError("an instance needs at least one family")
        total = sum(f.weight for f in self.families)
        if total != 1:
            raise InstanceError(f"weights sum to {total}, not 1")

    @property
    def k(self) -> int:
        return len(self.families)

    @property
    def n(self) -> int:
        return sum(f.size for f in self.families)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(f.weight for f in self.families)

    @property
    def equal_entitlements(self) -> bool:
        return all(w == Fraction(1, self.k) for w in self.weights)

    def agents(self) -> Iterator[tuple[int, int, ValueMeasure]]:
        """Yield ``(family_index, member_index, measure)`` for every agent."""
        for j, fam in enumerate(self.families):
            for i, m in enumerate(fam.members):
                yield j, i, m

    def measures(self) -> list[ValueMeasure]:
        return [m for _, _, m in self.agents()]

    def to_json(self) -> dict:
        return {
            "families": [
                {
                    "name": f.name,
                    "weight": fmt(f.weight),
                    "members": [{"name": nm, "density": m.to_json()} for nm, m in zip(f.member_names, f.members)],
                }
                for f in self.families
            ]
        }

    @classmethod
    def from_json(cls, data) -> Instance:
        if not isinstance(data, dict) or "families" not in data:
            raise ParseError("instance: expected an object with a 'families' list")
        fams = data["families"]
        if not isinstance(fams, list):
            raise ParseError("families: expected a list")
        out = []
        for j, f in enumerate(fams):
            where = f"families[{j}]"
            if not isinstance(f, dict):
                raise ParseError(f"{where}: expected an object")
            for key in ("name", "weight", "members"):
                if key not in f:
                    raise ParseError(f"{where}.{key}: missing")
            if not isinstance(f["members"], list):
                raise ParseError(f"{where}.members: expected a list")
            members, names = [], []
            for i, mem in enumerate(f["members"]):
                mwhere = f"{where}.members[{i}]"
                if not isinstance(mem, dict) or "density" not in mem:
                    raise ParseError(f"{mwhere}.density: missing")
                members.append(ValueMeasure.from_json(mem["density"], f"{mwhere}.density"))
                names.append(str(mem.get("name", f"{f['name']}.{i}")))
            try:
                out.append(Family(str(f["name"]), parse(f["weight"], f"{where}.weight"), tuple(members), tuple(names)))
            except InstanceError as e:
                raise ParseError(f"{where}: {e}") from None
        try:
            return cls(tuple(out))
        except InstanceError as e:
            raise ParseError(f"families: {e}") from None


# -- presets -------------------------------------------------------------------


def section2() -> Instance:
    """Two families of three over four equal districts; every agent's total is 96."""
    fams = []
    for j in range(2):
        members = tuple(ValueMeasure.from_district_values(v) for v in SECTION2_VALUES[j])
        fams.append(Family(f"F{j + 1}", Fraction(1, 2), members, SECTION2_NAMES[j]))
    return Instance(tuple(fams))


def thm2(k: int) -> Instance:
    """Lower-bound instance for average fairness with unequal entitlements.

    2k-1 equal districts. Family 1 (weight k^2/(k^2+k-1)) likes the even
    districts 0, 2, ..., 2k-2; family j >= 2 (weight 1/(k^2+k-1)) likes only
    district 2j-3. Each family is a single member.
    """
    if k < 2:
        raise InstanceError("thm2 preset needs k >= 2")
    d = 2 * k - 1
    denom = k * k + k - 1
    first = [1 if t % 2 == 0 else 0 for t in range(d)]
    fams = [Family("F1", Fraction(k * k, denom), (ValueMeasure.from_district_values(first),))]
    for j in range(2, k + 1):
        vals = [1 if t == 2 * j - 3 else 0 for t in range(d)]
        fams.append(Family(f"F{j}", Fraction(1, denom), (ValueMeasure.from_district_values(vals),)))
    return Instance(tuple(fams))


def lemma5(k: int, m: int) -> Instance:
    """k families of m members over m*k districts; member i of family j likes only district i*k+j."""
    if k < 1 or m < 1:
        raise InstanceError("lemma5 preset needs k >= 1 and m >= 1")
    d = m * k
    fams = []
    for j in range(k):
        members = []
        for i in range(m):
            vals = [1 if t == i * k + j else 0 for t in range(d)]
            members.append(ValueMeasure.from_district_values(vals))
        names = SECTION2_NAMES[j] if (k, m) == (2, 3) else ()
        fams.append(Family(f"F{j + 1}", Fraction(1, k), tuple(members), names))
    return Instance(tuple(fams))


def nonadditive() -> Instance:
    """One family whose min and median valuations are not additive over three districts."""
    vals = ((1, 1, 1), (0, 2, 1), (0, 1, 2))
    members = tuple(ValueMeasure.from_district_values(v) for v in vals)
    return Instance((Family("F1", Fraction(1), members, ("Alice", "Bob", "Charlie")),))


PRESETS = {
    "section2": (section2, ()),
    "thm2": (thm2, ("k",)),
    "lemma5": (lemma5, ("k", "m")),
    "nonadditive": (nonadditive, ()),
}


def gen_preset(name: str, **params) -> Instance:
    try:
        fn, names = PRESETS[name]
    except KeyError:
        raise InstanceError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise InstanceError(f"preset {name!r} needs parameters {missing}")
    return fn(*(int(params[p]) for p in names))


# -- random instances --------------------------------------------------------------


def random_measure(rng: random.Random, max_segments: int) -> ValueMeasure:
    """Draw one measure.

    The algorithm, kept fixed so that seeds reproduce:
      1. s = rng.randint(1, max_segments) segments;
      2. interior breakpoints = sorted(rng.sample(range(1, G), s - 1)) / G with
         G = 4 * max_segments;
      3. raw segment values = rng.randint(0, 9) each; if all are zero, the
         segment rng.randrange(s) gets value 1;
      4. density = raw value / segment length, rescaled to total 1.
    """
    grid = 4 * max_segments
    s = rng.randint(1, max_segments)
    cuts = sorted(rng.sample(range(1, grid), s - 1))
    raw = [rng.randint(0, 9) for _ in range(s)]
    if not any(raw):
        raw[rng.randrange(s)] = 1
    bps = [Fraction(c, grid) for c in cuts] + [Fraction(1)]
    segs = []
    prev = Fraction(0)
    for b, r in zip(bps, raw):
        segs.append((b, Fraction(r) / (b - prev)))
        prev = b
    return ValueMeasure.rescaled(segs)


def gen_random(
    k: int,
    family_sizes: Sequence[int],
    max_breakpoints: int,
    seed: int,
    weights: Sequence | None = None,
) -> Instance:
    """Seeded random instance; members are drawn family by family, in order."""
    if k < 1 or len(family_sizes) != k:
        raise InstanceError(f"need k >= 1 and exactly k family sizes (k={k}, sizes={list(family_sizes)})")
    if any(s < 1 for s in family_sizes):
        raise InstanceError("family sizes must be >= 1")
    if max_breakpoints < 1:
        raise InstanceError("max_breakpoints must be >= 1")
    if weights is None:
        ws = [Fraction(1, k)] * k
    else:
        ws = [as_fraction(w) for w in weights]
        if len(ws) != k or any(w <= 0 for w in ws) or sum(ws) != 1:
            raise InstanceError(f"weights must be k positive rationals summing to 1, got {ws}")
    rng = random.Random(seed)
    fams = []
    for j in range(k):
        members = tuple(random_measure(rng, max_breakpoints) for _ in range(family_sizes[j]))
        fams.append(Family(f"F{j + 1}", ws[j], members))
    return Instance(tuple(fams))


def random_weights(rng: random.Random, k: int, denominator: int = 12) -> list[Fraction]:
    """k positive weights with a common small denominator, summing to 1."""
    denominator = max(denominator, k)
    cuts = sorted(rng.sample(range(1, denominator), k - 1))
    pts = [0, *cuts, denominator]
    return [Fraction(b - a, denominator) for a, b in zip(pts, pts[1:])]
