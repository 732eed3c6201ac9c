import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from famcake.allocation import Piece, validate_partition
from famcake.errors import UnsupportedCombinationError
from famcake.fairness import evaluate
from famcake.instance import Family, Instance, gen_preset, gen_random, random_weights
from famcake.measure import ValueMeasure
from famcake.protocols import (
    divide,
    divide_average,
    divide_democratic_k,
    divide_democratic_two,
    divide_unanimous,
)

U = ValueMeasure.uniform()
RIGHT = ValueMeasure(((F(1, 2), F(0)), (F(1), F(2))))
S2 = gen_preset("section2")


def singletons(ms, weights=None):
    k = len(ms)
    ws = weights or [F(1, k)] * k
    return Instance(tuple(Family(f"F{j + 1}", ws[j], (m,)) for j, m in enumerate(ms)))


# -- average -----------------------------------------------------------------------


def test_average_section2_connected():
    res = divide_average(S2)
    assert res.comp == 2
    assert res.allocation.pieces == (Piece.interval(0, F(29, 100)), Piece.interval(F(29, 100), 1))
    r = evaluate(S2, res.allocation)
    assert all(v >= F(1, 2) for v in r.family_avg)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_average_identical_uniform_families(k):
    res = divide_average(singletons([U] * k))
    assert res.allocation.pieces == tuple(Piece.interval(F(j, k), F(j + 1, k)) for j in range(k))


def test_average_thm2_needs_more_than_connected():
    inst = gen_preset("thm2", k=2)
    res = divide_average(inst)
    assert evaluate(inst, res.allocation).average
    assert res.comp >= 3


# -- unanimous ---------------------------------------------------------------------


def test_choose_section2():
    res = divide_unanimous(S2, "choose")
    left = Piece(((0, F(1, 8)), (F(1, 4), F(3, 8)), (F(1, 2), F(5, 8)), (F(3, 4), F(7, 8))))
    # Frankie is the chooser, values both halves 48/96 and takes the first
    assert res.allocation[1] == left
    assert res.allocation[0] == Piece.whole().minus(left)
    for j, i, m in S2.agents():
        assert m.value(left) == F(1, 2)
    assert evaluate(S2, res.allocation).unanimous
    assert res.comp == 8 and res.paper_bound == 6


def test_choose_rejects_unequal_entitlements():
    with pytest.raises(UnsupportedCombinationError):
        divide_unanimous(singletons([U, U], [F(1, 3), F(2, 3)]), "choose")


def test_recursive_unequal_singletons():
    res = divide_unanimous(singletons([U, U], [F(1, 3), F(2, 3)]), "recursive")
    assert res.allocation.pieces == (Piece.interval(0, F(1, 3)), Piece.interval(F(1, 3), 1))


@pytest.mark.parametrize("method", ["choose", "recursive"])
def test_unanimous_on_lemma5(method):
    # the optimum is 6 (one district each); the per-segment construction splits every district
    inst = gen_preset("lemma5", k=2, m=3)
    res = divide_unanimous(inst, method)
    assert evaluate(inst, res.allocation).unanimous
    assert 6 <= res.comp <= res.impl_bound == 12


def test_section2_recursive_bounds():
    res = divide_unanimous(S2, "recursive")
    assert res.comp <= res.impl_bound == 8
    assert res.paper_bound == 9


# -- democratic, two families -------------------------------------------------------


def test_alg1_identical_uniform():
    res = divide_democratic_two(singletons([U, U]))
    # equal medians: the "otherwise" branch sends F2 west
    assert res.allocation.pieces == (Piece.interval(F(1, 2), 1), Piece.interval(0, F(1, 2)))


def test_alg1_uniform_vs_right_heavy():
    inst = singletons([U, RIGHT])
    res = divide_democratic_two(inst)
    assert res.allocation.pieces == (Piece.interval(0, F(5, 8)), Piece.interval(F(5, 8), 1))
    assert evaluate(inst, res.allocation).per_agent_values == ((F(5, 8),), (F(3, 4),))


def test_alg1_section2():
    res = divide_democratic_two(S2)
    assert "median 6/25" in res.trace[0] and "median 27/40" in res.trace[1]
    assert res.allocation[0] == Piece.interval(0, F(183, 400))
    assert res.comp == 2 and evaluate(S2, res.allocation).democratic


def test_alg1_family_with_larger_median_goes_east():
    res = divide_democratic_two(singletons([RIGHT, U]))
    assert res.allocation.pieces == (Piece.interval(F(5, 8), 1), Piece.interval(0, F(5, 8)))


def test_alg1_rejects_other_shapes():
    with pytest.raises(UnsupportedCombinationError):
        divide_democratic_two(singletons([U, U, U]))
    with pytest.raises(UnsupportedCombinationError):
        divide_democratic_two(singletons([U, U], [F(1, 3), F(2, 3)]))


# -- democratic, k families -----------------------------------------------------------


def test_alg2_three_uniform():
    inst = singletons([U, U, U])
    res = divide_democratic_k(inst)
    assert res.allocation.pieces == tuple(Piece.interval(F(j, 3), F(j + 1, 3)) for j in range(3))


def test_alg2_section2_cuts_at_first_median():
    res = divide_democratic_k(S2)
    assert res.allocation[0] == Piece.interval(0, F(6, 25))
    r = evaluate(S2, res.allocation)
    assert r.per_agent_values[0][0] == F(24, 25) * F(60, 96)
    assert r.per_agent_values[0][1] == F(48, 96)
    assert r.per_agent_values[0][2] < F(1, 2)
    assert r.satisfied_counts == (2, 3) and r.democratic and not r.average


def test_alg2_lemma5_4_4():
    inst = gen_preset("lemma5", k=4, m=4)
    res = divide_democratic_k(inst)
    assert evaluate(inst, res.allocation).democratic
    assert 6 <= res.comp <= res.impl_bound


def test_democratic_entitled_section2():
    res = divide_democratic_k(S2, "entitled")
    assert evaluate(S2, res.allocation).democratic


def test_democratic_equal_mode_needs_equal_weights():
    with pytest.raises(UnsupportedCombinationError):
        divide_democratic_k(singletons([U, U, U], [F(1, 2), F(1, 4), F(1, 4)]))


# -- dispatch ---------------------------------------------------------------------------


def test_divide_single_family_is_whole_cake():
    for crit in ("avg", "unan", "dem"):
        res = divide(singletons([RIGHT]), crit)
        assert res.allocation.pieces == (Piece.whole(),) and res.comp == 1


def test_divide_defaults():
    assert divide(S2, "dem").protocol == "democratic-two"
    assert divide(singletons([U, U, U]), "dem").protocol == "democratic-k"
    assert divide(singletons([U, U, U], [F(1, 2), F(1, 4), F(1, 4)]), "dem").protocol == "democratic-entitled"
    assert divide(S2, "unan").protocol == "unanimous-recursive"
    with pytest.raises(ValueError):
        divide(S2, "envy")


# -- properties ---------------------------------------------------------------------------


@st.composite
def random_instances(draw, kmin=2, kmax=4, entitled=None):
    k = draw(st.integers(kmin, kmax))
    sizes = draw(st.lists(st.integers(1, 4), min_size=k, max_size=k))
    seed = draw(st.integers(0, 2**32))
    use_weights = draw(st.booleans()) if entitled is None else entitled
    weights = random_weights(random.Random(seed), k) if use_weights else None
    return gen_random(k, sizes, draw(st.integers(1, 4)), seed, weights)


def _sound(inst, res, criterion):
    assert validate_partition(res.allocation).ok
    assert res.comp <= res.impl_bound
    report = evaluate(inst, res.allocation)
    assert report.verdicts[criterion]
    return report


@given(random_instances())
def test_average_soundness(inst):
    res = divide_average(inst)
    _sound(inst, res, "average")
    if inst.equal_entitlements:
        assert res.comp == inst.k


@given(random_instances(), st.sampled_from(["choose", "recursive"]))
def test_unanimous_soundness(inst, method):
    if method == "choose" and not inst.equal_entitlements:
        method = "recursive"
    _sound(inst, divide_unanimous(inst, method), "unanimous")


@given(random_instances(2, 2, entitled=False))
def test_alg1_soundness(inst):
    res = divide_democratic_two(inst)
    _sound(inst, res, "democratic")
    assert res.comp == 2


@given(random_instances(entitled=False))
def test_alg2_soundness(inst):
    _sound(inst, divide_democratic_k(inst, "equal"), "democratic")


@given(random_instances())
def test_democratic_entitled_soundness(inst):
    _sound(inst, divide_democratic_k(inst, "entitled"), "democratic")


@given(random_instances())
def test_singleton_recursive_is_proportional(inst):
    single = Instance(tuple(Family(f.name, f.weight, f.members[:1]) for f in inst.families))
    res = divide_unanimous(single, "recursive")
    for fam, piece in zip(single.families, res.allocation):
        assert fam.members[0].value(piece) >= fam.weight
