from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import measures, pieces
from famcake.allocation import Piece
from famcake.errors import DomainError, InfeasibleTargetError, MeasureError
from famcake.instance import section2
from famcake.measure import ValueMeasure, average_measure, common_refinement, refinement_segments

U = ValueMeasure.uniform()
LEFT = ValueMeasure(((F(1, 2), F(2)), (F(1), F(0))))
RIGHT = ValueMeasure(((F(1, 2), F(0)), (F(1), F(2))))


def alice():
    return section2().families[0].members[0]


# -- value ------------------------------------------------------------------------


def test_value_whole_cake_is_one():
    assert U.value(Piece.whole()) == 1


def test_value_two_quarters():
    assert U.value(Piece(((F(0), F(1, 4)), (F(1, 2), F(3, 4))))) == F(1, 2)


def test_value_alice_left_half():
    assert alice().value(Piece.interval(0, F(1, 2))) == F(90, 96)


def test_value_outside_cake_is_domain_error():
    with pytest.raises(DomainError):
        U.value(Piece.interval(F(1, 2), F(3, 2)))


# -- mark --------------------------------------------------------------------------


def test_mark_uniform_half():
    assert U.mark(0, F(1, 2)) == F(1, 2)


def test_mark_alice_half_is_one_fifth():
    x = alice().mark(0, F(1, 2))
    assert x == F(1, 5)
    assert alice().value(Piece.interval(0, x)) == F(48, 96)


def test_mark_is_leftmost_on_plateau():
    assert LEFT.mark(0, 1) == F(1, 2)
    assert RIGHT.mark(0, 0) == 0


def test_mark_infeasible_target():
    with pytest.raises(InfeasibleTargetError):
        U.mark(F(1, 2), F(3, 4))


# -- construction ------------------------------------------------------------------


def test_unnormalized_input_is_rejected():
    with pytest.raises(MeasureError):
        ValueMeasure(((F(1), F(2)),))


def test_rescaled_normalizes():
    assert ValueMeasure.rescaled([(F(1), F(7))]) == U


def test_adjacent_equal_densities_merge():
    m = ValueMeasure(((F(1, 3), F(1)), (F(1), F(1))))
    assert m.breakpoints == (F(1),)


def test_json_round_trip():
    m = alice()
    assert ValueMeasure.from_json(m.to_json()) == m
    assert m.to_json()[0] == {"until": "1/4", "density": "5/2"}


# -- refinement and averaging --------------------------------------------------------


def test_refinement_single_uniform():
    assert common_refinement([U]) == [0, 1]


def test_refinement_section2():
    assert common_refinement(section2().measures()) == [0, F(1, 4), F(1, 2), F(3, 4), 1]


def test_refinement_union_of_breakpoints():
    a = ValueMeasure.rescaled([(F(1, 3), F(1)), (F(1), F(2))])
    b = ValueMeasure.rescaled([(F(1, 2), F(1)), (F(1), F(3))])
    assert common_refinement([a, b]) == [0, F(1, 3), F(1, 2), 1]


def test_refinement_within_piece_adds_its_endpoints():
    assert common_refinement([U], Piece.interval(F(1, 5), F(2, 5))) == [F(1, 5), F(2, 5)]


def test_average_of_one_is_identity():
    assert average_measure([U]) == U


def test_average_family1_first_district():
    avg = average_measure(section2().families[0].members)
    assert avg.value(Piece.interval(0, F(1, 4))) == F(40, 96)


def test_average_of_mirrored_halves_is_uniform():
    assert average_measure([LEFT, RIGHT]) == U


def test_average_of_nothing_is_an_error():
    with pytest.raises(ValueError):
        average_measure([])


# -- properties --------------------------------------------------------------------


@given(measures(), st.fractions(0, 1, max_denominator=24), st.fractions(0, 1, max_denominator=24))
def test_mark_value_round_trip(m, start, frac):
    rest = m.value_interval(start, 1)
    t = frac * rest
    x = m.mark(start, t)
    assert start <= x <= 1
    assert m.value_interval(start, x) == t
    # leftmost: nothing smaller reaches the target
    if x > start:
        assert m.value_interval(start, (start + x) / 2) < t


@given(measures(), pieces(), pieces())
def test_additivity(m, p, q):
    q = q.minus(p)
    assert m.value(p.union(q)) == m.value(p) + m.value(q)


@given(st.lists(measures(), min_size=1, max_size=4), pieces())
def test_average_linearity(ms, p):
    assert average_measure(ms).value(p) == sum(m.value(p) for m in ms) / len(ms)


@given(st.lists(measures(), min_size=1, max_size=4))
def test_constant_on_refinement_segments(ms):
    for a, b in refinement_segments(ms):
        for m in ms:
            assert m.value_interval(a, b) == m.density_at(a) * (b - a)


@given(measures(), pieces())
def test_restrict_is_normalized(m, p):
    assume(m.value(p) > 0)
    r = m.restrict(p)
    assert r.value(Piece.whole()) == 1
    assert r.value(p) == 1
