import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from famcake._rational import ParseError
from famcake.allocation import Piece
from famcake.errors import InstanceError
from famcake.instance import Family, Instance, gen_preset, gen_random, random_weights
from famcake.measure import ValueMeasure
from famcake.protocols import divide

U = ValueMeasure.uniform()


def district(i, d):
    return Piece.interval(F(i, d), F(i + 1, d))


def test_section2_preset():
    inst = gen_preset("section2")
    assert [f.size for f in inst.families] == [3, 3]
    assert inst.families[0].member_names == ("Alice", "Bob", "Charlie")
    alice = inst.families[0].members[0]
    assert [alice.value(district(i, 4)) for i in range(4)] == [F(60, 96), F(30, 96), F(3, 96), F(3, 96)]
    assert all(m.value(Piece.whole()) == 1 for m in inst.measures())


def test_thm2_k2_preset():
    inst = gen_preset("thm2", k=2)
    assert inst.weights == (F(4, 5), F(1, 5))
    f1, f2 = (f.members[0] for f in inst.families)
    assert [f1.value(district(i, 3)) * 2 for i in range(3)] == [1, 0, 1]
    assert [f2.value(district(i, 3)) for i in range(3)] == [0, 1, 0]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_thm2_weight_and_districts(k):
    inst = gen_preset("thm2", k=k)
    assert inst.weights[0] == F(k * k, k * k + k - 1)
    bps = set()
    for m in inst.measures():
        bps.update(m.breakpoints)
    assert bps <= {F(t, 2 * k - 1) for t in range(1, 2 * k)}


def test_lemma5_2_3_interleaving():
    inst = gen_preset("lemma5", k=2, m=3)
    want = {}
    for j, i, m in inst.agents():
        (d,) = [t for t in range(6) if m.value(district(t, 6)) > 0]
        want[inst.families[j].member_names[i]] = d
    assert want == {"Alice": 0, "David": 1, "Bob": 2, "Eva": 3, "Charlie": 4, "Frankie": 5}


@pytest.mark.parametrize("k,m", [(1, 1), (2, 2), (3, 2), (2, 4), (4, 3)])
def test_lemma5_supports_disjoint(k, m):
    inst = gen_preset("lemma5", k=k, m=m)
    assert inst.n == k * m and inst.equal_entitlements
    for j, i, meas in inst.agents():
        assert meas.value(district(i * k + j, k * m)) == 1


def test_preset_errors():
    with pytest.raises(InstanceError):
        gen_preset("nope")
    with pytest.raises(InstanceError):
        gen_preset("thm2", k=1)
    with pytest.raises(InstanceError):
        gen_preset("lemma5", k=2)


def test_instance_invariants():
    with pytest.raises(InstanceError):
        Instance((Family("A", F(1, 2), (U,)),))
    with pytest.raises(InstanceError):
        Family("A", F(0), (U,))
    with pytest.raises(InstanceError):
        Family("A", F(1), ())


def test_random_single_agent_divides_to_whole_cake():
    inst = gen_random(1, [1], 3, seed=7)
    res = divide(inst, "dem")
    assert res.allocation.pieces == (Piece.whole(),) and res.comp == 1


def test_random_is_deterministic():
    a = gen_random(2, [3, 3], 4, seed=42)
    b = gen_random(2, [3, 3], 4, seed=42)
    assert a == b
    assert a != gen_random(2, [3, 3], 4, seed=43)


def test_random_default_weights():
    assert gen_random(3, [2, 2, 2], 3, seed=1).weights == (F(1, 3),) * 3


def test_random_bad_arguments():
    with pytest.raises(InstanceError):
        gen_random(2, [3], 3, seed=0)
    with pytest.raises(InstanceError):
        gen_random(2, [3, 3], 3, seed=0, weights=[F(1, 2), F(1, 3)])


def test_json_round_trip_through_text():
    inst = gen_preset("section2")
    again = Instance.from_json(json.loads(json.dumps(inst.to_json())))
    assert again == inst
    assert again.families[1].member_names == ("David", "Eva", "Frankie")


def test_json_errors_name_the_field():
    data = gen_preset("section2").to_json()
    data["families"][1]["weight"] = "x/2"
    with pytest.raises(ParseError, match=r"families\[1\]\.weight"):
        Instance.from_json(data)
    data = gen_preset("section2").to_json()
    del data["families"][0]["members"][2]["density"]
    with pytest.raises(ParseError, match=r"families\[0\]\.members\[2\]\.density"):
        Instance.from_json(data)


@given(
    st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), st.lists(st.integers(1, 3), min_size=k, max_size=k))),
    st.integers(1, 5),
    st.integers(0, 2**32),
    st.booleans(),
)
def test_generated_instances_are_valid_and_round_trip(ks, max_bp, seed, entitled):
    import random

    k, sizes = ks
    weights = random_weights(random.Random(seed), k) if entitled else None
    inst = gen_random(k, sizes, max_bp, seed, weights)
    assert sum(inst.weights) == 1
    for m in inst.measures():
        assert m.value(Piece.whole()) == 1
        assert len(m.breakpoints) <= max_bp
    assert Instance.from_json(json.loads(json.dumps(inst.to_json()))) == inst
