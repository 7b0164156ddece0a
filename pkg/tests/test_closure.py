import pytest
from hypothesis import given, settings, strategies as st

from convgeom import errors
from convgeom.bits import popcount
from convgeom.closure import (
    AepWitness, CjiFailure, aep, cji_correspondence, cld_lattice, cover_singleton, extreme_points,
    is_convex_geometry, make_closure, standard_representation,
)
from convgeom.corpus import all_moore
from convgeom.lattice import boolean, chain, m3, n5

from oracles import moore_families


def path3():
    # ground 0-1-2 on a line; the hull of {0,2} adds 1
    return make_closure(3, implications=[((0, 2), 1)])


def test_family_and_implications_agree():
    fam = [0, 0b001, 0b010, 0b100, 0b011, 0b110, 0b111]
    a = make_closure(3, family=fam)
    b = path3()
    assert a.closed_sets() == b.closed_sets() == sorted(fam, key=lambda m: (popcount(m), m))


def test_non_moore_family_is_completed():
    cs = make_closure(2, family=[0b01, 0b10])
    assert set(cs.added) == {0b00, 0b11}
    assert cs.close(0b01) == 0b01


def test_out_of_ground():
    cs = path3()
    with pytest.raises(errors.ElementOutOfGround):
        cs.close(0b1000)
    with pytest.raises(errors.ElementOutOfGround):
        make_closure(2, family=[0b100])
    with pytest.raises(errors.ElementOutOfGround):
        make_closure(2, implications=[((0,), 5)])


def test_zero_closure_failure():
    cs = make_closure(2, family=[0b01, 0b11])
    v = is_convex_geometry(cs)
    assert not v.ok and v.reason == "not-zero-closure" and v.witness == 0b01


def test_aep_failure_witness():
    # {x,y} glued: closure of either point is both
    cs = make_closure(2, family=[0, 0b11])
    assert aep(cs) == AepWitness(0, 0, 1)
    assert is_convex_geometry(cs).reason == "anti-exchange-fails"
    assert cover_singleton(cs) == (0, 0b11)


def test_extreme_points():
    cs = path3()
    assert extreme_points(cs, 0b111) == 0b101
    assert extreme_points(cs, 0b011) == 0b011
    assert extreme_points(cs, 0) == 0


def test_moore_counts_match_oracle():
    assert sum(1 for _ in all_moore(2)) == len(moore_families(2)) == 7
    assert sum(1 for _ in all_moore(3)) == len(moore_families(3)) == 61
    with pytest.raises(errors.BoundExceeded):
        list(all_moore(4))


def test_moore_families_are_the_oracle_families():
    ours = {frozenset(cs.closed_sets()) for cs in all_moore(3)}
    theirs = {frozenset(sum(1 << i for i in S) for S in f) for f in moore_families(3)}
    assert ours == theirs


def test_aep_equals_cover_singleton_exhaustively():
    for n in (2, 3):
        for cs in all_moore(n):
            assert (aep(cs) is True) == (cover_singleton(cs) is True)


def test_standard_representation_round_trip():
    for L in (n5(), m3(), boolean(3), chain(4)):
        rep = standard_representation(L)
        assert sorted(rep.element_of.values()) == list(range(len(L)))
        again = cld_lattice(rep.system)
        assert len(again) == len(L)


def test_n5_standard_representation():
    L = n5()
    rep = standard_representation(L)
    names = rep.system.ground
    assert set(names) == {"a", "b", "c"}
    w = aep(rep.system)
    assert (names[w.x], names[w.y]) == ("a", "c") and w.A == 1 << names.index("b")


def test_cji_correspondence():
    cs = path3()
    m = cji_correspondence(cs)
    assert m == {0: 0b001, 1: 0b010, 2: 0b100}
    with pytest.raises(errors.PreconditionFailed):
        cji_correspondence(make_closure(2, family=[0, 0b11]))
    # point 1 sits inside the closure of point 0
    cs2 = make_closure(2, family=[0, 0b10, 0b11])
    out = cji_correspondence(cs2)
    assert isinstance(out, CjiFailure) or out == {0: 0b11, 1: 0b10}


@st.composite
def implication_systems(draw):
    n = draw(st.integers(1, 5))
    imps = draw(st.lists(st.tuples(st.integers(0, (1 << n) - 1), st.integers(0, n - 1)), max_size=6))
    return make_closure(n, implications=imps)


@settings(max_examples=60, deadline=None)
@given(implication_systems(), st.data())
def test_closure_operator_laws(cs, data):
    n = len(cs.ground)
    A = data.draw(st.integers(0, (1 << n) - 1))
    B = data.draw(st.integers(0, (1 << n) - 1))
    cA = cs.close(A)
    assert A & ~cA == 0
    assert cs.close(cA) == cA
    if A & ~B == 0:
        assert cA & ~cs.close(B) == 0
    closed = cs.closed_sets()
    assert (1 << n) - 1 in closed
    assert all(X & Y in closed for X in closed for Y in closed)


@settings(max_examples=60, deadline=None)
@given(implication_systems())
def test_aep_cover_singleton_property(cs):
    assert (aep(cs) is True) == (cover_singleton(cs) is True)


@settings(max_examples=40, deadline=None)
@given(implication_systems(), st.data())
def test_extreme_points_property(cs, data):
    A = cs.close(data.draw(st.integers(0, (1 << len(cs.ground)) - 1)))
    ex = extreme_points(cs, A)
    assert ex & ~A == 0
    if is_convex_geometry(cs).ok:
        assert cs.close(ex) == A
