import pytest
from hypothesis import given, settings, strategies as st

from convgeom import errors
from convgeom.lattice import (
    boolean, build_lattice, chain, construct, covers_of, doubled_atom, dual, find_isomorphism,
    interval, is_isomorphism, ji_below, lattice_algebra, m3, n5, product, refines,
)

from conftest import small_lattices
from oracles import Naive


def names(L, ids):
    return {L.names[i] for i in ids}


def test_trivial_lattice():
    L = build_lattice(["x"], [])
    assert len(L) == 1 and L.ji == {} and L.bottom == L.top == 0


def test_pentagon_from_covers(N5):
    assert names(N5, N5.ji) == {"a", "b", "c"}
    assert N5.ji[N5.id("c")] == N5.id("a")


def test_not_a_lattice_two_maximal():
    with pytest.raises(errors.NotALattice):
        build_lattice(["0", "x", "y"], [(0, 1), (0, 2)])


def test_cycle_is_not_a_partial_order():
    with pytest.raises(errors.NotAPartialOrder):
        build_lattice(3, [(0, 1), (1, 2), (2, 0)], mode="order")


def test_antisymmetry_failure():
    with pytest.raises(errors.NotAPartialOrder):
        build_lattice(2, [(0, 1), (1, 0)], mode="order")


def test_order_mode_matches_cover_mode(N5):
    pairs = [(a, b) for a in range(5) for b in range(5) if N5.leq(a, b)]
    L = build_lattice(list(N5.names), pairs, mode="order")
    assert L.covers() == N5.covers()


def test_algebra_examples(N5, M3):
    assert lattice_algebra(N5, "join", N5.id("a"), N5.id("b")) == N5.id("1")
    assert lattice_algebra(M3, "meet", M3.id("b"), M3.id("c")) == M3.id("0")
    for L in small_lattices().values():
        assert lattice_algebra(L, "join_set", []) == L.bottom
        assert lattice_algebra(L, "meet_set", []) == L.top


def test_unknown_element(N5):
    with pytest.raises(errors.UnknownElement):
        N5.meet(0, 7)
    with pytest.raises(errors.UnknownElement):
        covers_of(N5, 9)
    with pytest.raises(errors.UnknownElement):
        N5.id("zz")


def test_covers_of(N5):
    c3 = chain(3)
    assert covers_of(c3, 2, "lower") == {1}
    assert names(N5, covers_of(N5, N5.id("1"))) == {"b", "c"}
    for L in small_lattices().values():
        assert covers_of(L, L.bottom) == frozenset()


def test_ji_below(N5):
    assert names(N5, ji_below(N5, N5.id("1"))) == {"a", "b", "c"}
    assert names(N5, ji_below(N5, N5.id("c"))) == {"a", "c"}
    assert ji_below(N5, N5.bottom) == frozenset()


def test_refines(N5):
    a, b, c = (N5.id(x) for x in "abc")
    assert refines(N5, {a, b}, {a, b}).pairs == {a: a, b: b}
    assert refines(N5, set(), {b}).pairs == {}
    assert refines(N5, {a, b}, {c, b}).pairs == {a: c, b: b}
    assert refines(N5, {c}, {a, b}) is None


@pytest.mark.parametrize("name", list(small_lattices()))
def test_tables_match_brute_force(name):
    L = small_lattices()[name]
    naive = Naive(len(L), L.leq)
    for a in range(len(L)):
        for b in range(len(L)):
            assert L.meet(a, b) == naive.meet(a, b)
            assert L.join(a, b) == naive.join(a, b)
            assert L.is_cover(a, b) == naive.covers(a, b)
    assert sorted(L.ji) == naive.join_irreducibles()


@pytest.mark.parametrize("name", list(small_lattices()))
def test_finite_lattice_invariants(name):
    L = small_lattices()[name]
    for a in range(len(L)):
        assert L.join_set(ji_below(L, a)) == a
        assert (a in L.ji) == (len(L.lower_covers(a)) == 1)
    # closure of the cover relation gives the order back
    again = build_lattice(list(L.names), L.covers(), mode="covers")
    assert (again.leq_matrix == L.leq_matrix).all()


def test_constructors():
    B2 = boolean(2)
    assert len(B2) == 4
    assert find_isomorphism(dual(chain(3)), chain(3)) is not None
    assert find_isomorphism(dual(n5()), n5()) is not None
    assert find_isomorphism(m3(), n5()) is None
    P = product(chain(2), chain(2))
    assert find_isomorphism(P, B2) is not None
    I = interval(boolean(3), 1, 7)
    assert find_isomorphism(I, B2) is not None
    with pytest.raises(errors.EmptyInterval):
        interval(n5(), n5().id("b"), n5().id("c"))


def test_doubled_atom_shape():
    L = doubled_atom(4)
    assert len(L) == 9
    lo, hi = L.id("(0,1)_lo"), L.id("(0,1)_hi")
    assert L.is_cover(lo, hi)
    assert L.is_cover(L.bottom, lo)
    assert L.join(lo, L.id("(1,0)")) == L.id("(1,1)")


def test_construct_parser():
    assert len(construct("product(chain(2),M3)")) == 10
    assert len(construct("interval(boolean(3),0,3)")) == 4
    assert len(construct("chain_dual_times_two_doubled_atom(4)")) == 9
    with pytest.raises(errors.ParseError):
        construct("frobnicate(3)")


def test_is_isomorphism_rejects_non_bijection():
    assert not is_isomorphism(chain(2), chain(2), [0, 0])
    assert is_isomorphism(chain(2), chain(2), [0, 1])


@st.composite
def random_lattice(draw):
    """Boolean lattices, chains and products of them, with ids shuffled."""
    k = draw(st.integers(1, 3))
    base = draw(st.sampled_from([chain(k + 1), boolean(k), product(chain(2), chain(k + 1))]))
    perm = draw(st.permutations(range(len(base))))
    pairs = [(perm[a], perm[b]) for a, b in base.covers()]
    return build_lattice(len(base), pairs)


@settings(max_examples=40, deadline=None)
@given(random_lattice(), st.data())
def test_refinement_bounds_joins(L, data):
    A = data.draw(st.sets(st.integers(0, len(L) - 1), max_size=4))
    B = data.draw(st.sets(st.integers(0, len(L) - 1), max_size=4))
    if refines(L, A, B) is not None:
        assert L.leq(L.join_set(A), L.join_set(B))
