import pytest
from hypothesis import given, settings, strategies as st

from convgeom import errors
from convgeom.closure import cld_lattice, is_convex_geometry
from convgeom.checks import is_atomistic
from convgeom.generators import (
    FILTER_SEARCH_LIMIT, antichain, chain_poset, co_poset, convex_sub_meet, enumerate_filters, filter_lattice,
    make_poset, make_semilattice, poset_of, semilattice_of_poset, sub_meet, suborders,
)
from convgeom.lattice import boolean, chain, find_isomorphism, is_isomorphism, m3, n5

from oracles import convex_subsets, meet_closed_subsets, transitive_subsets


def fan(k=2):
    # 0 below k incomparable points
    n = k + 1
    return make_semilattice(n, [[a if a == b else 0 for b in range(n)] for a in range(n)])


def masks(sets):
    return sorted(sum(1 << i for i in S) for S in sets)


def test_frozen_counts():
    assert len(co_poset(chain_poset(3)).closed_sets()) == 7
    assert [len(co_poset(antichain(n)).closed_sets()) for n in range(1, 7)] == [2, 4, 8, 16, 32, 64]
    assert len(sub_meet(fan()).closed_sets()) == 7
    assert len(sub_meet(semilattice_of_poset(chain_poset(3))).closed_sets()) == 8
    cs, pairs = suborders(chain_poset(3))
    assert len(cs.closed_sets()) == 7 and len(pairs) == 3


def test_suborder_names():
    cs, pairs = suborders(chain_poset(3))
    assert set(cs.ground) == {"0<1", "0<2", "1<2"}
    pos = {p: k for k, p in enumerate(pairs)}
    composed = cs.close((1 << pos[(0, 1)]) | (1 << pos[(1, 2)]))
    assert composed >> pos[(0, 2)] & 1


def test_semilattice_validation():
    with pytest.raises(errors.ParseError):
        make_semilattice(2, [[0, 0], [1, 1]])
    with pytest.raises(errors.ParseError):
        make_semilattice(2, [[0]])
    assert semilattice_of_poset(antichain(2)) is None


def test_convex_sub_meet_is_intersection():
    S = semilattice_of_poset(chain_poset(3))
    both = set(convex_sub_meet(S).closed_sets())
    assert both == set(co_poset(S.poset()).closed_sets()) & set(sub_meet(S).closed_sets())


def test_filters_of_known_lattices():
    for L in (n5(), m3(), boolean(3), chain(4)):
        fl = filter_lattice(L)
        iso = [fl.principal[x] for x in range(len(L))]
        assert is_isomorphism(L, fl.lattice, iso)
        assert len(enumerate_filters(L)) == len(L)


def test_filter_search_bound():
    with pytest.raises(errors.BoundExceeded):
        enumerate_filters(chain(FILTER_SEARCH_LIMIT + 1))


@st.composite
def posets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return make_poset(n, [(min(a, b), max(a, b)) for a, b in pairs if a != b])


@settings(max_examples=50, deadline=None)
@given(posets())
def test_co_poset_matches_subset_filter(P):
    assert co_poset(P).closed_sets() == sorted(masks(convex_subsets(len(P), P.leq)),
                                               key=lambda m: (bin(m).count("1"), m))


@settings(max_examples=50, deadline=None)
@given(posets())
def test_sub_meet_matches_subset_filter(P):
    S = semilattice_of_poset(P)
    if S is None:
        return
    got = sub_meet(S).closed_sets()
    want = masks(meet_closed_subsets(len(S), lambda a, b: S.meet[a][b]))
    assert sorted(got) == want


@settings(max_examples=30, deadline=None)
@given(posets(4))
def test_suborders_match_subset_filter(P):
    cs, pairs = suborders(P)
    pos = {p: k for k, p in enumerate(pairs)}
    want = sorted(sum(1 << pos[p] for p in A) for A in transitive_subsets(pairs))
    assert sorted(cs.closed_sets()) == want


@settings(max_examples=40, deadline=None)
@given(posets())
def test_generated_systems_are_atomistic_geometries(P):
    for cs in (co_poset(P), suborders(P)[0]):
        assert is_convex_geometry(cs).ok
        assert is_atomistic(cld_lattice(cs)) is True
    S = semilattice_of_poset(P)
    if S is not None:
        for cs in (sub_meet(S), convex_sub_meet(S)):
            assert is_convex_geometry(cs).ok


@settings(max_examples=30, deadline=None)
@given(posets())
def test_filter_lattice_isomorphism(P):
    L = cld_lattice(co_poset(P))
    fl = filter_lattice(L)
    assert is_isomorphism(L, fl.lattice, [fl.principal[x] for x in range(len(L))])
    assert find_isomorphism(L, fl.lattice) is not None
