import pytest
from hypothesis import given, settings, strategies as st

from convgeom import errors
from convgeom.explorer import (
    FAILS, HOLDS, INCONCLUSIVE, INSTANCES, LazyLattice, explore, lattice_k, named_instance, omega_finite,
    omega_zero_or_finite, resolve, window_check, window_join,
)


def labels(LL, xs):
    return {LL.label(x) for x in xs}


def test_k_window():
    K = lattice_k()
    W = explore(K, 2, 4)
    assert labels(K, W.elements) == {"1", "a1", "b", "a2", "0"}
    assert labels(K, W.truncated) == {"a2"}


def test_k_strong_spatiality_open_but_spatial():
    K = lattice_k()
    for d in range(1, 11):
        W = explore(K, d, 4)
        assert window_check(K, W, "strongly_spatial_at", (resolve(K, W, "top"), "b")).status == INCONCLUSIVE
        assert window_check(K, W, "spatial").status == HOLDS


def test_k_unique_j_and_lsm():
    K = lattice_k()
    W = explore(K, 3, 4)
    assert window_check(K, W, "unique_j").status == FAILS
    v = window_check(K, W, "lower_semimodular")
    assert v.status == FAILS and v.witness == ("b", "1", "a1")


def test_omega_covers():
    O = omega_zero_or_finite()
    covers, _ = O.lower_covers(omega_finite(0, 1, 2), 8)
    assert set(covers) == {omega_finite(1, 2), omega_finite(0, 2), omega_finite(0, 1)}
    assert O.lower_covers(omega_finite(0), 8) == ([omega_finite()], False)
    assert O.lower_covers(O.top, 3)[1] is True


def test_omega_cover_singleton():
    O = omega_zero_or_finite()
    for d in (1, 2, 3):
        for b in range(1, 9):
            assert window_check(O, explore(O, d, b), "cover_singleton").status == HOLDS


def test_omega_finite_meets():
    O = omega_zero_or_finite()
    for k in range(1, 21):
        Fk = omega_finite(*range(1, k + 1))
        assert O.meet(omega_finite(0), Fk) == omega_finite()
        assert O.leq(Fk, O.top)
    # the join of the chain F_k is the whole set, which keeps 0
    assert O.meet(omega_finite(0), O.top) == omega_finite(0)


def test_doubled_atom_window():
    D = named_instance("chain_dual_times_two_doubled_atom")
    W = explore(D, 4, 4)
    assert window_check(D, W, "lower_semimodular").status == HOLDS
    assert W.frontier


def test_trivial_instance():
    T = named_instance("trivial")
    W = explore(T, 1, 1)
    for prop in ("cover_singleton", "unique_j", "lower_semimodular", "spatial"):
        assert window_check(T, W, prop).status == HOLDS


def test_errors():
    with pytest.raises(errors.UnknownInstance):
        named_instance("nope")
    K = lattice_k()
    W = explore(K, 1, 2)
    with pytest.raises(errors.PropertyNeedsMeetOracle):
        window_check(K, W, "cover_singleton")
    with pytest.raises(ValueError):
        window_check(K, W, "bogus")
    with pytest.raises(ValueError):
        explore(K, 0, 1)
    bare = LazyLattice("bare", 0, lambda e, b: ([], False))
    with pytest.raises(errors.PropertyNeedsMeetOracle):
        window_check(bare, explore(bare, 1, 1), "lower_semimodular")


def test_inconsistent_oracle():
    calls = {"n": 0}

    def flaky(e, budget):
        calls["n"] += 1
        return ([calls["n"]], False)

    with pytest.raises(errors.OracleInconsistent):
        explore(LazyLattice("flaky", 0, flaky), 2, 2)
    with pytest.raises(errors.OracleInconsistent):
        explore(LazyLattice("big", 0, lambda e, b: ([1, 2, 3], False)), 1, 2)


def test_window_join():
    K = lattice_k()
    W = explore(K, 2, 4)
    assert window_join(K, W, ["b", ("a", 1)]) == "1"
    assert window_join(K, W, []) == "0"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(INSTANCES)), st.integers(1, 5), st.integers(1, 6))
def test_windows_grow_with_depth_and_budget(name, depth, budget):
    LL = named_instance(name)
    small = explore(LL, depth, budget)
    assert set(small.elements) <= set(explore(LL, depth + 1, budget).elements)
    assert set(small.elements) <= set(explore(LL, depth, budget + 1).elements)
    # every element sits within the requested distance of the top
    assert all(d <= depth for d in small.depth_of.values())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 8))
def test_failure_verdicts_are_stable(depth, budget):
    # a failure found in a window persists in larger windows
    K = lattice_k()
    first = window_check(K, explore(K, depth, budget), "lower_semimodular")
    if first.status == FAILS:
        assert window_check(K, explore(K, depth + 1, budget), "lower_semimodular").status == FAILS
