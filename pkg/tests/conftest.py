import pytest

from convgeom.lattice import boolean, chain, m3, n5


@pytest.fixture
def N5():
    return n5()


@pytest.fixture
def M3():
    return m3()


def small_lattices():
    """Named lattices shared by several parametrized tests."""
    from convgeom.lattice import doubled_atom, dual, product

    return {
        "chain1": chain(1),
        "chain3": chain(3),
        "boolean2": boolean(2),
        "boolean3": boolean(3),
        "M3": m3(),
        "N5": n5(),
        "dualN5": dual(n5()),
        "chain2xM3": product(chain(2), m3()),
        "doubled_atom3": doubled_atom(3),
    }


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
