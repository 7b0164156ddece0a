"""Closure systems built from posets and semilattices, and filter lattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bits import iter_bits, mask, popcount
from .closure import ClosureSystem, make_closure
from .errors import BoundExceeded, ParseError
from .lattice import FiniteLattice, _closure_down_sets

FILTER_SEARCH_LIMIT = 64


@dataclass(frozen=True)
class FinitePoset:
    names: tuple[str, ...]
    down: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.down)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def up(self, a: int) -> int:
        return mask(b for b in range(len(self)) if self.down[b] >> a & 1)

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(len(self)) for a in iter_bits(self.down[b]) if a != b]


def make_poset(elements: Sequence[str] | int, pairs: Iterable[tuple[int, int]]) -> FinitePoset:
    """Poset generated by ``pairs`` (``a <= b``), reflexive-transitively closed."""
    names = tuple(str(i) for i in range(elements)) if isinstance(elements, int) else tuple(map(str, elements))
    return FinitePoset(names, tuple(_closure_down_sets(len(names), pairs)))


def poset_of(L: FiniteLattice) -> FinitePoset:
    return FinitePoset(L.names, L.down)


def chain_poset(n: int) -> FinitePoset:
    return make_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return make_poset(n, [])


@dataclass(frozen=True)
class MeetSemilattice:
    names: tuple[str, ...]
    meet: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.meet)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def poset(self) -> FinitePoset:
        n = len(self)
        return FinitePoset(self.names, tuple(mask(a for a in range(n) if self.meet[a][b] == a) for b in range(n)))


def make_semilattice(elements: Sequence[str] | int, meet_table: Sequence[Sequence[int]]) -> MeetSemilattice:
    names = tuple(str(i) for i in range(elements)) if isinstance(elements, int) else tuple(map(str, elements))
    n = len(names)
    table = tuple(tuple(int(v) for v in row) for row in meet_table)
    if len(table) != n or any(len(row) != n for row in table):
        raise ParseError("meet table must be n x n")
    for a in range(n):
        if table[a][a] != a:
            raise ParseError(f"meet is not idempotent at {a}")
        for b in range(n):
            if table[a][b] != table[b][a]:
                raise ParseError(f"meet is not commutative at ({a}, {b})")
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ParseError(f"meet is not associative at ({a}, {b}, {c})")
    return MeetSemilattice(names, table)


def semilattice_of_poset(P: FinitePoset) -> MeetSemilattice | None:
    """Meet table of ``P`` if every pair has a greatest lower bound, else None."""
    n = len(P)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            common = P.down[a] & P.down[b]
            best = None
            for g in iter_bits(common):
                if common & ~P.down[g] == 0:
                    best = g
                    break
            if best is None:
                return None
            row.append(best)
        table.append(tuple(row))
    return MeetSemilattice(P.names, tuple(table))


# -- closure systems ------------------------------------------------------------


def co_poset(P: FinitePoset) -> ClosureSystem:
    """Convex subsets of ``P``; the hull adds everything between two members."""
    n = len(P)
    imps = []
    for a in range(n):
        for b in range(n):
            if a != b and P.leq(a, b):
                for x in iter_bits(P.up(a) & P.down[b]):
                    if x not in (a, b):
                        imps.append((mask((a, b)), x))
    return make_closure(P.names, implications=imps)


def sub_meet(S: MeetSemilattice) -> ClosureSystem:
    """Meet-closed subsets of ``S`` (the empty set included)."""
    n = len(S)
    imps = []
    for a in range(n):
        for b in range(a + 1, n):
            m = S.meet[a][b]
            if m not in (a, b):
                imps.append((mask((a, b)), m))
    return make_closure(S.names, implications=imps)


def convex_sub_meet(S: MeetSemilattice) -> ClosureSystem:
    """Subsets of ``S`` that are both order-convex and meet-closed."""
    convex = co_poset(S.poset())
    closed = sub_meet(S)
    return make_closure(S.names, implications=[(i.premise, i.conclusion) for i in convex.base + closed.base])


def suborders(P: FinitePoset) -> tuple[ClosureSystem, list[tuple[int, int]]]:
    """Transitively closed sets of strict comparabilities of ``P``.

    Returns the system together with its ground list of pairs ``(a, b)``,
    ``a < b``; ground names read ``"a<b"``.
    """
    pairs = P.strict_pairs()
    pos = {p: k for k, p in enumerate(pairs)}
    imps = []
    for (a, b) in pairs:
        for (b2, c) in pairs:
            if b2 == b:
                imps.append((mask((pos[(a, b)], pos[(b, c)])), pos[(a, c)]))
    names = [f"{P.names[a]}<{P.names[b]}" for a, b in pairs]
    return make_closure(names, implications=imps), pairs


# -- filter lattice ---------------------------------------------------------------


@dataclass(frozen=True)
class FilterLattice:
    """Filters of ``L0`` under reverse inclusion, with the principal-filter map."""

    lattice: FiniteLattice
    filters: tuple[int, ...]
    principal: dict[int, int]


def enumerate_filters(L0: FiniteLattice) -> list[int]:
    """All non-empty meet-closed up-sets of ``L0``, found by search (not by assuming principality)."""
    n = len(L0)
    if n > FILTER_SEARCH_LIMIT:
        raise BoundExceeded(f"filter search limited to {FILTER_SEARCH_LIMIT} elements")
    order = list(reversed(L0.linear_extension()))
    found = []

    def propagate(inc, exc):
        while True:
            new_inc = inc
            for x in iter_bits(inc):
                new_inc |= L0.up[x]
                for y in iter_bits(inc):
                    new_inc |= 1 << L0.meet(x, y)
            new_exc = exc
            for x in iter_bits(exc):
                new_exc |= L0.down[x]
            if new_inc & new_exc:
                return None
            if new_inc == inc and new_exc == exc:
                return inc, exc
            inc, exc = new_inc, new_exc

    def search(k, inc, exc):
        state = propagate(inc, exc)
        if state is None:
            return
        inc, exc = state
        while k < n and (inc | exc) >> order[k] & 1:
            k += 1
        if k == n:
            if inc:
                found.append(inc)
            return
        x = order[k]
        search(k + 1, inc | 1 << x, exc)
        search(k + 1, inc, exc | 1 << x)

    search(0, 0, 0)
    return sorted(found, key=lambda m: (-popcount(m), m))


def filter_lattice(L0: FiniteLattice) -> FilterLattice:
    filters = enumerate_filters(L0)
    # F <= G iff F contains G
    down = [mask(i for i, F in enumerate(filters) if F & G == G) for G in filters]
    names = ["fil{" + ",".join(L0.names[x] for x in iter_bits(F)) + "}" for F in filters]
    L = FiniteLattice(names, down, labels=filters)
    index = {F: i for i, F in enumerate(filters)}
    principal = {x: index[L0.up[x]] for x in range(len(L0)) if L0.up[x] in index}
    return FilterLattice(L, tuple(filters), principal)

