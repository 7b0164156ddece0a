"""Closure systems on finite ground sets and their lattices of closed sets.

Subsets of the ground set are int bitmasks over ground indices.  A system is
given either by its family of closed sets or by an implication base
(premise mask -> conclusion index) closed by forward chaining.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .bits import as_mask, iter_bits, mask, members, popcount
from .errors import ElementOutOfGround, PreconditionFailed
from .lattice import FiniteLattice

MAX_ENUMERATED_GROUND = 30


@dataclass(frozen=True)
class Implication:
    premise: int
    conclusion: int


@dataclass(frozen=True)
class AepWitness:
    """Closed ``A`` and ``x != y`` outside it with each in the closure of ``A`` plus the other."""

    A: int
    x: int
    y: int


class CoverWitness(NamedTuple):
    lower: int
    upper: int


class GeometryVerdict(NamedTuple):
    ok: bool
    reason: str | None = None
    witness: object = None


@dataclass(frozen=True, eq=False)
class ClosureSystem:
    ground: tuple[str, ...]
    kind: str
    family: tuple[int, ...] | None = None
    base: tuple[Implication, ...] | None = None
    added: tuple[int, ...] = ()
    # closed-set memo; written once, the value is deterministic so a race is benign
    _closed: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def _check(self, A: int) -> int:
        if A < 0 or A & ~self.full:
            raise ElementOutOfGround(f"subset {members(A) if A >= 0 else A} leaves ground of size {len(self.ground)}")
        return A

    def close(self, A: int | Iterable[int]) -> int:
        A = self._check(as_mask(A))
        if self.kind == "family":
            out = self.full
            for C in self.family:
                if A & ~C == 0:
                    out &= C
            return out
        changed = True
        while changed:
            changed = False
            for imp in self.base:
                if imp.premise & ~A == 0 and not A >> imp.conclusion & 1:
                    A |= 1 << imp.conclusion
                    changed = True
        return A

    def is_closed(self, A: int) -> bool:
        return self.close(A) == A

    def closed_sets(self) -> list[int]:
        """Closed sets sorted by (cardinality, mask)."""
        if self._closed is None:
            if self.kind == "family":
                out = sorted(set(self.family), key=lambda m: (popcount(m), m))
            else:
                out = sorted(next_closure_enumerate(self), key=lambda m: (popcount(m), m))
            object.__setattr__(self, "_closed", tuple(out))
        return list(self._closed)

    def subset_name(self, A: int) -> str:
        return "{" + ",".join(self.ground[i] for i in iter_bits(A)) + "}"


def next_closure_enumerate(cs: ClosureSystem) -> Iterable[int]:
    """All closed sets in lectic order (Ganter's NextClosure)."""
    n = len(cs.ground)
    if n > MAX_ENUMERATED_GROUND:
        raise PreconditionFailed(f"ground of size {n} too large to enumerate")
    A = cs.close(0)
    yield A
    while A != cs.full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                A &= ~bit
                continue
            B = cs.close(A | bit)
            # B must agree with A on the elements below i
            low = bit - 1
            if (B & ~A) & low == 0:
                A = B
                break
        yield A


def make_closure(
    ground: Sequence[str] | int,
    family: Iterable[int | Iterable[int]] | None = None,
    implications: Iterable[tuple[Iterable[int] | int, int]] | None = None,
) -> ClosureSystem:
    """Build a closure system from a family of sets or from implications.

    A family that is not a Moore family is completed by adding the ground set
    and all intersections; the sets that had to be added are kept in ``added``.
    """
    names = tuple(str(i) for i in range(ground)) if isinstance(ground, int) else tuple(str(g) for g in ground)
    n = len(names)
    full = (1 << n) - 1
    if (family is None) == (implications is None):
        raise ValueError("give exactly one of family or implications")
    if family is not None:
        given = []
        for S in family:
            m = as_mask(S)
            if m < 0 or m & ~full:
                raise ElementOutOfGround(f"set {S!r} not inside ground of size {n}")
            given.append(m)
        fam = set(given) | {full}
        frontier = list(fam)
        while frontier:
            new = []
            for a in frontier:
                for b in list(fam):
                    c = a & b
                    if c not in fam:
                        fam.add(c)
                        new.append(c)
            frontier = new
        added = tuple(sorted(fam - set(given), key=lambda m: (popcount(m), m)))
        closed = tuple(sorted(fam, key=lambda m: (popcount(m), m)))
        return ClosureSystem(names, "family", family=closed, added=added)
    base = []
    for premise, conclusion in implications:
        p = as_mask(premise)
        if p & ~full or not 0 <= conclusion < n:
            raise ElementOutOfGround(f"implication {premise!r} -> {conclusion!r} leaves ground")
        base.append(Implication(p, conclusion))
    return ClosureSystem(names, "implications", base=tuple(base))


def close(cs: ClosureSystem, A: int | Iterable[int]) -> int:
    return cs.close(A)


def cld_lattice(cs: ClosureSystem) -> FiniteLattice:
    """Lattice of closed sets under inclusion; ``labels`` holds each closed-set mask."""
    closed = cs.closed_sets()
    down = []
    for B in closed:
        d = 0
        for i, A in enumerate(closed):
            if A & ~B == 0:
                d |= 1 << i
        down.append(d)
    return FiniteLattice([cs.subset_name(B) for B in closed], down, labels=closed)


def aep(cs: ClosureSystem) -> bool | AepWitness:
    """True, or the first violation of anti-exchange in (|A|, A, x, y) order."""
    n = len(cs.ground)
    for A in cs.closed_sets():
        outside = [x for x in range(n) if not A >> x & 1]
        closures = {x: cs.close(A | 1 << x) for x in outside}
        for i, x in enumerate(outside):
            for y in outside[i + 1:]:
                if closures[x] == closures[y]:
                    return AepWitness(A, x, y)
    return True


def cover_singleton(cs: ClosureSystem) -> bool | CoverWitness:
    """True iff every cover ``A < B`` of closed sets adds exactly one element."""
    L = cld_lattice(cs)
    for a, b in L.covers():
        A, B = L.labels[a], L.labels[b]
        if popcount(B & ~A) != 1:
            return CoverWitness(A, B)
    return True


def is_convex_geometry(cs: ClosureSystem) -> GeometryVerdict:
    empty = cs.close(0)
    if empty:
        return GeometryVerdict(False, "not-zero-closure", empty)
    w = aep(cs)
    if w is not True:
        return GeometryVerdict(False, "anti-exchange-fails", w)
    return GeometryVerdict(True)


def extreme_points(cs: ClosureSystem, A: int | Iterable[int]) -> int:
    A = cs._check(as_mask(A))
    ex = 0
    for x in iter_bits(A):
        if not cs.close(A & ~(1 << x)) >> x & 1:
            ex |= 1 << x
    return ex


@dataclass(frozen=True)
class StandardRepresentation:
    """Closure system on the join irreducibles of a lattice.

    ``ground_ids[k]`` is the lattice id of ground element ``k``; ``element_of``
    maps each closed-set mask back to the lattice element it represents.
    """

    system: ClosureSystem
    ground_ids: tuple[int, ...]
    element_of: dict[int, int]


def standard_representation(L: FiniteLattice) -> StandardRepresentation:
    ground_ids = tuple(sorted(L.ji))
    pos = {j: k for k, j in enumerate(ground_ids)}
    element_of = {}
    for a in range(len(L)):
        element_of[mask(pos[j] for j in iter_bits(L.down[a] & L.ji_mask))] = a
    cs = make_closure([L.names[j] for j in ground_ids], family=list(element_of))
    return StandardRepresentation(cs, ground_ids, element_of)


@dataclass(frozen=True)
class CjiFailure:
    element: int
    reason: str


def cji_correspondence(cs: ClosureSystem) -> dict[int, int] | CjiFailure:
    """Map ``x`` outside the closure of the empty set to its closure, a join irreducible closed set.

    Each image is checked to be completely join irreducible with unique lower
    cover ``closure({x}) - {x}``, and the map is checked to be a bijection onto
    the join irreducible closed sets.
    """
    cov = cover_singleton(cs)
    if cov is not True:
        raise PreconditionFailed("cover differences are not all singletons", cov)
    L = cld_lattice(cs)
    index = {B: i for i, B in enumerate(L.labels)}
    empty = cs.close(0)
    out = {}
    for x in range(len(cs.ground)):
        if empty >> x & 1:
            continue
        B = cs.close(1 << x)
        rest = B & ~(1 << x)
        if not cs.is_closed(rest):
            return CjiFailure(x, "closure minus the point is not closed")
        if L.lower[index[B]] != 1 << index[rest]:
            return CjiFailure(x, "closure minus the point is not the unique lower cover")
        out[x] = B
    if len(set(out.values())) != len(out):
        return CjiFailure(min(out), "two points share a closure")
    if {index[B] for B in out.values()} != set(L.ji):
        return CjiFailure(-1, "some join irreducible closed set is not a point closure")
    return out
