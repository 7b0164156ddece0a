"""Lattice predicates for convex-geometry characterizations.

Triple-quantified checks are vectorized over the meet/join tables.  Every
search runs in element-id order and returns the lexicographically first
witness, so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .bits import iter_bits, mask, popcount
from .closure import aep, cover_singleton, standard_representation
from .errors import BoundTooSmall, NotACover
from .lattice import FiniteLattice, refines

DEFAULT_SD_DEPTH = 8
# above this many antichains per element the SD-join* search switches to the
# two-element reduction (see is_sd_join_star)
STAR_EXHAUSTIVE_LIMIT = 400


def _first(violation: np.ndarray) -> tuple[int, ...] | None:
    if not violation.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(violation)), violation.shape))


def _x_blocks(n: int, cells: int = 1 << 22) -> Iterator[slice]:
    step = max(1, cells // max(1, n * n))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


def _first_triple(L: FiniteLattice, violation_for) -> tuple[int, int, int] | None:
    """Scan ``x`` in blocks; ``violation_for(xs)`` returns a bool array ``[x, y, z]``."""
    for xs in _x_blocks(len(L)):
        hit = _first(violation_for(xs))
        if hit is not None:
            return (hit[0] + xs.start, hit[1], hit[2])
    return None


# -- distributivity and SD-join ---------------------------------------------


def is_distributive(L: FiniteLattice) -> bool | tuple[int, int, int]:
    """True, or ``(x, y, z)`` with ``x & (y | z) != (x & y) | (x & z)``."""
    meet, join = L.tables()

    def bad(xs):
        m = meet[xs]
        return m[:, join] != join[m[:, :, None], m[:, None, :]]

    w = _first_triple(L, bad)
    return True if w is None else w


def is_sd_join(L: FiniteLattice) -> bool | tuple[int, int, int, int]:
    """True, or ``(w, x, y, z)`` with ``x|y == x|z == w`` but ``x|(y&z) != w``."""
    meet, join = L.tables()

    def bad(xs):
        j = join[xs]
        return (j[:, :, None] == j[:, None, :]) & (j[:, meet] != j[:, :, None])

    w = _first_triple(L, bad)
    if w is None:
        return True
    x, y, z = w
    return (int(join[x, y]), x, y, z)


def sd_join_n_terms(L: FiniteLattice, x: int, y: int, z: int, k: int) -> tuple[int, int]:
    """The Jonsson-Rival terms ``(y_k, z_k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    yk, zk = y, z
    for _ in range(k):
        yk, zk = L.meet(y, L.join(x, zk)), L.meet(z, L.join(x, yk))
    return yk, zk


def satisfies_sd_join_n(L: FiniteLattice, n: int) -> bool | tuple[int, int, int]:
    """True iff ``y_n <= x | (y & z)`` for every triple; else the first failing ``(x, y, z)``."""
    if n < 1:
        raise ValueError("depth must be at least 1")
    meet, join = L.tables()
    size = len(L)
    idx = np.arange(size)

    def bad(xs):
        X = np.arange(xs.start, xs.stop)[:, None, None]
        shape = (len(X), size, size)
        y0 = np.broadcast_to(idx[None, :, None], shape)
        z0 = np.broadcast_to(idx[None, None, :], shape)
        Y, Z = y0, z0
        for _ in range(n):
            Y, Z = meet[y0, join[X, Z]], meet[z0, join[X, Y]]
        return ~L.leq_matrix[Y, join[xs][:, meet]]

    w = _first_triple(L, bad)
    return True if w is None else w


def sd_join_depth(L: FiniteLattice, cap: int = DEFAULT_SD_DEPTH) -> int | None:
    """Least ``n <= cap`` with SD-join(n), or None when no depth up to ``cap`` works."""
    for n in range(1, cap + 1):
        if satisfies_sd_join_n(L, n) is True:
            return n
    return None


# -- SD-join* over bounded families -----------------------------------------


def _antichains_below(L: FiniteLattice, w: int, bound: int) -> list[tuple[int, ...]]:
    elems = list(iter_bits(L.down[w]))
    out = []

    def grow(start, chosen, comparable):
        if chosen:
            out.append(tuple(chosen))
        if len(chosen) == bound:
            return
        for k in range(start, len(elems)):
            e = elems[k]
            if comparable >> e & 1:
                continue
            chosen.append(e)
            grow(k + 1, chosen, comparable | L.down[e] | L.up[e])
            chosen.pop()

    grow(0, [], 0)
    return [a for a in out if L.join_set(a) == w]


def is_sd_join_star(L: FiniteLattice, max_family: int = 3) -> bool | tuple[int, tuple[int, ...], tuple[int, ...]]:
    """SD-join* for antichain families of size at most ``max_family``.

    Returns True or ``(w, Y, Z)`` with ``join(Y) == join(Z) == w`` but the join
    of all ``y & z`` below ``w``.  Families at each ``w`` are enumerated
    exhaustively while there are at most ``STAR_EXHAUSTIVE_LIMIT`` of them.
    Beyond that the search is restricted to families ``{y, c}``, ``{z, c}``
    with ``c`` a lower cover of ``w``: any violating pair ``Y, Z`` fails below
    some lower cover ``c``, and picking ``y`` in ``Y``, ``z`` in ``Z`` outside
    ``c`` gives such a two-element violation, so the restricted search finds a
    violation exactly when one exists.
    """
    if max_family < 2:
        raise BoundTooSmall("max_family must be at least 2")
    meet, join = L.tables()
    for w in range(len(L)):
        fams = _antichains_below(L, w, max_family) if popcount(L.down[w]) <= 64 else None
        if fams is not None and len(fams) <= STAR_EXHAUSTIVE_LIMIT:
            for i, Y in enumerate(fams):
                for Z in fams[i + 1:]:
                    acc = L.bottom
                    for y in Y:
                        for z in Z:
                            acc = int(join[acc, meet[y, z]])
                    if acc != w:
                        return (w, Y, Z)
            continue
        hit = _star_two_element(L, w)
        if hit is not None:
            return hit
    return True


def _star_two_element(L: FiniteLattice, w: int):
    meet, _ = L.tables()
    best = None
    for c in iter_bits(L.lower[w]):
        outside = [e for e in iter_bits(L.down[w]) if not L.down[c] >> e & 1]
        for i, y in enumerate(outside):
            for z in outside[i:]:
                if L.down[c] >> int(meet[y, z]) & 1:
                    cand = (w, tuple(sorted((y, c))), tuple(sorted((z, c))))
                    if best is None or cand < best:
                        best = cand
    return best


# -- semimodularity, local distributivity, atoms ------------------------------


def is_lower_semimodular(L: FiniteLattice) -> bool | tuple[int, int, int]:
    """True, or ``(a, b, c)`` with ``a`` covered by ``b`` and ``a & c`` neither equal to nor covered by ``b & c``."""
    covers = L.covers()
    if not covers:
        return True
    meet, _ = L.tables()
    n = len(L)
    cover_matrix = np.zeros((n, n), dtype=bool)
    a_idx = np.array([a for a, _ in covers])
    b_idx = np.array([b for _, b in covers])
    cover_matrix[a_idx, b_idx] = True
    ma, mb = meet[a_idx], meet[b_idx]
    bad = (ma != mb) & ~cover_matrix[ma, mb]
    hit = _first(bad)
    if hit is None:
        return True
    k, c = hit
    return (covers[k][0], covers[k][1], c)


def mu(L: FiniteLattice, x: int) -> int:
    """Meet of the lower covers of ``x``; ``x`` itself when it has none."""
    if not L.lower[x]:
        return x
    return L.meet_set(iter_bits(L.lower[x]))


def _interval_distributive(L: FiniteLattice, lo: int, hi: int) -> bool:
    meet, join = L.tables()
    elems = np.array(list(iter_bits(L.up[lo] & L.down[hi])))
    m = meet[np.ix_(elems, elems)]
    j = join[np.ix_(elems, elems)]
    pos = np.full(len(L), -1)
    pos[elems] = np.arange(len(elems))
    m, j = pos[m], pos[j]
    lhs = m[:, j]
    rhs = j[m[:, :, None], m[:, None, :]]
    return bool((lhs == rhs).all())


def is_locally_distributive(L: FiniteLattice) -> bool | int:
    """True, or the first ``x`` whose interval ``[mu(x), x]`` is not distributive."""
    for x in range(len(L)):
        if not _interval_distributive(L, mu(L, x), x):
            return x
    return True


def is_atomistic(L: FiniteLattice) -> bool | int:
    atoms = mask(L.atoms())
    for a in range(len(L)):
        if a == L.bottom:
            continue
        if L.join_mask(L.down[a] & atoms) != a:
            return a
    return True


# -- join irreducible separators and decompositions ---------------------------


def separators(L: FiniteLattice, w: int, c: int) -> int:
    """Mask of join irreducibles ``j`` with ``j <= w`` and ``j`` not below ``c``."""
    return L.down[w] & L.ji_mask & ~L.down[c]


def minimal_elements(L: FiniteLattice, m: int) -> int:
    out = 0
    for x in iter_bits(m):
        if m & L.down[x] & ~(1 << x) == 0:
            out |= 1 << x
    return out


@dataclass(frozen=True)
class SeparatorInfo:
    """Join irreducibles below ``w`` but not below the lower cover ``c``."""

    w: int
    c: int
    all: frozenset[int]
    minimal: frozenset[int]

    @property
    def unique(self) -> int | None:
        return next(iter(self.all)) if len(self.all) == 1 else None

    @property
    def unique_minimal(self) -> int | None:
        return next(iter(self.minimal)) if len(self.minimal) == 1 else None


def unique_min_ji(L: FiniteLattice, w: int, c: int) -> SeparatorInfo:
    """Separators of the cover ``c < w``.

    ``.unique`` asks for one separator overall, ``.unique_minimal`` for one
    minimal separator.
    """
    if not L.is_cover(L._check(c), L._check(w)):
        raise NotACover(f"{L.names[c]} is not a lower cover of {L.names[w]}")
    s = separators(L, w, c)
    return SeparatorInfo(w, c, frozenset(iter_bits(s)), frozenset(iter_bits(minimal_elements(L, s))))


@dataclass(frozen=True)
class CanonicalJoinDecomposition:
    """``w`` as the join of ``parts[c]`` over its lower covers ``c``.

    ``certificates[c]`` is a lower cover of ``w`` above the join of all parts
    other than ``parts[c]``, which proves that part cannot be dropped.
    """

    target: int
    parts: dict[int, int]
    certificates: dict[int, int] = field(default_factory=dict)

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(self.parts.values())


def canonical_join_decomposition(L: FiniteLattice, w: int, samples: int = 8, seed: int | None = None
                                 ) -> CanonicalJoinDecomposition | None:
    """Canonical join decomposition of ``w``, or None when some cover has two minimal separators.

    The result is checked to join to ``w``, to be irredundant, and to refine
    ``samples`` random join representations of ``w``.
    """
    L._check(w)
    parts = {}
    for c in iter_bits(L.lower[w]):
        info = unique_min_ji(L, w, c)
        if info.unique_minimal is None:
            return None
        parts[c] = info.unique_minimal
    if L.join_set(parts.values()) != w:
        return None
    certificates = {}
    for c, k in parts.items():
        rest = L.join_set(v for d, v in parts.items() if v != k)
        cert = next((d for d in iter_bits(L.lower[w]) if L.leq(rest, d)), None)
        if cert is None:
            return None
        certificates[c] = cert
    cjd = CanonicalJoinDecomposition(w, parts, certificates)
    rng = random.Random(w if seed is None else seed)
    for _ in range(samples):
        if refines(L, cjd.elements, random_join_representation(L, w, rng)) is None:
            return None
    return cjd


def random_join_representation(L: FiniteLattice, w: int, rng: random.Random) -> list[int]:
    """A random subset of the down-set of ``w`` whose join is ``w``."""
    below = list(iter_bits(L.down[w]))
    rep = [x for x in below if rng.random() < 0.3]
    acc = L.join_set(rep)
    while acc != w:
        missing = [x for x in below if not L.leq(x, acc)]
        x = rng.choice(missing)
        rep.append(x)
        acc = L.join(acc, x)
    return sorted(set(rep))


def minimal_separator_obstruction(L: FiniteLattice, w: int) -> SeparatorInfo | None:
    """First lower cover of ``w`` lacking a unique minimal separator."""
    for c in iter_bits(L.lower[w]):
        info = unique_min_ji(L, w, c)
        if info.unique_minimal is None:
            return info
    return None


def extreme_point_join(L: FiniteLattice, w: int) -> tuple[frozenset[int], bool]:
    """Extreme join irreducibles of ``w`` and whether they join to ``w``."""
    ji = L.down[L._check(w)] & L.ji_mask
    ex = frozenset(x for x in iter_bits(ji) if L.join_mask(ji & ~(1 << x)) != w)
    return ex, L.join_set(ex) == w


def irredundant_ji_decompositions(L: FiniteLattice, w: int, limit: int | None = None) -> Iterator[frozenset[int]]:
    """Irredundant antichains of join irreducibles joining to ``w``."""
    elems = list(iter_bits(L.down[w] & L.ji_mask))
    found = 0

    def grow(start, chosen, comparable):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if chosen and L.join_set(chosen) == w:
            if all(L.join_set(chosen[:i] + chosen[i + 1:]) != w for i in range(len(chosen))):
                found += 1
                yield frozenset(chosen)
            return
        for k in range(start, len(elems)):
            e = elems[k]
            if comparable >> e & 1:
                continue
            chosen.append(e)
            yield from grow(k + 1, chosen, comparable | L.down[e] | L.up[e])
            chosen.pop()

    if w == L.bottom:
        yield frozenset()
        return
    yield from grow(0, [], 0)


def is_canonical(L: FiniteLattice, w: int, parts) -> bool:
    """Whether ``parts`` refines every join representation of ``w``.

    ``d`` sits below some member of every representation exactly when the join
    of everything below ``w`` not above ``d`` stays strictly below ``w``.
    """
    if L.join_set(parts) != w:
        return False
    for d in parts:
        avoid = L.down[w] & ~L.up[d]
        if L.join_mask(avoid) == w:
            return False
    return True


# -- the consolidated report ---------------------------------------------------

FLAG_NAMES = (
    "aep",
    "cover_singleton",
    "sd_join_and_lower_semimodular",
    "extreme_point_join",
    "unique_canonical_decomposition",
    "unique_separator_per_cover",
    "locally_distributive",
)


@dataclass
class PropertyReport:
    """Verdicts on the seven equivalent conditions plus side properties.

    ``flags`` follows ``FLAG_NAMES``; ``witnesses`` holds failure evidence as
    display names.  ``corollary_holds`` is False only if an atomistic SD-join
    lattice fails some flag.
    """

    flags: dict[str, bool]
    witnesses: dict[str, object]
    agreement: bool
    atomistic: bool
    distributive: bool
    sd_join: bool
    lower_semimodular: bool
    unique_minimal_separator_per_cover: bool
    corollary_holds: bool
    strongly_coatomic: bool = True
    spatial: bool = True
    notes: list[str] = field(default_factory=list)
    ident: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.ident,
            "flags": dict(self.flags),
            "agreement": self.agreement,
            "atomistic": self.atomistic,
            "distributive": self.distributive,
            "sd_join": self.sd_join,
            "lower_semimodular": self.lower_semimodular,
            "unique_minimal_separator_per_cover": self.unique_minimal_separator_per_cover,
            "corollary_holds": self.corollary_holds,
            "strongly_coatomic": self.strongly_coatomic,
            "spatial": self.spatial,
            "witnesses": self.witnesses,
            "notes": list(self.notes),
        }


def scs_geom_report(L: FiniteLattice, ident: str | None = None) -> PropertyReport:
    names = L.names
    flags: dict[str, bool] = {}
    wit: dict[str, object] = {}

    rep = standard_representation(L)
    ground = rep.system.ground

    def subset(m):
        return sorted(ground[i] for i in iter_bits(m))

    r = aep(rep.system)
    flags["aep"] = r is True
    if r is not True:
        wit["aep"] = {"A": subset(r.A), "x": ground[r.x], "y": ground[r.y]}

    r = cover_singleton(rep.system)
    flags["cover_singleton"] = r is True
    if r is not True:
        wit["cover_singleton"] = {"lower": subset(r.lower), "upper": subset(r.upper)}

    sd = is_sd_join(L)
    lsm = is_lower_semimodular(L)
    flags["sd_join_and_lower_semimodular"] = sd is True and lsm is True
    if sd is not True:
        wit["sd_join"] = dict(zip("wxyz", (names[i] for i in sd)))
    if lsm is not True:
        wit["lower_semimodular"] = dict(zip("abc", (names[i] for i in lsm)))

    flags["extreme_point_join"] = True
    for w in range(len(L)):
        ex, ok = extreme_point_join(L, w)
        if not ok:
            flags["extreme_point_join"] = False
            wit["extreme_point_join"] = {"w": names[w], "extreme": sorted(names[x] for x in ex)}
            break

    flags["unique_canonical_decomposition"] = True
    for w in range(len(L)):
        decs = list(irredundant_ji_decompositions(L, w, limit=2))
        if len(decs) != 1:
            flags["unique_canonical_decomposition"] = False
            wit["unique_canonical_decomposition"] = {
                "w": names[w], "decompositions": [sorted(names[x] for x in d) for d in decs]}
            break
        if not is_canonical(L, w, decs[0]):
            flags["unique_canonical_decomposition"] = False
            wit["unique_canonical_decomposition"] = {
                "w": names[w], "not_canonical": sorted(names[x] for x in decs[0])}
            break

    flags["unique_separator_per_cover"] = True
    minimal_ok = True
    for c, w in L.covers():
        info = unique_min_ji(L, w, c)
        if info.unique is None and flags["unique_separator_per_cover"]:
            flags["unique_separator_per_cover"] = False
            wit["unique_separator_per_cover"] = {
                "w": names[w], "c": names[c], "separators": sorted(names[x] for x in info.all)}
        if info.unique_minimal is None and minimal_ok:
            minimal_ok = False
            wit["unique_minimal_separator"] = {
                "w": names[w], "c": names[c], "minimal": sorted(names[x] for x in info.minimal)}

    ld = is_locally_distributive(L)
    flags["locally_distributive"] = ld is True
    if ld is not True:
        wit["locally_distributive"] = {"x": names[ld], "mu": names[mu(L, ld)]}

    atomistic = is_atomistic(L)
    if atomistic is not True:
        wit["atomistic"] = {"element": names[atomistic]}
    distributive = is_distributive(L)

    values = [flags[k] for k in FLAG_NAMES]
    agreement = all(v == values[0] for v in values)
    corollary = not (atomistic is True and sd is True) or all(values)
    notes = ["finite lattice: strongly coatomic and spatial hold automatically"]
    if sd is True and not minimal_ok:
        notes.append("SD-join holds but some cover lacks a unique minimal separator")
    return PropertyReport(
        flags=flags,
        witnesses=wit,
        agreement=agreement,
        atomistic=atomistic is True,
        distributive=distributive is True,
        sd_join=sd is True,
        lower_semimodular=lsm is True,
        unique_minimal_separator_per_cover=minimal_ok,
        corollary_holds=corollary,
        notes=notes,
        ident=ident,
    )


def every_element_has_cjd(L: FiniteLattice) -> bool:
    return all(canonical_join_decomposition(L, w, samples=0) is not None for w in range(len(L)))

