"""Explicit finite lattices on dense integer ids.

Elements are ``0..n-1``.  Down-sets, up-sets and cover sets are stored as int
bitmasks; the order is also kept as an ``n x n`` boolean matrix and, for
``n <= TABLE_LIMIT``, meets and joins are precomputed into integer tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import iter_bits, mask, popcount
from .errors import EmptyInterval, NotALattice, NotAPartialOrder, ParseError, UnknownElement

TABLE_LIMIT = 512


def _closure_down_sets(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure of ``pairs`` (read as ``i <= j``) as down-set masks."""
    preds: list[set[int]] = [set() for _ in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise UnknownElement((i, j))
        if i != j:
            preds[j].add(i)
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [len(p) for p in preds]
    for j, ps in enumerate(preds):
        for i in ps:
            succs[i].append(j)
    order = [v for v in range(n) if indeg[v] == 0]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    if len(order) < n:
        raise NotAPartialOrder(sorted(set(range(n)) - set(order)))
    down = [0] * n
    for v in order:
        d = 1 << v
        for i in preds[v]:
            d |= down[i]
        down[v] = d
    return down


def _tables(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Meet and join tables from the order matrix, or NotALattice on the first bad pair."""
    n = leq.shape[0]
    leq_t = leq.T
    upcount = leq.sum(axis=1)
    downcount = leq.sum(axis=0)
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        common_up = leq[a][None, :] & leq
        score = np.where(common_up, upcount[None, :], -1)
        cand = score.argmax(axis=1)
        bad_join = (score.max(axis=1) < 0) | (common_up & ~leq[cand]).any(axis=1)
        common_down = leq_t[a][None, :] & leq_t
        score = np.where(common_down, downcount[None, :], -1)
        cand_m = score.argmax(axis=1)
        bad_meet = (score.max(axis=1) < 0) | (common_down & ~leq_t[cand_m]).any(axis=1)
        if bad_meet.any() or bad_join.any():
            b_meet = int(np.argmax(bad_meet)) if bad_meet.any() else n
            b_join = int(np.argmax(bad_join)) if bad_join.any() else n
            if b_meet <= b_join:
                raise NotALattice(a, b_meet, "meet")
            raise NotALattice(a, b_join, "join")
        meet[a] = cand_m
        join[a] = cand
    return meet, join


class FiniteLattice:
    """Immutable finite lattice.

    ``down[i]`` is the bitmask of elements below ``i`` (inclusive); ``lower[i]``
    the bitmask of its lower covers.  ``ji`` maps every nonzero join irreducible
    to its unique lower cover.  ``labels`` is an optional payload per element
    (closed-set masks for closure lattices, filters for filter lattices).
    """

    __slots__ = (
        "names", "down", "up", "lower", "upper", "bottom", "top", "ji", "ji_mask",
        "labels", "leq_matrix", "_meet", "_join", "_index",
    )

    def __init__(self, names: Sequence[str], down: Sequence[int], labels: Sequence | None = None):
        n = len(down)
        if n == 0:
            raise NotALattice(None, None, "elements")
        if len(names) != n:
            raise ValueError("names and down-sets differ in length")
        self.names = tuple(str(x) for x in names)
        self.down = tuple(down)
        up = [0] * n
        for j, d in enumerate(self.down):
            for i in iter_bits(d):
                up[i] |= 1 << j
        self.up = tuple(up)
        full = (1 << n) - 1
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if self.down[i] == full]
        leq = np.zeros((n, n), dtype=bool)
        for j, d in enumerate(self.down):
            leq[list(iter_bits(d)), j] = True
        self.leq_matrix = leq
        meet, join = _tables(leq)
        if not bottoms or not tops:
            raise NotALattice(0, 0, "bound")
        self.bottom, self.top = bottoms[0], tops[0]
        lower = [0] * n
        upper = [0] * n
        for b in range(n):
            strict = self.down[b] & ~(1 << b)
            covers = 0
            for x in iter_bits(strict):
                if strict & self.up[x] & ~(1 << x) == 0:
                    covers |= 1 << x
            lower[b] = covers
            for x in iter_bits(covers):
                upper[x] |= 1 << b
        self.lower = tuple(lower)
        self.upper = tuple(upper)
        self.ji = {i: next(iter_bits(lower[i])) for i in range(n) if popcount(lower[i]) == 1}
        self.ji_mask = mask(self.ji)
        self.labels = tuple(labels) if labels is not None else None
        if n <= TABLE_LIMIT:
            meet.setflags(write=False)
            join.setflags(write=False)
            self._meet, self._join = meet, join
        else:
            self._meet = self._join = None
        self.leq_matrix.setflags(write=False)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.down)

    def __repr__(self) -> str:
        return f"FiniteLattice(n={len(self)}, ji={len(self.ji)})"

    @property
    def size(self) -> int:
        return len(self.down)

    def id(self, name: str | int) -> int:
        """Resolve a display name (or pass through a valid id)."""
        if isinstance(name, (int, np.integer)):
            return self._check(int(name))
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(name) from None

    def _check(self, a: int) -> int:
        if not 0 <= a < len(self.down):
            raise UnknownElement(a)
        return a

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Meet and join tables; built fresh above ``TABLE_LIMIT``."""
        if self._meet is not None:
            return self._meet, self._join
        return _tables(self.leq_matrix)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[self._check(b)] >> self._check(a) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def _bound(self, m: int, sets: Sequence[int]) -> int:
        best, best_count = -1, -1
        for g in iter_bits(m):
            c = popcount(sets[g])
            if c > best_count:
                best, best_count = g, c
        return best

    def meet(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if self._meet is not None:
            return int(self._meet[a, b])
        return self._bound(self.down[a] & self.down[b], self.down)

    def join(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if self._join is not None:
            return int(self._join[a, b])
        return self._bound(self.up[a] & self.up[b], self.up)

    def join_set(self, ids: Iterable[int]) -> int:
        acc = self.bottom
        for x in ids:
            acc = self.join(acc, x)
        return acc

    def meet_set(self, ids: Iterable[int]) -> int:
        acc = self.top
        for x in ids:
            acc = self.meet(acc, x)
        return acc

    def join_mask(self, m: int) -> int:
        return self.join_set(iter_bits(m))

    def lower_covers(self, a: int) -> frozenset[int]:
        return frozenset(iter_bits(self.lower[self._check(a)]))

    def upper_covers(self, a: int) -> frozenset[int]:
        return frozenset(iter_bits(self.upper[self._check(a)]))

    def covers(self) -> list[tuple[int, int]]:
        """All covering pairs ``(a, b)`` with ``a < b`` in id order."""
        return [(a, b) for a in range(len(self)) for b in iter_bits(self.upper[a])]

    def is_cover(self, a: int, b: int) -> bool:
        return bool(self.lower[b] >> a & 1)

    def ji_below(self, a: int) -> frozenset[int]:
        return frozenset(iter_bits(self.down[self._check(a)] & self.ji_mask))

    def atoms(self) -> list[int]:
        return list(iter_bits(self.upper[self.bottom]))

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: (popcount(self.down[i]), i))

    def name_of(self, ids: Iterable[int]) -> list[str]:
        return [self.names[i] for i in ids]


@dataclass(frozen=True)
class RefinementWitness:
    """For each member of ``A`` the chosen member of ``B`` above it."""

    pairs: dict[int, int]


def build_lattice(
    elements: Sequence[str] | int,
    relation: Iterable[tuple[int, int]],
    mode: str = "covers",
    labels: Sequence | None = None,
) -> FiniteLattice:
    """Validate a relation and return the lattice it generates.

    ``mode`` is ``"covers"`` (pairs ``i`` covered by ``j``) or ``"order"`` (pairs
    ``i <= j``).  Either way the reflexive-transitive closure is taken, so a
    redundant cover list or a non-transitive order list is accepted.
    """
    if mode not in ("covers", "order"):
        raise ValueError(f"mode must be 'covers' or 'order', not {mode!r}")
    names = [str(i) for i in range(elements)] if isinstance(elements, int) else list(elements)
    down = _closure_down_sets(len(names), relation)
    return FiniteLattice(names, down, labels)


def lattice_algebra(L: FiniteLattice, op: str, *args):
    """Dispatch ``leq``, ``meet``, ``join``, ``meet_set`` or ``join_set`` by name."""
    if op == "leq":
        return L.leq(*args)
    if op == "meet":
        return L.meet(*args)
    if op == "join":
        return L.join(*args)
    if op == "meet_set":
        return L.meet_set(args[0] if args else ())
    if op == "join_set":
        return L.join_set(args[0] if args else ())
    raise ValueError(f"unknown operation {op!r}")


def covers_of(L: FiniteLattice, a: int, direction: str = "lower") -> frozenset[int]:
    if direction == "lower":
        return L.lower_covers(a)
    if direction == "upper":
        return L.upper_covers(a)
    raise ValueError(f"direction must be 'lower' or 'upper', not {direction!r}")


def ji_below(L: FiniteLattice, a: int) -> frozenset[int]:
    return L.ji_below(a)


def refines(L: FiniteLattice, A: Iterable[int], B: Iterable[int]) -> RefinementWitness | None:
    """Witness for ``A << B``: every ``a`` in A lies below some ``b`` in B."""
    B = sorted(set(L._check(b) for b in B))
    pairs = {}
    for a in sorted(set(A)):
        L._check(a)
        for b in B:
            if L.down[b] >> a & 1:
                pairs[a] = b
                break
        else:
            return None
    return RefinementWitness(pairs)


# -- isomorphism ------------------------------------------------------------


def is_isomorphism(L1: FiniteLattice, L2: FiniteLattice, f: Sequence[int] | dict) -> bool:
    """True iff ``f`` is a bijection with ``a <= b`` exactly when ``f(a) <= f(b)``."""
    n = len(L1)
    if n != len(L2):
        return False
    image = [f[i] for i in range(n)]
    if sorted(image) != list(range(n)):
        return False
    perm = np.asarray(image)
    return bool((L1.leq_matrix == L2.leq_matrix[np.ix_(perm, perm)]).all())


def find_isomorphism(L1: FiniteLattice, L2: FiniteLattice) -> list[int] | None:
    """Backtracking search for an order isomorphism; fine for small lattices."""
    n = len(L1)
    if n != len(L2):
        return None

    def signature(L, i):
        return (popcount(L.down[i]), popcount(L.up[i]), popcount(L.lower[i]), popcount(L.upper[i]))

    sig1 = [signature(L1, i) for i in range(n)]
    sig2 = [signature(L2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    order = L1.linear_extension()
    f = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        a = order[k]
        for b in range(n):
            if used[b] or sig2[b] != sig1[a]:
                continue
            ok = True
            for prev in order[:k]:
                if L1.leq(prev, a) != L2.leq(f[prev], b) or L1.leq(a, prev) != L2.leq(b, f[prev]):
                    ok = False
                    break
            if ok:
                f[a], used[b] = b, True
                if extend(k + 1):
                    return True
                f[a], used[b] = -1, False
        return False

    return f if extend(0) else None


# -- named constructors ------------------------------------------------------


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise ValueError("a chain needs at least one element")
    return build_lattice(n, [(i, i + 1) for i in range(n - 1)])


def boolean(n: int) -> FiniteLattice:
    """Subsets of an ``n``-set; element id equals the subset bitmask."""
    size = 1 << n
    names = ["{" + ",".join(str(i) for i in iter_bits(m)) + "}" for m in range(size)]
    down = []
    for m in range(size):
        d = 0
        sub = m
        while True:
            d |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & m
        down.append(d)
    return FiniteLattice(names, down, labels=list(range(size)))


def m3() -> FiniteLattice:
    return build_lattice(["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def n5() -> FiniteLattice:
    return build_lattice(["0", "a", "b", "c", "1"], [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])


def product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Componentwise order; pair ``(i, j)`` gets id ``i * len(L2) + j``."""
    n2 = len(L2)
    names, down = [], []
    for i in range(len(L1)):
        for j in range(n2):
            names.append(f"({L1.names[i]},{L2.names[j]})")
            d = 0
            for i2 in iter_bits(L1.down[i]):
                for j2 in iter_bits(L2.down[j]):
                    d |= 1 << (i2 * n2 + j2)
            down.append(d)
    return FiniteLattice(names, down)


def dual(L: FiniteLattice) -> FiniteLattice:
    return FiniteLattice(L.names, L.up)


def interval(L: FiniteLattice, a: int, b: int) -> FiniteLattice:
    """Sublattice ``[a, b]``; ids are renumbered in increasing original id."""
    if not L.leq(a, b):
        raise EmptyInterval(f"{L.names[a]} is not below {L.names[b]}")
    keep = list(iter_bits(L.up[a] & L.down[b]))
    pos = {x: k for k, x in enumerate(keep)}
    down = [mask(pos[y] for y in iter_bits(L.down[x] & L.up[a])) for x in keep]
    return FiniteLattice([L.names[x] for x in keep], down, labels=keep)


def double_element(L: FiniteLattice, t: int) -> FiniteLattice:
    """Replace ``t`` by two copies ``t_lo < t_hi`` with ``t``'s relations to everything else.

    The new upper copy gets id ``len(L)``; the lower copy keeps id ``t``.
    """
    L._check(t)
    n = len(L)
    hi = n
    down = []
    for x in range(n):
        d = L.down[x]
        if x != t and d >> t & 1:
            d |= 1 << hi
        down.append(d)
    down.append(L.down[t] | (1 << hi))
    names = list(L.names)
    names[t] = L.names[t] + "_lo"
    names.append(L.names[t] + "_hi")
    return FiniteLattice(names, down)


def doubled_atom(n: int) -> FiniteLattice:
    """Finite truncation of ``(w+1)^d x 2`` with the atom ``(w, 1)`` doubled.

    The dual of the infinite chain is truncated to an ``n``-chain (element 0 is
    the bottom, standing for ``w``), multiplied by the 2-chain, and the element
    ``(0, 1)`` is doubled into a 2-chain.
    """
    base = product(chain(n), chain(2))
    return double_element(base, 1)


_NAMED = {"M3": m3, "N5": n5}
_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    if cur.strip():
        out.append(cur)
    return [s.strip() for s in out]


def construct(spec: str) -> FiniteLattice:
    """Build a named lattice from a constructor expression.

    Examples: ``"chain(3)"``, ``"boolean(2)"``, ``"M3"``, ``"dual(N5)"``,
    ``"product(chain(2),M3)"``, ``"interval(boolean(3),1,7)"``,
    ``"chain_dual_times_two_doubled_atom(4)"``.
    """
    m = _CALL.match(spec)
    if not m:
        raise ParseError(f"cannot parse lattice constructor {spec!r}")
    name, argtext = m.group(1), m.group(2)
    args = _split_args(argtext) if argtext else []
    key = name.lower()
    try:
        if name.upper() in _NAMED and not args:
            return _NAMED[name.upper()]()
        if key == "chain":
            return chain(int(args[0]))
        if key == "boolean":
            return boolean(int(args[0]))
        if key in ("chain_dual_times_two_doubled_atom", "doubled_atom"):
            return doubled_atom(int(args[0]))
        if key == "product":
            return product(construct(args[0]), construct(args[1]))
        if key == "dual":
            return dual(construct(args[0]))
        if key == "interval":
            base = construct(args[0])
            return interval(base, base.id(_maybe_int(args[1])), base.id(_maybe_int(args[2])))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, EmptyInterval):
            raise
        raise ParseError(f"bad arguments in {spec!r}: {exc}") from None
    raise ParseError(f"unknown lattice constructor {name!r}")


def _maybe_int(s: str):
    return int(s) if s.lstrip("-").isdigit() else s
