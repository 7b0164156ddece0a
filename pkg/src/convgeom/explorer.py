"""Bounded top-down exploration of lattices given by oracles.

A :class:`LazyLattice` exposes its top element and a lower-cover oracle that
may truncate its answer.  :func:`explore` builds a finite window from the top;
:func:`window_check` then answers with a three-valued :class:`Verdict`:
``holds_in_window``, ``fails_with_witness`` or ``inconclusive``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable

from .errors import OracleInconsistent, PropertyNeedsMeetOracle, UnknownInstance

HOLDS = "holds_in_window"
FAILS = "fails_with_witness"
INCONCLUSIVE = "inconclusive"

Element = Hashable


@dataclass(frozen=True)
class LazyLattice:
    """Oracle-backed lattice.

    ``lower_covers(e, budget)`` returns ``(covers, truncated)``.  ``leq`` and
    ``meet`` are exact oracles; ``difference`` returns ``B - A`` for closed-set
    instances (None when infinite).  All oracles must be pure.
    """

    name: str
    top: Element
    lower_covers: Callable[[Element, int], tuple[list, bool]]
    label: Callable[[Element], str] = str
    leq: Callable[[Element, Element], bool] | None = None
    meet: Callable[[Element, Element], Element] | None = None
    difference: Callable[[Element, Element], frozenset | None] | None = None


@dataclass
class Window:
    """Explored part of a lazy lattice.

    ``covers[e]`` lists the lower covers returned for an expanded element.
    ``pending[e]`` holds the covers of a frontier element, queried only to
    decide whether depth cut something off.  ``capped`` marks elements whose
    cover list hit the budget.
    """

    elements: list
    depth_of: dict
    covers: dict
    pending: dict
    capped: set
    depth: int
    budget: int

    @property
    def frontier(self) -> set:
        """Elements whose lower covers exist but were not explored."""
        return {e for e, cs in self.pending.items() if cs}

    @property
    def truncated(self) -> set:
        return self.capped | self.frontier

    def known_covers(self, e) -> list | None:
        """The full lower-cover list of ``e`` if the window saw all of it."""
        if e in self.capped:
            return None
        if e in self.covers:
            return self.covers[e]
        return self.pending.get(e)

    def __contains__(self, e) -> bool:
        return e in self.depth_of


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: tuple | None = None
    window: dict = field(default_factory=dict)
    detail: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": list(self.witness) if self.witness else None,
                "window": dict(self.window), "detail": self.detail}


def _query(LL: LazyLattice, e, budget: int) -> tuple[list, bool]:
    covers, truncated = LL.lower_covers(e, budget)
    again = LL.lower_covers(e, budget)
    if (list(covers), truncated) != (list(again[0]), again[1]):
        raise OracleInconsistent(f"lower covers of {LL.label(e)} changed on re-query")
    covers = list(covers)
    if len(set(covers)) != len(covers):
        raise OracleInconsistent(f"duplicate lower covers of {LL.label(e)}")
    for c in covers:
        if c == e or (LL.leq is not None and not LL.leq(c, e)):
            raise OracleInconsistent(f"{LL.label(c)} is not strictly below {LL.label(e)}")
    if len(covers) > budget:
        raise OracleInconsistent(f"oracle returned more than {budget} covers of {LL.label(e)}")
    return covers, truncated


def explore(LL: LazyLattice, depth: int, budget: int) -> Window:
    """Breadth-first downward exploration from the top, ``depth`` cover steps deep."""
    if depth < 1 or budget < 1:
        raise ValueError("depth and budget must be at least 1")
    elements = [LL.top]
    depth_of = {LL.top: 0}
    covers, pending, capped = {}, {}, set()
    head = 0
    while head < len(elements):
        e = elements[head]
        head += 1
        found, truncated = _query(LL, e, budget)
        if truncated:
            capped.add(e)
        if depth_of[e] == depth:
            pending[e] = found
            continue
        covers[e] = found
        for c in found:
            if c not in depth_of:
                depth_of[c] = depth_of[e] + 1
                elements.append(c)
    return Window(elements, depth_of, covers, pending, capped, depth, budget)


def _need(LL: LazyLattice, *oracles: str) -> None:
    for name in oracles:
        if getattr(LL, name) is None:
            raise PropertyNeedsMeetOracle(f"instance {LL.name!r} has no {name} oracle")


def _verdict(status, W: Window, witness=None, detail="", LL: LazyLattice | None = None) -> Verdict:
    if witness is not None and LL is not None:
        witness = tuple(LL.label(x) for x in witness)
    return Verdict(status, witness, {"depth": W.depth, "budget": W.budget, "size": len(W.elements)}, detail)


def _explored_covers(W: Window):
    for w in W.elements:
        for c in W.covers.get(w, ()):
            yield c, w


def check_cover_singleton(LL: LazyLattice, W: Window) -> Verdict:
    _need(LL, "difference")
    for c, w in _explored_covers(W):
        diff = LL.difference(w, c)
        if diff is None or len(diff) != 1:
            return _verdict(FAILS, W, (c, w), "cover difference is not a singleton", LL)
    return _verdict(HOLDS, W, detail="every explored cover adds one element")


def _is_ji(W: Window, e) -> bool | None:
    known = W.known_covers(e)
    if known is None:
        return None
    return len(known) == 1


def check_unique_j(LL: LazyLattice, W: Window) -> Verdict:
    _need(LL, "leq")
    unsure = False
    for c, w in _explored_covers(W):
        found, region_open = [], False
        for j in W.elements:
            if not LL.leq(j, w) or LL.leq(j, c):
                continue
            status = _is_ji(W, j)
            if status is None:
                region_open = True
            elif status:
                found.append(j)
        below_w_truncated = any(LL.leq(e, w) for e in W.truncated)
        if len(found) >= 2:
            return _verdict(FAILS, W, (w, c, found[0], found[1]), "two join irreducibles separate the cover", LL)
        if region_open or below_w_truncated or not found:
            unsure = True
    if unsure:
        return _verdict(INCONCLUSIVE, W, detail="separators below some cover lie outside the window")
    return _verdict(HOLDS, W)


def check_lower_semimodular(LL: LazyLattice, W: Window) -> Verdict:
    _need(LL, "meet", "leq")
    unsure = False
    for a, b in _explored_covers(W):
        for c in W.elements:
            lo, hi = LL.meet(a, c), LL.meet(b, c)
            if lo == hi:
                continue
            below, truncated = LL.lower_covers(hi, W.budget)
            if lo in below:
                continue
            if truncated:
                unsure = True
                continue
            return _verdict(FAILS, W, (a, b, c), "meets are neither equal nor a cover", LL)
    if unsure:
        return _verdict(INCONCLUSIVE, W, detail="a cover test hit the oracle budget")
    return _verdict(HOLDS, W)


def check_strongly_spatial_at(LL: LazyLattice, W: Window, a, b) -> Verdict:
    """Look for a minimal ``p`` with ``p <= a`` and ``p`` not below ``b``.

    ``p`` is certified minimal when its full cover list is known and no lower
    cover is itself a candidate; a descending run of candidates leaving the
    window leaves the answer open.
    """
    _need(LL, "leq")
    if LL.leq(a, b):
        return _verdict(HOLDS, W, detail="a <= b: nothing to separate")
    cands = [x for x in W.elements if LL.leq(x, a) and not LL.leq(x, b)]
    for p in cands:
        known = W.known_covers(p)
        if known is not None and not any(LL.leq(c, a) and not LL.leq(c, b) for c in known):
            return _verdict(HOLDS, W, detail=f"minimal separator {LL.label(p)}")
    return _verdict(INCONCLUSIVE, W, detail=f"{len(cands)} candidates, none certified minimal in the window")


def window_join(LL: LazyLattice, W: Window, xs) -> object | None:
    """Least window element above all of ``xs``, if the window has one."""
    ups = [u for u in W.elements if all(LL.leq(x, u) for x in xs)]
    for u in ups:
        if all(LL.leq(u, v) for v in ups):
            return u
    return None


def check_spatial(LL: LazyLattice, W: Window) -> Verdict:
    """Every window element is the window join of the window join irreducibles below it."""
    _need(LL, "leq")
    for e in W.elements:
        known = W.known_covers(e)
        if known is not None and len(known) <= 1:
            continue
        jis = [j for j in W.elements if LL.leq(j, e) and _is_ji(W, j)]
        if window_join(LL, W, jis) != e:
            if e in W.truncated:
                return _verdict(INCONCLUSIVE, W, detail=f"{LL.label(e)} is truncated")
            return _verdict(FAILS, W, (e,), "not a join of window join irreducibles", LL)
    return _verdict(HOLDS, W)


PROPERTIES = ("cover_singleton", "unique_j", "lower_semimodular", "strongly_spatial_at", "spatial")


def window_check(LL: LazyLattice, W: Window, prop: str, args: tuple = ()) -> Verdict:
    if prop == "cover_singleton":
        return check_cover_singleton(LL, W)
    if prop == "unique_j":
        return check_unique_j(LL, W)
    if prop == "lower_semimodular":
        return check_lower_semimodular(LL, W)
    if prop == "spatial":
        return check_spatial(LL, W)
    if prop == "strongly_spatial_at":
        a, b = args
        return check_strongly_spatial_at(LL, W, a, b)
    raise ValueError(f"unknown property {prop!r}; choose from {PROPERTIES}")


def resolve(LL: LazyLattice, W: Window, label: str):
    """Window element displayed as ``label``; ``top`` names the top element."""
    if label == "top":
        return LL.top
    for e in W.elements:
        if LL.label(e) == label:
            return e
    raise KeyError(label)


# -- named instances -------------------------------------------------------------
#
# lattice K: 1, b, 0 as strings and a_i as ("a", i).


def _k_leq(x, y) -> bool:
    if x == y or y == "1" or x == "0":
        return True
    if isinstance(x, tuple) and isinstance(y, tuple):
        return x[1] >= y[1]
    return False


def _k_meet(x, y):
    if _k_leq(x, y):
        return x
    if _k_leq(y, x):
        return y
    return "0"


def _k_covers(e, budget):
    if e == "1":
        out = [("a", 1), "b"]
    elif e == "b":
        out = ["0"]
    elif isinstance(e, tuple):
        out = [("a", e[1] + 1)]
    else:
        out = []
    return out[:budget], len(out) > budget


def lattice_k() -> LazyLattice:
    return LazyLattice(
        "lattice_K", "1", _k_covers,
        label=lambda e: f"a{e[1]}" if isinstance(e, tuple) else e,
        leq=_k_leq, meet=_k_meet,
    )


# omega system: ("fin", S) is the finite set S; ("cof", F) is omega minus F, 0 not in F.


def _om_label(e) -> str:
    kind, s = e
    body = ",".join(str(x) for x in sorted(s))
    return "{" + body + "}" if kind == "fin" else ("w" if not s else "w-{" + body + "}")


def _om_leq(x, y) -> bool:
    (kx, sx), (ky, sy) = x, y
    if kx == "fin":
        return sx <= sy if ky == "fin" else not (sx & sy)
    return ky == "cof" and sy <= sx


def _om_meet(x, y):
    (kx, sx), (ky, sy) = x, y
    if kx == "fin" and ky == "fin":
        return ("fin", sx & sy)
    if kx == "fin":
        return ("fin", sx - sy)
    if ky == "fin":
        return ("fin", sy - sx)
    return ("cof", sx | sy)


def _om_covers(e, budget):
    kind, s = e
    if kind == "fin":
        out = [("fin", s - {x}) for x in sorted(s)]
        return out[:budget], len(out) > budget
    out = []
    x = 1
    while len(out) < budget:
        if x not in s:
            out.append(("cof", s | {x}))
        x += 1
    return out, True


def _om_difference(big, small):
    (kb, sb), (ks, ss) = big, small
    if kb == "fin" and ks == "fin":
        return frozenset(sb - ss)
    if kb == "cof" and ks == "cof":
        return frozenset(ss - sb)
    return None


def omega_zero_or_finite() -> LazyLattice:
    """Closed sets of omega: those containing 0 or finite."""
    return LazyLattice(
        "omega_zero_or_finite", ("cof", frozenset()), _om_covers,
        label=_om_label, leq=_om_leq, meet=_om_meet, difference=_om_difference,
    )


def omega_finite(*xs: int):
    return ("fin", frozenset(xs))


# doubled atom: (k, e) with k the depth below the top (None for omega), e in {0, 1};
# at k = None the atom splits into e = 1 (lower copy) < e = 2 (upper copy).


def _da_level(e: int) -> int:
    return min(e, 1)


def _da_leq(x, y) -> bool:
    (kx, ex), (ky, ey) = x, y
    if x == y:
        return True
    if kx is None and ky is None:
        return ex <= ey
    if kx is None:
        return _da_level(ex) <= ey
    if ky is None:
        return False
    return kx >= ky and ex <= ey


def _da_meet(x, y):
    if _da_leq(x, y):
        return x
    if _da_leq(y, x):
        return y
    (kx, ex), (ky, ey) = x, y
    if kx is not None and ky is not None:
        return (max(kx, ky), min(ex, ey))
    if kx is None and ky is None:
        return (None, min(ex, ey))
    return (None, 0)


def _da_covers(e, budget):
    k, lvl = e
    if k is None:
        out = [(None, lvl - 1)] if lvl > 0 else []
    elif lvl == 1:
        out = [(k + 1, 1), (k, 0)]
    else:
        out = [(k + 1, 0)]
    return out[:budget], len(out) > budget


def _da_label(e) -> str:
    k, lvl = e
    if k is None:
        return {0: "(w,0)", 1: "(w,1)_lo", 2: "(w,1)_hi"}[lvl]
    return f"({k},{lvl})"


def chain_dual_times_two_doubled_atom() -> LazyLattice:
    """``(w+1)^d x 2`` with its atom ``(w, 1)`` doubled into a two-element chain."""
    return LazyLattice(
        "chain_dual_times_two_doubled_atom", (0, 1), _da_covers,
        label=_da_label, leq=_da_leq, meet=_da_meet,
    )


def trivial() -> LazyLattice:
    return LazyLattice(
        "trivial", "0", lambda e, budget: ([], False),
        leq=lambda x, y: True, meet=lambda x, y: x, difference=lambda x, y: frozenset(),
    )


INSTANCES = {
    "lattice_K": lattice_k,
    "omega_zero_or_finite": omega_zero_or_finite,
    "chain_dual_times_two_doubled_atom": chain_dual_times_two_doubled_atom,
    "trivial": trivial,
}


def named_instance(name: str) -> LazyLattice:
    try:
        return INSTANCES[name]()
    except KeyError:
        raise UnknownInstance(name) from None
