"""Deterministic test corpora: Moore families, posets, semilattices, random posets."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .bits import iter_bits
from .closure import ClosureSystem, cld_lattice, make_closure
from .errors import BoundExceeded, ParseError
from .generators import FinitePoset, MeetSemilattice, co_poset, semilattice_of_poset, sub_meet
from .lattice import FiniteLattice, _closure_down_sets

MOORE_LIMIT = 3
MOORE_HARD_LIMIT = 4
POSET_LIMIT = 6


def all_moore(n: int, allow_large: bool = False) -> Iterator[ClosureSystem]:
    """Every Moore family on ``range(n)``, labeled (no isomorphism reduction)."""
    if n > MOORE_HARD_LIMIT or (n > MOORE_LIMIT and not allow_large):
        raise BoundExceeded(f"Moore enumeration on {n} points needs n <= {MOORE_LIMIT} (or {MOORE_HARD_LIMIT} with allow_large)")
    full = (1 << n) - 1
    others = [s for s in range(1 << n) if s != full]
    # choose which proper subsets join the ground set
    for choice in range(1 << len(others)):
        fam = [others[i] for i in iter_bits(choice)] + [full]
        members = set(fam)
        if all(a & b in members for a in fam for b in fam):
            yield make_closure(n, family=fam)


def _poset_key(n: int, down: list[int], perm) -> int:
    key = 0
    for b in range(n):
        for a in iter_bits(down[b]):
            key |= 1 << (perm[a] * n + perm[b])
    return key


def all_posets(n: int) -> Iterator[FinitePoset]:
    """Posets on ``n`` points, one per isomorphism class, in a fixed order."""
    if n > POSET_LIMIT:
        raise BoundExceeded(f"poset enumeration limited to n <= {POSET_LIMIT}")
    pairs = [(i, j) for j in range(n) for i in range(j)]
    seen: dict[int, list[int]] = {}
    perms = list(permutations(range(n)))
    for choice in range(1 << len(pairs)):
        chosen = [pairs[k] for k in iter_bits(choice)]
        down = _closure_down_sets(n, chosen)
        # keep only transitively closed choices so each relation is visited once
        strict = {(a, b) for b in range(n) for a in iter_bits(down[b]) if a != b}
        if strict != set(chosen):
            continue
        canon = min(_poset_key(n, down, p) for p in perms)
        if canon not in seen:
            seen[canon] = down
    for canon in sorted(seen):
        yield FinitePoset(tuple(str(i) for i in range(n)), tuple(seen[canon]))


def all_meet_semilattices(n: int) -> Iterator[MeetSemilattice]:
    for P in all_posets(n):
        S = semilattice_of_poset(P)
        if S is not None:
            yield S


def random_posets(count: int, max_n: int, seed: int) -> Iterator[FinitePoset]:
    """``count`` random posets with 1..max_n points, reproducible from ``seed``."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        p = rng.random()
        pairs = [(i, j) for j in range(n) for i in range(j) if rng.random() < p]
        yield FinitePoset(tuple(str(i) for i in range(n)), tuple(_closure_down_sets(n, pairs)))


@dataclass(frozen=True)
class CorpusItem:
    ident: str
    lattice: FiniteLattice
    system: ClosureSystem | None = None
    source: object = None


def corpus(spec: str, allow_large: bool = False) -> Iterator[CorpusItem]:
    """Stream corpus items from a spec string.

    ``all_moore:N`` (Moore families on exactly N points), ``all_posets:N``
    (Co(P) for every poset with 1..N points), ``all_semilattices:N`` (Sub(S)
    for meet semilattices with 1..N points), ``random_posets:COUNT,MAX_N,SEED``
    (Co(P) of random posets).  Several specs may be joined with ``+``.
    """
    for part in spec.split("+"):
        m = re.fullmatch(r"\s*(\w+)\s*[:(]\s*([\d,\s]+)\)?\s*", part)
        if not m:
            raise ParseError(f"bad corpus spec {part!r}")
        name, args = m.group(1), [int(a) for a in m.group(2).split(",") if a.strip()]
        if name == "all_moore":
            for k, cs in enumerate(all_moore(args[0], allow_large)):
                yield CorpusItem(f"moore{args[0]}/{k}", cld_lattice(cs), cs)
        elif name == "all_posets":
            for size in range(1, args[0] + 1):
                for k, P in enumerate(all_posets(size)):
                    cs = co_poset(P)
                    yield CorpusItem(f"co_poset{size}/{k}", cld_lattice(cs), cs, P)
        elif name == "all_semilattices":
            for size in range(1, args[0] + 1):
                for k, S in enumerate(all_meet_semilattices(size)):
                    cs = sub_meet(S)
                    yield CorpusItem(f"sub_meet{size}/{k}", cld_lattice(cs), cs, S)
        elif name == "random_posets":
            if len(args) != 3:
                raise ParseError("random_posets needs COUNT,MAX_N,SEED")
            count, max_n, seed = args
            if max_n > 12:
                raise BoundExceeded("random posets limited to 12 points")
            for k, P in enumerate(random_posets(count, max_n, seed)):
                cs = co_poset(P)
                yield CorpusItem(f"random{seed}/{k}", cld_lattice(cs), cs, P)
        else:
            raise ParseError(f"unknown corpus {name!r}")


STANDARD_CORPUS = "all_moore:2+all_moore:3+all_posets:5+all_semilattices:5+random_posets:200,7,1"
