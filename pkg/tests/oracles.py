"""Brute-force reference implementations, written against definitions only.

Nothing here imports convgeom; lattices are given as an element count plus a
``leq(a, b)`` predicate, sets as frozensets.
"""

from itertools import chain, combinations, product


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def moore_families(n):
    ground = frozenset(range(n))
    subsets = [s for s in powerset(range(n)) if s != ground]
    out = []
    for fam in powerset(range(len(subsets))):
        family = {subsets[i] for i in fam} | {ground}
        if all(a & b in family for a in family for b in family):
            out.append(family)
    return out


def convex_subsets(n, leq):
    return [A for A in powerset(range(n))
            if all(x in A for a in A for b in A for x in range(n) if leq(a, x) and leq(x, b))]


def meet_closed_subsets(n, meet):
    return [A for A in powerset(range(n)) if all(meet(a, b) in A for a in A for b in A)]


def transitive_subsets(pairs):
    return [A for A in powerset(pairs)
            if all((a, d) in A for (a, b) in A for (c, d) in A if b == c)]


def glb(n, leq, a, b):
    lower = [g for g in range(n) if leq(g, a) and leq(g, b)]
    best = [g for g in lower if all(leq(h, g) for h in lower)]
    return best[0] if best else None


def lub(n, leq, a, b):
    upper = [u for u in range(n) if leq(a, u) and leq(b, u)]
    best = [u for u in upper if all(leq(u, v) for v in upper)]
    return best[0] if best else None


class Naive:
    """Lattice operations recomputed from ``leq`` on every call."""

    def __init__(self, n, leq):
        self.n, self.leq = n, leq

    def meet(self, a, b):
        return glb(self.n, self.leq, a, b)

    def join(self, a, b):
        return lub(self.n, self.leq, a, b)

    def join_all(self, xs):
        acc = next(x for x in range(self.n) if all(self.leq(x, y) for y in range(self.n)))
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def covers(self, a, b):
        return a != b and self.leq(a, b) and not any(
            x not in (a, b) and self.leq(a, x) and self.leq(x, b) for x in range(self.n))

    def sd_join(self):
        R = range(self.n)
        return all(self.join(x, y) != self.join(x, z) or self.join(x, y) == self.join(x, self.meet(y, z))
                   for x in R for y in R for z in R)

    def distributive(self):
        R = range(self.n)
        return all(self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                   for x in R for y in R for z in R)

    def lower_semimodular(self):
        R = range(self.n)
        for a in R:
            for b in R:
                if not self.covers(a, b):
                    continue
                for c in R:
                    lo, hi = self.meet(a, c), self.meet(b, c)
                    if lo != hi and not self.covers(lo, hi):
                        return False
        return True

    def sd_join_star(self, bound):
        """Over all non-empty subsets (not only antichains) of size at most ``bound``."""
        fams = [s for s in powerset(range(self.n)) if 0 < len(s) <= bound]
        for Y, Z in product(fams, fams):
            w = self.join_all(Y)
            if w == self.join_all(Z) and self.join_all(self.meet(y, z) for y in Y for z in Z) != w:
                return False
        return True

    def join_irreducibles(self):
        return [j for j in range(self.n) if sum(self.covers(x, j) for x in range(self.n)) == 1]
