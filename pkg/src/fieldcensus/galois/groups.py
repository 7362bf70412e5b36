"""Permutation groups by closure, and their cycle-type statistics.

Permutations are tuples of images of 0..n-1.  A cycle type is a partition of
n written as a descending tuple.
"""

from collections import Counter
from dataclasses import dataclass
from math import factorial

ORDER_CAP = 10 ** 5


class OrderCapExceeded(RuntimeError):
    pass


def compose(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def cycle_type(perm):
    n = len(perm)
    seen = [False] * n
    parts = []
    for i in range(n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            parts.append(k)
    return tuple(sorted(parts, reverse=True))


def from_cycles(n, cycles, base=1):
    """Permutation from cycle notation, points numbered from ``base``."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - base] = b - base
    return tuple(img)


def to_cycles(perm, base=1):
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i] and perm[i] != i:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + base)
                j = perm[j]
            out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class CycleTypeSet:
    degree: int
    order: int
    counts: tuple     # ((type, number of elements), ...) sorted by type

    @property
    def types(self):
        return frozenset(t for t, _ in self.counts)

    def frequency(self, t):
        for s, c in self.counts:
            if s == t:
                return c / self.order
        return 0.0

    def __contains__(self, t):
        return any(s == t for s, _ in self.counts)


def closure(generators, cap=ORDER_CAP):
    n = len(generators[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(s, g)
                if h not in elems:
                    elems.add(h)
                    if len(elems) > cap:
                        raise OrderCapExceeded(f"group order exceeds {cap}")
                    nxt.append(h)
        frontier = nxt
    return elems


def group_cycle_types(generators, cap=ORDER_CAP):
    """Exact cycle-type statistics of the group generated by ``generators``."""
    gens = [tuple(g) for g in generators]
    elems = closure(gens, cap)
    cnt = Counter(cycle_type(g) for g in elems)
    return CycleTypeSet(len(gens[0]), len(elems), tuple(sorted(cnt.items())))


def partitions(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def is_even_type(t):
    return (sum(t) - len(t)) % 2 == 0


def _class_size(t):
    n = sum(t)
    z = 1
    for k, m in Counter(t).items():
        z *= k ** m * factorial(m)
    return factorial(n) // z


def symmetric_cycle_types(n, alternating=False):
    counts = []
    for t in partitions(n):
        if alternating and not is_even_type(t):
            continue
        counts.append((t, _class_size(t)))
    order = factorial(n) // (2 if alternating and n > 1 else 1)
    return CycleTypeSet(n, order, tuple(sorted(counts)))
