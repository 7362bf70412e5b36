"""Hunter search: a finite list of monic polynomials containing a generator
of every primitive degree-n field with |d_K| <= X.

Polynomials are coefficient lists a_0..a_n (constant term first), monic.
A job is split into prefix blocks over (t, a_{n-2}) with a_{n-1} = -t; the
compiled kernel in ``_kernel`` handles everything below the prefix.
"""

import math
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import _kernel
from .exactmath import count_real_roots, discriminant, is_irreducible_over_Q
from .exactmath.integers import primes_up_to


class UnsupportedDegree(ValueError):
    pass


class SinkFailure(RuntimeError):
    """The record consumer raised; the task can be resumed from its cursor."""


MIN_DEGREE, MAX_DEGREE = 2, 11

# gamma_m for m = 1..10.  Values up to m = 8 are exact; 9 and 10 come from
# Mordell's inequality gamma_m <= gamma_{m-1}^{(m-1)/(m-2)} starting at gamma_8 = 2.
HERMITE = {
    1: 1.0,
    2: (4.0 / 3.0) ** 0.5,
    3: 2.0 ** (1.0 / 3.0),
    4: 2.0 ** 0.5,
    5: 8.0 ** (1.0 / 5.0),
    6: (64.0 / 3.0) ** (1.0 / 6.0),
    7: 64.0 ** (1.0 / 7.0),
    8: 2.0,
}
HERMITE[9] = HERMITE[8] ** (8.0 / 7.0)
HERMITE[10] = HERMITE[9] ** (9.0 / 8.0)


def _check_degree(n):
    if not MIN_DEGREE <= n <= MAX_DEGREE:
        raise UnsupportedDegree(f"degree {n} outside {MIN_DEGREE}..{MAX_DEGREE}")


def t2_bound(n, X, t):
    """Hunter bound on T2 of a generator with trace t."""
    _check_degree(n)
    if X < 1:
        raise ValueError("X must be at least 1")
    if not 0 <= t <= n / 2:
        raise ValueError("trace must lie in [0, n/2]")
    return t * t / n + HERMITE[n - 1] * (X / n) ** (1.0 / (n - 1))


class SignatureSet(frozenset):
    """Set of (r1, r2) pairs for one degree."""

    def __new__(cls, n, pairs):
        pairs = frozenset((int(a), int(b)) for a, b in pairs)
        for r1, r2 in pairs:
            if r1 < 0 or r2 < 0 or r1 + 2 * r2 != n:
                raise ValueError(f"signature ({r1},{r2}) invalid for degree {n}")
        obj = super().__new__(cls, pairs)
        obj.degree = n
        return obj

    def __reduce__(self):
        return (SignatureSet, (self.degree, tuple(self)))

    @classmethod
    def preset(cls, name, n):
        if name == "tc":
            if n % 2:
                raise ValueError("totally complex needs even degree")
            return cls(n, [(0, n // 2)])
        if name == "r1le1":
            return cls(n, [(n % 2, n // 2)])
        if name == "tr":
            return cls(n, [(n, 0)])
        if name == "all":
            return cls(n, [(n - 2 * k, k) for k in range(n // 2 + 1)])
        raise ValueError(f"unknown signature preset {name!r}")

    @classmethod
    def parse(cls, text, n):
        """Preset name or a list like '1,2;3,1'."""
        if "," not in text:
            return cls.preset(text, n)
        pairs = [tuple(int(v) for v in part.split(",")) for part in text.split(";")]
        return cls(n, pairs)

    def r1_values(self):
        return sorted(r1 for r1, _ in self)

    def label(self):
        for name in ("tc", "r1le1", "tr", "all"):
            try:
                if self == SignatureSet.preset(name, self.degree):
                    return name
            except ValueError:
                pass
        return ";".join(f"{a},{b}" for a, b in sorted(self))


@dataclass(frozen=True)
class HunterBox:
    degree: int
    trace: int
    T2: float
    ranges: tuple       # ranges[k] = (lo, hi) for a_{n-k}, k = 2..n; index 0, 1 unused
    gamma: float

    def cardinality(self):
        c = 1
        for k in range(2, self.degree + 1):
            lo, hi = self.ranges[k]
            c *= max(0, hi - lo + 1)
        return c


def coefficient_bounds(n, t, T2):
    """Box of coefficients |a_{n-k}| <= binom(n,k) (T2/k)^{k/2}."""
    _check_degree(n)
    ranges = [(0, 0), (-t, -t)]
    for k in range(2, n + 1):
        b = math.ceil(math.comb(n, k) * (T2 / k) ** (k / 2.0))
        ranges.append((-b, b))
    return HunterBox(n, t, T2, tuple(ranges), HERMITE[n - 1])


def _a2_range(box):
    """a_{n-2} values allowed by |s_2| <= T2 with s_2 = t^2 - 2 a_{n-2}."""
    t, T = box.trace, box.T2
    lo = max(box.ranges[2][0], math.ceil((t * t - T) / 2 - 1e-9))
    hi = min(box.ranges[2][1], math.floor((t * t + T) / 2 + 1e-9))
    return lo, hi


@lru_cache(maxsize=64)
def prefixes(n, X):
    """Global ordered list of (t, a_{n-2}) prefixes for the job."""
    out = []
    for t in range(n // 2 + 1):
        box = coefficient_bounds(n, t, t2_bound(n, X, t))
        lo, hi = _a2_range(box)
        out.extend((t, a2) for a2 in range(lo, hi + 1))
    return tuple(out)


@dataclass
class EnumerationTask:
    degree: int
    bound: float
    signatures: SignatureSet
    start: int = 0              # slice [start, stop) of the global prefix list
    stop: int = None
    cursor: int = -1            # index of the last completed prefix, -1 if none
    slice_id: int = 0
    parts: int = 1
    deep: bool = True           # power-sum pruning below the prefix
    prune_disc: bool = True     # drop polynomials whose disc cannot give |d_K| <= X

    def __post_init__(self):
        _check_degree(self.degree)
        if self.stop is None:
            self.stop = len(prefixes(self.degree, self.bound))
        if self.cursor < self.start - 1:
            self.cursor = self.start - 1

    @property
    def done(self):
        return self.cursor >= self.stop - 1

    def prefix_list(self):
        return prefixes(self.degree, self.bound)[self.start:self.stop]


def shard(task, parts):
    """Split into contiguous prefix blocks; shard i gets block i."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    total = task.stop - task.start
    out = []
    for i in range(parts):
        a = task.start + (total * i) // parts
        b = task.start + (total * (i + 1)) // parts
        out.append(replace(task, start=a, stop=b, cursor=a - 1, slice_id=i, parts=parts))
    return out


@dataclass(frozen=True)
class Candidate:
    coeffs: tuple       # a_0..a_n
    disc: int           # polynomial discriminant
    r1: int


@dataclass
class Summary:
    prefixes_done: int = 0
    leaves: int = 0
    kernel_survivors: int = 0
    emitted: int = 0
    rejected: dict = field(default_factory=lambda: {"reducible": 0, "signature": 0, "squarefree": 0})
    complete: bool = False


_PRIMES = None


def _prime_table():
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = np.asarray(primes_up_to(10 ** 6), dtype=np.int64)
    return _PRIMES


def _scan(n, t, a2, box, deep, X, sig_mask, prune_disc):
    lo = np.array([r[0] for r in box.ranges], dtype=np.int64)
    hi = np.array([r[1] for r in box.ranges], dtype=np.int64)
    size = 1024
    while True:
        out = np.zeros((size, n + 1), dtype=np.int64)
        flags = np.zeros(size, dtype=np.int64)
        cnt, leaves = _kernel.scan_prefix(n, t, a2, box.T2, lo, hi, deep, X, sig_mask,
                                          _prime_table(), out, flags, prune_disc)
        if cnt <= size:
            return out[:cnt], flags[:cnt], leaves
        size = cnt


def check_candidate(coeffs, signatures, disc=None, summary=None, known_irreducible=False):
    """Exact filters: squarefree, irreducible, Sturm signature.  Returns a Candidate or None."""
    n = len(coeffs) - 1
    if disc is None:
        disc = discriminant(coeffs)
    if disc == 0:
        if summary:
            summary.rejected["squarefree"] += 1
        return None
    if not known_irreducible and not is_irreducible_over_Q(coeffs):
        if summary:
            summary.rejected["reducible"] += 1
        return None
    r1 = count_real_roots(coeffs)
    if (r1, (n - r1) // 2) not in signatures:
        if summary:
            summary.rejected["signature"] += 1
        return None
    return Candidate(tuple(coeffs), disc, r1)


def enumerate_candidates(task, sink, on_prefix_done=None, max_prefixes=None):
    """Run the task from its cursor, feeding every surviving polynomial to ``sink``.

    ``on_prefix_done(task)`` is called after each completed prefix, once the
    cursor has advanced; checkpoints hook in there.  ``max_prefixes`` stops
    early (for tests of abort/resume).
    """
    n, X = task.degree, task.bound
    sig_mask = np.zeros(n + 1, dtype=np.bool_)
    for r1, _ in task.signatures:
        sig_mask[r1] = True
    Xint = int(math.floor(X))
    plist = prefixes(n, X)
    boxes = {}
    summary = Summary()
    for idx in range(task.cursor + 1, task.stop):
        if max_prefixes is not None and summary.prefixes_done >= max_prefixes:
            return summary
        t, a2 = plist[idx]
        if t not in boxes:
            boxes[t] = coefficient_bounds(n, t, t2_bound(n, X, t))
        rows, flags, leaves = _scan(n, t, a2, boxes[t], task.deep, Xint, sig_mask,
                                    task.prune_disc)
        summary.leaves += leaves
        summary.kernel_survivors += len(rows)
        for row, flag in zip(rows.tolist(), flags.tolist()):
            coeffs = row[:n] + [1]
            disc = row[n] if flag & _kernel.FLAG_EXACT_DISC else None
            cand = check_candidate(coeffs, task.signatures, disc, summary,
                                   bool(flag & _kernel.FLAG_IRREDUCIBLE))
            if cand is None:
                continue
            try:
                sink(cand)
            except Exception as exc:
                raise SinkFailure(str(exc)) from exc
            summary.emitted += 1
        task.cursor = idx
        summary.prefixes_done += 1
        if on_prefix_done is not None:
            on_prefix_done(task)
    summary.complete = True
    return summary


# checkpoint files

def write_checkpoint(path, task, extra=None):
    """Atomically rewrite a key=value checkpoint file."""
    items = {
        "degree": task.degree,
        "bound": repr(float(task.bound)),
        "signature": task.signatures.label(),
        "slice": f"{task.slice_id}/{task.parts}",
        "start": task.start,
        "stop": task.stop,
        "cursor": task.cursor,
        "deep": int(task.deep),
        "prune_disc": int(task.prune_disc),
    }
    if task.cursor >= task.start:
        items["cursor_prefix"] = ",".join(map(str, prefixes(task.degree, task.bound)[task.cursor]))
    if extra:
        items.update(extra)
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        for k, v in items.items():
            fh.write(f"{k}={v}\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def read_checkpoint(path):
    """Returns (task, raw key/value dict)."""
    kv = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and "=" in line:
                k, v = line.split("=", 1)
                kv[k] = v
    n = int(kv["degree"])
    sid, parts = (int(v) for v in kv["slice"].split("/"))
    task = EnumerationTask(
        degree=n, bound=float(kv["bound"]),
        signatures=SignatureSet.parse(kv["signature"], n),
        start=int(kv["start"]), stop=int(kv["stop"]), cursor=int(kv["cursor"]),
        slice_id=sid, parts=parts, deep=bool(int(kv.get("deep", 1))),
        prune_disc=bool(int(kv.get("prune_disc", 1))))
    return task, kv
