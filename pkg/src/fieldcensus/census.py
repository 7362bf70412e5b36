"""Field store and counting statistics.

Record file layout (UTF-8, tab separated, one field per line)::

    #fieldcensus v1 degree=4 signature=tc bound=100000 ...
    degree  r1  d_K  label  certainty  a_0 ... a_{n-1}  [classgroup]

Records are kept sorted by (|d_K|, d_K, coefficients) and are unique by
(degree, coefficients).  Checkpoints of counting curves are the integers i
standing for X = 10^(i/10).
"""

import bisect
import csv
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

FORMAT_VERSION = 1
MAGIC = "#fieldcensus"


class FormatVersionMismatch(ValueError):
    pass


class BeyondCertifiedBound(ValueError):
    pass


class NonpositiveErrorTerm(ArithmeticError):
    def __init__(self, E):
        super().__init__(f"error term E = {E} is not positive")
        self.E = E


class RankDeficient(ValueError):
    pass


@dataclass(frozen=True)
class FieldRecord:
    degree: int
    r1: int
    d_K: int
    coeffs: tuple            # a_0..a_{n-1}; the polynomial is monic
    label: str
    certainty: str
    classgroup: tuple = None  # elementary divisors, or None

    @property
    def poly(self):
        return tuple(self.coeffs) + (1,)

    def sort_key(self):
        return (abs(self.d_K), self.d_K, tuple(self.coeffs))

    def to_line(self):
        parts = [str(self.degree), str(self.r1), str(self.d_K), self.label, self.certainty]
        parts += [str(c) for c in self.coeffs]
        if self.classgroup is not None:
            parts.append(",".join(str(c) for c in self.classgroup) or "1")
        return "\t".join(parts)

    @classmethod
    def from_line(cls, line):
        parts = line.rstrip("\n").split("\t")
        n = int(parts[0])
        coeffs = tuple(int(c) for c in parts[5:5 + n])
        if len(coeffs) != n:
            raise ValueError(f"record has {len(coeffs)} coefficients, expected {n}")
        cg = None
        if len(parts) > 5 + n:
            txt = parts[5 + n].strip()
            cg = () if txt in ("", "1") else tuple(int(c) for c in txt.split(","))
        return cls(n, int(parts[1]), int(parts[2]), coeffs, parts[3], parts[4], cg)


@dataclass
class Store:
    header: dict
    records: list = field(default_factory=list)

    @property
    def degree(self):
        return int(self.header["degree"])

    @property
    def bound(self):
        return float(self.header.get("bound", "inf"))

    def sort(self):
        self.records.sort(key=FieldRecord.sort_key)

    def labels(self):
        return sorted({r.label for r in self.records})

    def select(self, label=None):
        if label is None:
            return list(self.records)
        return [r for r in self.records if r.label == label]


def format_header(header):
    items = [f"{MAGIC} v{FORMAT_VERSION}"]
    keys = ["degree", "signature", "bound"] + sorted(k for k in header if k not in
                                                     ("degree", "signature", "bound", "version"))
    for k in keys:
        if k in header:
            items.append(f"{k}={header[k]}")
    return " ".join(items)


def parse_header(line):
    tokens = line.strip().split()
    if not tokens or tokens[0] != MAGIC:
        raise ValueError("not a fieldcensus record file")
    version = tokens[1] if len(tokens) > 1 else ""
    if version != f"v{FORMAT_VERSION}":
        raise FormatVersionMismatch(f"file format {version}, expected v{FORMAT_VERSION}")
    header = {}
    for tok in tokens[2:]:
        k, _, v = tok.partition("=")
        header[k] = v
    return header


def read_store(path):
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        header = parse_header(first)
        records = [FieldRecord.from_line(line) for line in fh if line.strip() and not line.startswith("#")]
    store = Store(header, records)
    store.sort()
    return store


def write_store(path, store):
    store.sort()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_header(store.header) + "\n")
        for r in store.records:
            fh.write(r.to_line() + "\n")


def _format_bound(x):
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def store_merge(stores):
    """Union by (degree, coefficients), sorted.  Headers must agree on degree and signature."""
    stores = list(stores)
    if not stores:
        raise ValueError("nothing to merge")
    base = stores[0].header
    for s in stores[1:]:
        for key in ("degree", "signature"):
            if s.header.get(key) != base.get(key):
                raise FormatVersionMismatch(f"cannot merge stores with different {key}")
    bounds = {s.header.get("bound") for s in stores}
    # provenance keys survive when every input agrees on them
    header = {k: v for k, v in base.items()
              if k != "shard" and all(s.header.get(k) == v for s in stores)}
    header["bound"] = base.get("bound")
    if len(bounds) > 1:
        header["bound"] = _format_bound(min(float(b) for b in bounds))
    merged = {}
    for s in stores:
        for r in s.records:
            key = (r.degree, tuple(r.coeffs))
            old = merged.get(key)
            # keep the record carrying more information, deterministically
            if old is None or (old.classgroup is None and r.classgroup is not None) or (
                    old.certainty != "proven" and r.certainty == "proven"):
                merged[key] = r
    out = Store(header, list(merged.values()))
    out.sort()
    return out


# counting

def _abs_discs(store, label):
    return sorted(abs(r.d_K) for r in store.select(label))


def count_up_to(store, label, X):
    if X > store.bound:
        raise BeyondCertifiedBound(f"X = {X} exceeds the enumerated bound {store.bound}")
    discs = _abs_discs(store, label)
    return bisect.bisect_right(discs, X)


def checkpoint_X(i):
    return 10.0 ** (i / 10.0)


@dataclass
class CountingCurve:
    label: str
    discs: list                  # sorted |d_K|
    bound: float
    points: list = field(default_factory=list)   # (i, N, complete)

    def N(self, X):
        if X > self.bound * (1 + 1e-12):
            raise BeyondCertifiedBound(f"X = {X} exceeds the enumerated bound {self.bound}")
        return bisect.bisect_right(self.discs, X)

    def xs(self):
        return [checkpoint_X(i) for i, _, _ in self.points]


def counting_curve(store, label, i_max=None, i_min=0):
    discs = _abs_discs(store, label)
    bound = store.bound
    if i_max is None:
        i_max = int(math.floor(10 * math.log10(bound) + 1e-9)) if bound < math.inf else 0
    curve = CountingCurve(label, discs, bound)
    for i in range(i_min, i_max + 1):
        X = checkpoint_X(i)
        complete = X <= bound * (1 + 1e-12)
        curve.points.append((i, bisect.bisect_right(discs, X), complete))
    return curve


def curve_from_points(label, points):
    """Curve from explicit (i, N) pairs, e.g. synthetic or transcribed data."""
    return CountingCurve(label, [], math.inf, [(i, N, True) for i, N in points])


@dataclass(frozen=True)
class ErrorDiagnostics:
    X: float
    N: int
    E: float
    alpha1: float
    alpha2: float


def error_term(B, curve, X):
    """E = B X - N(X), alpha1 = ln E / ln X, alpha2 = ln(E(X)/E(X/2)) / ln 2."""
    N = curve.N(X)
    E = B * X - N
    if E <= 0:
        raise NonpositiveErrorTerm(E)
    Eh = B * X / 2 - curve.N(X / 2)
    a1 = math.log(E) / math.log(X)
    a2 = math.log(E / Eh) / math.log(2) if Eh > 0 else math.nan
    return ErrorDiagnostics(X, N, E, a1, a2)


def multiplicity_histogram(store, label, first=None):
    """k -> number of discriminants shared by exactly k of the first records of ``label``."""
    recs = store.select(label)
    recs.sort(key=FieldRecord.sort_key)
    if first is not None:
        if first > len(recs):
            raise ValueError(f"store holds only {len(recs)} records of {label}")
        recs = recs[:first]
    per_disc = Counter(r.d_K for r in recs)
    return dict(sorted(Counter(per_disc.values()).items()))


def histogram_from_discs(discs):
    return dict(sorted(Counter(Counter(discs).values()).items()))


# secondary terms

FIT_BASIS = ("X^(5/6)", "X^(3/4) ln X", "X^(3/4)")


def _basis(X):
    return np.array([X ** (5 / 6), X ** 0.75 * math.log(X), X ** 0.75])


@dataclass(frozen=True)
class FitResult:
    B: float
    c1: float
    c2: float
    c3: float
    residual: float
    i_min: int
    points: int
    condition: float


def fit_secondary_terms(curve, B, i_min, i_max=None):
    """Least squares for N(X_i) - B X_i against the three secondary-term functions."""
    pts = [(i, N) for i, N, ok in curve.points if ok and i >= i_min and (i_max is None or i <= i_max)]
    if len(pts) < 3:
        raise RankDeficient(f"need at least 3 checkpoints, have {len(pts)}")
    A = np.array([_basis(checkpoint_X(i)) for i, _ in pts])
    y = np.array([N - B * checkpoint_X(i) for i, N in pts], dtype=float)
    # column scaling keeps the solve well conditioned across decades
    scale = np.max(np.abs(A), axis=0)
    As = A / scale
    sol, *_ = np.linalg.lstsq(As, y, rcond=None)
    c = sol / scale
    res = float(np.linalg.norm(A @ c - y))
    cond = float(np.linalg.cond(As))
    if not np.isfinite(cond) or np.linalg.matrix_rank(As) < 3:
        raise RankDeficient("checkpoints do not determine the three coefficients")
    return FitResult(B, float(c[0]), float(c[1]), float(c[2]), res, i_min, len(pts), cond)


def predict_P(B, c1, c2, c3, X):
    return B * X + c1 * X ** (5 / 6) + c2 * X ** 0.75 * math.log(X) + c3 * X ** 0.75


def delta_diag(N, P, X):
    return math.log(abs(N - P)) / math.log(X)


# output

def emit_curve_csv(curve, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["X", "N"])
    for i, N, ok in curve.points:
        if ok:
            w.writerow([_format_bound(round(checkpoint_X(i), 6)) if i % 10 else str(10 ** (i // 10)), N])


def format_alpha(a):
    if a is None or (isinstance(a, float) and math.isnan(a)):
        return "-"
    s = f"{a:.3f}"
    return s[1:] if s.startswith("0.") else s.replace("-0.", "-.")


def format_delta(d):
    """Delta is shown with two decimals."""
    if d is None or (isinstance(d, float) and math.isnan(d)):
        return "-"
    s = f"{d:.2f}"
    return s[1:] if s.startswith("0.") else s.replace("-0.", "-.")


def table_row(B, curve, X, fit=None):
    """Columns X, N, E, alpha1, alpha2 (and P, Delta when a fit is given)."""
    d = error_term(B, curve, X)
    row = {"X": X, "N": d.N, "E": round(d.E), "alpha1": format_alpha(d.alpha1),
           "alpha2": format_alpha(d.alpha2)}
    if fit is not None:
        P = predict_P(B, fit.c1, fit.c2, fit.c3, X)
        row["P"] = round(P)
        row["Delta"] = format_delta(delta_diag(d.N, P, X)) if d.N != round(P) else "-"
    return row
