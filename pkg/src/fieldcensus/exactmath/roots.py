"""Certified complex root isolation (Aberth iteration + inclusion disks)."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import polys as P

MAX_PRECISION_BITS = 2**16


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass(frozen=True)
class RootBox:
    """Disk |z - center| <= radius holding exactly one root."""

    center: mpmath.mpc
    radius: mpmath.mpf

    @property
    def real(self):
        return self.center.real

    @property
    def imag(self):
        return self.center.imag


def _horner(coeffs, z):
    # value and derivative together
    v = mpmath.mpc(0)
    d = mpmath.mpc(0)
    for c in reversed(coeffs):
        d = d * z + v
        v = v * z + c
    return v, d


def _aberth(f, iters, ctx_bits):
    n = P.degree(f)
    lead = f[-1]
    coeffs = [mpmath.mpf(c) / lead for c in f]
    bound = 1 + max(abs(c) for c in coeffs[:-1])
    r0 = mpmath.mpf(bound) / 2
    z = [r0 * mpmath.expjpi(mpmath.mpf(2 * k) / n + mpmath.mpf(0.4) / n) for k in range(n)]
    tol = mpmath.mpf(2) ** (-ctx_bits + 8)
    for _ in range(iters):
        moved = mpmath.mpf(0)
        for i in range(n):
            v, d = _horner(coeffs, z[i])
            if v == 0:
                continue
            ratio = v / d if d != 0 else mpmath.mpc(tol)
            s = mpmath.mpc(0)
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1 / diff
            w = ratio / (1 - ratio * s)
            z[i] -= w
            moved = max(moved, abs(w))
        if moved < tol * max(1, bound):
            break
    return coeffs, z


def complex_roots(f, precision: int = 64):
    """Isolate all roots of a squarefree f in disjoint disks of radius < 2^-precision."""
    n = P.degree(f)
    if n < 1:
        return []
    if not P.is_squarefree(f):
        raise P.NonSquarefree("complex_roots needs a squarefree polynomial")
    bits = max(2 * precision + 32, 96)
    while bits <= MAX_PRECISION_BITS:
        with mpmath.workprec(bits):
            coeffs, z = _aberth(f, 200 + 4 * bits, bits)
            boxes = []
            ok = True
            for zi in z:
                v, d = _horner(coeffs, zi)
                if d == 0:
                    ok = False
                    break
                # a disk of radius n|f/f'| around any point contains a root
                boxes.append(RootBox(zi, n * abs(v / d) + mpmath.mpf(2) ** (-bits)))
            if ok:
                eps = mpmath.mpf(2) ** (-precision)
                ok = all(b.radius < eps for b in boxes)
            if ok:
                for i in range(n):
                    for j in range(i + 1, n):
                        if abs(boxes[i].center - boxes[j].center) <= boxes[i].radius + boxes[j].radius:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                return sorted(boxes, key=lambda b: (float(b.real), float(b.imag)))
        bits *= 2
    raise PrecisionExhausted(f"root isolation failed below {MAX_PRECISION_BITS} bits")
