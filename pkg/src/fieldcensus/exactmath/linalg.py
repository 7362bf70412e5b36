"""Small exact linear algebra: left kernels over F_p, integer HNF, triangular solves.

Matrices are lists of row lists.
"""


def left_kernel_mod_p(rows, p):
    """Basis of {c : c . rows == 0 mod p}, as a list of vectors in [0, p)."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    # augment with identity and row-reduce; rows that become zero give kernel vectors
    aug = [[x % p for x in rows[i]] + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        row = [x * inv % p for x in aug[r]]
        aug[r] = row
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], row)]
        r += 1
        if r == m:
            break
    return [aug[i][ncols:] for i in range(r, m)]


def hnf(rows, n):
    """Upper-triangular Hermite normal form of a full-rank integer lattice in Z^n.

    Returns n rows h with h[k][j] == 0 for j < k, h[k][k] > 0 and
    0 <= h[i][k] < h[k][k] for i < k.
    """
    work = [list(r) for r in rows if any(r)]
    out = []
    for c in range(n):
        active = [r for r in work if r[c] != 0]
        rest = [r for r in work if r[c] == 0]
        if not active:
            raise ValueError("lattice is not of full rank")
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[c] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        work = rest
    for k in range(n):
        d = out[k][k]
        for i in range(k):
            q = out[i][k] // d
            if q:
                out[i] = [a - q * b for a, b in zip(out[i], out[k])]
    return out


def solve_upper(h, v):
    """Integer y with y . h == v for h upper triangular (HNF rows).  Raises if not integral."""
    n = len(h)
    y = [0] * n
    r = list(v)
    for k in range(n):
        q, rem = divmod(r[k], h[k][k])
        if rem:
            raise ArithmeticError("vector not in lattice")
        y[k] = q
        if q:
            row = h[k]
            for j in range(k, n):
                r[j] -= q * row[j]
    return y


def determinant(m):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
