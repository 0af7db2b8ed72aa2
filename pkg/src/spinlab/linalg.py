"""Exact rational linear algebra: echelon forms, nullspaces, solves.

Matrices come in as Fraction or integer object arrays.  Rows are scaled to
integers, forward elimination runs on int64 through :mod:`spinlab.accel`
when a growth precheck allows it, and falls back to object (big-int) rows
otherwise.  Back substitution is done with Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from . import accel


def _to_int_rows(m) -> np.ndarray:
    """Scale each row of a Fraction/int object matrix to coprime integers."""
    m = np.asarray(m, dtype=object)
    out = np.zeros(m.shape, dtype=object)
    for i in range(m.shape[0]):
        den = 1
        for x in m[i]:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        row = [int(Fraction(x) * den) for x in m[i]]
        g = 0
        for v in row:
            g = gcd(g, abs(v))
        if g > 1:
            row = [v // g for v in row]
        out[i] = row
    return out


def _echelon_object(m: np.ndarray):
    """Integer row echelon on an object matrix; returns (rank, pivot cols)."""
    rows, cols = m.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        best = None
        for i in range(r, rows):
            v = m[i, c]
            if v != 0 and (best is None or abs(v) < abs(m[best, c])):
                best = i
        if best is None:
            continue
        if best != r:
            m[[r, best]] = m[[best, r]]
        p = m[r, c]
        for i in range(r + 1, rows):
            q = m[i, c]
            if q == 0:
                continue
            m[i] = m[i] * p - q * m[r]
            g = 0
            for v in m[i]:
                g = gcd(g, abs(v))
                if g == 1:
                    break
            if g > 1:
                m[i] = m[i] // g
        piv.append(c)
        r += 1
    return r, piv


def echelon_int(m: np.ndarray):
    """Row echelon of an integer object matrix: (echelon, rank, pivot cols).

    Tries the int64 kernel first; object big-int fallback keeps exactness
    when entries would overflow.
    """
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return m.copy(), 0, []
    if accel.max_abs(m) < 2**40:
        m64 = m.astype(np.int64)
        ok, rank, piv = accel.echelon_i64(m64)
        if ok:
            pivots = [int(c) for c in piv[:rank]]
            return m64.astype(object), rank, pivots
    work = m.copy()
    rank, piv = _echelon_object(work)
    return work, rank, piv


def nullspace(m) -> list[list[Fraction]]:
    """Basis of the right null space of a Fraction/integer matrix."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, rank, piv = echelon_int(_to_int_rows(m))
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for i in reversed(range(rank)):
            c = piv[i]
            s = sum((Fraction(int(red[i, j])) * x[j] for j in range(c + 1, cols)), Fraction(0))
            x[c] = -s / int(red[i, c])
        basis.append(x)
    return basis


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    _, r, _ = echelon_int(_to_int_rows(m))
    return r


def pivot_columns(m) -> list[int]:
    m = np.asarray(m, dtype=object)
    _, _, piv = echelon_int(_to_int_rows(m))
    return piv


def solve_exact(a, b) -> np.ndarray:
    """Solve A X = B exactly; A must have full column rank and the system
    must be consistent.  Returns a Fraction object array."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    stacked = np.concatenate([a, b], axis=1)
    red, rnk, piv = echelon_int(_to_int_rows(stacked))
    lead = [c for c in piv if c < cols]
    if len(lead) != cols:
        raise ValueError("matrix does not have full column rank")
    if any(c >= cols for c in piv):
        raise ValueError("inconsistent linear system")
    nb = b.shape[1]
    x = np.zeros((cols, nb), dtype=object)
    for j in range(nb):
        col = [Fraction(0)] * cols
        for i in reversed(range(len(lead))):
            c = piv[i]
            s = Fraction(int(red[i, cols + j]))
            for c2 in range(c + 1, cols):
                s -= Fraction(int(red[i, c2])) * col[c2]
            col[c] = s / int(red[i, c])
        for i2 in range(cols):
            x[i2, j] = col[i2]
    return x


def det(m) -> Fraction:
    """Determinant by fraction Gaussian elimination (small matrices)."""
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a nonsquare matrix")
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = None
        for i in range(c, n):
            if a[i][c]:
                p = i
                break
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return out * sign


def mat_fractions(m) -> np.ndarray:
    """Coerce nested lists/arrays to a Fraction object array."""
    m = np.asarray(m, dtype=object)
    out = np.empty(m.shape, dtype=object)
    it = np.nditer(np.empty(m.shape), flags=["multi_index"])
    for _ in it:
        out[it.multi_index] = Fraction(m[it.multi_index])
    return out


def matmul_fractions(a, b) -> np.ndarray:
    return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)


def identity_fractions(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = Fraction(0)
    return out


def is_zero_matrix(m) -> bool:
    m = np.asarray(m, dtype=object)
    return not any(bool(x) for x in m.ravel())


def commutation_operator(k) -> np.ndarray:
    """Matrix of Y -> YK - KY on row-major vec(Y), for square K."""
    k = np.asarray(k, dtype=object)
    n = k.shape[0]
    eye = identity_fractions(n)
    # row-major vec(A Y B) = kron(A, B^T) vec(Y)
    return np.kron(eye, k.T) - np.kron(k, eye)


def integer_kernel_basis(a) -> list[list[int]]:
    """Basis of the integer kernel lattice {x in Z^n : A x = 0}.

    A may have rational entries (rows are scaled).  Uses a small Smith
    reduction: column operations tracked in V so that zero columns of the
    reduced matrix correspond to kernel basis vectors.
    """
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 else 0
        return [[int(i == j) for i in range(n)] for j in range(n)]
    m = _to_int_rows(a)
    rows, cols = m.shape
    work = [[int(x) for x in row] for row in m]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_swap(c1, c2):
        for i in range(rows):
            work[i][c1], work[i][c2] = work[i][c2], work[i][c1]
        v[c1], v[c2] = v[c2], v[c1]

    def col_addmul(dst, src, f):
        for i in range(rows):
            work[i][dst] += f * work[i][src]
        for j in range(cols):
            v[dst][j] += f * v[src][j]

    r = 0
    for i in range(rows):
        # clear row i to a single pivot using column gcd steps
        while True:
            nz = [c for c in range(r, cols) if work[i][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(work[i][c]))
            col_swap(r, c0)
            done = True
            for c in range(r + 1, cols):
                if work[i][c]:
                    col_addmul(c, r, -(work[i][c] // work[i][r]))
                    if work[i][c]:
                        done = False
            if done:
                r += 1
                break
    return [list(v[c]) for c in range(r, cols)]
