"""Hot numeric kernels: numba-jitted int64 paths with a pure-numpy fallback.

The two inner loops that dominate runtime are (a) matrix multiplication of
Gaussian-integer planes and (b) integer row echelon for exact nullspaces.
Both have three tiers:

  1. numba @njit on int64 planes        (default)
  2. vectorized numpy on int64 planes   (env SPINLAB_NO_NUMBA=1 / SPINLAB_ACCEL=numpy)
  3. numpy object arrays of Python ints (automatic fallback when int64 could overflow)

Tier 3 lives with the callers; this module owns tiers 1 and 2 and the
magnitude prechecks that keep the int64 tiers exact.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("SPINLAB_ACCEL", "").strip().lower()
USE_NUMBA = _env != "numpy" and os.environ.get("SPINLAB_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

# int64 products a*b with |a|,|b| <= 2**30 and <= 2**31 summands stay below 2**62.
INT64_SAFE = 2**62


def max_abs(arr) -> int:
    """Largest |entry| of an integer ndarray (object or int64), 0 if empty."""
    if arr.size == 0:
        return 0
    return int(max(abs(int(arr.max())), abs(int(arr.min()))))


def gm_matmul_safe(amax: int, bmax: int, inner: int) -> bool:
    """True if an int64 Gaussian-plane product cannot overflow."""
    return 2 * inner * amax * bmax < INT64_SAFE


def _gm_matmul_numpy(ar, ai, br, bi):
    cr = ar @ br - ai @ bi
    ci = ar @ bi + ai @ br
    return cr, ci


if USE_NUMBA:

    @njit(cache=True)
    def _gm_matmul_numba(ar, ai, br, bi):  # pragma: no cover - exercised via dispatch
        n, kk = ar.shape
        m = br.shape[1]
        cr = np.zeros((n, m), dtype=np.int64)
        ci = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for l in range(kk):
                x = ar[i, l]
                y = ai[i, l]
                if x == 0 and y == 0:
                    continue
                for j in range(m):
                    u = br[l, j]
                    v = bi[l, j]
                    cr[i, j] += x * u - y * v
                    ci[i, j] += x * v + y * u
        return cr, ci

    @njit(cache=True)
    def _echelon_numba(m):  # pragma: no cover - exercised via dispatch
        # Row echelon over Z with gcd-normalized rows.  Returns (ok, rank,
        # pivot column per row).  ok=False means int64 growth was imminent
        # and the caller must redo the work on object arrays.
        rows, cols = m.shape
        piv = np.full(rows, -1, dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            sel = -1
            best = 0
            for i in range(r, rows):
                v = m[i, c]
                if v != 0:
                    av = -v if v < 0 else v
                    if sel == -1 or av < best:
                        sel = i
                        best = av
            if sel == -1:
                continue
            if sel != r:
                for j in range(cols):
                    t = m[r, j]
                    m[r, j] = m[sel, j]
                    m[sel, j] = t
            p = m[r, c]
            # overflow precheck: new entries are bounded by 2*maxrow*maxpiv
            mr = 0
            for j in range(cols):
                av = m[r, j] if m[r, j] >= 0 else -m[r, j]
                if av > mr:
                    mr = av
            for i in range(r + 1, rows):
                q = m[i, c]
                if q == 0:
                    continue
                mi = 0
                for j in range(cols):
                    av = m[i, j] if m[i, j] >= 0 else -m[i, j]
                    if av > mi:
                        mi = av
                ap = p if p >= 0 else -p
                aq = q if q >= 0 else -q
                if mi * ap + mr * aq >= INT64_SAFE:
                    return False, r, piv
                g = 0
                for j in range(cols):
                    m[i, j] = m[i, j] * p - q * m[r, j]
                    av = m[i, j] if m[i, j] >= 0 else -m[i, j]
                    if g == 0:
                        g = av
                    elif av != 0:
                        a, b = g, av
                        while b:
                            a, b = b, a % b
                        g = a
                if g > 1:
                    for j in range(cols):
                        m[i, j] //= g
            piv[r] = c
            r += 1
        return True, r, piv

else:
    _gm_matmul_numba = None
    _echelon_numba = None


def gm_matmul_i64(ar, ai, br, bi):
    """(ar + i*ai) @ (br + i*bi) on int64 planes. Caller checks gm_matmul_safe."""
    if USE_NUMBA:
        return _gm_matmul_numba(ar, ai, br, bi)
    return _gm_matmul_numpy(ar, ai, br, bi)


def _echelon_numpy(m):
    rows, cols = m.shape
    piv = np.full(rows, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        cand = nz + r
        sel = cand[np.argmin(np.abs(m[cand, c]))]
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        p = int(m[r, c])
        mr = int(np.abs(m[r]).max())
        for i in range(r + 1, rows):
            q = int(m[i, c])
            if q == 0:
                continue
            mi = int(np.abs(m[i]).max())
            if mi * abs(p) + mr * abs(q) >= INT64_SAFE:
                return False, r, piv
            m[i] = m[i] * p - q * m[r]
            g = int(np.gcd.reduce(m[i]))
            if g > 1:
                m[i] //= g
        piv[r] = c
        r += 1
    return True, r, piv


def echelon_i64(m):
    """In-place integer row echelon on an int64 matrix.

    Returns (ok, rank, pivot_cols).  ok=False signals that exact int64
    arithmetic could not be guaranteed; the matrix is then half-processed
    and must be discarded by the caller.
    """
    if USE_NUMBA:
        return _echelon_numba(m)
    return _echelon_numpy(m)


def warmup() -> None:
    """Trigger jit compilation so timings and tests are not skewed."""
    if not USE_NUMBA:
        return
    one = np.ones((2, 2), dtype=np.int64)
    gm_matmul_i64(one, one, one, one)
    echelon_i64(np.array([[2, 4], [1, 3]], dtype=np.int64))
