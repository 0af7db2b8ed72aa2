"""Exact arithmetic over dyadic Gaussian rationals: numbers (a + b·i)/2^k.

The image of every Clifford generator under the spin representation has
entries in Z[i], and the only divisions the theorems ever need are by
powers of two (half-spin projectors, idempotents (1 ± vol)/2, real-form
basis changes).  Closing the scalar ring at dyadic Gaussian rationals
therefore keeps every theorem-level check exact, with no irrationals and
no general rational pivoting outside the dedicated linear-algebra module.

Matrices store two integer planes (real, imaginary) plus one shared
denominator exponent; products run on int64 planes through
:mod:`spinlab.accel` whenever a magnitude precheck rules out overflow,
and on object (big-int) arrays otherwise.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import accel


def _reduce2(re: int, im: int, k: int) -> tuple[int, int, int]:
    while k > 0 and (re & 1) == 0 and (im & 1) == 0:
        re >>= 1
        im >>= 1
        k -= 1
    if re == 0 and im == 0:
        k = 0
    return re, im, k


class ExactScalar:
    """(re + im·i) / 2^k in canonical form (k = 0, or re/im not both even)."""

    __slots__ = ("re", "im", "k")

    def __init__(self, re: int, im: int = 0, k: int = 0):
        if k < 0:
            raise ValueError("denominator exponent must be nonnegative")
        re, im, k = _reduce2(int(re), int(im), int(k))
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "k", k)

    def __setattr__(self, *a):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "ExactScalar":
        q = Fraction(q)
        den = q.denominator
        k = den.bit_length() - 1
        if den != 1 << k:
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, 0, k)

    @property
    def real(self) -> Fraction:
        return Fraction(self.re, 1 << self.k)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.im, 1 << self.k)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im, self.k)

    def __add__(self, other):
        other = _coerce(other)
        k = max(self.k, other.k)
        a = self.re << (k - self.k)
        b = self.im << (k - self.k)
        c = other.re << (k - other.k)
        d = other.im << (k - other.k)
        return ExactScalar(a + c, b + d, k)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __neg__(self):
        return ExactScalar(-self.re, -self.im, self.k)

    def __mul__(self, other):
        other = _coerce(other)
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.k + other.k,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(other) - self

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return (self.re, self.im, self.k) == (other.re, other.im, other.k)

    def __hash__(self):
        return hash((self.re, self.im, self.k))

    def __repr__(self):
        if self.k == 0:
            return f"ExactScalar({self.re}{self.im:+d}i)"
        return f"ExactScalar(({self.re}{self.im:+d}i)/2^{self.k})"

    def __complex__(self):
        return complex(self.re, self.im) / (1 << self.k)


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, int):
        return ExactScalar(x)
    if isinstance(x, Fraction):
        return ExactScalar.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)


def i_power(a: int) -> ExactScalar:
    """i**a as an exact scalar."""
    return (ONE, I, -ONE, -I)[a % 4]


class ExactMatrix:
    """Dense matrix over dyadic Gaussian rationals (integer planes / 2^k)."""

    __slots__ = ("re", "im", "k", "rows", "cols")

    def __init__(self, re, im=None, k: int = 0):
        re = np.asarray(re, dtype=object)
        if re.ndim != 2:
            raise ValueError("ExactMatrix needs a 2-d array")
        if im is None:
            im = np.zeros_like(re)
        else:
            im = np.asarray(im, dtype=object)
            if im.shape != re.shape:
                raise ValueError("plane shapes differ")
        self.re, self.im, self.k = _reduce_planes(re, im, k)
        self.rows, self.cols = re.shape

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = np.zeros((n, n), dtype=object)
        for j in range(n):
            m[j, j] = 1
        return cls(m)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=object))

    @classmethod
    def from_scalars(cls, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        n, m = len(rows), len(rows[0])
        entries = [[_coerce(x) for x in r] for r in rows]
        k = max((e.k for r in entries for e in r), default=0)
        re = np.zeros((n, m), dtype=object)
        im = np.zeros((n, m), dtype=object)
        for i in range(n):
            for j in range(m):
                e = entries[i][j]
                re[i, j] = e.re << (k - e.k)
                im[i, j] = e.im << (k - e.k)
        return cls(re, im, k)

    @classmethod
    def column(cls, entries) -> "ExactMatrix":
        return cls.from_scalars([[x] for x in entries])

    # -- accessors -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx) -> ExactScalar:
        i, j = idx
        return ExactScalar(self.re[i, j], self.im[i, j], self.k)

    def is_real(self) -> bool:
        return not self.im.any()

    def is_zero(self) -> bool:
        return not (self.re.any() or self.im.any())

    def is_identity(self) -> bool:
        # canonical form: an identity matrix always reduces to k = 0
        if self.rows != self.cols or self.k != 0 or self.im.any():
            return False
        eye = np.zeros((self.rows, self.cols), dtype=object)
        for j in range(self.rows):
            eye[j, j] = 1
        return bool(np.array_equal(self.re, eye))

    def is_scalar(self) -> ExactScalar | None:
        """The scalar c if self == c·Id, else None."""
        if self.rows != self.cols:
            return None
        c = self[0, 0]
        if self == ExactMatrix.identity(self.rows) * c:
            return c
        return None

    def is_diagonal(self) -> bool:
        off = ~np.eye(self.rows, self.cols, dtype=bool)
        return not (self.re[off].any() or self.im[off].any())

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        k = max(self.k, other.k)
        a = _shift(self, k)
        b = _shift(other, k)
        return ExactMatrix(a[0] + b[0], a[1] + b[1], k)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.re, -self.im, self.k)

    def __mul__(self, c) -> "ExactMatrix":
        c = _coerce(c)
        return ExactMatrix(
            self.re * c.re - self.im * c.im,
            self.re * c.im + self.im * c.re,
            self.k + c.k,
        )

    __rmul__ = __mul__

    def half(self) -> "ExactMatrix":
        return ExactMatrix(self.re, self.im, self.k + 1)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        amax = max(accel.max_abs(self.re), accel.max_abs(self.im))
        bmax = max(accel.max_abs(other.re), accel.max_abs(other.im))
        if accel.gm_matmul_safe(amax, bmax, self.cols):
            cr, ci = accel.gm_matmul_i64(
                self.re.astype(np.int64),
                self.im.astype(np.int64),
                other.re.astype(np.int64),
                other.im.astype(np.int64),
            )
            cr = cr.astype(object)
            ci = ci.astype(object)
        else:
            cr = self.re @ other.re - self.im @ other.im
            ci = self.re @ other.im + self.im @ other.re
        return ExactMatrix(cr, ci, self.k + other.k)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(self.re, -self.im, self.k)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.re.T.copy(), self.im.T.copy(), self.k)

    def dagger(self) -> "ExactMatrix":
        return ExactMatrix(self.re.T.copy(), -self.im.T.copy(), self.k)

    def trace(self) -> ExactScalar:
        n = min(self.rows, self.cols)
        tr_re = sum(int(self.re[j, j]) for j in range(n))
        tr_im = sum(int(self.im[j, j]) for j in range(n))
        return ExactScalar(tr_re, tr_im, self.k)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        re = np.kron(self.re, other.re) - np.kron(self.im, other.im)
        im = np.kron(self.re, other.im) + np.kron(self.im, other.re)
        return ExactMatrix(re, im, self.k + other.k)

    def direct_sum(self, other: "ExactMatrix") -> "ExactMatrix":
        k = max(self.k, other.k)
        a = _shift(self, k)
        b = _shift(other, k)
        re = np.zeros((self.rows + other.rows, self.cols + other.cols), dtype=object)
        im = np.zeros_like(re)
        re[: self.rows, : self.cols] = a[0]
        im[: self.rows, : self.cols] = a[1]
        re[self.rows :, self.cols :] = b[0]
        im[self.rows :, self.cols :] = b[1]
        return ExactMatrix(re, im, k)

    def submatrix(self, row_idx, col_idx) -> "ExactMatrix":
        r = np.asarray(row_idx)
        c = np.asarray(col_idx)
        return ExactMatrix(self.re[np.ix_(r, c)], self.im[np.ix_(r, c)], self.k)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.k == other.k
            and np.array_equal(self.re, other.re)
            and np.array_equal(self.im, other.im)
        )

    __hash__ = None  # mutable planes; equality only

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, k={self.k})"

    # -- conversions ---------------------------------------------------

    def to_complex(self) -> np.ndarray:
        return (self.re.astype(np.float64) + 1j * self.im.astype(np.float64)) / (1 << self.k)

    def to_fractions(self) -> np.ndarray:
        """Real part as a Fraction object array; requires a real matrix."""
        if not self.is_real():
            raise ValueError("matrix is not real")
        den = 1 << self.k
        out = np.empty(self.shape, dtype=object)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = Fraction(int(self.re[i, j]), den)
        return out

    def realify(self) -> "ExactMatrix":
        """Matrix of the same map on the realification, basis (v, i·v)."""
        top = np.concatenate([self.re, -self.im], axis=1)
        bot = np.concatenate([self.im, self.re], axis=1)
        return ExactMatrix(np.concatenate([top, bot], axis=0), None, self.k)


def _shift(m: ExactMatrix, k: int):
    s = k - m.k
    if s == 0:
        return m.re, m.im
    f = 1 << s
    return m.re * f, m.im * f


def _reduce_planes(re, im, k):
    if k > 0:
        if re.size == 0 or not (re.any() or im.any()):
            return re, im, 0
        while k > 0 and not ((re & 1).any() or (im & 1).any()):
            re = re >> 1
            im = im >> 1
            k -= 1
    return re, im, k


class AntilinearMap:
    """v -> M·conj(v); composition and squares reduce to plain matrices."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExactMatrix):
        if matrix.rows != matrix.cols:
            raise ValueError("antilinear maps here are square")
        self.matrix = matrix

    def apply(self, v: ExactMatrix) -> ExactMatrix:
        return self.matrix @ v.conj()

    def compose(self, other: "AntilinearMap") -> ExactMatrix:
        """self ∘ other, a linear map: M_self · conj(M_other)."""
        return self.matrix @ other.matrix.conj()

    def squared(self) -> ExactMatrix:
        return self.compose(self)

    def after_linear(self, t: ExactMatrix) -> ExactMatrix:
        """Matrix of self ∘ t (an antilinear map): M · conj(T)."""
        return self.matrix @ t.conj()

    def before_linear(self, t: ExactMatrix) -> ExactMatrix:
        """Matrix of t ∘ self (an antilinear map): T · M."""
        return t @ self.matrix

    def commutes_with(self, t: ExactMatrix) -> bool:
        return self.after_linear(t) == self.before_linear(t)
