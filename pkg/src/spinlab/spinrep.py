"""The explicit complex spin representation and its exact structure maps.

Generators are Kronecker products of the 2x2 matrices Id, g1, g2, T; the
odd generator in odd dimension is i * T^(k).  Everything here stays inside
the dyadic Gaussian ring: projectors introduce a single /2, real and
quaternionic structures are signed permutations composed with conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .blades import MAX_DIM, Multivector, grade, volume_element
from .exact import AntilinearMap, ExactMatrix, ExactScalar, i_power

_ID2 = ExactMatrix([[1, 0], [0, 1]])
_G1 = ExactMatrix([[0, 0], [0, 0]], [[1, 0], [0, -1]])  # diag(i, -i)
_G2 = ExactMatrix([[0, 0], [0, 0]], [[0, 1], [1, 0]])  # antidiag(i, i)
_T = ExactMatrix([[0, 0], [0, 0]], [[0, -1], [1, 0]])  # [[0,-i],[i,0]]
_ALPHA = ExactMatrix([[0, -1], [1, 0]])  # quaternionic structure on C^2
_BETA = ExactMatrix([[1, 0], [0, 1]])  # real structure on C^2


def spinor_dim(n: int) -> int:
    return 1 << (n // 2)


def _kron_chain(factors: list[ExactMatrix]) -> ExactMatrix:
    out = ExactMatrix([[1]])
    for f in factors:
        out = out.kron(f)
    return out


@lru_cache(maxsize=None)
def _generators(n: int) -> tuple[ExactMatrix, ...]:
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}")
    k = n // 2
    gens = []
    for j in range(1, k + 1):
        head = [_ID2] * (k - j)
        tail = [_T] * (j - 1)
        gens.append(_kron_chain(head + [_G1] + tail))
        gens.append(_kron_chain(head + [_G2] + tail))
    if n % 2:
        gens.append(_kron_chain([_T] * k) * ExactScalar(0, 1))
    return tuple(gens)


def kappa_generator(n: int, i: int) -> ExactMatrix:
    """Image of e_i in the 2^(n//2)-dimensional spin representation."""
    gens = _generators(n)
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} outside 1..{n}")
    return gens[i - 1]


@lru_cache(maxsize=8192)
def kappa_blade(n: int, mask: int) -> ExactMatrix:
    if mask == 0:
        return ExactMatrix.identity(spinor_dim(n))
    low = mask & -mask
    i = low.bit_length()
    return kappa_generator(n, i) @ kappa_blade(n, mask ^ low)


def kappa(mv: Multivector, n: int | None = None) -> ExactMatrix:
    """Algebra-map extension of the generator images over blades."""
    if n is None:
        n = mv.n
    if mv.n != n:
        raise ValueError(f"multivector lives in Cl_{mv.n}, not Cl_{n}")
    d = spinor_dim(n)
    out = ExactMatrix.zeros(d, d)
    for mask, c in mv.terms.items():
        out = out + kappa_blade(n, mask) * ExactScalar.from_fraction(Fraction(c))
    return out


def delta_indices(n: int) -> tuple[list[int], list[int]]:
    """Spinor-basis index sets of the half-spin spaces for even n.

    Index b encodes the sign tuple with bit (k-j) set iff eps_j = -1, so
    the last tensor slot is the fastest-varying bit; Delta^+ collects the
    even number of minus signs.
    """
    if n % 2:
        raise ValueError("half-spin split needs even dimension")
    d = spinor_dim(n)
    plus = [b for b in range(d) if b.bit_count() % 2 == 0]
    minus = [b for b in range(d) if b.bit_count() % 2 == 1]
    return plus, minus


def half_spin_projectors(n: int) -> tuple[ExactMatrix, ExactMatrix]:
    """P+- = (Id +- (-i)^(n/2) kappa(vol)) / 2 for even n."""
    if n % 2:
        raise ValueError("half-spin projectors need even dimension")
    d = spinor_dim(n)
    volk = kappa_blade(n, (1 << n) - 1) * i_power(-(n // 2))
    eye = ExactMatrix.identity(d)
    return (eye + volk).half(), (eye - volk).half()


def spinor_basis(n: int) -> list[ExactMatrix]:
    """Unnormalized u_eps column vectors (norm^2 = 2^(n//2) each)."""
    k = n // 2
    u_plus = ExactMatrix([[1], [0]], [[0], [-1]])  # (1, -i)
    u_minus = ExactMatrix([[1], [0]], [[0], [1]])  # (1, +i)
    out = []
    for b in range(1 << k):
        v = ExactMatrix([[1]])
        for j in range(k):  # slot j+1; bit (k-1-j)
            v = v.kron(u_minus if (b >> (k - 1 - j)) & 1 else u_plus)
        out.append(v)
    return out


def gamma_structure(n: int) -> AntilinearMap:
    """Real/quaternionic structure on the spinor module, from alpha/beta factors."""
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}")
    k2, rem = divmod(n, 8)
    if rem in (0, 1):
        pattern = [_ALPHA, _BETA] * (2 * k2)
    elif rem in (2, 3):
        pattern = [_ALPHA] + [_BETA, _ALPHA] * (2 * k2)
    elif rem in (4, 5):
        pattern = [_ALPHA, _BETA] * (2 * k2 + 1)
    else:
        pattern = [_ALPHA] + [_BETA, _ALPHA] * (2 * k2 + 1)
    if len(pattern) != n // 2:
        raise AssertionError("gamma tensor pattern does not fill the spinor slots")
    return AntilinearMap(_kron_chain(pattern))


def gamma_sign(n: int) -> int:
    """+1 if gamma_n is a real structure, -1 if quaternionic."""
    sq = gamma_structure(n).squared()
    c = sq.is_scalar()
    if c is None or c not in (ExactScalar(1), ExactScalar(-1)):
        raise AssertionError("gamma squared is not +-Id")
    return 1 if c == ExactScalar(1) else -1


def clifford_mult_skew_check(n: int) -> dict:
    """Verify kappa(e_i)^dagger = -kappa(e_i) for every generator."""
    failures = []
    for i in range(1, n + 1):
        m = kappa_generator(n, i)
        if m.dagger() != -m:
            failures.append(i)
    return {"n": n, "ok": not failures, "failures": failures}


def weight_basis_matrix(n: int) -> ExactMatrix:
    """Columns are the unnormalized u_eps vectors; U^dagger U = 2^(n//2) Id."""
    cols = spinor_basis(n)
    d = spinor_dim(n)
    re = np.zeros((d, d), dtype=object)
    im = np.zeros((d, d), dtype=object)
    k = max(c.k for c in cols)
    for j, c in enumerate(cols):
        f = 1 << (k - c.k)
        re[:, j] = (c.re * f)[:, 0]
        im[:, j] = (c.im * f)[:, 0]
    return ExactMatrix(re, im, k)


def to_weight_basis(m: ExactMatrix, n: int) -> ExactMatrix:
    """Rewrite a spinor-space matrix in the u_eps basis (exact conjugation)."""
    u = weight_basis_matrix(n)
    return (u.dagger() @ m @ u) * ExactScalar(1, 0, n // 2)


def vol_half_spin_scalars(r: int) -> tuple[ExactScalar, ExactScalar]:
    """Exact scalars by which kappa(vol_r) acts on Delta^+ and Delta^-.

    Raises if the action is not scalar on each half-spin space (it is for
    every even r; the value on Delta^+ is i^(r/2) under the convention
    that u_{1,...,1} spans a positive vector).
    """
    if r % 2:
        raise ValueError("volume scalars on half-spinors need even rank")
    volk = to_weight_basis(kappa_blade(r, (1 << r) - 1), r)
    if not volk.is_diagonal():
        raise AssertionError("kappa(vol) is not diagonal in the weight basis")
    plus, minus = delta_indices(r)
    scalars = []
    for idx in (plus, minus):
        block = volk.submatrix(idx, idx)
        c = block.is_scalar()
        if c is None:
            raise AssertionError("kappa(vol) is not scalar on a half-spin space")
        scalars.append(c)
    return scalars[0], scalars[1]


@dataclass(frozen=True)
class Table1Row:
    r_mod8: int
    d_r: int
    algebra_kind: str  # R, C, H, R+R, H+H
    matrix_size: int
    v_r: int


def table1(r: int) -> Table1Row:
    """Irreducible real representation data of the even Clifford algebra."""
    if r < 1:
        raise ValueError("rank must be positive")
    rem = r % 8
    if rem in (1, 7):
        d = 1 << (r // 2)
        kind, size = "R", d
    elif rem in (2, 6):
        d = 1 << (r // 2)
        kind, size = "C", d // 2
    elif rem in (3, 5):
        d = 1 << (r // 2 + 1)
        kind, size = "H", d // 4
    elif rem == 4:
        d = 1 << (r // 2)
        kind, size = "H+H", d // 4
    else:  # rem == 0
        d = 1 << (r // 2 - 1)
        kind, size = "R+R", d
    return Table1Row(rem, d, kind, size, 2 if r % 4 == 0 else 1)


@dataclass(frozen=True)
class QuaternionicTriple:
    """Three anticommuting complex structures commuting with the even action.

    For r = 3,5 (mod 8) the matrices act on the realification of the spinor
    module (realified = True).  For r = 4 (mod 8) they are the ambient
    images inside the rank r+3 representation together with the projector
    cutting out the half module, and the quaternion relations hold against
    that projector (X^2 = -P on the image).
    """

    I: ExactMatrix
    J: ExactMatrix
    K: ExactMatrix
    realified: bool
    projector: ExactMatrix | None = None


def _realify_antilinear(g: ExactMatrix) -> ExactMatrix:
    """Real matrix of v -> G conj(v) on the realification, G real."""
    if not g.is_real():
        raise ValueError("expected a real antilinear matrix")
    top = np.concatenate([g.re, np.zeros_like(g.re)], axis=1)
    bot = np.concatenate([np.zeros_like(g.re), -g.re], axis=1)
    return ExactMatrix(np.concatenate([top, bot], axis=0), None, g.k)


def quaternionic_triple(r: int) -> QuaternionicTriple:
    rem = r % 8
    if rem in (3, 5):
        d = spinor_dim(r)
        i_mat = (ExactMatrix.identity(d) * ExactScalar(0, 1)).realify()
        j_mat = _realify_antilinear(gamma_structure(r).matrix)
        k_mat = i_mat @ j_mat
        eye = ExactMatrix.identity(2 * d)
        for name, x in (("I", i_mat), ("J", j_mat), ("K", k_mat)):
            if x @ x != -eye:
                raise AssertionError(f"{name}^2 != -Id for r={r}")
        if i_mat @ j_mat != -(j_mat @ i_mat) or i_mat @ j_mat != k_mat:
            raise AssertionError(f"quaternion relations fail for r={r}")
        return QuaternionicTriple(i_mat, j_mat, k_mat, realified=True)
    if rem == 4:
        n = r + 3
        if n > MAX_DIM:
            raise ValueError(f"rank {r} needs Cl_{n} > {MAX_DIM}")
        half = Fraction(1, 2)
        proj_mv = Multivector.scalar(n, half) + half * _embed_volume(r, n)
        elems = [
            proj_mv * Multivector.blade(n, [r + 1, r + 2]),
            proj_mv * Multivector.blade(n, [r + 1, r + 3]),
            proj_mv * Multivector.blade(n, [r + 2, r + 3]),
        ]
        p = kappa(proj_mv, n)
        i_mat, j_mat, k_mat = (kappa(x, n) for x in elems)
        for name, x in (("I", i_mat), ("J", j_mat), ("K", k_mat)):
            if x @ x != -p:
                raise AssertionError(f"{name}^2 != -P for r={r}")
        if i_mat @ j_mat != k_mat or j_mat @ i_mat != -k_mat:
            raise AssertionError(f"quaternion relations fail for r={r}")
        return QuaternionicTriple(i_mat, j_mat, k_mat, realified=False, projector=p)
    raise ValueError("quaternionic triples exist for r = 3, 4, 5 mod 8 only")


def _embed_volume(r: int, n: int) -> Multivector:
    """e_1...e_r viewed inside Cl_n, n >= r."""
    return Multivector(n, {(1 << r) - 1: Fraction(1)})
