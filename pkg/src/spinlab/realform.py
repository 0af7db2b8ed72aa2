"""Exact real irreducible modules of the even Clifford algebra.

The complex spin representation is cut down to the real irreducible
module per rank class:

  r = 1,7 (mod 8): fixed points of the real structure gamma_r,
  r = 0 (mod 8):  same, split by the half-spin grading,
  r = 2,6 (mod 8): realification of the Delta^+ block,
  r = 3,5 (mod 8): realification of the full spinor module,
  r = 4 (mod 8):  images of (1 +- vol_r)/2 inside the rank r+3 real module.

gamma and the weight-basis change are monomial, so fixed-point bases stay
inside the dyadic Gaussian ring; only the r = 4 (mod 8) restriction may
introduce general rational entries, which is why module matrices are
returned as Fraction object arrays.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .blades import MAX_DIM, Multivector
from .exact import ExactMatrix, ExactScalar
from .spinrep import (
    delta_indices,
    gamma_structure,
    kappa,
    spinor_dim,
    table1,
    weight_basis_matrix,
)


def _monomial_columns(m: ExactMatrix) -> list[tuple[int, ExactScalar]]:
    """For a monomial matrix, the (row, entry) of each column."""
    cols = []
    for j in range(m.cols):
        hits = [i for i in range(m.rows) if m.re[i, j] or m.im[i, j]]
        if len(hits) != 1:
            raise ValueError("matrix is not monomial")
        cols.append((hits[0], m[hits[0], j]))
    return cols


_ONE = ExactScalar(1)
_MINUS_ONE = ExactScalar(-1)
_I = ExactScalar(0, 1)
_MINUS_I = ExactScalar(0, -1)


def _fix_basis(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, list[int]]:
    """Orthogonal basis of the fixed space of the antilinear v -> M conj(v).

    M must be monomial with M conj(M) = Id.  Returns (B, B_inv, anchor)
    where anchor[c] is the coordinate carrying basis column c (used to
    classify columns by external index sets).
    """
    cols = _monomial_columns(m)
    d = m.rows
    vecs: list[tuple[int, ExactScalar, int, ExactScalar | None]] = []
    anchors: list[int] = []
    seen = set()
    for j in range(d):
        if j in seen:
            continue
        p, c = cols[j]
        if p == j:
            # one fixed vector a*e_j per fixed coordinate: conj(a)*c = a
            if c == _ONE:
                a = _ONE
            elif c == _MINUS_ONE:
                a = _I
            elif c == _I:
                a = ExactScalar(1, 1)
            elif c == _MINUS_I:
                a = ExactScalar(1, -1)
            else:
                raise ValueError("monomial entry is not a fourth root of unity")
            vecs.append((j, a, -1, None))
            anchors.append(j)
            seen.add(j)
        else:
            # gamma(e_j) = c e_p gives two fixed vectors:
            # e_j + c e_p and i e_j - i c e_p
            vecs.append((j, _ONE, p, c))
            vecs.append((j, _I, p, _MINUS_I * c))
            anchors.extend([j, j])
            seen.update((j, p))
    if len(vecs) != d:
        raise AssertionError("fixed space has the wrong real dimension")
    re = np.zeros((d, d), dtype=object)
    im = np.zeros((d, d), dtype=object)
    for idx, (j, a, p, b) in enumerate(vecs):
        re[j, idx] = a.re
        im[j, idx] = a.im
        if p >= 0:
            re[p, idx] = b.re
            im[p, idx] = b.im
        if a.k or (p >= 0 and b.k):
            raise AssertionError("fixed-space entries left the Gaussian integers")
    basis = ExactMatrix(re, im, 0)
    # verify fixedness and invert via column norms (1 or 2)
    if m @ basis.conj() != basis:
        raise AssertionError("claimed basis is not gamma-fixed")
    gram = basis.dagger() @ basis
    if not gram.is_diagonal():
        raise AssertionError("fixed basis is not orthogonal")
    inv_re = np.zeros((d, d), dtype=object)
    inv_im = np.zeros((d, d), dtype=object)
    dag = basis.dagger()
    for i in range(d):
        norm = gram[i, i]
        if norm == ExactScalar(1):
            shift = 1
        elif norm == ExactScalar(2):
            shift = 0
        else:
            raise AssertionError(f"unexpected column norm {norm}")
        for j in range(d):
            inv_re[i, j] = int(dag.re[i, j]) << shift
            inv_im[i, j] = int(dag.im[i, j]) << shift
    inv = ExactMatrix(inv_re, inv_im, 1)
    if not (inv @ basis).is_identity():
        raise AssertionError("fixed-basis inverse failed")
    return basis, inv, anchors


class RealEvenModule:
    """One real irreducible module of Cl_r^0 with exact matrix actions."""

    def __init__(self, r: int, label: str, dim: int, act_fn):
        self.r = r
        self.label = label
        self.dim = dim
        self._act = act_fn
        self._bivectors: dict[tuple[int, int], np.ndarray] = {}

    def act(self, mv: Multivector) -> np.ndarray:
        """Fraction matrix of an even, exact multivector on this module."""
        if not mv.is_even():
            raise ValueError("only the even subalgebra acts on the real module")
        return self._act(mv)

    def bivector(self, i: int, j: int) -> np.ndarray:
        key = (i, j)
        if key not in self._bivectors:
            self._bivectors[key] = self.act(Multivector.blade(self.r, [i, j]))
        return self._bivectors[key]


def _fractions_of(m: ExactMatrix) -> np.ndarray:
    if not m.is_real():
        raise AssertionError("expected a real matrix on the real module")
    return m.to_fractions()


@lru_cache(maxsize=None)
def real_even_module(r: int, label: str = "full") -> RealEvenModule:
    """The real irreducible Cl_r^0 module (labels '+'/'-' for r = 0 mod 4)."""
    if r < 2:
        raise ValueError("real modules start at rank 2")
    rem = r % 8
    want_split = r % 4 == 0
    if want_split and label not in ("+", "-"):
        raise ValueError(f"rank {r} has two half modules; pick label '+' or '-'")
    if not want_split and label != "full":
        raise ValueError(f"rank {r} has a unique module; use label 'full'")
    d = table1(r).d_r

    if rem in (1, 7):
        gam = gamma_structure(r).matrix
        basis, inv, _ = _fix_basis(gam)

        def act(mv, _b=basis, _i=inv):
            return _fractions_of(_i @ kappa(mv) @ _b)

        return RealEvenModule(r, label, d, act)

    if rem == 0:
        u = weight_basis_matrix(r)
        u_inv = u.dagger() * ExactScalar(1, 0, r // 2)
        gam_u = u_inv @ gamma_structure(r).matrix @ u.conj()
        basis, inv, anchors = _fix_basis(gam_u)
        plus_idx, _ = delta_indices(r)
        plus_set = set(plus_idx)
        plus_cols = [c for c, a in enumerate(anchors) if a in plus_set]
        minus_cols = [c for c, a in enumerate(anchors) if a not in plus_set]
        if len(plus_cols) != d or len(minus_cols) != d:
            raise AssertionError("half-spin split of the fixed basis is unbalanced")
        cols = plus_cols if label == "+" else minus_cols
        other = minus_cols if label == "+" else plus_cols

        def act(mv, _u=u, _ui=u_inv, _b=basis, _i=inv, _c=cols, _o=other):
            full = _i @ (_ui @ kappa(mv) @ _u) @ _b
            if not full.submatrix(_o, _c).is_zero():
                raise AssertionError("even action mixed the half-spin blocks")
            return _fractions_of(full.submatrix(_c, _c))

        return RealEvenModule(r, label, d, act)

    if rem in (2, 6):
        u = weight_basis_matrix(r)
        u_inv = u.dagger() * ExactScalar(1, 0, r // 2)
        plus_idx, minus_idx = delta_indices(r)

        def act(mv, _u=u, _ui=u_inv, _p=plus_idx, _m=minus_idx):
            ku = _ui @ kappa(mv) @ _u
            if not ku.submatrix(_m, _p).is_zero() or not ku.submatrix(_p, _m).is_zero():
                raise AssertionError("even action mixed the half-spin blocks")
            block = ku.submatrix(_p, _p)
            return block.realify().to_fractions()

        return RealEvenModule(r, label, d, act)

    if rem in (3, 5):

        def act(mv):
            return kappa(mv).realify().to_fractions()

        return RealEvenModule(r, label, d, act)

    # rem == 4: inside the rank r+3 real module
    n = r + 3
    if n > MAX_DIM:
        raise ValueError(f"rank {r} needs Cl_{n} > {MAX_DIM}")
    gam = gamma_structure(n).matrix
    basis, inv, _ = _fix_basis(gam)

    def ambient(mv_n: Multivector) -> np.ndarray:
        return _fractions_of(inv @ kappa(mv_n, n) @ basis)

    half = Fraction(1, 2)
    sign = 1 if label == "+" else -1
    proj_mv = Multivector.scalar(n, half) + Multivector(n, {(1 << r) - 1: sign * half})
    proj = ambient(proj_mv)
    piv = linalg.pivot_columns(proj)
    col_basis = proj[:, piv]
    if len(piv) != d:
        raise AssertionError("projector rank disagrees with the module dimension")
    gram = col_basis.T @ col_basis
    left = linalg.solve_exact(gram, col_basis.T)

    def act(mv, _cb=col_basis, _l=left):
        emb = Multivector(n, dict(mv.terms))
        y = ambient(emb) @ _cb
        out = _l @ y
        if not np.array_equal(_cb @ out, y):
            raise AssertionError("even action did not preserve the half module")
        return out

    return RealEvenModule(r, label, d, act)


def real_module_labels(r: int) -> list[str]:
    return ["+", "-"] if r % 4 == 0 else ["full"]
