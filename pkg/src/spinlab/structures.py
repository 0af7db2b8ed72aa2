"""Linear even-Clifford Hermitian structures on R^N.

Structures are generated in model form Id_m (x) rho(e_i e_j) on
R^m (x) module (one block per half module when the rank is divisible by
four); the classification is conjugation-invariant, and the model form
keeps every check exact.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .blades import Multivector
from .realform import real_even_module
from .spinrep import table1

DEFAULT_GUARD_N = 4096


def guard_n() -> int:
    env = os.environ.get("SPINLAB_GUARD_N", "")
    return int(env) if env else DEFAULT_GUARD_N


@dataclass(frozen=True)
class CliffordParams:
    """Rank and multiplicities of a linear even-Clifford Hermitian structure.

    Ranks not divisible by four carry a single multiplicity m >= 1; ranks
    divisible by four carry (m1, m2), nonnegative and not both zero.
    """

    r: int
    m: int | None = None
    m1: int | None = None
    m2: int | None = None

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("rank must be at least 2")
        if self.is_split:
            if self.m is not None or self.m1 is None or self.m2 is None:
                raise ValueError(f"rank {self.r} needs multiplicities m1 and m2")
            if self.m1 < 0 or self.m2 < 0 or (self.m1 == 0 and self.m2 == 0):
                raise ValueError("multiplicities must be nonnegative and not both zero")
        else:
            if self.m is None or self.m1 is not None or self.m2 is not None:
                raise ValueError(f"rank {self.r} needs a single multiplicity m")
            if self.m < 1:
                raise ValueError("multiplicity must be positive")

    @property
    def is_split(self) -> bool:
        return self.r % 4 == 0

    @property
    def d_r(self) -> int:
        return table1(self.r).d_r

    @property
    def N(self) -> int:
        if self.is_split:
            return self.d_r * (self.m1 + self.m2)
        return self.d_r * self.m

    def multiplicities(self) -> tuple[int, ...]:
        return (self.m1, self.m2) if self.is_split else (self.m,)

    def describe(self) -> str:
        mult = f"m1={self.m1}, m2={self.m2}" if self.is_split else f"m={self.m}"
        return f"r={self.r}, {mult}, d_r={self.d_r}, N={self.N}"

    def to_json(self) -> dict:
        out = {"r": self.r, "d_r": self.d_r, "N": self.N}
        if self.is_split:
            out["m1"], out["m2"] = self.m1, self.m2
        else:
            out["m"] = self.m
        return out


def make_params(r: int, m: int | None = None, m1: int | None = None, m2: int | None = None) -> CliffordParams:
    if r % 4 == 0:
        if m is not None and m1 is None and m2 is None:
            raise ValueError(f"rank {r} needs m1/m2, not a single multiplicity")
        return CliffordParams(r, None, m1, m2)
    return CliffordParams(r, m, None, None)


# -- model structures -------------------------------------------------------


def _kron_id(m: int, block: np.ndarray) -> np.ndarray:
    if m == 0:
        return np.zeros((0, 0), dtype=object)
    eye = linalg.identity_fractions(m)
    return np.kron(eye, block)


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n1, n2 = a.shape[0], b.shape[0]
    out = np.zeros((n1 + n2, n1 + n2), dtype=object)
    for i in range(n1 + n2):
        for j in range(n1 + n2):
            out[i, j] = Fraction(0)
    out[:n1, :n1] = a
    out[n1:, n1:] = b
    return out


def bivector_pairs(r: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, r + 1), 2))


def make_structure(p: CliffordParams) -> list[np.ndarray]:
    """The endomorphisms J_ij = Phi(e_i e_j), 1 <= i < j <= r, as exact
    Fraction matrices on R^N in the model form."""
    if p.N > guard_n():
        raise ValueError(f"N={p.N} exceeds the size guard {guard_n()} (set SPINLAB_GUARD_N)")
    out = []
    if p.is_split:
        mod_p = real_even_module(p.r, "+")
        mod_m = real_even_module(p.r, "-")
        for i, j in bivector_pairs(p.r):
            out.append(
                _block_diag(_kron_id(p.m1, mod_p.bivector(i, j)), _kron_id(p.m2, mod_m.bivector(i, j)))
            )
    else:
        mod = real_even_module(p.r, "full")
        for i, j in bivector_pairs(p.r):
            out.append(_kron_id(p.m, mod.bivector(i, j)))
    return out


def structure_action(p: CliffordParams, mv: Multivector) -> np.ndarray:
    """Phi(x) for an even exact multivector x, in the same model form."""
    if p.is_split:
        a = _kron_id(p.m1, real_even_module(p.r, "+").act(mv))
        b = _kron_id(p.m2, real_even_module(p.r, "-").act(mv))
        return _block_diag(a, b)
    return _kron_id(p.m, real_even_module(p.r, "full").act(mv))


# -- averaged inner product --------------------------------------------------


def averaged_inner_product(
    j_blocks: list[np.ndarray],
    r: int,
    base_metric: np.ndarray | None = None,
    strict_upper: bool = False,
    mode: str = "exact",
) -> np.ndarray:
    """Average a metric over the images of the even blades of grade >= 2.

    (X, Y) = sum_k sum_{i_1<...<i_2k} <Phi(e_I) X, Phi(e_I) Y>; the indices
    run up to r inclusive by default (strict_upper=True reproduces the
    literal strict bound, dropping every subset containing the top index).
    """
    if len(j_blocks) != r * (r - 1) // 2:
        raise ValueError("need all J_ij for 1 <= i < j <= r")
    n = j_blocks[0].shape[0]
    index = {pair: k for k, pair in enumerate(bivector_pairs(r))}
    eye = linalg.identity_fractions(n) if mode == "exact" else np.eye(n)
    blocks = j_blocks
    if mode == "float":
        blocks = [b.astype(np.float64) for b in j_blocks]
        tol = 1e-9
        for b in blocks:
            if np.abs(b @ b + np.eye(n)).max() > tol:
                raise ValueError("input is not an almost-complex structure family")
    else:
        for b in blocks:
            if not np.array_equal(b @ b, -eye):
                raise ValueError("input is not an almost-complex structure family")
    g = eye if base_metric is None else np.asarray(base_metric)
    top = r if not strict_upper else r - 1
    out = np.zeros_like(g)
    if mode == "exact":
        for i in range(n):
            for j in range(n):
                out[i, j] = Fraction(0)
    found = False
    for k in range(1, top // 2 + 1):
        for subset in itertools.combinations(range(1, top + 1), 2 * k):
            phi = None
            for a in range(0, 2 * k, 2):
                jm = blocks[index[(subset[a], subset[a + 1])]]
                phi = jm if phi is None else phi @ jm
            out = out + phi.T @ g @ phi
            found = True
    if not found:
        raise ValueError("no even blades of positive grade; rank too small for averaging")
    if mode == "exact":
        if not np.array_equal(out.T, out):
            raise ValueError("averaged product is not symmetric; malformed input")
        if n <= 64 and linalg.det(out) == 0:
            raise ValueError("averaged product is singular; malformed input")
    return out


# -- complexification (no trivial summands) ----------------------------------


@dataclass(frozen=True)
class Summand:
    outer_dim: int
    conjugate: bool
    half: str | None  # '+', '-', or None for the full spinor module
    group: str  # SO, U, Sp

    def complex_dim(self, d_r: int, full_spinor_dim: int) -> int:
        inner = full_spinor_dim if self.half is None else full_spinor_dim // 2
        return self.outer_dim * inner

    def to_json(self) -> dict:
        return {
            "outer_dim": self.outer_dim,
            "conjugate": self.conjugate,
            "half_spin": self.half,
            "group": self.group,
        }


@dataclass(frozen=True)
class Decomposition:
    r: int
    summands: tuple

    def to_json(self) -> dict:
        return {"r": self.r, "summands": [s.to_json() for s in self.summands]}

    def total_complex_dim(self) -> int:
        k = self.r // 2
        full = 1 << k
        return sum(s.complex_dim(table1(self.r).d_r, full) for s in self.summands)


def complexify(p: CliffordParams) -> Decomposition:
    """Complexified module as outer (x) half-spin summands, one Theorem row
    per rank class; conjugate outer factors appear only for r = 2, 6 mod 8."""
    rem = p.r % 8
    if rem in (1, 7):
        s = (Summand(p.m, False, None, "SO"),)
    elif rem == 2:
        s = (Summand(p.m, False, "+", "U"), Summand(p.m, True, "-", "U"))
    elif rem == 6:
        s = (Summand(p.m, True, "+", "U"), Summand(p.m, False, "-", "U"))
    elif rem in (3, 5):
        s = (Summand(2 * p.m, False, None, "Sp"),)
    elif rem == 4:
        s = (Summand(2 * p.m2, False, "+", "Sp"), Summand(2 * p.m1, False, "-", "Sp"))
    else:  # rem == 0
        s = (Summand(p.m1, False, "+", "SO"), Summand(p.m2, False, "-", "SO"))
    s = tuple(x for x in s if x.outer_dim > 0)
    dec = Decomposition(p.r, s)
    if dec.total_complex_dim() != p.N:
        raise AssertionError("complexified dimensions do not sum to N")
    return dec


# -- Table 2 normalizer data and commutant verification -----------------------


def _classical_dim(kind: str, m: int) -> int:
    if kind == "so":
        return m * (m - 1) // 2
    if kind == "u":
        return m * m
    if kind == "sp":
        return m * (2 * m + 1)
    raise ValueError(kind)


@dataclass(frozen=True)
class NormalizerData:
    r: int
    centralizer: tuple  # tuples (kind, m)
    centralizer_dim: int
    normalizer_dim: int

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "centralizer": [{"algebra": k, "m": m} for k, m in self.centralizer],
            "centralizer_dim": self.centralizer_dim,
            "normalizer_dim": self.normalizer_dim,
        }


def table2_row(p: CliffordParams) -> NormalizerData:
    rem = p.r % 8
    if rem in (1, 7):
        cent = (("so", p.m),)
    elif rem in (2, 6):
        cent = (("u", p.m),)
    elif rem in (3, 5):
        cent = (("sp", p.m),)
    elif rem == 4:
        cent = (("sp", p.m1), ("sp", p.m2))
    else:
        cent = (("so", p.m1), ("so", p.m2))
    cdim = sum(_classical_dim(k, m) for k, m in cent)
    return NormalizerData(p.r, cent, cdim, cdim + p.r * (p.r - 1) // 2)


@dataclass(frozen=True)
class CentralizerReport:
    params: CliffordParams
    computed_dim: int
    predicted_dim: int
    method: str
    blocks: tuple

    @property
    def match(self) -> bool:
        return self.computed_dim == self.predicted_dim

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "computed_dim": self.computed_dim,
            "predicted_dim": self.predicted_dim,
            "match": self.match,
            "method": self.method,
            "blocks": list(self.blocks),
        }


def _module_commutant(r: int, label: str) -> tuple[int, int, list[np.ndarray]]:
    """(full commutant dim, its skew part dim, basis) on one irreducible."""
    mod = real_even_module(r, label)
    gens = [mod.bivector(i, i + 1) for i in range(1, r)]
    rows = [linalg.commutation_operator(k) for k in gens]
    stacked = np.concatenate(rows, axis=0)
    basis_vecs = linalg.nullspace(stacked)
    d = mod.dim
    basis = [np.array(v, dtype=object).reshape(d, d) for v in basis_vecs]
    if basis:
        sym = np.array([[x for x in (b + b.T).ravel()] for b in basis], dtype=object).T
        skew_dim = len(linalg.nullspace(sym))
    else:
        skew_dim = 0
    return len(basis), skew_dim, basis


def _intertwiner_dim(r: int) -> int:
    """dim Hom_{Cl^0}(module+, module-) for split ranks (expected zero)."""
    mp = real_even_module(r, "+")
    mm = real_even_module(r, "-")
    d = mp.dim
    eye = linalg.identity_fractions(d)
    rows = []
    for i in range(1, r):
        kp = mp.bivector(i, i + 1)
        km = mm.bivector(i, i + 1)
        # X kp = km X  row-major: kron(I, kp^T) - kron(km, I)
        rows.append(np.kron(eye, kp.T) - np.kron(km, eye))
    return len(linalg.nullspace(np.concatenate(rows, axis=0)))


def verify_centralizer(p: CliffordParams, method: str = "structured") -> CentralizerReport:
    """Exact dimension of the skew-symmetric commutant of {J_ij} vs Table 2.

    structured: solve the commutant on one irreducible block and assemble
    over the Id_m tensor structure (identical linear system, factored).
    direct: dense nullspace on the full skew space (small N only).
    """
    predicted = table2_row(p).centralizer_dim
    if method == "direct":
        computed = _direct_skew_commutant_dim(p)
        return CentralizerReport(p, computed, predicted, "direct", ())
    if p.N > 512:
        raise ValueError("exact commutant solve guarded at N <= 512")
    blocks = []
    total = 0
    if p.is_split:
        pieces = (("+", p.m1), ("-", p.m2))
    else:
        pieces = (("full", p.m),)
    for label, m in pieces:
        if m == 0:
            continue
        c, c_skew, _ = _module_commutant(p.r, label)
        contrib = c * m * (m - 1) // 2 + c_skew * m
        total += contrib
        blocks.append({"label": label, "m": m, "schur_dim": c, "schur_skew_dim": c_skew, "dim": contrib})
    if p.is_split and p.m1 > 0 and p.m2 > 0:
        h = _intertwiner_dim(p.r)
        total += h * p.m1 * p.m2
        blocks.append({"label": "cross", "hom_dim": h, "dim": h * p.m1 * p.m2})
    return CentralizerReport(p, total, predicted, "structured", tuple(blocks))


def _direct_skew_commutant_dim(p: CliffordParams) -> int:
    if p.N > 64:
        raise ValueError("direct dense solve guarded at N <= 64")
    js = make_structure(p)
    gens = [js[k] for k, (i, j) in enumerate(bivector_pairs(p.r)) if j == i + 1]
    n = p.N
    skew_basis = []
    for a in range(n):
        for b in range(a + 1, n):
            m = np.zeros((n, n), dtype=object)
            m[a, b] = Fraction(1)
            m[b, a] = Fraction(-1)
            skew_basis.append(m)
    cols = []
    for x in skew_basis:
        col = []
        for k in gens:
            col.extend((x @ k - k @ x).ravel())
        cols.append(col)
    constraint = np.array(cols, dtype=object).T
    return len(linalg.nullspace(constraint))
