"""Maximal-torus elements, spinor weights, and exact loop-frequency counts.

One-parameter loops are direct sums of Kronecker products of primitive
diagonal/rotation factors.  Frequencies are carried in integer quarter-turn
units (the U(1) line factors e^{+-i pi t/2} and the odd-half-rank volume
paths contribute quarter-integers per factor), combined by exact Counter
convolution, and collapsed to the multiset {|n|: multiplicity} over
conjugate eigenvalue pairs at closure.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .blades import Multivector, rotor
from .exact import ExactMatrix, ExactScalar, i_power
from .spinrep import delta_indices, kappa, spinor_dim


# -- torus elements and weights -------------------------------------------


@dataclass(frozen=True)
class TorusElement:
    """Angles theta_1..theta_[r/2] as Fractions in units of pi, in [0, 4)."""

    angles: tuple

    def __init__(self, angles):
        angles = tuple(Fraction(a) for a in angles)
        for a in angles:
            if not 0 <= a < 4:
                raise ValueError("torus angles run in [0, 4pi)")
        object.__setattr__(self, "angles", angles)


@dataclass(frozen=True)
class WeightVector:
    """Doubled spin weights: one odd integer (+-1) per torus coordinate."""

    doubled_entries: tuple
    signs: tuple  # eps_1..eps_k, slot order

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def half_spin_label(self) -> str:
        return "+" if self.minus_count % 2 == 0 else "-"


def spin_weights(r: int) -> list[WeightVector]:
    """The 2^[r/2] weight vectors (+-1/2, ..., +-1/2), doubled, in basis order.

    Coordinate j (paired with theta_j) carries eps_{k+1-j}; with the
    documented index order that is the sign of bit j-1 of the basis index.
    """
    if r < 2:
        raise ValueError("weights need rank >= 2")
    k = r // 2
    out = []
    for b in range(1 << k):
        signs = tuple(-1 if (b >> (k - 1 - j)) & 1 else 1 for j in range(k))
        doubled = tuple(-1 if (b >> (j - 1)) & 1 else 1 for j in range(1, k + 1))
        out.append(WeightVector(doubled, signs))
    return out


def torus_matrix(r: int, t: TorusElement) -> ExactMatrix:
    """Diagonal matrix of a torus element in the u_eps basis.

    Entry b is exp((i/2) sum_j eps_{k+1-j} theta_j) = i^(s_b) with
    s_b = sum_j (+-) theta_j / pi; representable exactly iff every s_b is
    an integer.
    """
    k = r // 2
    if len(t.angles) != k:
        raise ValueError(f"need {k} angles for rank {r}")
    d = spinor_dim(r)
    re = np.zeros((d, d), dtype=object)
    im = np.zeros((d, d), dtype=object)
    for b in range(d):
        s = Fraction(0)
        for j in range(k):  # theta_{j+1} pairs with the sign of bit j
            sign = -1 if (b >> j) & 1 else 1
            s += sign * t.angles[j]
        if s.denominator != 1:
            raise ValueError(f"phase {s}/2 pi on weight {b} is not exactly representable")
        c = i_power(int(s))
        re[b, b] = c.re
        im[b, b] = c.im
    return ExactMatrix(re, im, 0)


def torus_rotor_product(r: int, t: TorusElement) -> Multivector:
    """The same torus element as a product of plane rotors in Cl_r."""
    out = Multivector.scalar(r, 1)
    for j, theta in enumerate(t.angles):
        out = out * rotor(r, 2 * j + 1, 2 * j + 2, theta / 2)
    return out


# -- frequency multisets ---------------------------------------------------


class FrequencyMultiset:
    """Collapsed rotation frequencies of a closed SO(N) loop.

    freqs[n] for n > 0 counts conjugate eigenvalue pairs (e^{+-2 pi i n t});
    freqs[0] counts fixed complex dimensions.  Total complex dimension is
    2*sum_{n>0} mult + mult_0.
    """

    def __init__(self, freqs: Counter):
        self.freqs = Counter({int(n): int(m) for n, m in freqs.items() if m})
        if any(n < 0 for n in self.freqs):
            raise ValueError("collapsed frequencies are nonnegative")

    def total_dim(self) -> int:
        return 2 * sum(m for n, m in self.freqs.items() if n > 0) + self.freqs.get(0, 0)

    def count(self) -> int:
        """Number of copies of the pi_1(SO(N)) generator: sum n * mult."""
        return sum(n * m for n, m in self.freqs.items())

    def __eq__(self, other):
        if not isinstance(other, FrequencyMultiset):
            return NotImplemented
        return self.freqs == other.freqs

    def __repr__(self):
        inner = ", ".join(f"{n}x{m}" for n, m in sorted(self.freqs.items()))
        return f"FrequencyMultiset({inner})"


def winding_parity(f: FrequencyMultiset) -> int:
    """Class in pi_1(SO(N)) = Z_2 for N >= 3: sum of frequencies mod 2."""
    return f.count() % 2


# -- the loop grammar -------------------------------------------------------


def _quarter(f) -> int:
    q = Fraction(f) * 4
    if q.denominator != 1:
        raise ValueError(f"frequency {f} is not a multiple of 1/4 turn")
    return int(q)


@dataclass(frozen=True)
class Rot:
    """Real rotation block: planes at the given turn frequencies, rest fixed."""

    freqs: tuple
    dim: int

    def __init__(self, freqs, dim: int):
        freqs = tuple(Fraction(f) for f in freqs)
        if dim < 2 * len(freqs):
            raise ValueError("rotation block smaller than its planes")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "dim", dim)

    def spectrum(self) -> Counter:
        c: Counter = Counter()
        for f in self.freqs:
            q = _quarter(f)
            c[q] += 1
            c[-q] += 1
        c[0] += self.dim - 2 * len(self.freqs)
        return +c

    def to_json(self):
        return {"type": "rot", "freqs": [str(f) for f in self.freqs], "dim": self.dim}


@dataclass(frozen=True)
class Phase:
    """Complex diagonal block diag(e^{2 pi i f_j t})."""

    freqs: tuple

    def __init__(self, freqs):
        object.__setattr__(self, "freqs", tuple(Fraction(f) for f in freqs))

    @property
    def dim(self) -> int:
        return len(self.freqs)

    def spectrum(self) -> Counter:
        c: Counter = Counter()
        for f in self.freqs:
            c[_quarter(f)] += 1
        return c

    def to_json(self):
        return {"type": "phase", "freqs": [str(f) for f in self.freqs], "dim": self.dim}


@dataclass(frozen=True)
class Ident:
    dim: int

    def spectrum(self) -> Counter:
        return Counter({0: self.dim})

    def to_json(self):
        return {"type": "id", "freqs": [], "dim": self.dim}


Primitive = Rot | Phase | Ident


def _factor_from_json(obj) -> Primitive:
    kind = obj["type"]
    freqs = [Fraction(f) for f in obj.get("freqs", [])]
    if kind == "rot":
        return Rot(freqs, obj["dim"])
    if kind == "phase":
        p = Phase(freqs)
        if "dim" in obj and obj["dim"] != p.dim:
            raise ValueError("phase block dim disagrees with its frequency list")
        return p
    if kind == "id":
        return Ident(obj["dim"])
    raise ValueError(f"unknown primitive type {kind!r}")


@dataclass(frozen=True)
class LoopExpr:
    """Direct sum of Kronecker products of primitive frequency blocks."""

    summands: tuple  # tuple of tuples of Primitive

    def __init__(self, summands):
        object.__setattr__(self, "summands", tuple(tuple(s) for s in summands))

    def dim(self) -> int:
        total = 0
        for tensor in self.summands:
            d = 1
            for f in tensor:
                d *= f.dim
            total += d
        return total

    def to_json(self) -> dict:
        return {"sum": [{"tensor": [f.to_json() for f in t]} for t in self.summands]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "LoopExpr":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([[_factor_from_json(f) for f in t["tensor"]] for t in obj["sum"]])


def _collapse(quarters: Counter) -> FrequencyMultiset:
    """Check loop closure and conjugate symmetry, fold to |n| multiplicities."""
    for q, m in quarters.items():
        if m == 0:
            continue
        if q % 4:
            raise ValueError(
                f"total frequency {Fraction(q, 4)} is not an integer: the path is not a loop in SO(N)"
            )
        if quarters[q] != quarters[-q]:
            raise ValueError("frequency multiset is not conjugation-symmetric: not a real loop")
    out: Counter = Counter()
    for q, m in quarters.items():
        if m and q >= 0:
            out[q // 4] += m
    return FrequencyMultiset(out)


def loop_frequencies(spec: LoopExpr | dict | str) -> FrequencyMultiset:
    """Exact frequency multiset of a loop via combinatorial convolution."""
    if not isinstance(spec, LoopExpr):
        spec = LoopExpr.from_json(spec)
    total: Counter = Counter()
    for tensor in spec.summands:
        cur = Counter({0: 1})
        for f in tensor:
            nxt: Counter = Counter()
            for q1, m1 in cur.items():
                for q2, m2 in f.spectrum().items():
                    nxt[q1 + q2] += m1 * m2
            cur = nxt
        total.update(cur)
    return _collapse(total)


def loop_value_at_end(spec: LoopExpr | dict | str) -> ExactMatrix:
    """Evaluate the loop's block-diagonal value at t = 1 (each phase i^q)."""
    if not isinstance(spec, LoopExpr):
        spec = LoopExpr.from_json(spec)
    blocks = []
    for tensor in spec.summands:
        cur = ExactMatrix.identity(1)
        for f in tensor:
            cur = cur.kron(_factor_end_matrix(f))
        blocks.append(cur)
    out = blocks[0]
    for b in blocks[1:]:
        out = out.direct_sum(b)
    return out


def _factor_end_matrix(f: Primitive) -> ExactMatrix:
    if isinstance(f, Ident):
        return ExactMatrix.identity(f.dim)
    if isinstance(f, Phase):
        d = len(f.freqs)
        re = np.zeros((d, d), dtype=object)
        im = np.zeros((d, d), dtype=object)
        for j, fr in enumerate(f.freqs):
            c = i_power(_quarter(fr))
            re[j, j] = c.re
            im[j, j] = c.im
        return ExactMatrix(re, im, 0)
    # real rotation block at t=1: angle 2 pi f, representable for f in Z/4
    d = f.dim
    re = np.zeros((d, d), dtype=object)
    for j, fr in enumerate(f.freqs):
        c = i_power(_quarter(fr))
        if c.im != 0 and c.re != 0:
            raise AssertionError("unreachable: quarter phases are axis-aligned")
        a, b = 2 * j, 2 * j + 1
        re[a, a] = c.re
        re[b, b] = c.re
        re[a, b] = -c.im
        re[b, a] = c.im
    for j in range(2 * len(f.freqs), d):
        re[j, j] = 1
    return ExactMatrix(re)


# -- independent matrix oracle ---------------------------------------------


def matrix_frequency_oracle(summands: list[list[ExactMatrix]]) -> FrequencyMultiset:
    """Frequencies read from explicit diagonal quarter-turn generator matrices.

    Input: the loop exp(2 pi i t D/4) presented as a direct sum of Kronecker
    products of diagonal integer matrices (entries are the quarter-turn
    frequencies).  The tensor structure is expanded entry by entry, which is
    deliberately independent of the Counter convolution in
    loop_frequencies.
    """
    total: Counter = Counter()
    for tensor in summands:
        diag = np.array([0], dtype=object)
        for m in tensor:
            if not isinstance(m, ExactMatrix):
                raise TypeError("oracle factors must be ExactMatrix diagonals")
            if m.k != 0 or not m.is_real() or not m.is_diagonal():
                raise ValueError("oracle factors must be integer diagonal matrices")
            entries = np.array([m.re[j, j] for j in range(m.rows)], dtype=object)
            diag = np.add.outer(diag, entries).ravel()
        total.update(Counter(int(q) for q in diag))
    return _collapse(total)
