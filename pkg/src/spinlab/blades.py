"""Exact Clifford algebra Cl_n over Q with blade-bitmask arithmetic.

Blades are n-bit masks (bit i set means the basis vector e_{i+1} is
present); generators square to -1 and anticommute.  Multivectors are
sparse mask -> coefficient maps with Fraction coefficients in exact mode
and floats in demonstration mode.  The product sign is computed by a
popcount-prefix transposition scan, branch-free and exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

MAX_DIM = 16


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"algebra dimension must be in 1..{MAX_DIM}, got {n}")


def grade(mask: int) -> int:
    return mask.bit_count()


def blade_mul(a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades: (result mask, sign in {+1, -1})."""
    s = 0
    t = a >> 1
    while t:
        s += (t & b).bit_count()
        t >>= 1
    s += (a & b).bit_count()  # each shared generator contributes e_i^2 = -1
    return a ^ b, -1 if s & 1 else 1


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


class Multivector:
    """Element of Cl_n as a sparse blade -> coefficient map."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        _check_dim(n)
        self.n = n
        clean = {}
        for mask, c in (terms or {}).items():
            if mask < 0 or mask >= 1 << n:
                raise ValueError(f"blade {mask:#x} outside Cl_{n}")
            if c:
                clean[mask] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def scalar(cls, n: int, c) -> "Multivector":
        return cls(n, {0: _as_coeff(c)})

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], c=1) -> "Multivector":
        mask = 0
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"index {i} outside 1..{n}")
            if mask >> (i - 1) & 1:
                raise ValueError("repeated index in blade")
            mask |= 1 << (i - 1)
        return cls(n, {mask: _as_coeff(c)})

    @classmethod
    def basis_vector(cls, n: int, i: int) -> "Multivector":
        return cls.blade(n, [i])

    @classmethod
    def zero(cls, n: int) -> "Multivector":
        return cls(n, {})

    # -- structure ------------------------------------------------------

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return all(grade(m) % 2 == 0 for m in self.terms)

    def is_odd(self) -> bool:
        return all(grade(m) % 2 == 1 for m in self.terms)

    def grades(self) -> set[int]:
        return {grade(m) for m in self.terms}

    def grade_part(self, k: int) -> "Multivector":
        return Multivector(self.n, {m: c for m, c in self.terms.items() if grade(m) == k})

    def scalar_part(self):
        return self.terms.get(0, _as_coeff(0))

    def coefficient(self, mask: int):
        return self.terms.get(mask, _as_coeff(0))

    def vector_coefficients(self) -> list:
        return [self.terms.get(1 << i, _as_coeff(0)) for i in range(self.n)]

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "Multivector") -> "Multivector":
        self._same_algebra(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Multivector(self.n, terms)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return clifford_product(self, other)
        return Multivector(self.n, {m: c * _as_coeff(other) for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int) -> "Multivector":
        if e < 0:
            raise ValueError("negative powers not supported; use reverse for rotors")
        out = Multivector.scalar(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def reverse(self) -> "Multivector":
        out = {}
        for m, c in self.terms.items():
            g = grade(m)
            out[m] = -c if (g * (g - 1) // 2) & 1 else c
        return Multivector(self.n, out)

    def _same_algebra(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: Cl_{self.n} vs Cl_{other.n}")

    def is_unit_rotor(self) -> bool:
        return self.is_even() and (self * self.reverse()) == Multivector.scalar(self.n, 1)

    # -- identity -----------------------------------------------------------

    def canonical(self) -> tuple:
        return (self.n, tuple(sorted((m, Fraction(c)) for m, c in self.terms.items())))

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda t: (grade(t), t)):
            c = self.terms[m]
            name = blade_name(m)
            if name == "1":
                parts.append(f"{c}")
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def clifford_product(a: Multivector, b: Multivector) -> Multivector:
    """Bilinear extension of the blade product; e_i e_j + e_j e_i = -2 delta_ij."""
    a._same_algebra(b)
    terms: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m, s = blade_mul(ma, mb)
            c = ca * cb
            terms[m] = terms.get(m, 0) + (c if s > 0 else -c)
    return Multivector(a.n, terms)


def reverse(a: Multivector) -> Multivector:
    """Grade-k blades scaled by (-1)^{k(k-1)/2}."""
    return a.reverse()


def volume_element(n: int) -> Multivector:
    """e_1 e_2 ... e_n."""
    _check_dim(n)
    return Multivector(n, {(1 << n) - 1: Fraction(1)})


def rotor(n: int, i: int, j: int, half_angle: Fraction | float, exact: bool = True) -> Multivector:
    """cos(half_angle) + sin(half_angle) e_i e_j.

    In exact mode ``half_angle`` is a Fraction in units of pi and must be a
    multiple of 1/2 (cos and sin are then 0 or +-1).  In float mode it is
    an angle in radians and coefficients are floats.
    """
    if i == j:
        raise ValueError("rotor plane needs two distinct indices")
    if not exact:
        import math

        c, s = math.cos(half_angle), math.sin(half_angle)
        return Multivector(n, {0: c}) + Multivector.blade(n, sorted((i, j)), s if i < j else -s)
    q = Fraction(half_angle)
    if (2 * q).denominator != 1:
        raise ValueError(f"half-angle {q}*pi is not representable exactly (need a multiple of pi/2)")
    half_turns = 2 * q  # in units of pi/2
    c, s = _cos_sin_quarter(int(half_turns))
    out = {}
    if c:
        out[0] = Fraction(c)
    if s:
        lo, hi = min(i, j), max(i, j)
        mask = (1 << (lo - 1)) | (1 << (hi - 1))
        out[mask] = Fraction(s if i < j else -s)
    return Multivector(n, out)


def _cos_sin_quarter(q: int) -> tuple[int, int]:
    """(cos, sin) of q * pi/2 as exact integers."""
    return [(1, 0), (0, 1), (-1, 0), (0, -1)][q % 4]


def lambda_n(g: Multivector, check: bool = True) -> np.ndarray:
    """Matrix of y -> g y g^{-1} on the vector grade (the covering map).

    Exact coefficients give a Fraction object array, floats give float64.
    For unit rotors the inverse is the reverse.
    """
    n = g.n
    if check:
        if not g.is_even():
            raise ValueError("lambda_n needs an even (Spin) element")
        gg = g * g.reverse()
        if gg.terms.keys() != {0} or gg.terms[0] != 1:
            if g.is_exact():
                raise ValueError("lambda_n needs a unit element (g * reverse(g) = 1)")
            if abs(gg.scalar_part() - 1.0) > 1e-12 or len(gg.terms) > 1:
                raise ValueError("lambda_n needs a unit element (g * reverse(g) = 1)")
    rev = g.reverse()
    exact = g.is_exact()
    out = np.zeros((n, n), dtype=object if exact else np.float64)
    for j in range(n):
        img = g * Multivector.basis_vector(n, j + 1) * rev
        if max(img.grades(), default=1) != 1 and exact:
            raise ValueError("conjugation did not preserve the vector grade")
        col = img.vector_coefficients()
        for i in range(n):
            out[i, j] = col[i]
    return out


# -- finite closure ------------------------------------------------------

CLOSURE_BOUND = 512


def closure(generators: list, mul: Callable, bound: int = CLOSURE_BOUND) -> list:
    """Close a list of hashable elements under an associative product.

    Raises RuntimeError past `bound` elements, which in practice signals an
    infinite (Z-type) generator.
    """
    elements = []
    seen = {}
    for g in generators:
        if g not in seen:
            seen[g] = len(elements)
            elements.append(g)
    frontier = list(elements)
    while frontier:
        new = []
        for a in elements:
            for b in frontier:
                for prod in (mul(a, b), mul(b, a)):
                    if prod not in seen:
                        if len(elements) >= bound:
                            raise RuntimeError(
                                f"closure exceeded {bound} elements; an infinite generator was passed"
                            )
                        seen[prod] = len(elements)
                        elements.append(prod)
                        new.append(prod)
        frontier = new
    return elements


class GroupTable:
    """Finite multiplication table with orders and abelian invariants."""

    def __init__(self, elements: list, mul: Callable):
        self.elements = list(elements)
        index = {g: i for i, g in enumerate(self.elements)}
        size = len(self.elements)
        self.table = np.zeros((size, size), dtype=np.int64)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                p = mul(a, b)
                if p not in index:
                    raise ValueError("element set is not closed under the product")
                self.table[i, j] = index[p]
        self.identity_index = self._find_identity()
        self.orders = [self._order(i) for i in range(size)]

    def __len__(self):
        return len(self.elements)

    def _find_identity(self) -> int:
        size = len(self.elements)
        for e in range(size):
            if all(self.table[e, j] == j and self.table[j, e] == j for j in range(size)):
                return e
        raise ValueError("no identity element in closure")

    def _order(self, i: int) -> int:
        e = self.identity_index
        cur, k = i, 1
        while cur != e:
            cur = self.table[cur, i]
            k += 1
            if k > len(self.elements):
                raise ValueError("element has no finite order; table is not a group")
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def inverse(self, i: int) -> int:
        e = self.identity_index
        for j in range(len(self.elements)):
            if self.table[i, j] == e:
                return j
        raise ValueError("element has no inverse; table is not a group")

    def power(self, i: int, e: int) -> int:
        cur = self.identity_index
        if e < 0:
            i, e = self.inverse(i), -e
        for _ in range(e):
            cur = self.table[cur, i]
        return int(cur)

    def abelian_invariants(self) -> list[int]:
        """Invariant factors d_1 | d_2 | ... (empty list for the trivial group).

        Counting elements of order dividing p^i determines the multiset of
        cyclic p-power factors; factors are then merged across primes.
        """
        if not self.is_abelian():
            raise ValueError("abelian invariants of a nonabelian table")
        size = len(self.elements)
        if size == 1:
            return []
        prime_powers: dict[int, list[int]] = {}
        for p in _prime_factors(size):
            # a[i] = log_p #{g : g^(p^i) = 1}; the p-Sylow subgroup has
            # (a[j] - a[j-1]) cyclic factors of order >= p^j
            a = []
            i = 0
            while True:
                cnt = sum(1 for g in range(size) if self.power(g, p**i) == self.identity_index)
                e = 0
                while p**e < cnt:
                    e += 1
                a.append(e)
                if i > 0 and a[i] == a[i - 1]:
                    break
                i += 1
            factors = []
            for j in range(1, len(a)):
                at_least_j = a[j] - a[j - 1]
                at_least_j1 = (a[j + 1] - a[j]) if j + 1 < len(a) else 0
                factors.extend([p**j] * (at_least_j - at_least_j1))
            prime_powers[p] = sorted(factors, reverse=True)
        width = max(len(v) for v in prime_powers.values())
        invariants = []
        for pos in range(width):
            d = 1
            for p, fs in prime_powers.items():
                if pos < len(fs):
                    d *= fs[pos]
            invariants.append(d)
        return sorted(invariants)


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def group_closure(gens: list[Multivector], bound: int = CLOSURE_BOUND) -> GroupTable:
    """Close exact multivector generators under the Clifford product."""
    for g in gens:
        if not g.is_exact():
            raise ValueError("group_closure needs exact coefficients")
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    one = Multivector.scalar(n, 1)
    elements = closure([one] + list(gens), clifford_product, bound=bound)
    return GroupTable(elements, clifford_product)
