"""Structure groups as explicit quotients, their kernels, and fundamental groups.

ker(rho) is found by exact image tests over the candidate family
(scalar on each outer factor) x Z(Spin(r)); the centrality argument makes
that family exhaustive whenever Spin(r) acts faithfully, and the rank-4
one-sided collapse carries an explicit continuous Spin(3) factor that is
certified at the Lie-algebra level.  pi_1 is computed, not looked up: the
kernel of the universal covering is generated by deck transformations and
lifts of ker(rho), its free rank is read off the line coordinates, and the
torsion part is closed with exact blade arithmetic; the Theorem lookup is
then compared against the computed answer and any mismatch is surfaced as
a discrepancy, never resolved silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .blades import GroupTable, Multivector, closure, volume_element
from .exact import ExactScalar, i_power
from .spinrep import vol_half_spin_scalars
from .structures import CliffordParams, complexify, table2_row

# -- product-group elements -------------------------------------------------


@dataclass(frozen=True)
class ScalarFactor:
    """i^power * Id on a classical factor (SO/Sp allow only +-1)."""

    group: str
    m: int
    power: int  # 0..3

    def __post_init__(self):
        object.__setattr__(self, "power", self.power % 4)
        if self.group in ("SO", "Sp") and self.power % 2:
            raise ValueError(f"+-i scalars do not lie in {self.group}({self.m})")

    def mul(self, other: "ScalarFactor") -> "ScalarFactor":
        return ScalarFactor(self.group, self.m, self.power + other.power)

    def is_identity(self) -> bool:
        return self.power == 0

    def describe(self) -> str:
        sym = {0: "Id", 1: "i*Id", 2: "-Id", 3: "-i*Id"}[self.power]
        return sym


@dataclass(frozen=True)
class SpinFactor:
    """An element of Spin(m) inside Cl_m, exact."""

    m: int
    element: Multivector

    def mul(self, other: "SpinFactor") -> "SpinFactor":
        return SpinFactor(self.m, self.element * other.element)

    def is_identity(self) -> bool:
        return self.element == Multivector.scalar(self.m, 1)

    def describe(self) -> str:
        mv = self.element
        one = Multivector.scalar(self.m, 1)
        vol = volume_element(self.m)
        if mv == one:
            return "1"
        if mv == -one:
            return "-1"
        if mv == vol:
            return f"vol_{self.m}"
        if mv == -vol:
            return f"-vol_{self.m}"
        return repr(mv)


@dataclass(frozen=True)
class LineFactor:
    """A real line coordinate covering SO(2) or U(1), in units of pi."""

    value: Fraction

    def mul(self, other: "LineFactor") -> "LineFactor":
        return LineFactor(self.value + other.value)

    def is_identity(self) -> bool:
        return self.value == 0

    def describe(self) -> str:
        if self.value == 0:
            return "0"
        return f"{self.value}*pi"


@dataclass(frozen=True)
class PhaseFactor:
    """Scalar e^{2 pi i q} * Id_m inside SU(m), q taken mod 1."""

    m: int
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q) % 1)

    def mul(self, other: "PhaseFactor") -> "PhaseFactor":
        return PhaseFactor(self.m, self.q + other.q)

    def is_identity(self) -> bool:
        return self.q == 0

    def describe(self) -> str:
        return "Id" if self.q == 0 else f"e^(2pi*i*{self.q})*Id"


@dataclass(frozen=True)
class UnitFactor:
    """The trivial factor standing in for SO(m), m <= 1."""

    m: int

    def mul(self, other: "UnitFactor") -> "UnitFactor":
        return self

    def is_identity(self) -> bool:
        return True

    def describe(self) -> str:
        return f"Id_{self.m}"


@dataclass(frozen=True)
class ProductElement:
    factors: tuple

    def mul(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(tuple(a.mul(b) for a, b in zip(self.factors, other.factors)))

    def is_identity(self) -> bool:
        return all(f.is_identity() for f in self.factors)

    def line_coordinates(self) -> list[Fraction]:
        return [f.value for f in self.factors if isinstance(f, LineFactor)]

    def finite_part(self) -> tuple:
        return tuple(f for f in self.factors if not isinstance(f, LineFactor))

    def power(self, e: int) -> "ProductElement":
        out = identity_like(self)
        base = self
        if e < 0:
            raise ValueError("negative powers unsupported here")
        for _ in range(e):
            out = out.mul(base)
        return out

    def describe(self) -> str:
        return "(" + ", ".join(f.describe() for f in self.factors) + ")"


def identity_like(x: ProductElement) -> ProductElement:
    out = []
    for f in x.factors:
        if isinstance(f, ScalarFactor):
            out.append(ScalarFactor(f.group, f.m, 0))
        elif isinstance(f, SpinFactor):
            out.append(SpinFactor(f.m, Multivector.scalar(f.m, 1)))
        elif isinstance(f, LineFactor):
            out.append(LineFactor(Fraction(0)))
        elif isinstance(f, PhaseFactor):
            out.append(PhaseFactor(f.m, Fraction(0)))
        else:
            out.append(f)
    return ProductElement(tuple(out))


def _mul(a: ProductElement, b: ProductElement) -> ProductElement:
    return a.mul(b)


# -- centers -----------------------------------------------------------------


def center_of_spin(r: int) -> list[Multivector]:
    """Z(Spin(r)): {+-1} for odd rank, {+-1, +-vol} for even rank."""
    if r < 3:
        raise ValueError("centers computed for r >= 3")
    one = Multivector.scalar(r, 1)
    out = [one, -one]
    if r % 2 == 0:
        vol = volume_element(r)
        out += [vol, -vol]
    return out


def center_invariants(r: int) -> list[int]:
    table = GroupTable(closure(center_of_spin(r), lambda a, b: a * b), lambda a, b: a * b)
    return table.abelian_invariants()


# -- kernel of rho ------------------------------------------------------------


@dataclass(frozen=True)
class KernelPresentation:
    generators: tuple
    elements: tuple
    order: int
    invariants: tuple
    continuous: str | None = None
    verified: bool = True

    def describe(self) -> str:
        gens = ", ".join(g.describe() for g in self.generators) or "trivial"
        cont = f" x {self.continuous}" if self.continuous else ""
        return f"<{gens}>{cont}"

    def to_json(self) -> dict:
        return {
            "generators": [g.describe() for g in self.generators],
            "order": self.order,
            "invariants": list(self.invariants),
            "continuous": self.continuous,
            "verified": self.verified,
        }


def _center_scalar(r: int, sign: int, is_vol: bool, half: str | None) -> ExactScalar:
    """Exact scalar by which sign * (vol if is_vol else 1) acts on a block."""
    s = ExactScalar(sign)
    if not is_vol:
        return s
    plus, minus = vol_half_spin_scalars(r)
    if half == "+":
        return s * plus
    if half == "-":
        return s * minus
    raise ValueError("vol acts as a scalar only on half-spin blocks")


_CENTER_TAGS = ((1, False), (-1, False), (1, True), (-1, True))


def _scalar_candidates(group: str, m: int) -> list[int]:
    if m == 0:
        return [0]
    if group == "SO":
        return [0, 2] if m % 2 == 0 else [0]
    if group == "U":
        return [0, 1, 2, 3]
    if group == "Sp":
        return [0, 2]
    raise ValueError(group)


def kernel_of_rho(p: CliffordParams) -> KernelPresentation:
    """Elements of (scalars) x Z(Spin(r)) whose image is exactly Id_N."""
    if p.r < 3:
        raise ValueError("classification needs r >= 3")
    dec = complexify(p)
    outer = _outer_slots(p)
    kernel_elements = []
    for sign, is_vol in _CENTER_TAGS:
        if is_vol and p.r % 2:
            continue
        # required scalar on each summand determines candidate outer scalars
        choices: list[list[int]] = []
        ok = True
        for slot_idx, (group, m) in enumerate(outer):
            # summands driven by this outer slot
            opts = []
            for pw in _scalar_candidates(group, m):
                if _slot_image_is_identity(p, dec, slot_idx, pw, sign, is_vol):
                    opts.append(pw)
            if not opts:
                ok = False
                break
            choices.append(opts)
        if not ok:
            continue
        from itertools import product as iproduct

        for combo in iproduct(*choices):
            kernel_elements.append(_kernel_element(p, outer, combo, sign, is_vol))
    table = GroupTable(closure(kernel_elements, _mul), _mul)
    gens = _reduce_generators(kernel_elements, table)
    continuous = _continuous_kernel(p)
    return KernelPresentation(
        generators=tuple(gens),
        elements=tuple(table.elements),
        order=len(table),
        invariants=tuple(table.abelian_invariants()),
        continuous=continuous,
    )


def _outer_slots(p: CliffordParams) -> list[tuple[str, int]]:
    rem = p.r % 8
    if rem in (1, 7):
        return [("SO", p.m)]
    if rem in (2, 6):
        return [("U", p.m)]
    if rem in (3, 5):
        return [("Sp", p.m)]
    if rem == 4:
        return [("Sp", p.m1), ("Sp", p.m2)]
    return [("SO", p.m1), ("SO", p.m2)]


def _summand_slot(p: CliffordParams, summand) -> int:
    """Index of the outer slot acting on a complexification summand."""
    if len(_outer_slots(p)) == 1:
        return 0
    if p.r % 8 == 4:
        # crossing: m2 pairs with Delta^+, m1 with Delta^-
        return 1 if summand.half == "+" else 0
    return 0 if summand.half == "+" else 1


def _slot_image_is_identity(p, dec, slot_idx, power, sign, is_vol) -> bool:
    for s in dec.summands:
        if _summand_slot(p, s) != slot_idx:
            continue
        scalar = i_power(-power if s.conjugate else power)
        if s.half is None:
            if is_vol:
                return False  # vol is odd in odd rank; never central here
            inner = ExactScalar(sign)
        else:
            inner = _center_scalar(p.r, sign, is_vol, s.half)
        if scalar * inner != ExactScalar(1):
            return False
    return True


def _kernel_element(p, outer, powers, sign, is_vol) -> ProductElement:
    factors = [ScalarFactor(g, m, pw) for (g, m), pw in zip(outer, powers)]
    h = Multivector.scalar(p.r, sign)
    if is_vol:
        h = h * volume_element(p.r)
    factors.append(SpinFactor(p.r, h))
    return ProductElement(tuple(factors))


def _reduce_generators(elements, table: GroupTable) -> list[ProductElement]:
    """Greedy minimal generating subset of a small abelian group."""
    gens: list[ProductElement] = []
    have = {table.elements[table.identity_index]}
    for e in sorted(elements, key=lambda x: -table.orders[table.elements.index(x)]):
        if e not in have:
            gens.append(e)
            have = set(closure(list(have) + [e], _mul))
        if len(have) == len(table):
            break
    return gens


def _continuous_kernel(p: CliffordParams) -> str | None:
    """The collapsed Spin(3) factor for rank 4 with one vanishing side."""
    if p.r != 4 or (p.m1 > 0 and p.m2 > 0):
        return None
    from .spinrep import delta_indices, kappa, to_weight_basis

    # the m1 side acts through Delta^-, the m2 side through Delta^+ (crossing);
    # vol_4 = -1 on Delta^+ and +1 on Delta^-, so (1 + s*vol)/2 kills the
    # active block for s = +1 on Delta^+ and s = -1 on Delta^-
    half = "-" if p.m2 == 0 else "+"
    killed_sign = -1 if half == "-" else 1
    plus_idx, minus_idx = delta_indices(4)
    idx = plus_idx if half == "+" else minus_idx
    for (i, j) in ((1, 2), (1, 3), (2, 3)):
        x = Multivector.scalar(4, Fraction(1, 2)) * (
            Multivector.blade(4, [i, j]) + killed_sign * volume_element(4) * Multivector.blade(4, [i, j])
        )
        img = to_weight_basis(kappa(x), 4).submatrix(idx, idx)
        if not img.is_zero():
            raise AssertionError("rank-4 collapsed factor does not act trivially")
    return "Spin(3)"


# -- Theorem lookups -----------------------------------------------------------


def kernel_lookup(p: CliffordParams) -> dict:
    """Expected ker(rho) data per the case analysis (order, invariants)."""
    rem = p.r % 8
    if rem in (1, 7):
        inv = (2,) if p.m % 2 == 0 else ()
    elif rem in (2, 6):
        inv = (4,)
    elif rem in (3, 5):
        inv = (2,)
    elif rem == 0:
        if p.m1 > 0 and p.m2 > 0:
            ones = (p.m1 % 2, p.m2 % 2)
            inv = () if ones == (1, 1) else ((2,) if 1 in ones else (2, 2))
        else:
            m = max(p.m1, p.m2)
            inv = (2,) if m % 2 else (2, 2)
    else:  # rem == 4
        inv = (2, 2)
    order = 1
    for d in inv:
        order *= d
    continuous = "Spin(3)" if (p.r == 4 and (p.m1 == 0 or p.m2 == 0)) else None
    return {"invariants": inv, "order": order, "continuous": continuous}


_MOD8_CATEGORY = {"0": 0, "1": 1, "2": 2, "odd": 3, "2mod4": 4, "0mod4": 5}


def _category(m: int) -> str:
    if m <= 2:
        return str(m)
    if m % 2:
        return "odd"
    return "2mod4" if m % 4 == 2 else "0mod4"


# pi_1 grid for r = 0 (mod 8); rows m1 category, columns m2 category;
# entries as invariant lists with 0 meaning a Z summand
_PI1_R0_GRID = {
    ("0", "1"): (2,),
    ("0", "2"): (0, 2),
    ("0", "odd"): (2, 2),
    ("0", "2mod4"): (2, 4),
    ("0", "0mod4"): (2, 2, 2),
    ("1", "1"): (),
    ("1", "2"): (0,),
    ("1", "odd"): (2,),
    ("1", "2mod4"): (4,),
    ("1", "0mod4"): (2, 2),
    ("2", "2"): (0, 0),
    ("2", "odd"): (0, 2),
    ("2", "2mod4"): (0, 4),
    ("2", "0mod4"): (0, 2, 2),
    ("odd", "odd"): (2, 2),
    ("odd", "2mod4"): (2, 4),
    ("odd", "0mod4"): (2, 2, 2),
    ("2mod4", "2mod4"): (4, 4),
    ("2mod4", "0mod4"): (2, 2, 4),
    ("0mod4", "0mod4"): (2, 2, 2, 2),
}


def pi1_lookup(p: CliffordParams) -> tuple:
    """Theorem table entry: invariant list, 0 denoting a Z summand."""
    rem = p.r % 8
    if rem in (1, 7):
        m = p.m
        if m == 1:
            return ()
        if m == 2:
            return (0,)
        if m % 2:
            return (2,)
        return (2, 2) if m % 4 == 0 else (4,)
    if rem in (3, 5):
        return (2,)
    if rem in (2, 6):
        g = [1, 2, 4][(p.m % 4 == 0) + (p.m % 2 == 0)]
        return (0,) if g == 1 else (0, g)
    if rem == 4:
        if p.m1 > 0 and p.m2 > 0:
            return (2, 2)
        return (2,) if p.r == 4 else (2, 2)
    # rem == 0
    c1, c2 = _category(p.m1), _category(p.m2)
    key = (c1, c2) if (c1, c2) in _PI1_R0_GRID else (c2, c1)
    ordered = _PI1_R0_GRID[key]
    return tuple(sorted(ordered, key=lambda d: (d != 0, d)))


# -- structure group -----------------------------------------------------------


@dataclass(frozen=True)
class QuotientDescription:
    factor_groups: tuple
    kernel: KernelPresentation
    iso: str

    def to_json(self) -> dict:
        return {
            "factors": [dict(f) for f in self.factor_groups],
            "kernel": self.kernel.to_json(),
            "iso": self.iso,
        }


def structure_group(p: CliffordParams) -> QuotientDescription:
    kern = kernel_of_rho(p)
    rem = p.r % 8
    factors: list[dict] = []
    spin_note = None
    if rem in (1, 7):
        factors.append({"kind": "SO", "m": p.m})
    elif rem in (2, 6):
        factors.append({"kind": "U", "m": p.m})
    elif rem in (3, 5):
        factors.append({"kind": "Sp", "m": p.m})
    elif rem == 4:
        if p.m1 > 0 and p.m2 > 0:
            factors += [{"kind": "Sp", "m": p.m1}, {"kind": "Sp", "m": p.m2}]
        else:
            factors.append({"kind": "Sp", "m": max(p.m1, p.m2)})
            if p.r == 4:
                spin_note = "collapsed"
            else:
                spin_note = "+" if p.m1 == 0 else "-"
    else:
        if p.m1 > 0 and p.m2 > 0:
            factors += [{"kind": "SO", "m": p.m1}, {"kind": "SO", "m": p.m2}]
        else:
            factors.append({"kind": "SO", "m": max(p.m1, p.m2)})
            spin_note = "+" if p.m2 == 0 else "-"
    if p.r == 4 and spin_note == "collapsed":
        factors.append({"kind": "Spin", "m": 3, "note": "Spin(4) side collapsed"})
    else:
        entry = {"kind": "Spin", "m": p.r}
        if spin_note in ("+", "-"):
            entry["note"] = f"image Spin({p.r})^{spin_note}, kernel {{1, {'-' if spin_note == '-' else ''}vol}}"
        factors.append(entry)
    iso = _iso_string(factors, kern, p)
    return QuotientDescription(tuple(factors), kern, iso)


def _iso_string(factors, kern: KernelPresentation, p: CliffordParams) -> str:
    names = []
    for f in factors:
        if f["kind"] == "Spin":
            names.append(f"Spin({f['m']})")
        else:
            names.append(f"{f['kind']}({f['m']})")
    top = " x ".join(names)
    inv = kern.invariants
    if p.r == 4 and kern.continuous:
        # the Spin(3) factor is absorbed by the collapse; effective kernel Z2
        inv = (2,)
    if not inv:
        return top
    denom = " + ".join(f"Z{d}" for d in inv)
    return f"({top})/({denom})" if len(inv) > 1 else f"({top})/{denom}"


# -- fundamental group ---------------------------------------------------------


@dataclass(frozen=True)
class Pi1Result:
    invariants: tuple  # 0 denotes a Z summand; finite factors ascending
    generators: tuple  # ProductElements in the covering product group
    computed: tuple
    lookup: tuple
    discrepancy: str | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariants if d)

    def describe(self) -> str:
        if not self.invariants:
            return "{1}"
        parts = ["Z" if d == 0 else f"Z{d}" for d in self.invariants]
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "invariants": list(self.invariants),
            "pretty": self.describe(),
            "generators": [g.describe() for g in self.generators],
            "lookup": list(self.lookup),
            "discrepancy": self.discrepancy,
            "notes": list(self.notes),
        }


def _cover_slots(p: CliffordParams) -> list[tuple[str, int]]:
    """(kind, m) per covering-group slot for the outer factors."""
    out = []
    for group, m in _outer_slots(p):
        if group == "SO":
            if m >= 3:
                out.append(("spin", m))
            elif m == 2:
                out.append(("line", m))
            else:
                out.append(("unit", m))
        elif group == "U":
            out.append(("line_phase", m))
        else:  # Sp
            out.append(("sp", m))
    return out


def _lift_scalar(kind: str, m: int, power: int, group: str):
    """Lift i^power * Id in the base outer factor to the covering slot."""
    if kind == "spin":
        if power == 0:
            return [SpinFactor(m, Multivector.scalar(m, 1))]
        return [SpinFactor(m, volume_element(m))]  # lambda(vol_m) = -Id, m even
    if kind == "line":
        return [LineFactor(Fraction(power, 2))]
    if kind == "line_phase":
        return [LineFactor(Fraction(power, 2)), PhaseFactor(m, Fraction(0))]
    if kind == "sp":
        return [ScalarFactor("Sp", m, power)]
    if kind == "unit":
        if power % 4:
            raise AssertionError("nontrivial scalar on a trivial factor")
        return [UnitFactor(m)]
    raise ValueError(kind)


def _deck_generators(p: CliffordParams) -> list[ProductElement]:
    slots = _cover_slots(p)
    decks = []
    for idx, (kind, m) in enumerate(slots):
        if kind == "spin":
            decks.append(_cover_element(p, {idx: [SpinFactor(m, Multivector.scalar(m, -1))]}))
        elif kind == "line":
            decks.append(_cover_element(p, {idx: [LineFactor(Fraction(2))]}))
        elif kind == "line_phase":
            decks.append(
                _cover_element(p, {idx: [LineFactor(Fraction(2, m)), PhaseFactor(m, Fraction(-1, m))]})
            )
    return decks


def _cover_element(p: CliffordParams, slot_entries: dict, spin_r: Multivector | None = None) -> ProductElement:
    slots = _cover_slots(p)
    factors: list = []
    for idx, (kind, m) in enumerate(slots):
        if idx in slot_entries:
            factors.extend(slot_entries[idx])
        else:
            if kind == "spin":
                factors.append(SpinFactor(m, Multivector.scalar(m, 1)))
            elif kind == "line":
                factors.append(LineFactor(Fraction(0)))
            elif kind == "line_phase":
                factors.extend([LineFactor(Fraction(0)), PhaseFactor(m, Fraction(0))])
            elif kind == "sp":
                factors.append(ScalarFactor("Sp", m, 0))
            else:
                factors.append(UnitFactor(m))
    factors.append(SpinFactor(p.r, spin_r if spin_r is not None else Multivector.scalar(p.r, 1)))
    return ProductElement(tuple(factors))


def _lift_kernel_generator(p: CliffordParams, gen: ProductElement) -> ProductElement:
    slots = _cover_slots(p)
    entries = {}
    outer_factors = [f for f in gen.factors if isinstance(f, ScalarFactor)]
    spin_part = [f for f in gen.factors if isinstance(f, SpinFactor)][-1]
    for idx, ((kind, m), f) in enumerate(zip(slots, outer_factors)):
        entries[idx] = _lift_scalar(kind, m, f.power, f.group)
    return _cover_element(p, entries, spin_part.element)


def pi1(p: CliffordParams) -> Pi1Result:
    """pi_1 of the identity component, with explicit covering-group generators."""
    if p.r < 3:
        raise ValueError("classification needs r >= 3")
    kern = kernel_of_rho(p)
    if kern.continuous:
        return _pi1_rank4_collapsed(p)
    gens = _deck_generators(p) + [_lift_kernel_generator(p, g) for g in kern.generators]
    gens = [g for g in gens if not g.is_identity()]
    # line-coordinate lattice
    line_rows: list[list[Fraction]] = []
    for g in gens:
        line_rows.append(g.line_coordinates())
    n_lines = len(line_rows[0]) if gens else 0
    free_rank = 0
    torsion: list[int] = []
    if gens:
        if n_lines:
            a = [[line_rows[g][l] for g in range(len(gens))] for l in range(n_lines)]
            free_rank = linalg.rank(a)
            kernel_vectors = linalg.integer_kernel_basis(a)
        else:
            kernel_vectors = [[int(i == j) for i in range(len(gens))] for j in range(len(gens))]
        torsion_gens = []
        for v in kernel_vectors:
            el = identity_like(gens[0])
            for g, e in zip(gens, v):
                if e < 0:
                    g, e = _invert(g, table_hint=None), -e
                el = el.mul(g.power(e))
            torsion_gens.append(el)
        torsion_gens = [g for g in torsion_gens if not g.is_identity()]
        if torsion_gens:
            if any(any(c != 0 for c in g.line_coordinates()) for g in torsion_gens):
                raise AssertionError("torsion generators carry line coordinates")
            table = GroupTable(closure(torsion_gens, _mul), _mul)
            torsion = table.abelian_invariants()
    computed = tuple([0] * free_rank + sorted(torsion))
    lookup = tuple(sorted(pi1_lookup(p), key=lambda d: (d != 0, d)))
    computed_sorted = tuple(sorted(computed, key=lambda d: (d != 0, d)))
    discrepancy = None
    if computed_sorted != lookup:
        discrepancy = (
            f"computed pi_1 invariants {computed_sorted} differ from the theorem table {lookup}"
        )
    notes = []
    if kern.continuous:
        notes.append("spin factor collapsed to Spin(3); pi_1 computed on the quotient presentation")
    return Pi1Result(
        invariants=computed_sorted,
        generators=tuple(gens),
        computed=computed_sorted,
        lookup=lookup,
        discrepancy=discrepancy,
        notes=tuple(notes),
    )


def _pi1_rank4_collapsed(p: CliffordParams) -> Pi1Result:
    """Rank 4 with one vanishing side: the universal cover is
    Sp(m) x Spin(3), and pi_1 is the order-two subgroup generated by
    (-Id, -vol_4) for m2 = 0 or (-Id, vol_4) for m1 = 0 (the surviving
    Spin(3) sits inside Spin(4) through those volume classes)."""
    m = max(p.m1, p.m2)
    vol = volume_element(4)
    spin_el = -vol if p.m2 == 0 else vol
    gen = ProductElement((ScalarFactor("Sp", m, 2), SpinFactor(4, spin_el)))
    table = GroupTable(closure([gen], _mul), _mul)
    computed = tuple(sorted(table.abelian_invariants()))
    lookup = tuple(sorted(pi1_lookup(p), key=lambda d: (d != 0, d)))
    discrepancy = None
    if computed != lookup:
        discrepancy = f"computed pi_1 invariants {computed} differ from the theorem table {lookup}"
    return Pi1Result(
        invariants=computed,
        generators=(gen,),
        computed=computed,
        lookup=lookup,
        discrepancy=discrepancy,
        notes=("universal cover collapses to Sp(m) x Spin(3) at rank 4 with one vanishing side",),
    )


def _invert(g: ProductElement, table_hint=None) -> ProductElement:
    out = []
    for f in g.factors:
        if isinstance(f, ScalarFactor):
            out.append(ScalarFactor(f.group, f.m, -f.power % 4))
        elif isinstance(f, SpinFactor):
            rev = f.element.reverse()
            if f.element * rev != Multivector.scalar(f.m, 1):
                raise ValueError("cannot invert a non-unit spin factor")
            out.append(SpinFactor(f.m, rev))
        elif isinstance(f, LineFactor):
            out.append(LineFactor(-f.value))
        elif isinstance(f, PhaseFactor):
            out.append(PhaseFactor(f.m, -f.q))
        else:
            out.append(f)
    return ProductElement(tuple(out))


# -- abstract <a, b | ab=ba, a^m = b^4> normalization -------------------------


@dataclass(frozen=True)
class UCaseWord:
    """Element a^x b^y of Z^2 / <(m, -4)> in normal form (y in 0..3)."""

    m: int
    x: int
    y: int

    def __post_init__(self):
        t, y = divmod(self.y, 4)
        object.__setattr__(self, "x", self.x + t * self.m)
        object.__setattr__(self, "y", y)

    def mul(self, other: "UCaseWord") -> "UCaseWord":
        return UCaseWord(self.m, self.x + other.x, self.y + other.y)

    def pow(self, e: int) -> "UCaseWord":
        return UCaseWord(self.m, self.x * e, self.y * e)

    def is_identity(self) -> bool:
        return self.x == 0 and self.y == 0


def u_case_generator_normalization(m: int) -> dict:
    """Normalized generators of <a, b | ab = ba, a^m = b^4> per gcd(m, 4).

    Returns the defining words with their verified relations; Bezout data
    for the cyclic case.
    """
    if m < 1:
        raise ValueError("multiplicity must be positive")
    from math import gcd

    a = UCaseWord(m, 1, 0)
    b = UCaseWord(m, 0, 1)
    g = gcd(m, 4)
    if a.pow(m) != b.pow(4):
        raise AssertionError("presentation relation a^m = b^4 failed")
    if g == 1:
        t, s = _bezout(m, 4)
        gen = b.pow(t).mul(a.pow(s))
        checks = {
            "gen^m == b": gen.pow(m) == b,
            "gen^4 == a": gen.pow(4) == a,
        }
        out = {
            "gcd": 1,
            "bezout": (t, s),
            "generators": {"g": f"b^{t} a^{s}"},
            "orders": {"g": 0},
            "checks": checks,
        }
    elif g == 2:
        k = (m - 2) // 4
        c = a.pow(-(2 * k + 1)).mul(b.pow(2))
        d = b.mul(a.pow(-k))
        checks = {
            "c^2 == 1": c.pow(2).is_identity(),
            "a == d^2 c": a == d.pow(2).mul(c),
            "b == d^(2k+1) c^k": b == d.pow(2 * k + 1).mul(c.pow(k)),
        }
        out = {
            "gcd": 2,
            "k": k,
            "generators": {"c": f"a^{-(2 * k + 1)} b^2", "d": f"b a^{-k}"},
            "orders": {"c": 2, "d": 0},
            "checks": checks,
        }
    else:
        k = m // 4
        c = a.pow(-k).mul(b)
        checks = {
            "c^4 == 1": c.pow(4).is_identity(),
            "b == a^k c": b == a.pow(k).mul(c),
        }
        out = {
            "gcd": 4,
            "k": k,
            "generators": {"a": "a", "c": f"a^{-k} b"},
            "orders": {"a": 0, "c": 4},
            "checks": checks,
        }
    if not all(checks.values()):
        raise AssertionError(f"generator normalization relations failed for m={m}: {checks}")
    return out


def _bezout(m: int, n: int) -> tuple[int, int]:
    """(t, s) with t*m + s*n = 1 for coprime m, n."""
    old_r, r = m, n
    old_t, t = 1, 0
    old_s, s = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_t, t = t, old_t - q * t
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ValueError("arguments are not coprime")
    return old_t, old_s
