"""Exact arithmetic in Q[zeta_m], fractional ideals, and trace-form ideal
lattices ``(J, b_alpha)`` with ``b_alpha(x, y) = Tr(alpha x conj(y))``.

Elements are coefficient vectors over the power basis 1, z, ..., z^(phi-1).
Ideals are stored as a positive integer denominator d plus the HNF basis of
the integral ideal d*J, so equality is matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Sequence

from .errors import InputError, LatticeError
from .exact import ExactMatrix, det_exact, hnf_basis
from .lattice import Lattice, dual
from .poly import cyclotomic_poly, totient


class CycloField:
    """The cyclotomic field Q[zeta_m], with m normalised so m != 2 mod 4."""

    def __new__(cls, m: int):
        return _field(_normalise(m))

    def _init(self, m: int):
        self.m = m
        self.degree = totient(m)
        self.min_poly = cyclotomic_poly(m)
        phi = self.degree
        # zeta^k reduced into the power basis, k = 0..m-1
        pows = []
        cur = [Fraction(0)] * phi
        cur[0] = Fraction(1)
        for _ in range(m):
            pows.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.min_poly[i]
        self._pows = pows
        self._traces = [sum(pows[(i + k) % m][i] for i in range(phi)) for k in range(phi)]

    def __repr__(self):
        return f"CycloField({self.m})"

    def __reduce__(self):
        return (CycloField, (self.m,))

    # element constructors ---------------------------------------------------

    def element(self, coeffs: Sequence) -> "CycloElement":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            # reduce a longer polynomial in zeta
            out = [Fraction(0)] * self.degree
            for k, c in enumerate(coeffs):
                if c:
                    for i, x in enumerate(self._pows[k % self.m]):
                        out[i] += c * x
            coeffs = out
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return CycloElement(self, tuple(coeffs))

    def __call__(self, coeffs) -> "CycloElement":
        if isinstance(coeffs, (int, Fraction)):
            return self.element([coeffs])
        return self.element(coeffs)

    def zeta(self, k: int = 1) -> "CycloElement":
        return CycloElement(self, self._pows[k % self.m])

    @property
    def one(self) -> "CycloElement":
        return self.zeta(0)

    @cached_property
    def trace_gram(self) -> ExactMatrix:
        """``Tr(z^i conj(z^j))`` over the power basis."""
        phi = self.degree
        return ExactMatrix([[(self.zeta(i) * self.zeta(-j)).trace() for j in range(phi)]
                            for i in range(phi)])

    @cached_property
    def discriminant(self) -> Fraction:
        """Absolute discriminant up to sign: det of ``Tr(z^i z^j)``."""
        phi = self.degree
        return abs(det_exact(ExactMatrix([[(self.zeta(i + j)).trace() for j in range(phi)]
                                          for i in range(phi)])))


def _normalise(m: int) -> int:
    if m < 1:
        raise InputError("m must be positive")
    if m % 4 == 2:
        m //= 2
    if m < 3:
        raise InputError("Q[zeta_m] = Q for m <= 2; need m >= 3")
    return m


@lru_cache(maxsize=None)
def _field(m: int) -> CycloField:
    f = object.__new__(CycloField)
    f._init(m)
    return f


class CycloElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other) -> "CycloElement":
        if isinstance(other, CycloElement):
            if other.field is not self.field:
                raise InputError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycloElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.field, tuple(a * other for a in self.coeffs))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.field
        prod = [Fraction(0)] * (2 * f.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return f.element(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element([other])
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycloElement(m={self.field.m}, {format_coeffs(self.coeffs)})"

    def mult_matrix(self) -> ExactMatrix:
        """Rows are ``self * z^i``: ``(x @ M) = coeffs of x * self``."""
        f = self.field
        return ExactMatrix([(self * f.zeta(i)).coeffs for i in range(f.degree)])

    def conj(self) -> "CycloElement":
        f = self.field
        out = [Fraction(0)] * f.degree
        for k, a in enumerate(self.coeffs):
            if a:
                for i, x in enumerate(f._pows[(-k) % f.m]):
                    out[i] += a * x
        return CycloElement(f, tuple(out))

    def trace(self) -> Fraction:
        return sum((a * t for a, t in zip(self.coeffs, self.field._traces)), Fraction(0))

    def norm(self) -> Fraction:
        return det_exact(self.mult_matrix())

    def inverse(self) -> "CycloElement":
        if not self:
            raise InputError("inversion of zero")
        f = self.field
        e0 = [Fraction(int(i == 0)) for i in range(f.degree)]
        # x @ M(self) = 1
        return CycloElement(f, tuple(self.mult_matrix().inverse().vecmul(e0)))

    @property
    def is_real(self) -> bool:
        return self.conj() == self


def format_coeffs(coeffs: Sequence) -> str:
    return " ".join(str(Fraction(c)) for c in coeffs)


def parse_element(field: CycloField, text: str) -> CycloElement:
    from .formats import parse_rational

    toks = text.replace(",", " ").split()
    if not toks:
        raise InputError("empty coefficient list")
    return field.element([parse_rational(t) for t in toks])


# --------------------------------------------------------------------------
# fractional ideals


class FractionalIdeal:
    """A nonzero fractional ideal of Z[zeta_m]."""

    def __init__(self, field: CycloField, denominator: int, numerator_basis):
        self.field = field
        self.denominator = denominator
        self.numerator_basis = tuple(tuple(int(x) for x in r) for r in numerator_basis)

    @classmethod
    def from_generators(cls, field: CycloField, gens, z_basis: bool = False) -> "FractionalIdeal":
        """Ideal generated by the given elements (coefficient rows or
        CycloElements). With ``z_basis`` the rows must already span a
        zeta-stable lattice, which is checked."""
        elems = [g if isinstance(g, CycloElement) else field(g) for g in gens]
        elems = [e for e in elems if e]
        if not elems:
            raise InputError("zero ideal")
        if z_basis:
            zgens = elems
        else:
            zgens = [e * field.zeta(i) for e in elems for i in range(field.degree)]
        ideal = cls._from_z_generators(field, [e.coeffs for e in zgens])
        if z_basis:
            z = field.zeta()
            for e in ideal.basis_elements():
                if not ideal.contains(e * z):
                    raise InputError("basis is not closed under multiplication by zeta")
        return ideal

    @classmethod
    def _from_z_generators(cls, field: CycloField, rows) -> "FractionalIdeal":
        phi = field.degree
        den = 1
        for r in rows:
            for x in r:
                den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ints = [[int(Fraction(x) * den) for x in r] for r in rows]
        basis = hnf_basis(ints, phi)
        if len(basis) != phi:
            raise InputError("generators do not span a full-rank ideal (zero ideal?)")
        g = den
        for r in basis:
            for x in r:
                g = gcd(g, x)
        return cls(field, den // g, [[x // g for x in r] for r in basis])

    @classmethod
    def principal(cls, elem: CycloElement) -> "FractionalIdeal":
        return cls.from_generators(elem.field, [elem])

    @classmethod
    def unit(cls, field: CycloField) -> "FractionalIdeal":
        return cls.principal(field.one)

    def basis(self) -> ExactMatrix:
        return ExactMatrix([[Fraction(x, self.denominator) for x in r] for r in self.numerator_basis])

    def basis_elements(self) -> list[CycloElement]:
        return [CycloElement(self.field, tuple(r)) for r in self.basis().rows]

    def contains(self, elem: CycloElement) -> bool:
        from .exact import solve_left

        x = solve_left(self.basis(), elem.coeffs)
        return x is not None and all(c.denominator == 1 for c in x)

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        return (self.field is other.field and self.denominator == other.denominator
                and self.numerator_basis == other.numerator_basis)

    def __hash__(self):
        return hash((self.field.m, self.denominator, self.numerator_basis))

    def __repr__(self):
        return f"<FractionalIdeal m={self.field.m} norm={self.norm()}>"

    def norm(self) -> Fraction:
        """Absolute norm ``[O : J]`` (rational for fractional ideals)."""
        return abs(det_exact(self.basis()))

    def is_integral(self) -> bool:
        return self.denominator == 1

    def __mul__(self, other):
        if isinstance(other, (CycloElement, int, Fraction)):
            if not isinstance(other, CycloElement):
                other = self.field.element([other])
            return FractionalIdeal._from_z_generators(
                self.field, [(e * other).coeffs for e in self.basis_elements()])
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        prods = [(a * b).coeffs for a in self.basis_elements() for b in other.basis_elements()]
        return FractionalIdeal._from_z_generators(self.field, prods)

    __rmul__ = __mul__

    def conj(self) -> "FractionalIdeal":
        return FractionalIdeal._from_z_generators(self.field, [e.conj().coeffs for e in self.basis_elements()])

    def inverse(self) -> "FractionalIdeal":
        """``J^-1 = {x : x J in Z[zeta]}``: the dual of the lattice spanned by
        the columns of the multiplication matrices of a basis of J."""
        cols = []
        for e in self.basis_elements():
            mm = e.mult_matrix()
            cols.extend(mm.T.rows)
        # column lattice of [M(b_1) | ... | M(b_phi)], as rows
        den = 1
        for r in cols:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        h = ExactMatrix(hnf_basis([[int(x * den) for x in r] for r in cols], self.field.degree)).scale(
            Fraction(1, den))
        # {x : x @ h.T integral} has basis (h.T)^-1
        return FractionalIdeal._from_z_generators(self.field, h.T.inverse().rows)

    def __truediv__(self, other):
        if isinstance(other, FractionalIdeal):
            return self * other.inverse()
        if not isinstance(other, CycloElement):
            other = self.field.element([other])
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FractionalIdeal.unit(self.field)
        for _ in range(k):
            out = out * self
        return out

    def is_principal_generated_by(self, elem: CycloElement) -> bool:
        return bool(elem) and FractionalIdeal.principal(elem) == self


def relative_norm_ideal(j: FractionalIdeal) -> FractionalIdeal:
    """``J conj(J)``, the ideal whose intersection with the real subfield is
    the relative norm of J."""
    return j * j.conj()


def trace_dual_Z(field: CycloField | int) -> FractionalIdeal:
    """``{x : Tr(x conj(y)) in Z for all y in Z[zeta]}`` (the codifferent):
    the row span of the inverse of the trace Gram matrix."""
    if not isinstance(field, CycloField):
        field = CycloField(field)
    return FractionalIdeal._from_z_generators(field, field.trace_gram.inverse().rows)


# --------------------------------------------------------------------------
# total positivity


def embeddings_real(alpha: CycloElement, dps: int):
    """Interval values of a real element at ``z -> exp(2 pi i k/m)``, one per
    conjugate pair (k coprime to m, k < m/2)."""
    from mpmath import iv

    f = alpha.field
    out = []
    saved = iv.dps
    iv.dps = dps
    try:
        two_pi = 2 * iv.pi
        for k in range(1, f.m // 2 + 1):
            if gcd(k, f.m) != 1:
                continue
            v = iv.mpf(0)
            for j, a in enumerate(alpha.coeffs):
                if a:
                    v += iv.mpf(a.numerator) / a.denominator * iv.cos(two_pi * (j * k) / f.m)
            out.append((k, v))
    finally:
        iv.dps = saved
    return out


def is_totally_positive(alpha: CycloElement, start_dps: int = 30) -> bool:
    """Certified sign test at every real embedding; precision doubles until
    every interval excludes zero (a nonzero field element never vanishes)."""
    if not alpha.is_real:
        raise InputError("alpha is not fixed by complex conjugation")
    if not alpha:
        return False
    dps = start_dps
    while True:
        vals = embeddings_real(alpha, dps)
        if all(v.a > 0 or v.b < 0 for _, v in vals):
            return all(v.a > 0 for _, v in vals)
        dps *= 2
        if dps > 100_000:
            raise LatticeError("internal: interval evaluation did not separate from zero")


# --------------------------------------------------------------------------
# ideal lattices


@dataclass
class IdealLatticeSpec:
    ideal: FractionalIdeal
    alpha: CycloElement

    def __post_init__(self):
        if self.alpha.field is not self.ideal.field:
            raise InputError("alpha and the ideal live in different fields")
        if not self.alpha.is_real:
            raise InputError("alpha is not fixed by complex conjugation")
        if not is_totally_positive(self.alpha):
            raise LatticeError("alpha is not totally positive; the trace form would be indefinite")


def trace_form(field: CycloField, alpha: CycloElement, rows_a, rows_b=None) -> ExactMatrix:
    rows_b = rows_a if rows_b is None else rows_b
    ea = [CycloElement(field, tuple(Fraction(x) for x in r)) for r in rows_a]
    eb = [CycloElement(field, tuple(Fraction(x) for x in r)).conj() for r in rows_b]
    return ExactMatrix([[(alpha * a * b).trace() for b in eb] for a in ea])


def order_lattice(field: CycloField, alpha: CycloElement) -> Lattice:
    """``(Z[zeta], b_alpha)`` on the power basis: the common parent."""
    ident = ExactMatrix.identity(field.degree).rows
    return Lattice(trace_form(field, alpha, ident), name=f"(Z[zeta_{field.m}], b_alpha)")


def ideal_lattice(spec: IdealLatticeSpec) -> Lattice:
    """``(J, b_alpha)`` with coordinates in the power basis."""
    j, alpha = spec.ideal, spec.alpha
    parent = order_lattice(j.field, alpha)
    return Lattice.from_basis(j.basis(), parent)


def ideal_dual(spec: IdealLatticeSpec, cross_check: bool = True) -> FractionalIdeal:
    """``conj(J)^-1 * Delta * alpha^-1``. With ``cross_check`` the ideal is
    compared with the matrix dual of ``ideal_lattice(spec)``."""
    j, alpha = spec.ideal, spec.alpha
    out = j.conj().inverse() * trace_dual_Z(j.field) * alpha.inverse()
    if cross_check:
        md = dual(ideal_lattice(spec))
        if FractionalIdeal._from_z_generators(j.field, md.coords.rows) != out:
            raise LatticeError("internal: dual ideal disagrees with the matrix dual")
    return out


def is_unimodular(spec: IdealLatticeSpec) -> bool:
    """``(J conj(J))^-1 Delta alpha^-1 == Z[zeta]``."""
    j, alpha = spec.ideal, spec.alpha
    crit = relative_norm_ideal(j).inverse() * trace_dual_Z(j.field) * alpha.inverse()
    return crit == FractionalIdeal.unit(j.field)


# --------------------------------------------------------------------------
# units and generators


def cyclotomic_units(field: CycloField) -> list[CycloElement]:
    """Real cyclotomic units ``(z^a - z^-a)/(z - z^-1)`` for 1 < a < m/2 with
    gcd(a, m) = 1, plus ``2 - z - z^-1`` when m is not a prime power.
    (-1 is added by the generator search.)"""
    m = field.m
    z = field.zeta()
    zi = field.zeta(-1)
    den = z - zi
    out = []
    for a in range(2, (m + 1) // 2):
        if gcd(a, m) == 1:
            out.append((field.zeta(a) - field.zeta(-a)) / den)
    if not _is_prime_power(m):
        out.append(2 - z - zi)
    return [u for u in out if abs(u.norm()) == 1]


def _is_prime_power(n: int) -> bool:
    for q in range(2, n + 1):
        if n % q == 0:
            while n % q == 0:
                n //= q
            return n == 1
    return False


def find_tp_generator(ideal: FractionalIdeal, units: Sequence[CycloElement] | None = None,
                      exponent: int = 2, search_norm_factor: int = 4,
                      max_generators: int = 4, budget: int = 1_000_000) -> CycloElement | None:
    """A totally positive real generator of a conjugation-stable ideal.

    Up to ``max_generators`` generators g, distinct modulo roots of unity,
    are taken from the short vectors of ``(J, b_1)``; for each,
    ``+-z^k * w * g`` is tried for all roots of unity ``z^k`` and all words
    w with exponents in ``[-exponent, exponent]`` in the supplied units
    (default: ``cyclotomic_units``), shorter words first. None means the
    bounded search was exhausted, not that no such generator exists.
    """
    from .enumeration import minimum, short_vectors

    field = ideal.field
    if ideal.conj() != ideal:
        raise InputError("ideal is not stable under complex conjugation")
    if units is None:
        units = cyclotomic_units(field)
    lat = Lattice.from_basis(ideal.basis(), order_lattice(field, field.one))
    bound = minimum(lat, budget=budget).minimum * search_norm_factor
    basis = ideal.basis()
    roots = [field.zeta(k) for k in range(field.m)]
    gens, seen = [], set()
    for v, _ in short_vectors(lat, bound, budget=budget):
        cand = CycloElement(field, tuple(basis.vecmul(v)))
        if cand.coeffs in seen or not ideal.is_principal_generated_by(cand):
            continue
        gens.append(cand)
        seen.update((cand * r * sgn).coeffs for r in roots for sgn in (1, -1))
        if len(gens) == max_generators:
            break
    exps = sorted(product(range(-exponent, exponent + 1), repeat=len(units)),
                  key=lambda e: (sum(map(abs, e)), e))
    for g in gens:
        for e in exps:
            w = g
            for u, k in zip(units, e):
                if k:
                    w = w * u ** k
            for r in roots:
                cand = w * r
                if cand.is_real:
                    for sign in (1, -1):
                        if is_totally_positive(cand * sign):
                            return cand * sign
    return None
