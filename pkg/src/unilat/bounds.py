"""Hermite constants, upper bounds on them, and the existence test used by
the type scanner. Every decision compares n-th powers in exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

# gamma_n^n for the dimensions where the Hermite constant is known
EXACT_GAMMA_POW = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
    24: Fraction(4) ** 24,
}

# published upper bounds b_n >= gamma_n, as printed (four decimals)
TABLE_BOUNDS = {
    7: "1.8115", 8: "2", 9: "2.1327", 10: "2.2637", 11: "2.3934", 12: "2.5218",
    13: "2.6494", 14: "2.7759", 15: "2.9015", 16: "3.0264", 17: "3.1507", 18: "3.2744",
    19: "3.3975", 20: "3.5201", 21: "3.6423", 22: "3.7641", 23: "3.8855", 24: "4.0067",
    25: "4.1275", 26: "4.2481", 27: "4.3685", 28: "4.4887", 29: "4.6087", 30: "4.7286",
    31: "4.8484", 32: "4.9681", 33: "5.0877", 34: "5.2072", 35: "5.3267", 36: "5.4462",
}


def table_bound(n: int) -> Fraction | None:
    s = TABLE_BOUNDS.get(n)
    return None if s is None else Fraction(s)


@dataclass(frozen=True)
class GammaBound:
    """What is known about gamma_n: the exact n-th power and/or a table bound."""

    n: int
    exact_pow: Fraction | None
    table: Fraction | None

    @property
    def kind(self) -> str:
        if self.exact_pow is not None:
            return "exact"
        return "table" if self.table is not None else "none"

    @property
    def value_pow_n(self) -> Fraction | None:
        """The strongest available bound on gamma_n^n."""
        cands = [b for b in (self.exact_pow, None if self.table is None else self.table ** self.n)
                 if b is not None]
        return min(cands) if cands else None

    def __str__(self):
        parts = []
        if self.exact_pow is not None:
            parts.append(f"exact gamma_{self.n}^{self.n} = {self.exact_pow} "
                         f"(gamma_{self.n} ~ {float(self.exact_pow) ** (1 / self.n):.4f})")
        if self.table is not None:
            parts.append(f"table bound {TABLE_BOUNDS[self.n]}")
        return "; ".join(parts) if parts else f"no bound known for n = {self.n}"


def upper_gamma(n: int) -> GammaBound:
    if n < 1:
        raise InputError("dimension must be positive")
    return GammaBound(n, EXACT_GAMMA_POW.get(n), table_bound(n))


def extremal_min(n: int) -> int:
    """Largest possible minimum of an even unimodular lattice of dimension n."""
    if n <= 0 or n % 8:
        raise InputError(f"even unimodular lattices need dimension divisible by 8, got {n}")
    return 2 + 2 * (n // 24)


@dataclass(frozen=True)
class HermiteValue:
    """``gamma(L)^n = min^n / det``, kept as the exact pair."""

    n: int
    min_pow: Fraction
    det: Fraction

    @property
    def pow_n(self) -> Fraction:
        return self.min_pow / self.det

    def __float__(self):
        return float(self.pow_n) ** (1 / self.n)

    def __str__(self):
        return f"gamma^{self.n} = {self.pow_n} (gamma ~ {float(self):.6f})"


def hermite_gamma(lat, budget: int | None = None) -> HermiteValue:
    from .enumeration import minimum

    m = minimum(lat, budget=budget).minimum
    return HermiteValue(lat.dim, m ** lat.dim, lat.det)


def center_density(gamma_pow_n: Fraction, n: int) -> float:
    """Display helper: center density ``(gamma_n / 4)^(n/2)``."""
    return (float(gamma_pow_n) ** (1 / n) / 4) ** (n / 2)


def exists_possible(dim: int, min_norm, det) -> bool:
    """False iff some known bound rules out a lattice with this dim, min and det."""
    if dim < 0:
        raise InputError("dimension must be non-negative")
    if dim == 0:
        return True
    min_norm, det = Fraction(min_norm), Fraction(det)
    if min_norm <= 0 or det <= 0:
        raise InputError("minimum and determinant must be positive")
    bound = upper_gamma(dim).value_pow_n
    if bound is None:
        return True
    return min_norm ** dim <= bound * det
