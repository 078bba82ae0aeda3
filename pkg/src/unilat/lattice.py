"""The Lattice value: a positive definite rational Gram matrix, optionally
carrying its basis in the coordinates of a parent lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Sequence

from .errors import InputError, LatticeError
from .exact import (ExactMatrix, as_matrix, det_exact, hnf_basis, is_prime,
                    left_kernel, row_basis, snf, solve_left)


def _positive_definite(gram: ExactMatrix) -> bool:
    n = gram.nrows
    a = [list(r) for r in gram.rows]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


class Lattice:
    """A lattice given by its Gram matrix.

    ``coords`` (optional) holds the basis rows in the coordinates of
    ``parent``; then ``gram == coords @ parent.gram @ coords.T`` exactly.
    Lattices are immutable after construction.
    """

    def __init__(self, gram, coords=None, parent: "Lattice | None" = None,
                 check: bool = True, name: str | None = None):
        gram = as_matrix(gram)
        if coords is not None:
            coords = as_matrix(coords)
            if parent is None:
                raise InputError("coords given without a parent lattice")
        self.gram = gram
        self.coords = coords
        self.parent = parent if coords is not None else None
        self.name = name
        if check:
            if not gram.is_symmetric():
                raise InputError("Gram matrix is not symmetric")
            if not _positive_definite(gram):
                raise InputError("Gram matrix is not positive definite")
            if coords is not None:
                if coords.shape != (gram.nrows, parent.dim):
                    raise InputError("coords shape does not match parent dimension")
                if coords @ parent.gram @ coords.T != gram:
                    raise InputError("Gram matrix disagrees with coords in parent")

    # construction -------------------------------------------------------

    @classmethod
    def from_basis(cls, coords, parent: "Lattice", name: str | None = None) -> "Lattice":
        coords = as_matrix(coords)
        gram = coords @ parent.gram @ coords.T
        return cls(gram, coords, parent, check=False, name=name)._checked()

    @classmethod
    def from_generators(cls, gens, parent: "Lattice", name: str | None = None) -> "Lattice":
        """Lattice spanned by rational generator rows given in parent coordinates."""
        return cls.from_basis(row_basis(as_matrix(gens), parent.dim), parent, name)

    @classmethod
    def standard(cls, n: int, scale=1) -> "Lattice":
        """``sqrt(scale) * Z^n``."""
        return cls(ExactMatrix.identity(n).scale(scale), name=f"Z^{n}" if scale == 1 else None)

    def _checked(self) -> "Lattice":
        if not _positive_definite(self.gram):
            raise InputError("generators do not span a positive definite lattice")
        return self

    # basic invariants ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self.gram.nrows

    @cached_property
    def det(self) -> Fraction:
        return det_exact(self.gram)

    @cached_property
    def is_integral(self) -> bool:
        return self.gram.is_integral()

    @cached_property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i, i].numerator % 2 == 0 for i in range(self.dim))

    @property
    def is_unimodular(self) -> bool:
        return self.is_integral and self.det == 1

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        g = self.gram.rows
        return sum((Fraction(u[i]) * g[i][j] * v[j] for i in range(self.dim) if u[i]
                    for j in range(self.dim) if v[j]), Fraction(0))

    def norm(self, v: Sequence) -> Fraction:
        return self.inner(v, v)

    def root(self) -> "Lattice":
        """The outermost ancestor (the parent whose coordinates everything uses)."""
        return self.parent if self.parent is not None else self

    def ambient_basis(self) -> ExactMatrix:
        """Basis rows in root-parent coordinates (identity when parentless)."""
        return self.coords if self.coords is not None else ExactMatrix.identity(self.dim)

    def sublattice(self, basis, name: str | None = None) -> "Lattice":
        """Lattice with the given basis rows, written in this lattice's coordinates.

        Coordinates are re-expressed against this lattice's parent when it has
        one, else against this lattice itself.
        """
        basis = as_matrix(basis)
        if basis.ncols != self.dim:
            raise InputError("sublattice basis has the wrong width")
        gram = basis @ self.gram @ basis.T
        if self.coords is not None:
            return Lattice(gram, basis @ self.coords, self.parent, check=False, name=name)._checked()
        return Lattice(gram, basis, self, check=False, name=name)._checked()

    def to_coords(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Express a root-parent vector in this lattice's basis (rational), or None."""
        return solve_left(self.ambient_basis(), v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.gram == other.gram and self.coords == other.coords

    def __hash__(self):
        return hash((self.gram, self.coords))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Lattice{tag} dim={self.dim} det={self.det}>"


# --------------------------------------------------------------------------
# duality and discriminant groups


def dual(lat: Lattice) -> Lattice:
    """``L^#``: Gram inverse; coords become ``gram^{-1} @ coords``."""
    if lat.dim == 0:
        return lat
    ginv = lat.gram.inverse()
    if lat.coords is not None:
        return Lattice(ginv, ginv @ lat.coords, lat.parent, check=False)
    return Lattice(ginv, check=False)


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L^#/L`` as invariant factors ``d_1 | ... | d_k``, all > 1."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    if not lat.is_integral:
        raise LatticeError("discriminant group needs an integral lattice")
    return DiscriminantGroup(tuple(d for d in snf(lat.gram) if d > 1))


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Classification:
    integral: bool
    even: bool
    unimodular: bool
    elementary_primes: tuple[int, ...]
    discriminant: DiscriminantGroup | None

    @property
    def parity(self) -> str:
        if not self.integral:
            return "non-integral"
        return "even" if self.even else "odd"


def classify(lat: Lattice) -> Classification:
    """Integrality, parity and p-elementarity (discriminant group of exponent p)."""
    if not lat.is_integral:
        return Classification(False, False, False, (), None)
    disc = discriminant_group(lat)
    primes = tuple(p for p in _prime_factors(disc.exponent) if disc.exponent == p)
    return Classification(True, lat.is_even, disc.order == 1, primes, disc)


# --------------------------------------------------------------------------
# LLL reduction (integral version, exact)


def _round_div(a: int, b: int) -> int:
    return (2 * a + b) // (2 * b)


def lll_gram(gram: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """LLL-reduce a positive definite Gram matrix with delta = 3/4.

    Works with the integral Gram-Schmidt data (``d_i`` and ``lambda_ij``) so
    every step is exact integer arithmetic. Returns ``(reduced, T)`` with
    ``reduced == T @ gram @ T.T`` and ``T`` unimodular.
    """
    n = gram.nrows
    if n == 0:
        return gram, gram
    den = gram.denominator()
    b = [[(x * den).numerator for x in r] for r in gram.rows]
    h = [[int(i == j) for j in range(n)] for i in range(n)]
    d = [0] * (n + 1)  # d[0] = 1, d[i+1] is the i-th Gram-Schmidt determinant
    d[0], d[1] = 1, b[0][0]
    lam = [[0] * n for _ in range(n)]

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            h[k] = [x - q * y for x, y in zip(h[k], h[l])]
            # basis vector k -= q * basis vector l
            bk, bl = b[k], b[l]
            for j in range(n):
                bk[j] -= q * bl[j]
            bk[k] -= q * bk[l]
            for j in range(n):
                b[j][k] = bk[j]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        h[k], h[k - 1] = h[k - 1], h[k]
        b[k], b[k - 1] = b[k - 1], b[k]
        for row in b:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        big = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (big * t + lm * lam[i][k]) // d[k + 1]
        d[k] = big

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = b[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k + 1] = u
        red(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    reduced = ExactMatrix(([Fraction(x, den) for x in r] for r in b), ncols=n)
    return reduced, ExactMatrix(h, ncols=n)


def lll(lat: Lattice) -> Lattice:
    """Same lattice, LLL-reduced basis; coordinates track the basis change.

    A parentless input becomes the parent of the result, so the unimodular
    transform is the result's ``coords``.
    """
    if lat.dim == 0:
        return lat
    reduced, t = lll_gram(lat.gram)
    if lat.coords is not None:
        return Lattice(reduced, t @ lat.coords, lat.parent, check=False, name=lat.name)
    return Lattice(reduced, t, lat, check=False, name=lat.name)


def gram_schmidt(gram: ExactMatrix) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact squared Gram-Schmidt lengths ``B_i`` and coefficients ``mu[i][j]`` (j < i)."""
    n = gram.nrows
    mu = [[Fraction(0)] * n for _ in range(n)]
    bs = [Fraction(0)] * n
    g = gram.rows
    for i in range(n):
        for j in range(i):
            s = g[i][j] - sum((mu[j][k] * mu[i][k] * bs[k] for k in range(j)), Fraction(0))
            mu[i][j] = s / bs[j]
        bs[i] = g[i][i] - sum((mu[i][k] ** 2 * bs[k] for k in range(i)), Fraction(0))
    return bs, mu


# --------------------------------------------------------------------------
# set operations inside a common parent


@dataclass(frozen=True)
class MeetJoin:
    meet: Lattice | None
    join: Lattice
    index_a: int | None  # [A : A ∩ B]
    index_b: int | None  # [B : A ∩ B]


def _same_parent(a: Lattice, b: Lattice) -> bool:
    if a.parent is None or b.parent is None:
        return False
    return a.parent is b.parent or a.parent.gram == b.parent.gram


def _index_in(sub: ExactMatrix, sup: ExactMatrix) -> int | None:
    if sub.nrows != sup.nrows:
        return None
    rows = [solve_left(sup, r) for r in sub.rows]
    return abs(det_exact(ExactMatrix(rows))).numerator


def meet_join(a: Lattice, b: Lattice) -> MeetJoin:
    """Intersection and sum of two lattices written in the same parent."""
    if not _same_parent(a, b):
        raise LatticeError("lattices do not share a parent")
    parent = a.parent
    ca, cb = a.coords, b.coords
    join = Lattice.from_generators(ca.stack(cb), parent)
    # pairs (x, y) with x A + y B = 0 give x A in the meet
    den = ca.stack(cb).denominator()
    stacked = ca.stack(cb).scale(den)
    ker = left_kernel(stacked)
    gens = [ca.vecmul(r[: a.dim]) for r in ker.rows]
    basis = row_basis(ExactMatrix(gens, ncols=parent.dim)) if gens else ExactMatrix.zeros(0, parent.dim)
    meet = Lattice.from_basis(basis, parent) if basis.nrows else None
    ia = _index_in(basis, ca) if basis.nrows else None
    ib = _index_in(basis, cb) if basis.nrows else None
    return MeetJoin(meet, join, ia, ib)


def contains(lat: Lattice, v: Sequence) -> bool:
    """Is the root-parent vector ``v`` in ``lat``?"""
    x = lat.to_coords(v)
    return x is not None and all(c.denominator == 1 for c in x)


def is_sqrt(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


__all__ = [
    "Lattice", "dual", "DiscriminantGroup", "discriminant_group", "Classification",
    "classify", "lll", "lll_gram", "gram_schmidt", "MeetJoin", "meet_join",
    "contains", "is_prime", "hnf_basis",
]
