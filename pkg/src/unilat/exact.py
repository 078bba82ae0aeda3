"""Exact dense linear algebra over the integers and the rationals.

Lattices are row spans throughout: a basis is a matrix whose rows are the
basis vectors, Hermite normal forms are row-style (upper echelon), and a
vector ``x`` expressed in a basis ``B`` is the row vector with ``x @ B``
equal to the vector itself.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InputError("floating point entries are not allowed in exact matrices")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class ExactMatrix:
    """Immutable dense matrix of Fractions, stored row-major in lowest terms."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise InputError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise InputError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diag(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    # access -------------------------------------------------------------

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return self.nrows

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    # predicates ---------------------------------------------------------

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def denominator(self) -> int:
        """Least common denominator of all entries."""
        return reduce(lcm, (x.denominator for r in self._rows for x in r), 1)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise InputError("matrix has non-integer entries")
        return [[x.numerator for x in r] for r in self._rows]

    # algebra ------------------------------------------------------------

    @property
    def T(self) -> "ExactMatrix":
        if self.nrows == 0:
            return ExactMatrix([[] for _ in range(self.ncols)], ncols=0)
        if self.ncols == 0:
            return ExactMatrix.zeros(0, self.nrows)
        return ExactMatrix(zip(*self._rows), ncols=self.nrows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        out = [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows]
        return ExactMatrix(out, ncols=other.ncols)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise InputError("shape mismatch in addition")
        return ExactMatrix(([a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)), ncols=self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(([-a for a in r] for r in self._rows), ncols=self.ncols)

    def scale(self, c) -> "ExactMatrix":
        c = _frac(c)
        return ExactMatrix(([c * a for a in r] for r in self._rows), ncols=self.ncols)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square() or k < 0:
            raise InputError("matrix power needs a square matrix and k >= 0")
        result, base = ExactMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def vecmul(self, v: Sequence) -> tuple[Fraction, ...]:
        """Row vector times matrix, ``v @ self``."""
        if len(v) != self.nrows:
            raise InputError("vector length mismatch")
        v = [_frac(x) for x in v]
        return tuple(sum((v[i] * self._rows[i][j] for i in range(self.nrows) if v[i]), Fraction(0))
                     for j in range(self.ncols))

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise InputError("column mismatch in stack")
        return ExactMatrix(self._rows + other._rows, ncols=self.ncols)

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise InputError("inverse of a non-square matrix")
        n = self.nrows
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                raise InputError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return ExactMatrix((r[n:] for r in a), ncols=n)

    def det(self) -> Fraction:
        return det_exact(self)

    def rank(self) -> int:
        return len(_echelon_q([list(r) for r in self._rows]))

    # comparison / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


# integer normal forms ---------------------------------------------------


def _hnf_rows(a: list[list[int]], track: bool = True):
    """In-place row-style HNF of an integer matrix; returns (H, U)."""
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                if track:
                    u[r], u[piv] = u[piv], u[r]
            p = a[r][c]
            clean = True
            for i in range(r + 1, m):
                if not a[i][c]:
                    continue
                q = a[i][c] // p
                if q:
                    ar = a[r]
                    a[i] = [x - q * y for x, y in zip(a[i], ar)]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                if a[i][c] != 0:
                    clean = False
            if clean:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                if track:
                    u[r] = [-x for x in u[r]]
            p = a[r][c]
            for i in range(r):
                q = a[i][c] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return a, u


def hnf(m) -> tuple[ExactMatrix, ExactMatrix]:
    """Row-style Hermite normal form ``H = U @ M`` with ``U`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows collect at the bottom.

    >>> H, U = hnf([[2, 4], [2, 1]])
    >>> H.to_int_rows()
    [[2, 1], [0, 3]]
    """
    m = as_matrix(m)
    rows = m.to_int_rows()
    h, u = _hnf_rows(rows)
    return ExactMatrix(h, ncols=m.ncols), ExactMatrix(u, ncols=m.nrows)


def hnf_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Nonzero rows of the HNF of an integer generating set."""
    if not rows:
        return []
    h, _ = _hnf_rows([list(map(int, r)) for r in rows], track=False)
    return [r for r in h if any(r)]


def snf(m) -> tuple[int, ...]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix, r = rank."""
    m = as_matrix(m)
    a = m.to_int_rows()
    rows, cols = m.nrows, m.ncols
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    changed = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    changed = True
            if changed:
                nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols)
                      if a[i][j] and (i == t or j == t)]
                _, pi, pj = min(nz)
                a[t], a[pi] = a[pi], a[t]
                for r in a:
                    r[t], r[pj] = r[pj], r[t]
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return tuple(out)


def det_exact(m) -> Fraction:
    """Exact determinant (fraction-free Bareiss on the cleared-denominator matrix)."""
    m = as_matrix(m)
    if not m.is_square():
        raise InputError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    d = m.denominator()
    a = [[(x * d).numerator for x in r] for r in m.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], d ** n)


# kernels and echelon forms ------------------------------------------------


def _echelon_q(a: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form over Q; returns pivot columns."""
    m = len(a)
    n = len(a[0]) if m else 0
    pivots, r = [], 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; zero rows dropped."""
    if not is_prime(p):
        raise InputError(f"modulus {p} is not prime")
    a = [[int(x) % p for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots, r = [], 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def _nullspace_from_rref(rref: list[list], pivots: list[int], n: int, p: int | None):
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(rref, pivots):
            v[c] = (-row[f]) % p if p else -row[f]
        basis.append(v)
    return basis


def kernel(m, modulus: int | None = None) -> ExactMatrix:
    """Basis rows of the right kernel ``{x : M x = 0}``.

    Over Q the rows are a Z-basis of the saturated lattice ``ker(M) ∩ Z^n``
    (hence primitive), returned in HNF. With a prime ``modulus`` the kernel is
    taken over F_p and returned in reduced echelon form.
    """
    m = as_matrix(m)
    n = m.ncols
    if modulus is not None:
        if not m.is_integral():
            raise InputError("mod-p kernel needs an integer matrix")
        rref, piv = rref_mod_p(m.to_int_rows(), modulus)
        basis = _nullspace_from_rref(rref, piv, n, modulus)
        basis, _ = rref_mod_p(basis, modulus) if basis else ([], [])
        return ExactMatrix(basis, ncols=n)
    if m.nrows == 0:
        return ExactMatrix.identity(n)
    d = m.denominator()
    mt = [[(m.rows[i][j] * d).numerator for i in range(m.nrows)] for j in range(n)]
    h, u = _hnf_rows(mt)
    basis = [u[i] for i in range(n) if not any(h[i])]
    return ExactMatrix(hnf_basis(basis, n), ncols=n)


def left_kernel(m, modulus: int | None = None) -> ExactMatrix:
    """Basis rows of ``{x : x M = 0}``."""
    return kernel(as_matrix(m).T, modulus)


def row_basis(gens, ncols: int | None = None) -> ExactMatrix:
    """Z-basis (HNF-canonical) of the Z-span of rational generator rows."""
    g = as_matrix(gens) if not isinstance(gens, ExactMatrix) else gens
    width = g.ncols if ncols is None else ncols
    if g.nrows == 0:
        return ExactMatrix.zeros(0, width)
    d = g.denominator()
    ints = [[(x * d).numerator for x in r] for r in g.rows]
    h = hnf_basis(ints, width)
    return ExactMatrix(([Fraction(x, d) for x in r] for r in h), ncols=width)


def solve_left(basis: ExactMatrix, v: Sequence) -> tuple[Fraction, ...] | None:
    """Rational ``x`` with ``x @ basis == v`` for a full-row-rank basis, or None."""
    k, n = basis.shape
    aug = [list(basis.col(j)) + [_frac(v[j])] for j in range(n)]
    piv = _echelon_q(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(aug, piv):
        x[c] = row[k]
    return tuple(x)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(int(x)) for x in v), 0)
    return tuple(int(x) // g for x in v) if g else tuple(int(x) for x in v)
