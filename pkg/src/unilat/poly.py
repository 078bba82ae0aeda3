"""Dense univariate polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exact import ExactMatrix, as_matrix


def trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pdivmod(a: list, b: list) -> tuple[list, list]:
    """Division by a polynomial with leading coefficient +-1 (or over Q)."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1]
        if c:
            c = c // lead if isinstance(c, int) and c % lead == 0 else Fraction(c) / lead
            q[k] = c
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return trim(q), trim(r)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = pdivmod(num, list(cyclotomic_poly(d)))
            assert not r
    return tuple(int(c) for c in num)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def charpoly(m) -> list:
    """Characteristic polynomial ``det(xI - M)`` (Faddeev-LeVerrier, exact)."""
    m = as_matrix(m)
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = ExactMatrix.identity(n)
    mk = ExactMatrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(coeffs[n - k + 1]))
        tr = sum((mk[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return [int(c) if c.denominator == 1 else c for c in coeffs]


def eval_matrix(poly: list, m) -> ExactMatrix:
    """``poly(M)`` by Horner's rule."""
    m = as_matrix(m)
    n = m.nrows
    out = ExactMatrix.zeros(n, n)
    ident = ExactMatrix.identity(n)
    for c in reversed(poly):
        out = out @ m + ident.scale(c)
    return out
