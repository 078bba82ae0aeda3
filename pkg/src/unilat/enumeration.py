"""Short vector enumeration (Fincke-Pohst on an LLL-reduced basis).

The search tree is pruned in floating point with a relative slack; every
vector it yields is then re-measured in exact integer arithmetic, so
minima, counts and norms returned here are exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, sqrt
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, LatticeError
from .exact import ExactMatrix
from .lattice import Lattice, gram_schmidt, lll_gram

# Leech-scale kissing counts (dim 24, norm 4) need a few million nodes.
DEFAULT_BUDGET = int(os.environ.get("UNILAT_BUDGET", 200_000_000))

_SLACK = 1e-9

try:
    if os.environ.get("UNILAT_NO_NUMBA"):
        raise ImportError
    from . import _fastenum
except ImportError:  # numba is optional
    _fastenum = None

# below this dimension the compiled kernel's call overhead is not worth it
_FAST_DIM = 6


@dataclass
class ShortVectorReport:
    """Exact minimum and number of minimal vectors (both signs counted).

    ``minimum`` is None when a cap was given and no nonzero vector has norm
    at most the cap.
    """

    minimum: Fraction | None
    count: int
    vectors: list[tuple[int, ...]] | None = None
    cap: Fraction | None = None

    def __str__(self):
        if self.minimum is None:
            return f"min > {self.cap}"
        return f"min {self.minimum}, {self.count} minimal vectors"


class _Prepared:
    """Reduced basis data cached on a lattice for repeated enumeration."""

    def __init__(self, lat: Lattice):
        reduced, t = lll_gram(lat.gram)
        self.t = t
        self.t_rows = [[int(x) for x in r] for r in t.rows]
        self._tinv = None
        self.reduced = reduced
        self.den = reduced.denominator()
        self.gint = [[int(x * self.den) for x in r] for r in reduced.rows]
        bs, mu = gram_schmidt(reduced)
        self.q = [float(b) for b in bs]
        n = lat.dim
        # cols[i][k] = mu[i+1+k][i]: coefficients feeding the center at level i
        self.cols = [[float(mu[j][i]) for j in range(i + 1, n)] for i in range(n)]
        self.min_diag = min(reduced[i, i] for i in range(n))

    @property
    def tinv(self) -> ExactMatrix:
        if self._tinv is None:
            self._tinv = self.t.inverse()
        return self._tinv

    def to_original(self, xs: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
        t = self.t_rows
        n = len(t)
        out = []
        for x in xs:
            v = [0] * n
            for i, c in enumerate(x):
                if c:
                    row = t[i]
                    for j in range(n):
                        v[j] += c * row[j]
            out.append(tuple(v))
        return out


def _prepared(lat: Lattice) -> _Prepared:
    prep = lat.__dict__.get("_enum_prep")
    if prep is None:
        prep = _Prepared(lat)
        lat.__dict__["_enum_prep"] = prep
    return prep


def _kernel(q, cols, radius, center, symmetric, budget):
    """Depth-first Fincke-Pohst. Returns candidate coefficient tuples."""
    n = len(q)
    if _fastenum is not None and n >= _FAST_DIM:
        out, nodes = _fastenum.kernel(q, cols, radius, center, symmetric, budget)
        if out is None:
            raise BudgetExceeded(f"enumeration budget exceeded ({budget} nodes)", nodes)
        return out
    out = []
    x = [0] * n
    y = [0.0] * n
    nodes = 0
    t = center

    def rec(i, rem, top):
        nonlocal nodes
        ci = t[i]
        if i < n - 1:
            s = 0.0
            for m, yy in zip(cols[i], y[i + 1:]):
                s += m * yy
            ci -= s
        r = sqrt(rem / q[i]) if rem > 0 else 0.0
        lo = ceil(ci - r)
        hi = floor(ci + r)
        if top and lo < 0:
            lo = 0
        if i == 0:
            if top and lo == 0:
                lo = 1
            if hi >= lo:
                nodes += hi - lo + 1
                tail = tuple(x[1:])
                for v in range(lo, hi + 1):
                    out.append((v,) + tail)
            return
        qi = q[i]
        ti = t[i]
        for v in range(lo, hi + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"enumeration budget exceeded ({budget} nodes)", nodes)
            d = v - ci
            x[i] = v
            y[i] = v - ti
            rec(i - 1, rem - qi * d * d, top and v == 0)
        x[i] = 0
        y[i] = 0.0

    rec(n - 1, radius, symmetric)
    if nodes > budget:
        raise BudgetExceeded(f"enumeration budget exceeded ({budget} nodes)", nodes)
    return out


def _exact_norms(gint: list[list[int]], xs: list[tuple[int, ...]]) -> list[int]:
    if not xs:
        return []
    n = len(gint)
    gmax = max((abs(v) for r in gint for v in r), default=0)
    xmax = max(abs(c) for x in xs for c in x)
    if n * n * gmax * xmax * xmax < 2 ** 62:
        arr = np.array(xs, dtype=np.int64)
        g = np.array(gint, dtype=np.int64)
        return [int(v) for v in np.einsum("ij,ij->i", arr @ g, arr)]
    out = []
    for x in xs:
        s = 0
        for i in range(n):
            if x[i]:
                row = gint[i]
                s += x[i] * sum(row[j] * x[j] for j in range(n) if x[j])
        out.append(s)
    return out


def _ball(lat: Lattice, bound: Fraction, center=None, budget: int | None = None):
    """Vectors (reduced coords) with ``|x - center|^2 <= bound`` and their exact
    scaled norms ``den * (x, x)``. Without a center, one vector per +-pair."""
    prep = _prepared(lat)
    budget = DEFAULT_BUDGET if budget is None else budget
    n = lat.dim
    if center is None:
        c = [0.0] * n
        symmetric = True
    else:
        c = [float(v) for v in prep.tinv.vecmul(center)]
        symmetric = False
    radius = float(bound) * (1 + _SLACK) + _SLACK
    xs = _kernel(prep.q, prep.cols, radius, c, symmetric, budget)
    return prep, xs, _exact_norms(prep.gint, xs)


def short_vectors(lat: Lattice, bound, expand: bool = False,
                  budget: int | None = None) -> list[tuple[tuple[int, ...], Fraction]]:
    """All ``v`` with ``0 < (v, v) <= bound`` in basis coordinates.

    One representative per +-pair unless ``expand``. Sorted by norm, then
    lexicographically.
    """
    if lat.dim == 0:
        raise LatticeError("empty lattice")
    bound = Fraction(bound)
    prep, xs, norms = _ball(lat, bound, budget=budget)
    lim = bound * prep.den
    keep = [(x, s) for x, s in zip(xs, norms) if s <= lim]
    vecs = prep.to_original([x for x, _ in keep])
    out = [(_canonical_sign(v), Fraction(s, prep.den)) for v, (_, s) in zip(vecs, keep)]
    if expand:
        out = out + [(tuple(-c for c in v), s) for v, s in out]
    out.sort(key=lambda e: (e[1], e[0]))
    return out


def _canonical_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def minimum(lat: Lattice, cap=None, with_vectors: bool = False,
            budget: int | None = None) -> ShortVectorReport:
    """Exact minimum and kissing count."""
    if lat.dim == 0:
        raise LatticeError("empty lattice")
    prep = _prepared(lat)
    bound = prep.min_diag
    if cap is not None:
        cap = Fraction(cap)
        bound = min(bound, cap)
    _, xs, norms = _ball(lat, bound, budget=budget)
    lim = bound * prep.den
    found = [(x, s) for x, s in zip(xs, norms) if 0 < s <= lim]
    if not found:
        return ShortVectorReport(None, 0, [] if with_vectors else None, cap)
    m = min(s for _, s in found)
    at_min = [x for x, s in found if s == m]
    vecs = None
    if with_vectors:
        vecs = sorted(_canonical_sign(v) for v in prep.to_original(at_min))
    return ShortVectorReport(Fraction(m, prep.den), 2 * len(at_min), vecs, cap)


def count_slice(lat: Lattice, beta: Sequence, vector_norm, ip,
                budget: int | None = None) -> int:
    """``#{x in L : (x, x) = vector_norm, (x, beta) = ip}``.

    Enumerates the ball around ``t * beta`` with ``t = ip / (beta, beta)``:
    on that slice ``|x - t beta|^2`` is the constant ``N - ip^2 / (beta, beta)``.
    """
    vector_norm, ip = Fraction(vector_norm), Fraction(ip)
    bb = lat.norm(beta)
    if bb == 0:
        if ip != 0:
            return 0
        return 2 * len([v for v, s in short_vectors(lat, vector_norm, budget=budget) if s == vector_norm])
    t = ip / bb
    radius = vector_norm - ip * ip / bb
    if radius < 0:
        return 0
    center = [t * Fraction(b) for b in beta]
    prep, xs, norms = _ball(lat, radius, center, budget)
    target = vector_norm * prep.den
    cand = [x for x, s in zip(xs, norms) if s == target]
    count = 0
    gb = lat.gram.vecmul(beta)
    for v in prep.to_original(cand):
        if sum((Fraction(a) * b for a, b in zip(v, gb) if a), Fraction(0)) == ip:
            count += 1
    return count


def theta_prefix(lat: Lattice, bound, layers: int | None = None,
                 budget: int | None = None) -> list[tuple[Fraction, int]]:
    """``(norm, number of vectors)`` for the nonzero norms up to ``bound``."""
    counts: dict[Fraction, int] = {}
    for _, s in short_vectors(lat, bound, budget=budget):
        counts[s] = counts.get(s, 0) + 2
    out = sorted(counts.items())
    return out[:layers] if layers is not None else out
