"""Isometry testing for small lattices: invariant fingerprint, then a
backtracking search for images of a reduced basis among short vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded
from .exact import ExactMatrix
from .lattice import Lattice, lll_gram

DEFAULT_CAP = 12
THETA_LAYERS = 3


@dataclass
class IsometryResult:
    status: str  # "yes" | "no" | "inconclusive"
    matrix: ExactMatrix | None = None  # T with T @ B.gram @ T.T == A.gram
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"

    def __str__(self):
        return self.status + (f" ({self.reason})" if self.reason else "")


def fingerprint(lat: Lattice, bound, layers: int = THETA_LAYERS, budget: int | None = None) -> tuple:
    from .enumeration import theta_prefix

    return (lat.dim, lat.det, lat.is_integral, lat.is_even,
            tuple(theta_prefix(lat, bound, layers, budget=budget)))


def is_isometric(a: Lattice, b: Lattice, cap: int = DEFAULT_CAP,
                 budget: int = 5_000_000) -> IsometryResult:
    from .enumeration import short_vectors

    if a.dim != b.dim:
        return IsometryResult("no", reason="dimensions differ")
    if a.det != b.det:
        return IsometryResult("no", reason="determinants differ")
    if (a.is_integral, a.is_even) != (b.is_integral, b.is_even):
        return IsometryResult("no", reason="parity differs")
    n = a.dim
    if n > cap:
        return IsometryResult("inconclusive", reason="dimension cap")
    if n == 0:
        return IsometryResult("yes", ExactMatrix.zeros(0, 0))
    red_a, u = lll_gram(a.gram)
    red_b, _ = lll_gram(b.gram)
    bound = max(max(red_a[i, i] for i in range(n)), max(red_b[i, i] for i in range(n)))
    try:
        if fingerprint(a, bound, budget=budget) != fingerprint(b, bound, budget=budget):
            return IsometryResult("no", reason="theta series differ")
        cands = short_vectors(b, bound, expand=True, budget=budget)
    except BudgetExceeded:
        return IsometryResult("inconclusive", reason="enumeration budget")

    den = b.gram.denominator() * red_a.denominator()
    gb = [[int(x * den) for x in r] for r in b.gram.rows]
    target = [[int(x * den) for x in r] for r in red_a.rows]
    by_norm: dict[int, list] = {}
    for v, s in cands:
        gv = [sum(gb[i][j] * v[j] for j in range(n)) for i in range(n)]
        by_norm.setdefault(int(s * den), []).append((v, gv))

    chosen: list = []
    nodes = 0

    def search(i):
        nonlocal nodes
        if i == n:
            return True
        for v, gv in by_norm.get(target[i][i], ()):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("isometry search budget exceeded", nodes)
            if all(sum(x * y for x, y in zip(v, chosen[j][1])) == target[i][j] for j in range(i)):
                chosen.append((v, gv))
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    try:
        found = search(0)
    except BudgetExceeded:
        return IsometryResult("inconclusive", reason="search budget")
    if not found:
        return IsometryResult("no", reason="no basis images found")
    images = ExactMatrix([v for v, _ in chosen])
    t = u.inverse() @ images
    assert t @ b.gram @ t.T == a.gram
    return IsometryResult("yes", t)
