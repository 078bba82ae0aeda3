"""Kneser 2-neighbours and the ternary-code construction of even lattices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .codes import LinearCode, construction_a, is_self_dual
from .errors import InputError, LatticeError
from .exact import ExactMatrix, row_basis
from .lattice import Lattice


def two_neighbor(lat: Lattice, v: Sequence[int]) -> Lattice:
    """``L^{(v),2} = <{l in L : (v, l) even} u {v/2}>``.

    ``v`` is given in the basis of ``lat``; the result is written in the same
    parent coordinates as ``lat`` (or with ``lat`` as parent).
    """
    n = lat.dim
    if len(v) != n:
        raise InputError("neighbour vector has the wrong length")
    if any(Fraction(c).denominator != 1 for c in v):
        raise LatticeError("neighbour vector is not in the lattice")
    v = [int(c) for c in v]
    if not lat.is_integral:
        raise LatticeError("2-neighbours need an integral lattice")
    vv = lat.norm(v)
    if vv.numerator % 4 != 0:
        raise LatticeError(f"(v, v) = {vv} is not a multiple of 4")
    gv = [int(x) for x in lat.gram.vecmul(v)]
    w = [x % 2 for x in gv]
    if not any(w):
        raise LatticeError("degenerate neighbour vector: v lies in 2 L^#")
    j = w.index(1)
    # {x : w . x even} has basis 2 e_j and e_i - w_i e_j (i != j)
    gens = []
    for i in range(n):
        row = [0] * n
        if i == j:
            row[j] = 2
        else:
            row[i] = 1
            row[j] = -w[i]
        gens.append(row)
    gens.append([Fraction(c, 2) for c in v])
    basis = row_basis(ExactMatrix(gens, ncols=n))
    return lat.sublattice(basis)


def koch_lambda(code: LinearCode, literal: bool = False) -> Lattice:
    """The 2-neighbour of ``A_3(C)`` along ``v = (1/3)(e_1 + ... + e_n)``.

    Requires a self-dual ternary code containing the all-ones word and
    length divisible by 12 so that ``(v, v) = n/3`` is a multiple of 4.

    Both ``v`` and ``v - 2 e_1`` cut out the same even sublattice
    ``{x : (x, v) even}``, but the neighbour built from ``v`` itself contains
    ``v/2`` of norm ``n/12`` (2 at length 24). By default the glue vector is
    ``v - 2 e_1``, whose half has norm ``n/12 + 2``; this is the neighbour
    that gives the Leech lattice at length 24. ``literal=True`` uses ``v``.
    """
    if code.p != 3:
        raise LatticeError("the construction needs a ternary code")
    if not is_self_dual(code):
        raise LatticeError("code is not self-dual")
    if code.n % 12:
        raise LatticeError(f"neighbour vector norm {Fraction(code.n, 3)} not = 0 mod 4 (length {code.n})")
    if tuple([1] * code.n) not in code:
        raise LatticeError("all-ones word is not in the code; pass an equivalent code containing it")
    a3 = construction_a(code)
    ones = [Fraction(1, 3)] * code.n
    if not literal:
        ones[0] -= 2
    x = a3.to_coords(ones)
    if x is None or any(c.denominator != 1 for c in x):
        raise LatticeError("v is not in A_3(C)")
    out = two_neighbor(a3, [int(c) for c in x])
    out.name = f"Lambda({code.name})" if code.name else None
    return out
