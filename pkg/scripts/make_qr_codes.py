"""Regenerate the extended ternary quadratic residue code fixtures.

Factors x^q - 1 over F_3, takes the cyclic code generated by a degree
(q-1)/2 factor, extends it to a self-dual code of length q+1 and rescales
coordinates so the all-ones word is a codeword. Needs sympy (not a runtime
dependency of the package).

    python scripts/make_qr_codes.py 11 src/unilat/data/golay12.code
    python scripts/make_qr_codes.py 23 src/unilat/data/qr24.code
"""

import sys

from sympy import Poly, factor_list, symbols

from unilat.codes import LinearCode, is_self_dual, min_weight
from unilat.formats import format_code

P = 3


def qr_generator(q):
    x = symbols("x")
    _, factors = factor_list(x ** q - 1, modulus=P)
    g = next(f for f, _ in factors if Poly(f, x).degree() == (q - 1) // 2)
    coeffs = [int(c) % P for c in reversed(Poly(g, x, modulus=P).all_coeffs())]
    rows = []
    for shift in range(q - len(coeffs) + 1):
        row = [0] * q
        for i, c in enumerate(coeffs):
            row[shift + i] = c
        rows.append(row)
    return rows


def extended(q):
    rows = qr_generator(q)
    for sign in (1, -1):
        ext = [r + [(-sign * sum(r)) % P] for r in rows]
        code = LinearCode(P, ext)
        if is_self_dual(code):
            return code
    raise RuntimeError("no self-dual extension")


def with_all_ones(code):
    full = next(w for w in code.codewords() if all(w))
    scale = [1 if c == 1 else -1 for c in full]
    return LinearCode(P, [[(a * s) % P for a, s in zip(r, scale)] for r in code.generator])


if __name__ == "__main__":
    q, path = int(sys.argv[1]), sys.argv[2]
    code = with_all_ones(extended(q))
    assert is_self_dual(code) and tuple([1] * code.n) in code
    print(f"[{code.n},{code.k}] min weight {min_weight(code)}", file=sys.stderr)
    with open(path, "w") as fh:
        fh.write(format_code(code))
