"""Linear codes over Z/pZ and their code lattices."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InputError, LatticeError
from .exact import ExactMatrix, hnf_basis, is_prime, kernel, rref_mod_p
from .lattice import Lattice

MAX_MIN_WEIGHT_DIM = 13


class LinearCode:
    """A k-dimensional subspace of F_p^n, stored by its canonical RREF generator."""

    def __init__(self, p: int, generator: Sequence[Sequence[int]], n: int | None = None,
                 name: str | None = None):
        if not is_prime(p):
            raise InputError(f"code alphabet size {p} is not prime")
        rows = [list(r) for r in generator]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise InputError("ragged generator matrix")
            if n is not None and n != width:
                raise InputError(f"generator has length {width}, expected {n}")
            n = width
        elif n is None:
            raise InputError("empty generator needs an explicit length")
        rref, self.pivots = rref_mod_p(rows, p) if rows else ([], [])
        self.p = p
        self.n = n
        self.generator = tuple(tuple(r) for r in rref)
        self.name = name

    @property
    def k(self) -> int:
        return len(self.generator)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.p, self.n, self.generator) == (other.p, other.n, other.generator)

    def __hash__(self):
        return hash((self.p, self.n, self.generator))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LinearCode{tag} [{self.n},{self.k}] over F_{self.p}>"

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        word = [0] * self.n
        for c, row in zip(message, self.generator):
            if c:
                for j, g in enumerate(row):
                    word[j] = (word[j] + c * g) % p
        return tuple(word)

    def __contains__(self, word: Sequence[int]) -> bool:
        word = [int(w) % self.p for w in word]
        if len(word) != self.n:
            return False
        msg = [word[c] for c in self.pivots]
        return self.encode(msg) == tuple(word)

    def codewords(self):
        for msg in product(range(self.p), repeat=self.k):
            yield self.encode(msg)


def dual_code(code: LinearCode) -> LinearCode:
    """``C^perp`` under the standard dot product mod p."""
    if code.k == 0:
        return LinearCode(code.p, ExactMatrix.identity(code.n).to_int_rows(), code.n)
    ker = kernel(ExactMatrix(code.generator), modulus=code.p)
    return LinearCode(code.p, ker.to_int_rows(), code.n)


def is_self_orthogonal(code: LinearCode) -> bool:
    p = code.p
    g = code.generator
    return all(sum(a * b for a, b in zip(g[i], g[j])) % p == 0
               for i in range(code.k) for j in range(i, code.k))


def is_self_dual(code: LinearCode) -> bool:
    return 2 * code.k == code.n and is_self_orthogonal(code)


def min_weight(code: LinearCode) -> int:
    """Minimum Hamming weight of a nonzero codeword.

    Messages are visited by increasing support size. The generator is
    systematic on its pivot columns, so a message of weight w yields a word of
    weight at least w and the search stops once w reaches the best weight.
    Messages are normalised to a leading 1 (scalar multiples share weights).
    """
    if code.k == 0:
        raise LatticeError("no nonzero codewords")
    if code.k > MAX_MIN_WEIGHT_DIM:
        raise BudgetExceeded(f"min weight enumeration limited to k <= {MAX_MIN_WEIGHT_DIM}")
    p, k = code.p, code.k
    g = np.array(code.generator, dtype=np.int64)
    best = code.n + 1
    for w in range(1, k + 1):
        if w >= best:
            break
        tails = np.array(list(product(range(1, p), repeat=w - 1)), dtype=np.int64).reshape(
            (p - 1) ** (w - 1), w - 1)
        coeffs = np.hstack([np.ones((len(tails), 1), dtype=np.int64), tails])
        for support in combinations(range(k), w):
            words = (coeffs @ g[list(support)]) % p
            wmin = int(np.count_nonzero(words, axis=1).min())
            if wmin < best:
                best = wmin
    return best


def weight_distribution(code: LinearCode) -> dict[int, int]:
    """Number of codewords of each weight (full enumeration; small k only)."""
    if code.k > MAX_MIN_WEIGHT_DIM:
        raise BudgetExceeded(f"weight distribution limited to k <= {MAX_MIN_WEIGHT_DIM}")
    p = code.p
    g = np.array(code.generator, dtype=np.int64).reshape(code.k, code.n)
    counts: dict[int, int] = {}
    msgs = np.array(list(product(range(p), repeat=code.k)), dtype=np.int64).reshape(p ** code.k, code.k)
    for start in range(0, len(msgs), 1 << 16):
        words = (msgs[start:start + (1 << 16)] @ g) % p
        w, c = np.unique(np.count_nonzero(words, axis=1), return_counts=True)
        for a, b in zip(w, c):
            counts[int(a)] = counts.get(int(a), 0) + int(b)
    return dict(sorted(counts.items()))


# --------------------------------------------------------------------------
# code lattices


def frame_lattice(n: int, p: int) -> Lattice:
    """The p-frame ``sqrt(p) Z^n``: Gram ``p I_n``."""
    return Lattice(ExactMatrix.identity(n).scale(p), name=f"{p}-frame^{n}")


def construction_a(code: LinearCode) -> Lattice:
    """``A_p(C) = {(1/p) sum c_i e_i : c mod p in C}`` in frame coordinates.

    The basis is the HNF of the lifted generators stacked with ``p I_n``,
    scaled by 1/p; the parent is the frame lattice with Gram ``p I_n``.
    """
    p, n = code.p, code.n
    gens = [list(r) for r in code.generator] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    basis = hnf_basis(gens, n)
    coords = ExactMatrix(([Fraction(x, p) for x in r] for r in basis), ncols=n)
    gram = ExactMatrix(([Fraction(sum(a * b for a, b in zip(r, s)), p) for s in basis] for r in basis), ncols=n)
    return Lattice(gram, coords, frame_lattice(n, p), check=False,
                   name=f"A_{p}({code.name})" if code.name else None)


def _check_frame(lat: Lattice, frame: ExactMatrix, p: int):
    n = lat.dim
    if frame.shape != (n, n):
        raise LatticeError(f"a frame needs {n} vectors of length {n}")
    if not frame.is_integral():
        raise LatticeError("frame vectors are not in the lattice")
    fg = frame @ lat.gram @ frame.T
    for i in range(n):
        for j in range(n):
            want = p if i == j else 0
            if fg[i, j] != want:
                raise LatticeError("frame vectors are not pairwise orthogonal of norm p")


def frame_extract(lat: Lattice, frame, p: int) -> LinearCode:
    """The code C with ``A_p(C) = L`` relative to the given p-frame.

    ``frame`` rows are lattice vectors in basis coordinates. ``None`` asks
    ``find_frame`` for one.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if frame is None:
        frame = find_frame(lat, p)
        if frame is None:
            raise LatticeError(f"lattice has no orthogonal frame of norm-{p} vectors")
    frame = ExactMatrix(frame)
    _check_frame(lat, frame, p)
    # coordinate of basis vector k along e_i is (b_k, e_i) / p
    pairing = lat.gram @ frame.T
    if not pairing.is_integral():
        raise LatticeError("lattice is not contained in the dual of the frame lattice")
    words = [[x % p for x in r] for r in pairing.to_int_rows()]
    code = LinearCode(p, [w for w in words if any(w)], lat.dim)
    if lat.det != Fraction(p) ** (lat.dim - 2 * code.k):
        raise LatticeError("lattice is not a code lattice over this frame")
    return code


def find_frame(lat: Lattice, p: int, budget: int = 2_000_000) -> list[tuple[int, ...]] | None:
    """n pairwise orthogonal vectors of norm p, or None when there are none.

    Depth-first clique search over the norm-p pairs (bitset candidate sets,
    fixed enumeration order) so the result is deterministic.
    """
    from .enumeration import short_vectors

    n = lat.dim
    cands = [v for v, s in short_vectors(lat, p) if s == p]
    if len(cands) < n:
        return None
    den = lat.gram.denominator()
    gint = [[int(x * den) for x in r] for r in lat.gram.rows]
    big = max(abs(c) for v in cands for c in v) ** 2 * max(abs(x) for r in gint for x in r) * n * n
    dtype = np.int64 if big < 2 ** 62 else object
    v = np.array(cands, dtype=dtype)
    ip = v @ np.array(gint, dtype=dtype) @ v.T
    m = len(cands)
    adj = [int.from_bytes(np.packbits(ip[i] == 0, bitorder="little").tobytes(), "little")
           for i in range(m)]
    nodes = 0

    def dfs(chosen, allowed):
        nonlocal nodes
        if len(chosen) == n:
            return chosen
        if bin(allowed).count("1") < n - len(chosen):
            return None
        while allowed:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("frame search budget exceeded", nodes)
            low = allowed & -allowed
            i = low.bit_length() - 1
            allowed ^= low
            res = dfs(chosen + [i], allowed & adj[i])
            if res is not None:
                return res
            if bin(allowed).count("1") < n - len(chosen):
                return None
        return None

    found = dfs([], (1 << m) - 1)
    if found is None:
        return None
    return [cands[i] for i in found]


def standard_frame(lat: Lattice) -> list[tuple[int, ...]]:
    """The parent frame vectors ``e_i`` written in the basis of a code lattice."""
    if lat.coords is None:
        raise LatticeError("lattice carries no frame coordinates")
    inv = lat.coords.inverse()
    if not inv.is_integral():
        raise LatticeError("frame vectors are not in the lattice")
    return [tuple(r) for r in inv.to_int_rows()]
