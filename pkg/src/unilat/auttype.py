"""Prime-order automorphisms: fixed/image splitting, the type p-(z,d)-s,
its structural laws, cyclotomic factorisation, and the bound/parity scan.

Matrices act on row vectors of basis coordinates: ``x -> x @ sigma``, so
``sigma`` is an isometry when ``sigma @ gram @ sigma.T == gram``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import exists_possible
from .errors import InputError, LatticeError
from .exact import ExactMatrix, as_matrix, det_exact, is_prime, left_kernel, solve_left
from .lattice import Lattice, discriminant_group
from .poly import charpoly, cyclotomic_poly, divisors, eval_matrix, pdivmod, pmul

DEFAULT_ORDER_CAP = 10_000


@dataclass(frozen=True, order=True)
class AutomorphismType:
    p: int
    z: int
    d: int
    s: int

    @property
    def dim(self) -> int:
        return self.d + self.z * (self.p - 1)

    @property
    def index_law(self) -> bool:
        """``s <= min(z, d)``."""
        return 0 <= self.s <= min(self.z, self.d)

    @property
    def parity_law(self) -> bool | None:
        """``z - s`` even; None at p = 2 where the law is not applied."""
        if self.p == 2:
            return None
        return (self.z - self.s) % 2 == 0

    def __str__(self):
        return f"{self.p}-({self.z},{self.d})-{self.s}"


def check_automorphism(lat: Lattice, sigma, cap: int = DEFAULT_ORDER_CAP) -> int:
    """Order of ``sigma`` after checking it is an integral isometry of ``lat``."""
    sigma = as_matrix(sigma)
    if sigma.shape != (lat.dim, lat.dim):
        raise InputError(f"sigma must be {lat.dim}x{lat.dim}")
    if not sigma.is_integral():
        raise InputError("sigma must have integer entries")
    if sigma @ lat.gram @ sigma.T != lat.gram:
        raise LatticeError("sigma does not preserve the Gram matrix")
    if abs(det_exact(sigma)) != 1:
        raise LatticeError("sigma is not invertible over Z")
    ident = ExactMatrix.identity(lat.dim)
    power = sigma
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power @ sigma
    raise LatticeError(f"order of sigma exceeds {cap}")


@dataclass
class Split:
    fixed: Lattice  # L_K = L cap ker(sigma - 1)
    image: Lattice  # L_I = L cap im(sigma - 1)
    s: int
    type: AutomorphismType
    fixed_basis: ExactMatrix  # rows in the basis of L
    image_basis: ExactMatrix


def _norm_map(sigma: ExactMatrix, p: int) -> ExactMatrix:
    out = ExactMatrix.identity(sigma.nrows)
    power = out
    for _ in range(p - 1):
        power = power @ sigma
        out = out + power
    return out


def _p_exponent(n: int, p: int) -> int | None:
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    return e if n == 1 else None


def split_fix_image(lat: Lattice, sigma, p: int) -> Split:
    """Decompose ``L`` along the fixed space and the image of ``sigma - 1``."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    sigma = as_matrix(sigma)
    order = check_automorphism(lat, sigma, cap=p)
    if order != p:
        raise LatticeError(f"sigma has order {order}, not {p}")
    n = lat.dim
    ident = ExactMatrix.identity(n)
    norm_map = _norm_map(sigma, p)
    kb = left_kernel(sigma - ident)
    # for order p, im(sigma - 1) = ker(1 + sigma + ... + sigma^(p-1)) over Q
    ib = left_kernel(norm_map)
    d, rank_i = kb.nrows, ib.nrows
    if d + rank_i != n or rank_i % (p - 1):
        raise LatticeError("internal: fixed and image ranks inconsistent")
    z = rank_i // (p - 1)
    index = abs(det_exact(kb.stack(ib))).numerator
    s = _p_exponent(index, p)
    if s is None:
        raise LatticeError(f"internal: index {index} is not a power of {p}")
    # cross-check with pi_K = norm_map / p: p x = x N + x (p - N) with x N in L_K
    for row in ExactMatrix.identity(n).rows:
        fixed_part = norm_map.vecmul(row)
        rest = [p * a - b for a, b in zip(row, fixed_part)]
        if _coords(kb, fixed_part) is None or _coords(ib, rest) is None:
            raise LatticeError("internal: p L is not inside L_K + L_I")
    fixed = lat.sublattice(kb) if d else None
    image = lat.sublattice(ib) if rank_i else None
    return Split(fixed, image, s, AutomorphismType(p, z, d, s), kb, ib)


def _coords(basis: ExactMatrix, v) -> tuple | None:
    if basis.nrows == 0:
        return () if not any(v) else None
    x = solve_left(basis, v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return x


@dataclass
class TypeLawReport:
    type: AutomorphismType
    laws: dict = field(default_factory=dict)  # name -> "pass" | "fail" | "not applicable" | "skipped"

    @property
    def ok(self) -> bool:
        return all(v != "fail" for v in self.laws.values())

    def __str__(self):
        lines = [f"type {self.type}"]
        lines += [f"  {k}: {v}" for k, v in self.laws.items()]
        return "\n".join(lines)


def verify_type_laws(lat: Lattice, sigma, p: int) -> TypeLawReport:
    sp = split_fix_image(lat, sigma, p)
    t = sp.type
    rep = TypeLawReport(t)
    rep.laws["index [L : L_K + L_I] = p^s"] = "pass"
    rep.laws["s <= min(z, d)"] = "pass" if t.index_law else "fail"
    if lat.is_unimodular:
        want = (p,) * t.s
        got = []
        for part in (sp.fixed, sp.image):
            inv = () if part is None else discriminant_group(part).invariant_factors
            got.append(tuple(inv))
        rep.laws["L_K^#/L_K = L_I^#/L_I = (Z/p)^s"] = "pass" if got == [want, want] else "fail"
    else:
        rep.laws["L_K^#/L_K = L_I^#/L_I = (Z/p)^s"] = "not applicable"
    if t.parity_law is None:
        rep.laws["z - s even"] = "skipped"
    else:
        rep.laws["z - s even"] = "pass" if t.parity_law else "fail"
    sigma = as_matrix(sigma)
    fixes = sp.fixed_basis.nrows == 0 or sp.fixed_basis @ sigma == sp.fixed_basis
    rep.laws["sigma fixes L_K"] = "pass" if fixes else "fail"
    if sp.image_basis.nrows:
        no_fixed = left_kernel(sp.image_basis @ sigma - sp.image_basis).nrows == 0
    else:
        no_fixed = True
    rep.laws["no fixed vectors in L_I"] = "pass" if no_fixed else "fail"
    return rep


# --------------------------------------------------------------------------
# cyclotomic factorisation


@dataclass
class CycloFactorization:
    order: int
    factors: list  # (d, multiplicity) with multiplicity > 0, increasing d
    phi_order_divides_minpoly: bool

    def __str__(self):
        parts = " * ".join(f"Phi_{d}^{a}" if a > 1 else f"Phi_{d}" for d, a in self.factors)
        flag = "yes" if self.phi_order_divides_minpoly else "no"
        return f"order {self.order}\ncharpoly = {parts}\nPhi_{self.order} divides minpoly: {flag}"


def matrix_order(sigma, cap: int = DEFAULT_ORDER_CAP) -> int:
    sigma = as_matrix(sigma)
    if not sigma.is_square():
        raise InputError("matrix must be square")
    ident = ExactMatrix.identity(sigma.nrows)
    power = sigma
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power @ sigma
    raise LatticeError(f"matrix has no finite order <= {cap}")


def cyclo_factor(sigma, cap: int = DEFAULT_ORDER_CAP) -> CycloFactorization:
    """Factor the characteristic polynomial of a finite-order matrix into
    cyclotomic polynomials."""
    sigma = as_matrix(sigma)
    order = matrix_order(sigma, cap)
    rest = charpoly(sigma)
    factors = []
    for d in divisors(order):
        phi = list(cyclotomic_poly(d))
        a = 0
        while True:
            q, r = pdivmod(rest, phi)
            if r:
                break
            rest, a = q, a + 1
        if a:
            factors.append((d, a))
    if rest != [1]:
        raise LatticeError("internal: characteristic polynomial is not a product of cyclotomics")
    # finite order => semisimple over Q, so the minimal polynomial is the
    # product of the distinct factors; confirm by evaluation
    minpoly = [1]
    for d, _ in factors:
        minpoly = pmul(minpoly, list(cyclotomic_poly(d)))
    if eval_matrix(minpoly, sigma) != ExactMatrix.zeros(sigma.nrows, sigma.nrows):
        raise LatticeError("internal: product of cyclotomic factors does not annihilate sigma")
    return CycloFactorization(order, factors, any(d == order for d, _ in factors))


# --------------------------------------------------------------------------
# type scanner


@dataclass(frozen=True)
class ScanRow:
    type: AutomorphismType
    status: str  # "allowed" | "excluded-by-parity" | "excluded-by-bound"
    side: str | None = None  # "fixed" | "image" for bound exclusions
    note: str = ""

    @property
    def fixed_dim(self) -> int:
        return self.type.d

    @property
    def fixed_det(self) -> int:
        return self.type.p ** self.type.s


def _primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def scan_types(n: int, required_min, p: int | None = None) -> list[ScanRow]:
    """All types p-(z,d)-s of an order-p automorphism of an n-dimensional
    even unimodular lattice with minimum ``required_min``, filtered by
    parity (odd p) and by the bounds on both the fixed and image lattices.
    Classification arguments are never used."""
    if n <= 0 or Fraction(required_min) <= 0:
        raise InputError("dimension and minimum must be positive")
    primes = [p] if p is not None else _primes_upto(n + 1)
    if p is not None and not is_prime(p):
        raise InputError(f"{p} is not prime")
    rows = []
    for q in primes:
        for z in range(1, n // (q - 1) + 1):
            d = n - z * (q - 1)
            for s in range(0, min(z, d) + 1):
                t = AutomorphismType(q, z, d, s)
                det = q ** s
                if t.parity_law is False:
                    rows.append(ScanRow(t, "excluded-by-parity", None, "z - s odd"))
                elif not exists_possible(d, required_min, det):
                    rows.append(ScanRow(t, "excluded-by-bound", "fixed",
                                        f"dim {d}, det {q}^{s}, min {required_min}"))
                elif not exists_possible(z * (q - 1), required_min, det):
                    rows.append(ScanRow(t, "excluded-by-bound", "image",
                                        f"dim {z * (q - 1)}, det {q}^{s}, min {required_min}"))
                else:
                    rows.append(ScanRow(t, "allowed"))
    return rows


def allowed_types(n: int, required_min, p: int | None = None) -> list[AutomorphismType]:
    return [r.type for r in scan_types(n, required_min, p) if r.status == "allowed"]


def format_scan(rows: list[ScanRow], allowed_only: bool = False) -> str:
    head = f"{'type':<16}{'p':>4}{'dim L_K':>9}{'det L_K':>10}  status"
    out = [head]
    for r in rows:
        if allowed_only and r.status != "allowed":
            continue
        t = r.type
        status = r.status if r.side is None else f"{r.status} ({r.side}: {r.note})"
        out.append(f"{str(t):<16}{t.p:>4}{t.d:>9}{f'{t.p}^{t.s}':>10}  {status}")
    return "\n".join(out) + "\n"
