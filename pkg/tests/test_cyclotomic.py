import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import euler_phi, ramanujan_sum
from unilat.cyclotomic import (CycloField, FractionalIdeal, IdealLatticeSpec, cyclotomic_units, find_tp_generator,
                               ideal_dual, ideal_lattice, is_totally_positive, is_unimodular, parse_element,
                               relative_norm_ideal, trace_dual_Z)
from unilat.enumeration import minimum
from unilat.errors import InputError, LatticeError
from unilat.exact import ExactMatrix
from unilat.fixtures import e8_ideal_spec, lattice as fixture_lattice
from unilat.isometry import is_isometric
from unilat.lattice import dual

MS = [3, 4, 5, 7, 8, 9, 12]


def random_element(rng, field, size=2):
    while True:
        e = field([rng.randint(-size, size) for _ in range(field.degree)])
        if e:
            return e


def abs_discriminant(m):
    # |disc Q(zeta_m)| = m^phi / prod_{p | m} p^(phi/(p-1))
    phi = euler_phi(m)
    out = Fraction(m) ** phi
    for p in range(2, m + 1):
        if m % p == 0 and all(p % q for q in range(2, p)):
            out /= Fraction(p) ** (phi // (p - 1))
    return out


# field arithmetic --------------------------------------------------------------


def test_normalisation():
    assert CycloField(6) is CycloField(3)
    assert CycloField(10).m == 5
    with pytest.raises(InputError):
        CycloField(2)


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24])
def test_traces_match_ramanujan_sums(m):
    f = CycloField(m)
    assert f.degree == euler_phi(m)
    for k in range(2 * m):
        assert f.zeta(k).trace() == ramanujan_sum(m, k)


@pytest.mark.parametrize("m", MS + [15, 47])
def test_discriminant(m):
    assert abs(CycloField(m).discriminant) == abs_discriminant(m)


def test_zeta_has_order_m():
    for m in MS:
        f = CycloField(m)
        assert f.zeta() ** m == f.one and all(f.zeta() ** k != f.one for k in range(1, m))


def test_element_parsing():
    f = CycloField(5)
    assert parse_element(f, "1/2 0 0 -1") == f([Fraction(1, 2), 0, 0, -1])
    assert parse_element(f, "1 2") == f.one + 2 * f.zeta()
    with pytest.raises(InputError):
        parse_element(f, "")


def test_field_laws_random():
    rng = random.Random(6)
    for _ in range(60):
        f = CycloField(rng.choice(MS))
        a, b, c = (random_element(rng, f) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b).conj() == a.conj() * b.conj()
        assert a * a.inverse() == f.one
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a * a.conj()).is_real


# ideals -------------------------------------------------------------------------


def test_unit_ideal():
    f = CycloField(5)
    one = FractionalIdeal.unit(f)
    assert one.norm() == 1 and one.is_integral()
    assert FractionalIdeal.principal(f.zeta()) == one


def test_ideal_norm_is_element_norm():
    rng = random.Random(2)
    for _ in range(30):
        f = CycloField(rng.choice(MS))
        a = random_element(rng, f)
        assert FractionalIdeal.principal(a).norm() == abs(a.norm())


def test_ideal_arithmetic_random():
    rng = random.Random(3)
    for _ in range(30):
        f = CycloField(rng.choice(MS))
        j = FractionalIdeal.from_generators(f, [random_element(rng, f), random_element(rng, f)])
        k = FractionalIdeal.from_generators(f, [random_element(rng, f)])
        assert j * j.inverse() == FractionalIdeal.unit(f)
        assert (j * k).norm() == j.norm() * k.norm()
        assert j.conj().conj() == j
        assert (j * k) / k == j
        for e in j.basis_elements():
            assert j.contains(e)


def test_relative_norm_is_conjugation_stable():
    rng = random.Random(4)
    f = CycloField(7)
    j = FractionalIdeal.from_generators(f, [random_element(rng, f), 3])
    n = relative_norm_ideal(j)
    assert n.conj() == n and n.norm() == j.norm() ** 2


def test_trace_dual_examples():
    assert trace_dual_Z(4) == FractionalIdeal.unit(CycloField(4)) * CycloField(4)([Fraction(1, 2), 0])
    f3 = CycloField(3)
    sqrt_m3 = f3.zeta() - f3.zeta(2)  # sqrt(-3)
    assert trace_dual_Z(3) == FractionalIdeal.principal(sqrt_m3.inverse())
    assert trace_dual_Z(47).norm() == Fraction(1, 47 ** 45)


@pytest.mark.parametrize("m", MS)
def test_trace_dual_is_matrix_dual(m):
    f = CycloField(m)
    d = trace_dual_Z(f)
    assert d.norm() == 1 / abs_discriminant(m)
    # every element pairs integrally with Z[zeta]
    for x in d.basis_elements():
        for k in range(f.degree):
            assert (x * f.zeta(-k)).trace().denominator == 1


# total positivity -----------------------------------------------------------------


def test_total_positivity_examples():
    f = CycloField(5)
    z, zi = f.zeta(), f.zeta(-1)
    assert is_totally_positive(f.one)
    assert not is_totally_positive(-f.one)
    assert is_totally_positive(2 - z - zi)
    assert not is_totally_positive(z + zi)
    with pytest.raises(InputError):
        is_totally_positive(z)


def test_total_positivity_norms_of_elements():
    rng = random.Random(5)
    for _ in range(40):
        f = CycloField(rng.choice(MS))
        b = random_element(rng, f)
        assert is_totally_positive(b * b.conj())


def test_total_positivity_close_to_zero():
    # 4 - (z + 1/z)^2 with z = zeta_12: embeddings 4 - 3 and 4 - 0... plus one
    # tiny perturbation that needs more than double precision
    f = CycloField(12)
    t = f.zeta() + f.zeta(-1)
    eps = Fraction(1, 10 ** 40)
    assert is_totally_positive(t * t - 3 + f([eps] + [0] * 3))
    assert not is_totally_positive(t * t - 3 - f([eps] + [0] * 3))


def test_spec_rejects_non_tp():
    f = CycloField(5)
    with pytest.raises(LatticeError):
        IdealLatticeSpec(FractionalIdeal.unit(f), f.zeta() + f.zeta(-1))


# ideal lattices --------------------------------------------------------------------


def test_gaussian_integers_half_trace_is_z2():
    f = CycloField(4)
    lat = ideal_lattice(IdealLatticeSpec(FractionalIdeal.unit(f), f([Fraction(1, 2), 0])))
    assert lat.gram == ExactMatrix.identity(2)


def test_eisenstein_trace_is_a2():
    f = CycloField(3)
    lat = ideal_lattice(IdealLatticeSpec(FractionalIdeal.unit(f), f.one))
    assert lat.gram == ExactMatrix([[2, -1], [-1, 2]])


def random_spec(rng, m):
    f = CycloField(m)
    gens = [random_element(rng, f) for _ in range(rng.randint(1, 2))]
    j = FractionalIdeal.from_generators(f, gens)
    b = random_element(rng, f, 1)
    alpha = b * b.conj() * Fraction(1, rng.randint(1, 3))
    return IdealLatticeSpec(j, alpha)


def unimodular_spec(rng, m):
    # J = (b), alpha = 1 / (phi(m) b conj(b)) on power-of-two fields is unimodular
    f = CycloField(m)
    b = random_element(rng, f)
    alpha = (b * b.conj() * f.degree).inverse()
    return IdealLatticeSpec(FractionalIdeal.principal(b), alpha)


def test_dual_formula_and_unimodularity_random():
    rng = random.Random(60)
    for i in range(200):
        m = rng.choice(MS)
        spec = unimodular_spec(rng, rng.choice([4, 8])) if i % 10 == 0 else random_spec(rng, m)
        lat = ideal_lattice(spec)
        got = ideal_dual(spec, cross_check=False)
        md = dual(lat)
        assert FractionalIdeal._from_z_generators(spec.ideal.field, md.coords.rows) == got
        assert is_unimodular(spec) == (lat.det == 1)
        if i % 10 == 0:
            assert lat.det == 1


def test_e8_fixture():
    spec = e8_ideal_spec()
    assert spec.ideal.field.m == 15 and spec.ideal.field.degree == 8
    assert is_unimodular(spec)
    lat = ideal_lattice(spec)
    assert lat.is_even and lat.det == 1
    r = minimum(lat)
    assert (r.minimum, r.count) == (2, 240)
    assert is_isometric(lat, fixture_lattice("e8")).status == "yes"


# units / generators -----------------------------------------------------------------


@pytest.mark.parametrize("m", [5, 7, 9, 12, 15])
def test_cyclotomic_units_are_real_units(m):
    for u in cyclotomic_units(CycloField(m)):
        assert abs(u.norm()) == 1 and u.is_real
        assert FractionalIdeal.principal(u) == FractionalIdeal.unit(u.field)


def test_find_tp_generator_recovers_principal():
    rng = random.Random(8)
    for m in (5, 7, 12):
        f = CycloField(m)
        b = random_element(rng, f, 1)
        j = FractionalIdeal.principal(b * b.conj())
        g = find_tp_generator(j)
        assert g is not None
        assert j.is_principal_generated_by(g) and is_totally_positive(g)


def test_find_tp_generator_rejects_unstable_ideal():
    f = CycloField(5)
    j = FractionalIdeal.principal(f([2, 1, 0, 0]))
    if j.conj() != j:
        with pytest.raises(InputError):
            find_tp_generator(j)
