import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import box_min_np, box_vectors
from unilat import enumeration
from unilat.errors import BudgetExceeded, InputError, LatticeError
from unilat.exact import ExactMatrix, det_exact
from unilat.fixtures import lattice as fixture
from unilat.lattice import (Lattice, classify, discriminant_group, dual, gram_schmidt, lll, lll_gram,
                            meet_join)
from unilat.enumeration import count_slice, minimum, short_vectors, theta_prefix
from unilat.isometry import is_isometric


def random_gram(rng, n, entries=3):
    while True:
        b = ExactMatrix([[rng.randint(-entries, entries) for _ in range(n)] for _ in range(n)])
        if det_exact(b) != 0:
            return b @ b.T


def random_unimodular(rng, n, steps=12):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return ExactMatrix(rows)


# construction ---------------------------------------------------------------


def test_rejects_indefinite():
    with pytest.raises(InputError):
        Lattice([[1, 2], [2, 1]])


def test_rejects_asymmetric():
    with pytest.raises(InputError):
        Lattice([[1, 1], [0, 1]])


def test_coords_consistency_checked():
    parent = Lattice.standard(2)
    with pytest.raises(InputError):
        Lattice([[1, 0], [0, 1]], [[2, 0], [0, 1]], parent)


# dual -------------------------------------------------------------------------


def test_dual_examples():
    assert dual(Lattice.standard(3)).gram == ExactMatrix.identity(3)
    assert dual(Lattice.standard(2, 3)).gram == ExactMatrix.identity(2).scale(Fraction(1, 3))
    assert dual(fixture("f47")).det == Fraction(1, 47)


def test_dual_in_parent_coordinates():
    parent = Lattice.standard(2)
    sub = Lattice.from_basis([[2, 0], [1, 3]], parent)
    d = dual(sub)
    # every dual vector pairs integrally with every lattice vector
    pairing = sub.coords @ parent.gram @ d.coords.T
    assert pairing == ExactMatrix.identity(2)


def test_dual_involution_and_det_random():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 6)
        lat = Lattice(random_gram(rng, n))
        dd = dual(dual(lat))
        assert dd.gram == lat.gram
        assert dual(lat).det * lat.det == 1


# minimum / enumeration ----------------------------------------------------------


def test_minimum_examples():
    r = minimum(Lattice.standard(2, 3))
    assert (r.minimum, r.count) == (3, 4)
    r = minimum(fixture("e8"))
    assert (r.minimum, r.count) == (2, 240)
    assert minimum(fixture("f23")).minimum == 6


def test_minimum_empty():
    with pytest.raises(LatticeError):
        minimum(Lattice(ExactMatrix.zeros(0, 0)))


def test_minimum_cap():
    r = minimum(fixture("f47"), cap=5)
    assert r.minimum is None and "min > 5" in str(r)
    assert minimum(fixture("f47"), cap=6).minimum == 6


def test_short_vectors_examples():
    z2 = Lattice.standard(2)
    assert [v for v, _ in short_vectors(z2, 1, expand=True)] == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    sv = short_vectors(z2, 2)
    assert [s for _, s in sv] == [1, 1, 2, 2]
    assert len(short_vectors(fixture("e8"), 2)) == 120


def test_short_vectors_against_box():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        g, _ = lll_gram(random_gram(rng, n))
        lat = Lattice(g)
        bound = rng.randint(1, 12)
        got = sorted(short_vectors(lat, bound, expand=True))
        want = sorted((c, v) for c, v in box_vectors(g.to_int_rows(), bound, radius=4))
        assert got == want


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        minimum(fixture("e8"), budget=5)


def test_minimum_matches_box_random():
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randint(1, 5)
        g, _ = lll_gram(random_gram(rng, n))
        r = minimum(Lattice(g))
        assert (r.minimum, r.count) == box_min_np(g.to_int_rows(), radius=5)


def test_minimum_invariant_under_basis_change():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randint(2, 6)
        g = random_gram(rng, n)
        u = random_unimodular(rng, n)
        a, b = minimum(Lattice(g)), minimum(Lattice(u @ g @ u.T))
        assert (a.minimum, a.count) == (b.minimum, b.count)


def test_compiled_and_python_kernels_agree(monkeypatch):
    if enumeration._fastenum is None:
        pytest.skip("numba not installed")
    rng = random.Random(77)
    cases = []
    for _ in range(25):
        n = rng.randint(6, 9)
        lat = Lattice(random_gram(rng, n))
        cases.append((lat, rng.randint(4, 30), [rng.randint(-2, 2) for _ in range(n)]))
    fast = [(short_vectors(l, b), count_slice(l, beta, b, 3)) for l, b, beta in cases]
    monkeypatch.setattr(enumeration, "_fastenum", None)
    slow = [(short_vectors(Lattice(l.gram), b), count_slice(Lattice(l.gram), beta, b, 3))
            for l, b, beta in cases]
    assert fast == slow


# count_slice ----------------------------------------------------------------------


def test_count_slice_examples():
    z2 = Lattice.standard(2)
    assert count_slice(z2, (1, 0), 1, 1) == 1
    assert count_slice(z2, (1, 0), 1, 0) == 2
    assert count_slice(z2, (1, 0), 1, 2) == 0


def test_count_slice_against_filtering():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 5)
        lat = Lattice(lll_gram(random_gram(rng, n))[0])
        beta = [rng.randint(-1, 1) for _ in range(n)]
        if not any(beta):
            continue
        bound = rng.randint(2, 15)
        vecs = short_vectors(lat, bound, expand=True)
        for ip in range(-3, 4):
            for norm in {s for _, s in vecs}:
                want = sum(1 for v, s in vecs if s == norm and lat.inner(v, beta) == ip)
                assert count_slice(lat, beta, norm, ip) == want


def test_theta_prefix_e8():
    assert theta_prefix(fixture("e8"), 4) == [(2, 240), (4, 2160)]


# lll ------------------------------------------------------------------------------


def test_lll_identity_unchanged():
    red, t = lll_gram(ExactMatrix.identity(4))
    assert red == ExactMatrix.identity(4) and t == ExactMatrix.identity(4)


def test_lll_skewed_z2():
    b = ExactMatrix([[1, 0], [100, 1]])
    red, _ = lll_gram(b @ b.T)
    assert red == ExactMatrix.identity(2)


def test_lll_properties_random():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 6)
        g = random_gram(rng, n, entries=20)
        red, t = lll_gram(g)
        assert t @ g @ t.T == red
        assert abs(det_exact(t)) == 1
        assert det_exact(red) == det_exact(g)
        bs, mu = gram_schmidt(red)
        for i in range(n):
            for j in range(i):
                assert abs(mu[i][j]) <= Fraction(1, 2)
        for k in range(1, n):
            assert bs[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * bs[k - 1]


def test_lll_lattice_records_transform():
    lat = Lattice([[5, 3], [3, 2]])
    red = lll(lat)
    assert red.parent is lat
    assert red.coords @ lat.gram @ red.coords.T == red.gram


# discriminant group / classify -------------------------------------------------------


def test_discriminant_examples():
    assert discriminant_group(Lattice.standard(5)).invariant_factors == ()
    assert discriminant_group(fixture("f11")).invariant_factors == (11, 11, 11, 11)
    assert discriminant_group(Lattice.standard(2, 3)).invariant_factors == (3, 3)


def test_discriminant_nonintegral():
    with pytest.raises(LatticeError):
        discriminant_group(Lattice.standard(2, Fraction(1, 3)))


def test_discriminant_order_is_det_random():
    rng = random.Random(4)
    for _ in range(50):
        lat = Lattice(random_gram(rng, rng.randint(1, 5)))
        assert discriminant_group(lat).order == lat.det


def test_classify_examples():
    c = classify(fixture("f47"))
    assert (c.integral, c.even, c.elementary_primes) == (True, True, (47,))
    c = classify(Lattice.standard(1))
    assert (c.integral, c.even) == (True, False)
    assert not classify(Lattice.standard(2, Fraction(1, 3))).integral


# meet / join ------------------------------------------------------------------------


def test_meet_join_equal():
    parent = Lattice.standard(2)
    a = Lattice.from_basis([[1, 1], [0, 2]], parent)
    mj = meet_join(a, a)
    assert mj.index_a == mj.index_b == 1


def test_meet_join_scaled():
    parent = Lattice.standard(2)
    a = Lattice.from_basis([[2, 0], [0, 2]], parent)
    b = Lattice.from_basis([[1, 0], [0, 1]], parent)
    mj = meet_join(a, b)
    assert mj.meet.det == a.det and mj.join.det == b.det
    assert (mj.index_a, mj.index_b) == (1, 4)


def test_meet_join_e8_z8():
    # parent (1/2)Z^8 written as Gram (1/4) I_8
    parent = Lattice(ExactMatrix.identity(8).scale(Fraction(1, 4)))
    z8 = Lattice.from_basis(ExactMatrix.identity(8).scale(2), parent)
    e8_rows = [[2, -2, 0, 0, 0, 0, 0, 0], [0, 2, -2, 0, 0, 0, 0, 0], [0, 0, 2, -2, 0, 0, 0, 0],
               [0, 0, 0, 2, -2, 0, 0, 0], [0, 0, 0, 0, 2, -2, 0, 0], [0, 0, 0, 0, 0, 2, -2, 0],
               [0, 0, 0, 0, 0, 2, 2, 0], [-1, -1, -1, -1, -1, -1, -1, -1]]
    e8 = Lattice.from_basis(e8_rows, parent)
    assert e8.det == 1 and e8.is_even
    mj = meet_join(e8, z8)
    assert (mj.index_a, mj.index_b) == (2, 2)
    assert mj.meet.det == 4  # D8


def test_meet_join_mismatched_parent():
    a = Lattice.from_basis([[1, 0], [0, 1]], Lattice.standard(2))
    b = Lattice.from_basis([[1, 0], [0, 1]], Lattice.standard(2, 2))
    with pytest.raises(LatticeError):
        meet_join(a, b)


# isometry ---------------------------------------------------------------------------


def test_isometry_examples():
    u = ExactMatrix([[2, 1], [1, 1]])
    r = is_isometric(Lattice.standard(2), Lattice(u @ u.T))
    assert r.status == "yes"
    assert r.matrix @ (u @ u.T) @ r.matrix.T == ExactMatrix.identity(2)
    assert is_isometric(Lattice.standard(2), Lattice.standard(2, 2)).status == "no"


def test_isometry_random_basis_change():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(2, 6)
        g = lll_gram(random_gram(rng, n))[0]
        u = random_unimodular(rng, n)
        h = u @ g @ u.T
        r = is_isometric(Lattice(g), Lattice(h))
        assert r.status == "yes"
        assert r.matrix @ h @ r.matrix.T == g


def test_isometry_distinguishes_same_det():
    # det 4: Z^2 scaled by 2 vs [[1,0],[0,4]]
    assert is_isometric(Lattice.standard(2, 2), Lattice([[1, 0], [0, 4]])).status == "no"


def test_isometry_dimension_cap():
    r = is_isometric(Lattice.standard(13), Lattice.standard(13))
    assert r.status == "inconclusive" and "cap" in r.reason
