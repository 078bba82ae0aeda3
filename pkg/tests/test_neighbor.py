import random

import pytest

from unilat.codes import LinearCode, construction_a
from unilat.enumeration import minimum
from unilat.errors import LatticeError
from unilat.fixtures import code as fixture_code
from unilat.lattice import Lattice, classify
from unilat.neighbor import koch_lambda, two_neighbor


def test_z8_all_ones_gives_e8():
    nb = two_neighbor(Lattice.standard(8), [1] * 8)
    assert nb.is_unimodular and nb.is_even
    r = minimum(nb)
    assert (r.minimum, r.count) == (2, 240)


def test_z4_all_ones_is_odd():
    nb = two_neighbor(Lattice.standard(4), [1, 1, 1, 1])
    assert nb.det == 1 and not nb.is_even
    assert minimum(nb).minimum == 1


def test_degenerate_vector():
    with pytest.raises(LatticeError, match="degenerate"):
        two_neighbor(Lattice.standard(2), [2, 0])


def test_norm_not_multiple_of_4():
    with pytest.raises(LatticeError):
        two_neighbor(Lattice.standard(3), [1, 1, 0])


def test_neighbour_meets_in_index_2():
    z = Lattice.standard(8)
    nb = two_neighbor(z, [1] * 8)
    # L and its neighbour share the even sublattice, index 2 in each
    assert nb.coords.denominator() == 2
    shared = [r for r in nb.coords.rows if all(x.denominator == 1 for x in r)]
    assert len(shared) < 8


def test_det_preserved_random():
    rng = random.Random(12)
    done = 0
    while done < 30:
        n = rng.randint(4, 10)
        v = [rng.randint(-3, 3) for _ in range(n)]
        if sum(x * x for x in v) % 4 or all(x % 2 == 0 for x in v):
            continue
        nb = two_neighbor(Lattice.standard(n), v)
        assert nb.det == 1 and nb.is_integral
        done += 1


def test_koch_needs_length_multiple_of_12():
    with pytest.raises(LatticeError, match="not = 0 mod 4"):
        koch_lambda(fixture_code("tetracode"))


def test_koch_needs_all_ones():
    g = fixture_code("golay12")
    scaled = LinearCode(3, [[(x * (2 if j == 0 else 1)) % 3 for j, x in enumerate(r)] for r in g.generator])
    with pytest.raises(LatticeError, match="all-ones"):
        koch_lambda(scaled)


def test_koch_golay_is_odd():
    lam = koch_lambda(fixture_code("golay12"))
    c = classify(lam)
    assert lam.det == 1 and c.integral and not c.even


def test_koch_literal_glue_has_norm_2_vector():
    lam = koch_lambda(fixture_code("qr24"), literal=True)
    assert lam.is_even and lam.is_unimodular
    assert minimum(lam, cap=2).minimum == 2


def test_a3_qr24_minimum():
    lat = construction_a(fixture_code("qr24"))
    assert lat.is_unimodular and not lat.is_even
    assert minimum(lat, cap=3).minimum == 3


def test_leech_frame_slice():
    # vectors of norm 6 meeting 2 e_1 in 6: the 46 vectors e_1 +- e_j are among them
    from unilat.enumeration import count_slice, short_vectors

    lam = koch_lambda(fixture_code("qr24"))
    beta = lam.to_coords([2] + [0] * 23)
    assert beta is not None and all(c.denominator == 1 for c in beta)
    beta = [int(c) for c in beta]
    assert count_slice(lam, beta, 6, 6) == 2576
    for j in range(1, 24):
        for s in (1, -1):
            e = [0] * 24
            e[0], e[j] = 1, s
            x = lam.to_coords(e)
            assert x is not None and all(c.denominator == 1 for c in x)
            assert lam.norm(x) == 6 and lam.inner(x, beta) == 6
