import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_dual_words, brute_min_weight, code_words, macwilliams
from unilat.codes import (LinearCode, construction_a, dual_code, find_frame, frame_extract, is_self_dual,
                          is_self_orthogonal, min_weight, standard_frame, weight_distribution)
from unilat.enumeration import minimum
from unilat.errors import InputError, LatticeError
from unilat.fixtures import code as fixture_code, lattice as fixture_lattice
from unilat.lattice import Lattice


def random_code(rng, p, n, k):
    return LinearCode(p, [[rng.randrange(p) for _ in range(n)] for _ in range(k)], n)


@st.composite
def codes(draw, max_n=7):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n))
    gen = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    return LinearCode(p, gen, n)


# basics -----------------------------------------------------------------------


def test_rejects_composite_alphabet():
    with pytest.raises(InputError):
        LinearCode(4, [[1, 0]])


def test_rref_is_canonical():
    a = LinearCode(3, [[1, 1, 0], [0, 1, 1]])
    b = LinearCode(3, [[1, 2, 1], [2, 0, 1]])
    assert a == b


def test_dual_of_repetition():
    rep = LinearCode(2, [[1, 1, 1]])
    assert dual_code(rep) == LinearCode(2, [[1, 1, 0], [0, 1, 1]])


@given(codes())
def test_dual_matches_brute_force(c):
    assert set(dual_code(c).codewords()) == brute_dual_words(c.p, list(c.generator), c.n)


@given(codes())
def test_dual_dual_is_identity(c):
    d = dual_code(c)
    assert d.k == c.n - c.k
    assert dual_code(d) == c


@given(codes())
def test_min_weight_matches_brute_force(c):
    if any(any(r) for r in c.generator):
        assert min_weight(c) == brute_min_weight(c.p, list(c.generator))


@given(codes(6))
def test_weight_distribution_sums(c):
    dist = weight_distribution(c)
    assert sum(dist.values()) == c.p ** c.k
    words = code_words(c.p, list(c.generator), c.n)
    assert dist == {w: sum(1 for x in words if sum(1 for y in x if y) == w)
                    for w in {sum(1 for y in x if y) for x in words}}


@given(codes(7))
def test_macwilliams_identity(c):
    assert weight_distribution(dual_code(c)) == macwilliams(weight_distribution(c), c.n, c.p, c.k)


def test_tetracode():
    t = fixture_code("tetracode")
    assert (t.p, t.n, t.k) == (3, 4, 2)
    assert is_self_dual(t) and min_weight(t) == 3


def test_ternary_golay():
    g = fixture_code("golay12")
    assert is_self_dual(g) and min_weight(g) == 6
    assert weight_distribution(g) == {0: 1, 6: 264, 9: 440, 12: 24}


def test_qr24_code():
    c = fixture_code("qr24")
    assert (c.n, c.k) == (24, 12)
    assert is_self_orthogonal(c) and is_self_dual(c)
    assert min_weight(c) == 9
    # the unique weight enumerator of an extremal self-dual ternary code of length 24
    assert weight_distribution(c) == {0: 1, 9: 4048, 12: 61824, 15: 242880, 18: 198352, 21: 24288, 24: 48}


# construction A -------------------------------------------------------------------


def test_construction_a_tetracode_is_z4_like():
    lat = construction_a(fixture_code("tetracode"))
    assert lat.det == 1 and not lat.is_even
    assert minimum(lat).minimum == 1


def test_construction_a_coords_match_code():
    c = fixture_code("tetracode")
    lat = construction_a(c)
    for row in lat.coords.rows:
        assert tuple(int(x * 3) % 3 for x in row) in c


def test_det_formula_random_codes():
    rng = random.Random(31)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(1, 8)
        c = random_code(rng, p, n, rng.randint(1, n))
        lat = construction_a(c)
        assert lat.det == Fraction(p) ** (n - 2 * c.k)


def test_construction_a_self_dual_is_unimodular():
    assert construction_a(fixture_code("golay12")).is_unimodular


# frames ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["tetracode", "golay12"])
def test_frame_round_trip(name):
    c = fixture_code(name)
    lat = construction_a(c)
    assert frame_extract(lat, standard_frame(lat), 3) == c


@given(codes(6))
def test_frame_round_trip_random(c):
    lat = construction_a(c)
    assert frame_extract(lat, standard_frame(lat), c.p) == c


def test_find_frame_scaled_z2():
    lat = Lattice.standard(2, 3)
    frame = find_frame(lat, 3)
    assert frame is not None and len(frame) == 2
    assert frame_extract(lat, frame, 3).k == 0


def test_find_frame_golay():
    lat = construction_a(fixture_code("golay12"))
    frame = find_frame(lat, 3)
    assert frame is not None
    c = frame_extract(lat, frame, 3)
    assert is_self_dual(c) and min_weight(c) == 6


def test_find_frame_e8_has_no_3_frame():
    assert find_frame(fixture_lattice("e8"), 3) is None


def test_frame_extract_without_frame_errors():
    with pytest.raises(LatticeError):
        frame_extract(Lattice.standard(2), None, 3)


def test_frame_extract_bad_frame():
    with pytest.raises(LatticeError):
        frame_extract(Lattice.standard(2, 3), [[1, 1], [1, -1]], 3)
