import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mfperiod import mfring
from mfperiod.errors import InsufficientPrecision, InvalidArgument, MixedWeight
from mfperiod.mfring import MFElement, MFMonomial, expand, parse_element
from mfperiod.qseries import QSeries

import oracles


def test_basis_matches_enumeration():
    for w in range(-40, 60, 2):
        found = [tuple(m) for m in mfring.basis(w, -6, 6)]
        assert found == oracles.weight_monomials(w, -6, 6)
        # one monomial per Delta exponent
        assert len({m[2] for m in found}) == len(found)
    assert mfring.basis(7, -3, 3) == []


def test_small_bases():
    assert mfring.basis(12, 0, 1) == [MFMonomial(3, 0, 0), MFMonomial(0, 0, 1)]
    assert mfring.basis(2, -2, 0) == [MFMonomial(5, 1, -2), MFMonomial(2, 1, -1)]


def test_expand_monomial_against_oracle_products():
    terms = 12
    c4, c6 = oracles.c4_list(terms), oracles.c6_list(terms)
    expect = oracles.poly_mul(oracles.poly_mul(c4, c4, terms), c6, terms)
    got = expand(MFElement.from_monomial(2, 1, 0), terms)
    assert [got[n] for n in range(terms)] == expect


def test_normalize_rewrites_c6_squared():
    f = parse_element("c6^2")
    assert f == parse_element("c4^3 - 1728*Delta")
    g = parse_element("c6^3*Delta^-1")
    assert all(m.j <= 1 for m in g.coords)
    assert expand(g, 10).agrees_with(expand(parse_element("c6*Delta^-1"), 10)
                                     * expand(parse_element("c6^2"), 10))


def test_mixed_weight_rejected():
    with pytest.raises(MixedWeight):
        mfring.normalize({(1, 0, 0): 1, (0, 1, 0): 1})


def test_units_and_powers():
    d = mfring.delta_power(3, -1)
    assert mfring.is_unit(d)
    assert not mfring.is_unit(parse_element("c4"))
    assert (d ** -1) * d == MFElement.one()
    with pytest.raises(Exception):
        parse_element("c4") ** -1


@pytest.mark.parametrize("text,coords", [
    ("Delta^-1", {(0, 0, -1): 1}),
    ("3/2*c4^3*Delta^ -1 - 2*c6^2*Delta^(-1)", None),
    ("c4^3 - 1728*Delta", {(3, 0, 0): 1, (0, 0, 1): -1728}),
    ("-c4*c6*D^-1", {(1, 1, -1): -1}),
])
def test_parse(text, coords):
    f = parse_element(text)
    if coords is not None:
        assert {tuple(m): c for m, c in f.coords.items()} == coords
    assert parse_element(mfring.format_element(f)) == f


@pytest.mark.parametrize("bad", ["", "c4 +", "x", "c4^-1*c6", "1/0*c4", "c4 c6"])
def test_parse_errors(bad):
    with pytest.raises(InvalidArgument):
        parse_element(bad)


def test_constant_term_vanishing_weight_two():
    rec = mfring.constant_term_vanishing(2, 25)
    assert rec.passed and len(rec.entries) == 25 and not rec.failures()


def test_constant_term_control_weight_minus_two():
    q0 = expand(parse_element("c4*c6*Delta^-1"), 3)[0]
    assert q0 == -240
    rec = mfring.constant_term_vanishing(-2, 3)
    assert not rec.passed


def test_lattice_coefficients_against_brute_gcd():
    for d in range(-48, 49):
        a = mfring.image_lattice_coefficient(0, 0, d)
        assert a == oracles.lattice_coefficient(0, 0, d)
        assert a == 24 // oracles.brute_gcd(24, abs(d)) if d else a == 1
    assert mfring.image_lattice_coefficient(2, 1, -5) == 2
    assert mfring.image_lattice_coefficient(3, 0, 2) == 1


def test_lattice_membership():
    assert mfring.image_lattice_contains(mfring.delta_power(1, 24))
    assert not mfring.image_lattice_contains(mfring.delta_power(1, 12))
    assert mfring.image_lattice_contains(mfring.delta_power(8, 3))
    assert not mfring.image_lattice_contains(parse_element("c4*c6"))


def random_element(rng, weight, d_min, size):
    top = mfring.top_exponent(weight)
    mons = mfring.basis(weight, d_min, top)
    chosen = rng.sample(mons, min(size, len(mons)))
    return MFElement(weight, {m: rng.randint(-99, 99) or 1 for m in chosen})


def test_echelon_round_trip_two_hundred():
    rng = random.Random(7)
    for k in range(200):
        weight = rng.choice(range(-24, 40, 2))
        f = random_element(rng, weight, -8, rng.randint(1, 5))
        s = expand(f, 30) if not f.is_zero() else QSeries.zero(-8, 30)
        red = mfring.reduce(s, weight)
        assert red.is_member, (k, f)
        assert red.element == f


def test_reduce_linearity():
    rng = random.Random(11)
    for _ in range(30):
        w = rng.choice(range(-10, 30, 2))
        s1 = QSeries.from_list([rng.randint(-50, 50) for _ in range(25)], -6)
        s2 = QSeries.from_list([rng.randint(-50, 50) for _ in range(25)], -6)
        a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-5, 5)
        r1, r2 = mfring.reduce(s1, w), mfring.reduce(s2, w)
        r = mfring.reduce(a * s1 + b * s2, w)
        assert r.element == a * r1.element + b * r2.element
        assert r.remainder == a * r1.remainder + b * r2.remainder


def test_reduce_remainder_is_canonical():
    s = QSeries.from_list(range(1, 20), -3)
    rem = mfring.reduce(s, 2).remainder
    assert mfring.reduce(rem, 2).coords == {}


def test_reduce_needs_window_reaching_top():
    with pytest.raises(InsufficientPrecision):
        mfring.reduce(QSeries.from_list([1, 2], -1), 24)


def test_element_json_round_trip():
    f = parse_element("c4^2*c6*Delta^-1 - 7/3*c4^5*c6*Delta^-2")
    assert mfring.from_json(mfring.to_json(f)) == f
    with pytest.raises(InvalidArgument):
        mfring.from_json({"weight": 2})


coef = st.integers(-20, 20)


def element_strategy(weight):
    mons = mfring.basis(weight, -4, mfring.top_exponent(weight))
    return st.dictionaries(st.sampled_from(mons), coef, max_size=4).map(
        lambda d: MFElement(weight, d))


@settings(max_examples=40, deadline=None)
@given(element_strategy(4), element_strategy(-6), element_strategy(10))
def test_ring_product_matches_series(f, g, h):
    lhs = (f * g) * h
    assert lhs == f * (g * h)
    assert f * (g + g) == f * g + f * g
    if not lhs.is_zero():
        fs, gs, hs = (expand(x, 20) if not x.is_zero() else None for x in (f, g, h))
        got = expand(lhs, 8)
        want = fs * gs * hs
        assert got.agrees_with(want)
