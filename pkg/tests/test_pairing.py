from fractions import Fraction

import pytest

from mfperiod import witnesses
from mfperiod.errors import InsufficientPrecision, InvalidArgument
from mfperiod.mfring import delta_power, is_member, parse_element
from mfperiod.pairing import (pair_sqft, pair_sqm, pairing_integrand_value, quasimodular_control,
                              well_definedness_check)
from mfperiod.qseries import QSeries

import oracles


@pytest.fixture(scope="module")
def index():
    return witnesses.catalog_index()


def times(d, w):
    return witnesses.product_witness(witnesses.image_realizer(d), w)


def test_pairing_values(index):
    assert pair_sqft(delta_power(-1), index["D4S3"]).value == Fraction(1, 24)
    assert pair_sqft(delta_power(-16), times(15, index["D4S3"])).value == Fraction(1, 3)
    assert pair_sqft(delta_power(-12), times(8, index["USPIN76"])).value == Fraction(3, 2)
    assert pair_sqm(1, index["D2S1"]).value == Fraction(1, 2)


@pytest.mark.parametrize("phi_d,real,base,a,rep_scale", [
    (1, None, "D4S3", 1, Fraction(1, 12)),
    (16, 15, "D4S3", 8, Fraction(1, 12)),
    (12, 8, "USPIN76", 3, Fraction(1)),
])
def test_values_by_hand(index, phi_d, real, base, a, rep_scale):
    """The Delta powers cancel, leaving a * rep_scale * E2 / 2 at q^0."""
    w = index[base] if real is None else times(real, index[base])
    expect = a * rep_scale * oracles.e2_list(1)[0] / 2
    assert pair_sqft(delta_power(-phi_d), w).value == expect


def test_degree_and_weights(index):
    r = pair_sqft(delta_power(-1), index["D4S3"])
    assert r.d == 24 and r.weights == (12, -12, 2)
    assert not r.integral
    assert pair_sqm(2, index["D2S1"]).integral


def test_linear_in_k(index):
    for k in range(1, 6):
        v = pair_sqft(delta_power(-1, k), index["D4S3"]).value
        assert v == Fraction(k, 24)


def test_kind_and_weight_checks(index):
    with pytest.raises(InvalidArgument):
        pair_sqft(delta_power(-1), index["D2S1"])
    with pytest.raises(InvalidArgument):
        pair_sqft(delta_power(-2), index["D4S3"])
    with pytest.raises(InvalidArgument):
        pair_sqm(1, index["D4S3"])


def test_insufficient_precision_reports_window():
    short = witnesses.catalog_index(2)["D4S3"]
    # Delta^-1 * E2 needs one coefficient; a pole of order 5 needs five
    with pytest.raises(InsufficientPrecision) as exc:
        pair_sqft(parse_element("c4^12*Delta^-5"), short)
    assert exc.value.window == (0, 2)


def test_positive_valuation_pairs_to_zero():
    rep = QSeries({5: 1}, 5, 8)
    assert pairing_integrand_value(delta_power(0), rep) == 0


@pytest.mark.parametrize("phi_d,real,base", [(1, None, "D4S3"), (16, 15, "D4S3"),
                                             (12, 8, "USPIN76")])
def test_well_definedness(index, phi_d, real, base):
    w = index[base] if real is None else times(real, index[base])
    phi = delta_power(-phi_d)
    rec = well_definedness_check(phi, w, 50, seed=3)
    assert rec.passed and rec.trials == 50
    control = quasimodular_control(phi, w.invariant.weight, w.invariant.rep.horizon)
    neg = well_definedness_check(phi, w, 0, inject=control)
    assert not neg.passed
    assert neg.counterexample["delta"] != 0


def test_control_is_not_a_member():
    ctl = quasimodular_control(delta_power(-1), 2, 30)
    assert not is_member(ctl, 2)


def test_well_definedness_is_seeded(index):
    a = well_definedness_check(delta_power(-1), index["D4S3"], 10, seed=9)
    b = well_definedness_check(delta_power(-1), index["D4S3"], 10, seed=9)
    assert a == b
