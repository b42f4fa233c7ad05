from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mfperiod import cosets, mfring
from mfperiod.cosets import Coset, coset_equal, mf_action
from mfperiod.errors import InvalidArgument
from mfperiod.mfring import MFElement, expand, parse_element
from mfperiod.qseries import GeneratorName, QSeries, generator

E2 = generator(GeneratorName.E2, 40)


def test_odd_weight_rejected():
    with pytest.raises(InvalidArgument):
        Coset(3, E2)


def test_members_are_trivial_classes():
    f = parse_element("c4^2*c6*Delta^-1 + 5*c4^5*c6*Delta^-2")
    assert coset_equal(Coset(2, expand(f, 30)), Coset(2, QSeries.zero(-2, 28)))


def test_e2_is_not_modular():
    assert not coset_equal(Coset(2, E2), Coset(2, QSeries.zero(0, 40)))


def test_canonical_form_is_idempotent():
    c = Coset(2, E2 + expand(parse_element("c4^2*c6*Delta^-1"), 41))
    can = c.canonical()
    assert can.is_canonical()
    assert can.canonical().rep == can.rep
    assert coset_equal(c, can)


def test_weight_mismatch():
    with pytest.raises(InvalidArgument):
        coset_equal(Coset(2, E2), Coset(4, E2))
    with pytest.raises(InvalidArgument):
        Coset(2, E2) + Coset(4, E2)


def test_mf_action_weights_and_product_formula():
    f = mfring.delta_power(3)
    c = mf_action(f, Coset(2, E2))
    assert c.weight == 38
    assert c.rep.agrees_with(expand(f, 40) * E2)


def test_json_round_trip():
    c = Coset(2, E2 / 12)
    obj = cosets.to_json(c)
    assert obj["canonical"] is c.is_canonical()
    back = cosets.from_json(obj)
    assert back.weight == 2 and back.rep == c.rep
    with pytest.raises(InvalidArgument):
        cosets.from_json({"rep": {}})


def member(weight, coeffs):
    mons = mfring.basis(weight, -3, mfring.top_exponent(weight))
    return MFElement(weight, dict(zip(mons, coeffs)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=1, max_size=4),
       st.lists(st.integers(-40, 40), min_size=1, max_size=4),
       st.sampled_from([-4, 0, 4, 12]))
def test_mf_action_is_well_defined(mc, fc, fweight):
    """Changing the representative by a member changes f*rep by a member."""
    rep = E2 / 12
    m = member(2, mc)
    f = member(fweight, fc)
    if f.is_zero():
        return
    shifted = rep + (mfring.expand_to(m, rep.horizon) if not m.is_zero()
                     else QSeries.zero(0, rep.horizon))
    a = mf_action(f, Coset(2, rep))
    b = mf_action(f, Coset(2, shifted))
    assert coset_equal(a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(-5, 5), st.integers(1, 5))
def test_scale_and_add(n, k):
    a = Coset(2, E2)
    lhs = cosets.coset_scale(Fraction(n, k), a) + cosets.coset_scale(Fraction(1, k), a)
    assert coset_equal(lhs, cosets.coset_scale(Fraction(n + 1, k), a))
