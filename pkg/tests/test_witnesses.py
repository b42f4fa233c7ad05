from fractions import Fraction

import pytest

from mfperiod import witnesses
from mfperiod.cosets import Coset, coset_equal, coset_scale
from mfperiod.errors import InvalidArgument, MissingWitness
from mfperiod.mfring import delta_power, parse_element
from mfperiod.qseries import GeneratorName, generator
from mfperiod.witnesses import Kind, Witness


@pytest.fixture(scope="module")
def index():
    return witnesses.catalog_index()


def test_catalog_contents(index):
    assert set(index) == {"D2S1", "CP1", "BOTT8", "D4S3", "K3", "U_ETA3", "L24_STRING",
                          "USPIN76"}
    assert index["D2S1"].invariant == Fraction(1, 2)
    assert index["L24_STRING"].invariant == delta_power(1, 24)
    for w in index.values():
        assert w.provenance


def test_relations_between_degree_four_classes(index):
    d4s3 = index["D4S3"].invariant
    assert coset_equal(coset_scale(24, d4s3), index["K3"].relative_class())
    assert coset_equal(coset_scale(12, d4s3), index["U_ETA3"].invariant)
    assert not coset_equal(coset_scale(6, d4s3), index["U_ETA3"].invariant)


def test_cp1_is_twice_d2s1(index):
    assert index["CP1"].invariant == 2 * index["D2S1"].invariant


def test_validation():
    e2 = generator(GeneratorName.E2, 10)
    with pytest.raises(InvalidArgument):
        Witness("bad", 6, Kind.RELATIVE_WITTEN, Coset(2, e2))
    with pytest.raises(InvalidArgument):
        Witness("bad", 4, Kind.RELATIVE_DIRAC, Fraction(1))
    with pytest.raises(InvalidArgument):
        Witness("bad", 24, Kind.STRING_CLASS, delta_power(1, 12))


def test_image_realizer_is_minimal():
    for d, a in [(1, 24), (8, 3), (15, 8), (12, 2), (24, 1), (-24, 1)]:
        w = witnesses.image_realizer(d)
        assert w.degree == 24 * d
        assert w.invariant == delta_power(d, a)


def test_product_witness(index):
    w = witnesses.product_witness(witnesses.image_realizer(15), index["D4S3"])
    assert w.degree == 364 and w.invariant.weight == 182
    with pytest.raises(InvalidArgument):
        witnesses.product_witness(index["D4S3"], index["D4S3"])


def test_lookup_missing():
    with pytest.raises(MissingWitness):
        witnesses.lookup({}, "D4S3")


def test_derive_uspin76(index):
    der = witnesses.derive_uspin76(index)
    assert der.equal
    assert der.result.weight == 38
    assert all(step.consistent for step in der.trace)
    assert [s.label for s in der.trace] == ["cube", "product formula", "eta^3 = 12 nu",
                                            "divide by 24^3"]


def test_derive_uspin76_detects_wrong_input(index):
    der = witnesses.derive_uspin76(index, l24=parse_element("24*Delta + 24*c4^3"))
    assert not der.equal


def test_derive_uspin76_needs_inputs(index):
    partial = {k: v for k, v in index.items() if k != "U_ETA3"}
    with pytest.raises(MissingWitness):
        witnesses.derive_uspin76(partial)


@pytest.mark.parametrize("name", ["D2S1", "BOTT8", "D4S3", "K3", "L24_STRING", "USPIN76"])
def test_json_round_trip(index, name):
    w = index[name]
    back = witnesses.from_json(witnesses.to_json(w))
    assert (back.name, back.degree, back.kind) == (w.name, w.degree, w.kind)
    assert witnesses.to_json(back) == witnesses.to_json(w)


def test_from_json_malformed():
    with pytest.raises(InvalidArgument):
        witnesses.from_json({"name": "x"})
