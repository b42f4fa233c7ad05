"""
Bordism classes, represented by their Witten genera or Dirac indices.

The geometry (disks with Lie-framed boundaries, Toda-bracket manifolds,
nullbordisms) is not modelled.  Each class enters only through the invariant
the pairings consume, and ``provenance`` records why that value holds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from . import cosets, mfring, qseries
from .cosets import Coset, coset_equal, coset_scale, mf_action
from .errors import InvalidArgument, MissingWitness
from .mfring import MFElement, delta_power, image_lattice_coefficient, image_lattice_contains
from .qseries import GeneratorName, QSeries, generator

DEFAULT_TERMS = 80


class Kind(enum.Enum):
    STRING_CLASS = "STRING_CLASS"        # closed string manifold; Witten genus in MF
    RELATIVE_WITTEN = "RELATIVE_WITTEN"  # spin manifold, string boundary; class in Q((q))/MF
    RELATIVE_DIRAC = "RELATIVE_DIRAC"    # spin^c manifold, spin boundary; rational index
    SPIN_WITTEN = "SPIN_WITTEN"          # closed spin manifold; Witten genus in Q((q))
    SPIN_INDEX = "SPIN_INDEX"            # closed spin manifold; Dirac index


Invariant = Union[MFElement, Coset, QSeries, Fraction]


@dataclass(frozen=True, eq=False)
class Witness:
    name: str
    degree: int
    kind: Kind
    invariant: Invariant
    provenance: str = field(default="", repr=False)

    def __post_init__(self):
        k, deg, inv = self.kind, self.degree, self.invariant
        if k is Kind.RELATIVE_WITTEN:
            if deg % 4 or not isinstance(inv, Coset) or inv.weight != deg // 2:
                raise InvalidArgument(
                    "%s: relative Witten class needs degree = 0 mod 4 and a coset of weight "
                    "degree/2" % self.name)
        elif k is Kind.RELATIVE_DIRAC:
            if deg % 4 != 2 or not isinstance(inv, Fraction):
                raise InvalidArgument("%s: relative Dirac index lives in degree 2 mod 4" % self.name)
        elif k is Kind.STRING_CLASS:
            if deg % 4 or not isinstance(inv, MFElement) or inv.weight != deg // 2:
                raise InvalidArgument("%s: string class needs a Witten genus of weight degree/2"
                                      % self.name)
            if not image_lattice_contains(inv):
                raise InvalidArgument("%s: %s is not a Witten genus of a string manifold"
                                      % (self.name, inv))
        elif k is Kind.SPIN_WITTEN:
            if deg % 4 or not isinstance(inv, QSeries):
                raise InvalidArgument("%s: spin Witten genus needs degree = 0 mod 4" % self.name)
        elif k is Kind.SPIN_INDEX:
            if deg % 4 or not isinstance(inv, Fraction):
                raise InvalidArgument("%s: spin Dirac index needs degree = 0 mod 4" % self.name)

    @property
    def weight(self) -> int:
        return self.degree // 2

    def relative_class(self) -> Coset:
        """Image in the relative group: closed manifolds map to [M, empty]."""
        if self.kind is Kind.RELATIVE_WITTEN:
            return self.invariant
        if self.kind is Kind.SPIN_WITTEN:
            return Coset(self.weight, self.invariant)
        if self.kind is Kind.STRING_CLASS:
            f = self.invariant
            rep = mfring.expand(f, DEFAULT_TERMS) if not f.is_zero() else QSeries.zero(0, 1)
            return Coset(self.weight, rep)
        raise InvalidArgument("%s has no relative Witten genus" % self.name)


def _e2(terms):
    return generator(GeneratorName.E2, terms)


@lru_cache(maxsize=8)
def catalog(terms: int = DEFAULT_TERMS) -> tuple:
    """The built-in classes; q-series invariants carry ``terms`` coefficients."""
    e2 = _e2(terms)
    delta = generator(GeneratorName.DELTA, terms)
    return (
        Witness("D2S1", 2, Kind.RELATIVE_DIRAC, Fraction(1, 2),
                "[D^2, S^1_Lie]: trivial spin^c disk, nonbounding spin circle on the boundary; "
                "[CP^1] = 2[D^2, S^1_Lie] and Ind_spinc(CP^1) = 1 give 1/2"),
        Witness("CP1", 2, Kind.RELATIVE_DIRAC, Fraction(1),
                "[CP^1, empty]: closed spin^c manifold with Ind_spinc(CP^1) = 1"),
        Witness("BOTT8", 8, Kind.SPIN_INDEX, Fraction(1),
                "closed 8-dimensional spin manifold with Dirac index 1 (Bott manifold)"),
        Witness("D4S3", 4, Kind.RELATIVE_WITTEN, Coset(2, e2 / 12),
                "[D^4, S^3_Lie]: generator of the degree-4 relative group; "
                "[K3] = 24[D^4, S^3_Lie] and Wit(K3) = 2 E2 give E2/12 mod MF_2"),
        Witness("K3", 4, Kind.SPIN_WITTEN, 2 * e2,
                "K3 surface: spin Witten genus 2 E2"),
        Witness("U_ETA3", 4, Kind.RELATIVE_WITTEN, Coset(2, e2),
                "[U_(S^1)^3, (S^1_Lie)^3] = 12[D^4, S^3_Lie] since eta^3 = 12 nu; class E2 mod MF_2"),
        Witness("L24_STRING", 24, Kind.STRING_CLASS, delta_power(1, 24),
                "Toda bracket <nu, kappabar, 24> realized by a string manifold; the "
                "nullbordism is chosen so the Witten genus is exactly 24 Delta"),
        Witness("USPIN76", 76, Kind.RELATIVE_WITTEN, Coset(38, e2 * delta ** 3),
                "[U^spin, (L25)^3]: 24^3 times it equals [L24]^3 [U_(S^1)^3, (S^1_Lie)^3]; "
                "relative Witten genus E2 Delta^3 mod MF_38"),
    )


def catalog_index(terms: int = DEFAULT_TERMS) -> dict:
    return {w.name: w for w in catalog(terms)}


def lookup(witnesses: Mapping[str, Witness], name: str) -> Witness:
    try:
        return witnesses[name]
    except KeyError:
        raise MissingWitness("witness %r is not in the catalog" % name) from None


def image_realizer(d: int) -> Witness:
    """String class of degree 24d with Witten genus a*Delta^d, a minimal."""
    if not isinstance(d, int):
        raise InvalidArgument("d must be an integer")
    a = image_lattice_coefficient(0, 0, d)
    return Witness("M%d" % (24 * d), 24 * d, Kind.STRING_CLASS, delta_power(d, a),
                   "string manifold with Witten genus %d*Delta^%d (minimal multiple in the "
                   "Witten image lattice)" % (a, d))


def product_witness(s: Witness, r: Witness) -> Witness:
    """[L] . [M, N]: relative Witten genus multiplies by Wit(L)."""
    if s.kind is not Kind.STRING_CLASS or r.kind is not Kind.RELATIVE_WITTEN:
        raise InvalidArgument("product needs a string class and a relative Witten class, got "
                              "%s and %s" % (s.kind.value, r.kind.value))
    return Witness("%s*%s" % (s.name, r.name), s.degree + r.degree, Kind.RELATIVE_WITTEN,
                   mf_action(s.invariant, r.invariant),
                   "product of %s and %s" % (s.name, r.name))


@dataclass(frozen=True)
class TraceStep:
    label: str
    statement: str
    value: object
    consistent: bool = True


@dataclass(frozen=True)
class Derivation:
    result: Coset
    target: Coset
    trace: tuple
    equal: bool


def derive_uspin76(witnesses: Mapping[str, Witness] = None, l24: MFElement = None,
                   terms: int = DEFAULT_TERMS) -> Derivation:
    """Recompute the relative Witten genus of the degree-76 class from its inputs."""
    if witnesses is None:
        witnesses = catalog_index(terms)
    d4s3 = lookup(witnesses, "D4S3")
    u_eta3 = lookup(witnesses, "U_ETA3")
    if l24 is None:
        l24 = lookup(witnesses, "L24_STRING").invariant
    steps = []

    cube = l24 ** 3
    steps.append(TraceStep("cube", "Wit(L24)^3 = (%s)^3 = %s" % (l24, cube), cube))

    via_eta = mf_action(cube, u_eta3.invariant)
    steps.append(TraceStep("product formula",
                           "Wit_rel([L24]^3 . U_eta3) = Wit(L24)^3 * Wit_rel(U_eta3)", via_eta))

    via_d4s3 = mf_action(cube, coset_scale(12, d4s3.invariant))
    steps.append(TraceStep("eta^3 = 12 nu",
                           "Wit_rel(U_eta3) = 12 Wit_rel(D4S3)", via_d4s3,
                           coset_equal(via_eta, via_d4s3)))

    result = coset_scale(Fraction(1, 24 ** 3), via_d4s3)
    window = result.rep.horizon
    e2 = _e2(window)
    target = Coset(38, (e2 * generator(GeneratorName.DELTA, window) ** 3).truncate(window))
    equal = coset_equal(result, target)
    steps.append(TraceStep("divide by 24^3",
                           "24^3 [U, (L25)^3] = [L24]^3 . U_eta3, so divide by 24^3; "
                           "compare with E2 Delta^3", result, equal))
    return Derivation(result, target, tuple(steps), equal)


def to_json(w: Witness) -> dict:
    inv = w.invariant
    if isinstance(inv, MFElement):
        payload = mfring.to_json(inv)
    elif isinstance(inv, Coset):
        payload = cosets.to_json(inv)
    elif isinstance(inv, QSeries):
        payload = qseries.to_json(inv)
    else:
        payload = qseries.fraction_to_json(inv)
    return {"name": w.name, "degree": w.degree, "kind": w.kind.value,
            "invariant": payload, "provenance": w.provenance}


def from_json(obj) -> Witness:
    try:
        kind = Kind(obj["kind"])
        payload = obj["invariant"]
        if kind is Kind.STRING_CLASS:
            inv = mfring.from_json(payload)
        elif kind is Kind.RELATIVE_WITTEN:
            inv = cosets.from_json(payload)
        elif kind is Kind.SPIN_WITTEN:
            inv = qseries.from_json(payload)
        else:
            inv = qseries.fraction_from_json(payload)
        return Witness(obj["name"], obj["degree"], kind, inv, obj.get("provenance", ""))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument("malformed Witness JSON: %s" % exc) from exc
