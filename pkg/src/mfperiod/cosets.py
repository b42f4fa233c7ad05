"""
Classes in Q((q)) / MF_w^Q.

A relative Witten genus is only defined up to a weakly holomorphic modular
form of the matching weight.  The canonical representative of a class has a
zero coefficient at every exponent that leads a weight-w basis monomial, so
two classes are equal exactly when their canonical representatives agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import mfring, qseries
from .errors import InvalidArgument
from .mfring import MFElement
from .qseries import QSeries


@dataclass(frozen=True, eq=False)
class Coset:
    weight: int
    rep: QSeries

    def __post_init__(self):
        if not isinstance(self.weight, int) or self.weight % 2:
            raise InvalidArgument("coset weight must be an even integer, got %r" % (self.weight,))
        if not isinstance(self.rep, QSeries):
            raise InvalidArgument("coset representative must be a QSeries")

    def canonical(self) -> "Coset":
        return canonicalize(self)

    def is_canonical(self) -> bool:
        return mfring.reduce(self.rep, self.weight).coords == {}

    def __add__(self, other):
        if isinstance(other, Coset):
            if other.weight != self.weight:
                raise InvalidArgument("weights %d and %d differ" % (self.weight, other.weight))
            return Coset(self.weight, self.rep + other.rep)
        if isinstance(other, QSeries):
            return Coset(self.weight, self.rep + other)
        return NotImplemented

    def __repr__(self):
        return "Coset(%s mod MF_%d, window=[%d, %d))" % (
            self.rep, self.weight, self.rep.valuation, self.rep.horizon)


def canonicalize(c: Coset) -> Coset:
    return Coset(c.weight, mfring.reduce(c.rep, c.weight).remainder)


def coset_equal(a: Coset, b: Coset) -> bool:
    if a.weight != b.weight:
        raise InvalidArgument("cannot compare classes of weights %d and %d" % (a.weight, b.weight))
    return mfring.reduce(a.rep - b.rep, a.weight).is_member


def mf_action(f: MFElement, c: Coset) -> Coset:
    """The class of f * rep in weight f.weight + c.weight."""
    if f.is_zero():
        return Coset(f.weight + c.weight, QSeries.zero(c.rep.valuation, c.rep.horizon))
    # give f as many terms as the representative so no precision is wasted
    fs = mfring.expand_to(f, f.valuation + c.rep.terms)
    return Coset(f.weight + c.weight, fs * c.rep)


def coset_scale(r, c: Coset) -> Coset:
    return Coset(c.weight, qseries.scale(Fraction(r), c.rep))


def coset_add(a: Coset, b: Coset) -> Coset:
    return a + b


def to_json(c: Coset) -> dict:
    return {"weight": c.weight, "rep": qseries.to_json(c.rep), "canonical": c.is_canonical()}


def from_json(obj) -> Coset:
    try:
        return Coset(obj["weight"], qseries.from_json(obj["rep"]))
    except (KeyError, TypeError) as exc:
        raise InvalidArgument("malformed Coset JSON: %s" % exc) from exc
