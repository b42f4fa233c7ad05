"""
The ring Z[c4, c6, Delta, 1/Delta]/(c4^3 - c6^2 - 1728 Delta) of weakly
holomorphic modular forms, tensored with Q.

Elements are kept in the normal form ``sum a * c4^i c6^j Delta^d`` with
``j in {0, 1}``.  In a fixed weight w each d admits at most one such
monomial, and its q-expansion starts ``q^d + ...``; so the monomials of a
weight, ordered by d, form an echelon basis and membership in MF_w reduces
to a single forward sweep over exponents.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .errors import InsufficientPrecision, InvalidArgument, MixedWeight
from .qseries import (GeneratorName, QSeries, fraction_from_json, fraction_to_json,
                      generator_power, mul, _as_fraction)

class MFMonomial(NamedTuple):
    """c4^i c6^j Delta^d with i >= 0 and j in {0, 1}."""

    i: int
    j: int
    d: int

    @property
    def weight(self) -> int:
        return 4 * self.i + 6 * self.j + 12 * self.d

    def __str__(self):
        return _format_monomial(self.i, self.j, self.d)


def monomial(i: int, j: int, d: int) -> MFMonomial:
    if not all(isinstance(x, int) for x in (i, j, d)):
        raise InvalidArgument("monomial exponents must be integers")
    if i < 0:
        raise InvalidArgument("c4 exponent must be non-negative, got %d" % i)
    if j not in (0, 1):
        raise InvalidArgument("c6 exponent must be 0 or 1, got %d" % j)
    return MFMonomial(i, j, d)


def _format_monomial(i, j, d) -> str:
    parts = []
    if i:
        parts.append("c4" if i == 1 else "c4^%d" % i)
    if j:
        parts.append("c6" if j == 1 else "c6^%d" % j)
    if d:
        parts.append("Delta" if d == 1 else "Delta^%d" % d)
    return "*".join(parts) if parts else "1"


class MFElement:
    """Homogeneous element of MF^Q in normal form."""

    __slots__ = ("_weight", "_coords")

    def __init__(self, weight: int, coords: Mapping[MFMonomial, object] = None):
        if not isinstance(weight, int):
            raise InvalidArgument("weight must be an integer")
        clean = {}
        for m, c in (coords or {}).items():
            m = monomial(*m)
            if m.weight != weight:
                raise MixedWeight("monomial %s has weight %d, not %d" % (m, m.weight, weight))
            c = _as_fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        clean = {m: c for m, c in clean.items() if c}
        if clean and weight % 2:
            raise MixedWeight("odd weight %d has no nonzero elements" % weight)
        self._weight = weight
        self._coords = dict(sorted(clean.items(), key=lambda kv: kv[0].d))

    @classmethod
    def zero(cls, weight: int) -> "MFElement":
        return cls(weight)

    @classmethod
    def one(cls) -> "MFElement":
        return cls(0, {MFMonomial(0, 0, 0): 1})

    @classmethod
    def from_monomial(cls, i: int, j: int, d: int, coeff=1) -> "MFElement":
        m = monomial(i, j, d)
        return cls(m.weight, {m: coeff})

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def coords(self) -> Mapping[MFMonomial, Fraction]:
        return MappingProxyType(self._coords)

    def is_zero(self) -> bool:
        return not self._coords

    @property
    def valuation(self):
        """Leading q-exponent (smallest d in the support); None for zero."""
        for m in self._coords:
            return m.d
        return None

    def __add__(self, other):
        if not isinstance(other, MFElement):
            return NotImplemented
        if other._weight != self._weight:
            raise MixedWeight("cannot add weights %d and %d" % (self._weight, other._weight))
        out = dict(self._coords)
        for m, c in other._coords.items():
            out[m] = out.get(m, 0) + c
        return MFElement(self._weight, out)

    def __neg__(self):
        return MFElement(self._weight, {m: -c for m, c in self._coords.items()})

    def __sub__(self, other):
        if not isinstance(other, MFElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MFElement):
            poly = {}
            for m1, a in self._coords.items():
                for m2, b in other._coords.items():
                    key = (m1.i + m2.i, m1.j + m2.j, m1.d + m2.d)
                    poly[key] = poly.get(key, 0) + a * b
            if not poly:
                return MFElement(self._weight + other._weight)
            return normalize(poly)
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            return MFElement(self._weight, {m: c * x for m, x in self._coords.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not is_unit(self):
                raise InvalidArgument("only units +-Delta^d have inverses in MF")
            (m, c), = self._coords.items()
            return MFElement.from_monomial(0, 0, m.d * e, c ** e)
        result = MFElement.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MFElement):
            return NotImplemented
        return self._weight == other._weight and self._coords == other._coords

    def __hash__(self):
        return hash((self._weight, tuple(self._coords.items())))

    def __repr__(self):
        return "MFElement(weight=%d, %s)" % (self._weight, format_element(self))

    def __str__(self):
        return format_element(self)


def normalize(poly: Mapping[tuple, object]) -> MFElement:
    """Rewrite a polynomial in c4, c6, Delta^(+-1) into normal form.

    ``poly`` maps exponent triples (i, j, d) with i, j >= 0 to rational
    coefficients.  Every term must have the same weight 4i + 6j + 12d.
    """
    weights = set()
    work = {}
    for key, c in poly.items():
        i, j, d = key
        if not all(isinstance(x, int) for x in (i, j, d)) or i < 0 or j < 0:
            raise InvalidArgument("bad exponents %r" % (key,))
        c = _as_fraction(c)
        if not c:
            continue
        weights.add(4 * i + 6 * j + 12 * d)
        work[(i, j, d)] = work.get((i, j, d), 0) + c
    if len(weights) > 1:
        raise MixedWeight("inhomogeneous input with weights %s" % sorted(weights))
    if not weights:
        weight = 0
        for i, j, d in poly:
            weight = 4 * i + 6 * j + 12 * d
            break
        return MFElement(weight)
    weight = weights.pop()
    # c6^2 -> c4^3 - 1728 Delta, one rewrite per pass until every j <= 1
    out = {}
    while work:
        jmax = max(k[1] for k in work)
        if jmax <= 1:
            for (i, j, d), c in work.items():
                out[(i, j, d)] = out.get((i, j, d), 0) + c
            break
        nxt = {}
        for (i, j, d), c in work.items():
            if j >= 2:
                for key, cc in (((i + 3, j - 2, d), c), ((i, j - 2, d + 1), -1728 * c)):
                    nxt[key] = nxt.get(key, 0) + cc
            else:
                nxt[(i, j, d)] = nxt.get((i, j, d), 0) + c
        work = {k: c for k, c in nxt.items() if c}
    return MFElement(weight, {MFMonomial(*k): c for k, c in out.items() if c})


@lru_cache(maxsize=4096)
def expand_monomial(m: MFMonomial, horizon: int) -> QSeries:
    """q-expansion of one monomial, determined up to (excluding) ``horizon``."""
    terms = horizon - m.d
    if terms <= 0:
        raise InsufficientPrecision("horizon %d not above leading exponent %d" % (horizon, m.d))
    s = generator_power(GeneratorName.C4, m.i, terms)
    if m.j:
        s = mul(s, generator_power(GeneratorName.C6, 1, terms))
    if m.d > 0:
        s = mul(s, generator_power(GeneratorName.DELTA, m.d, terms))
    elif m.d < 0:
        s = mul(s, generator_power(GeneratorName.DELTA_INV, -m.d, terms))
    return s


def expand_to(f: MFElement, horizon: int) -> QSeries:
    """q-expansion of ``f`` determined on [valuation, horizon)."""
    v = f.valuation
    if v is None:
        return QSeries.zero(min(0, horizon - 1), horizon)
    if horizon <= v:
        raise InsufficientPrecision("horizon %d not above valuation %d" % (horizon, v))
    total = QSeries.zero(v, horizon)
    for m, c in f.coords.items():
        if m.d >= horizon:  # entirely O(q^horizon)
            continue
        total = total + c * expand_monomial(m, horizon)
    return total


def expand(f: MFElement, terms: int) -> QSeries:
    if not isinstance(terms, int) or terms <= 0:
        raise InvalidArgument("terms must be a positive integer")
    v = f.valuation
    if v is None:
        return QSeries.zero(0, terms)
    return expand_to(f, v + terms)


def basis_monomial(weight: int, d: int):
    """The unique weight-``weight`` monomial with Delta-exponent d, or None."""
    if weight % 2:
        return None
    r = weight - 12 * d
    if r >= 0 and r % 4 == 0:
        return MFMonomial(r // 4, 0, d)
    if r >= 6 and (r - 6) % 4 == 0:
        return MFMonomial((r - 6) // 4, 1, d)
    return None


def top_exponent(weight: int):
    """Largest d with a weight-``weight`` basis monomial (None for odd weight)."""
    if weight % 2:
        return None
    d = weight // 12
    while basis_monomial(weight, d) is None:
        d -= 1
    return d


def basis(weight: int, d_min: int, d_max: int) -> list:
    if d_min > d_max:
        raise InvalidArgument("d_min %d exceeds d_max %d" % (d_min, d_max))
    if weight % 2:
        return []
    out = []
    for d in range(d_min, d_max + 1):
        m = basis_monomial(weight, d)
        if m is not None:
            out.append(m)
    return out


class Reduction(NamedTuple):
    weight: int
    coords: dict
    remainder: QSeries

    @property
    def is_member(self) -> bool:
        return self.remainder.is_zero()

    @property
    def element(self) -> MFElement:
        return MFElement(self.weight, self.coords)


def reduce(s: QSeries, weight: int) -> Reduction:
    """Eliminate every basis-leading exponent of ``s`` in weight ``weight``.

    Returns the eliminated coordinates and the remainder.  ``s`` lies in
    MF_weight (on its window) exactly when the remainder vanishes.
    """
    if weight % 2:
        return Reduction(weight, {}, s)
    top = top_exponent(weight)
    if s.valuation <= top and s.horizon <= top:
        raise InsufficientPrecision(
            "window [%d, %d) does not reach basis exponent %d of weight %d"
            % (s.valuation, s.horizon, top, weight), (s.valuation, s.horizon))
    coords = {}
    rem = s
    for n in range(s.valuation, top + 1):
        c = rem.coefficient(n)
        if not c:
            continue
        m = basis_monomial(weight, n)
        if m is None:
            continue
        coords[m] = c
        rem = rem - c * expand_monomial(m, s.horizon)
    return Reduction(weight, coords, rem)


def is_member(s: QSeries, weight: int) -> bool:
    return reduce(s, weight).is_member


@dataclass(frozen=True)
class VanishingRecord:
    weight: int
    max_pole: int
    entries: tuple  # (MFMonomial, q^0 coefficient)
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", all(c == 0 for _, c in self.entries))

    def failures(self):
        return [(m, c) for m, c in self.entries if c != 0]


def constant_term_vanishing(weight: int, max_pole: int) -> VanishingRecord:
    """q^0 coefficients of every basis monomial with pole order <= max_pole."""
    if not isinstance(max_pole, int) or max_pole < 1:
        raise InvalidArgument("max_pole must be a positive integer")
    entries = []
    for m in basis(weight, -max_pole, 0):
        entries.append((m, expand_monomial(m, 1).coefficient(0)))
    return VanishingRecord(weight, max_pole, tuple(entries))


def image_lattice_coefficient(i: int, j: int, d: int) -> int:
    """Smallest positive a with a*c4^i c6^j Delta^d a Witten genus of a string manifold."""
    if j not in (0, 1):
        raise InvalidArgument("c6 exponent must be 0 or 1, got %r" % (j,))
    if not isinstance(i, int) or i < 0:
        raise InvalidArgument("c4 exponent must be a non-negative integer")
    if i == 0 and j == 0:
        return 24 // math.gcd(24, abs(d))
    if j == 1:
        return 2
    return 1


@dataclass(frozen=True)
class LatticeCertificate:
    contains: bool
    entries: tuple  # (monomial, coefficient, required modulus, ok)

    def __bool__(self):
        return self.contains


def image_lattice_contains(f: MFElement) -> LatticeCertificate:
    entries = []
    for m, c in f.coords.items():
        a = image_lattice_coefficient(*m)
        ok = c.denominator == 1 and c.numerator % a == 0
        entries.append((m, c, a, ok))
    return LatticeCertificate(all(e[3] for e in entries), tuple(entries))


def is_unit(f: MFElement) -> bool:
    if len(f.coords) != 1:
        return False
    (m, c), = f.coords.items()
    return m.i == 0 and m.j == 0 and abs(c) == 1


def delta_power(d: int, coeff=1) -> MFElement:
    return MFElement.from_monomial(0, 0, d, coeff)


# text grammar: terms "coeff*c4^i*c6^j*Delta^d" joined by + / -

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(c4|c6|Delta|D)(?:\^\(?(-?\d+)\)?)?$")
_COEFF = re.compile(r"^\d+(?:/\d+)?$")


def parse_element(text: str) -> MFElement:
    """Parse e.g. ``"3*Delta^8"``, ``"Delta^-1"``, ``"c4^2*c6*Delta^-1 - 1/2*c4"``."""
    src = text.strip()
    if not src:
        raise InvalidArgument("empty expression")
    # protect exponent signs, then split on the remaining +/-
    src = re.sub(r"\^\s*\(?\s*-\s*(\d+)\s*\)?", r"^~\1", src)
    pieces = _TERM_SPLIT.split(src)
    if pieces[0].strip() == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    tokens = []
    for sign, term in zip(pieces[::2], pieces[1::2]):
        term = term.strip().replace("~", "-")
        if not term:
            raise InvalidArgument("dangling operator in %r" % text)
        tokens.append((sign, term))
    if len(pieces) % 2:
        raise InvalidArgument("dangling operator in %r" % text)
    poly = {}
    for sign, term in tokens:
        coeff = Fraction(1)
        i = j = d = 0
        for factor in (p.strip() for p in term.split("*")):
            if not factor:
                raise InvalidArgument("empty factor in %r" % term)
            if _COEFF.match(factor):
                try:
                    coeff *= Fraction(factor)
                except ZeroDivisionError:
                    raise InvalidArgument("zero denominator in %r" % factor) from None
                continue
            mt = _FACTOR.match(factor)
            if not mt:
                raise InvalidArgument("cannot parse factor %r" % factor)
            name, exp = mt.group(1), int(mt.group(2) or 1)
            if name == "c4":
                i += exp
            elif name == "c6":
                j += exp
            else:
                d += exp
        if i < 0 or j < 0:
            raise InvalidArgument("negative power of c4 or c6 in %r" % term)
        if sign == "-":
            coeff = -coeff
        poly[(i, j, d)] = poly.get((i, j, d), 0) + coeff
    return normalize(poly)


def format_element(f: MFElement) -> str:
    if f.is_zero():
        return "0"
    out = ""
    for k, (m, c) in enumerate(f.coords.items()):
        mag = abs(c)
        mono = str(m)
        if mag == 1:
            body = mono
        else:
            cs = str(mag.numerator) if mag.denominator == 1 else str(mag)
            body = cs if mono == "1" else "%s*%s" % (cs, mono)
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def to_json(f: MFElement) -> dict:
    return {
        "weight": f.weight,
        "terms": [dict(i=m.i, j=m.j, d=m.d, **fraction_to_json(c)) for m, c in f.coords.items()],
    }


def from_json(obj) -> MFElement:
    try:
        weight = obj["weight"]
        terms = obj["terms"]
        coords = {}
        for t in terms:
            m = monomial(t["i"], t["j"], t["d"])
            if m in coords:
                raise InvalidArgument("duplicate monomial %s" % m)
            coords[m] = fraction_from_json(t)
    except (KeyError, TypeError) as exc:
        raise InvalidArgument("malformed MFElement JSON: %s" % exc) from exc
    return MFElement(weight, coords)
