"""
Truncated Laurent series in q with exact rational coefficients.

A QSeries knows exactly which coefficients it determines: those of q^n for
``valuation <= n < horizon``.  Reading outside that window raises
InsufficientPrecision instead of returning a zero that might be wrong.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import InsufficientPrecision, InvalidArgument, NotInvertible


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("exact rational coefficient expected, got %r" % (c,))


class QSeries:
    """Laurent series ``sum c_n q^n`` known on the window [valuation, horizon)."""

    __slots__ = ("_valuation", "_horizon", "_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, object], valuation: int, horizon: int):
        if not isinstance(valuation, int) or not isinstance(horizon, int):
            raise InvalidArgument("valuation and horizon must be integers")
        if horizon <= valuation:
            raise InsufficientPrecision(
                "empty window [%d, %d)" % (valuation, horizon), (valuation, horizon))
        clean = {}
        for n, c in coeffs.items():
            if not valuation <= n < horizon:
                raise InvalidArgument(
                    "exponent %d outside window [%d, %d)" % (n, valuation, horizon))
            c = _as_fraction(c)
            if c:
                clean[n] = c
        self._valuation = valuation
        self._horizon = horizon
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    # constructors

    @classmethod
    def _raw(cls, coeffs: dict, valuation: int, horizon: int) -> "QSeries":
        # trusted path: coeffs already Fractions, nonzero, inside the window
        if horizon <= valuation:
            raise InsufficientPrecision(
                "empty window [%d, %d)" % (valuation, horizon), (valuation, horizon))
        self = object.__new__(cls)
        self._valuation = valuation
        self._horizon = horizon
        self._coeffs = dict(sorted(coeffs.items()))
        self._hash = None
        return self

    @classmethod
    def zero(cls, valuation: int = 0, horizon: int = 1) -> "QSeries":
        return cls._raw({}, valuation, horizon)

    @classmethod
    def monomial(cls, n: int, coeff=1, terms: int = 1) -> "QSeries":
        """``coeff * q^n`` with ``terms`` determined coefficients."""
        return cls({n: coeff}, n, n + terms)

    @classmethod
    def from_list(cls, values: Iterable, valuation: int = 0) -> "QSeries":
        values = list(values)
        return cls({valuation + k: c for k, c in enumerate(values)},
                   valuation, valuation + len(values))

    # window and coefficients

    @property
    def valuation(self) -> int:
        return self._valuation

    @property
    def horizon(self) -> int:
        return self._horizon

    @property
    def terms(self) -> int:
        return self._horizon - self._valuation

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._coeffs)

    def coefficient(self, n: int) -> Fraction:
        if not self._valuation <= n < self._horizon:
            raise InsufficientPrecision(
                "coefficient of q^%d requested; determined window is [%d, %d)"
                % (n, self._valuation, self._horizon), (self._valuation, self._horizon))
        return self._coeffs.get(n, Fraction(0))

    __getitem__ = coefficient

    def is_zero(self) -> bool:
        """True when every determined coefficient vanishes."""
        return not self._coeffs

    def leading_exponent(self):
        """Smallest exponent with a nonzero coefficient, or None."""
        for n in self._coeffs:
            return n
        return None

    def truncate(self, horizon: int) -> "QSeries":
        if horizon > self._horizon:
            raise InsufficientPrecision(
                "cannot extend horizon %d to %d" % (self._horizon, horizon),
                (self._valuation, self._horizon))
        return QSeries._raw({n: c for n, c in self._coeffs.items() if n < horizon},
                            self._valuation, horizon)

    def with_valuation(self, valuation: int) -> "QSeries":
        """Raise the valuation to a bound known to hold (coefficients below must vanish)."""
        for n in self._coeffs:
            if n < valuation:
                raise InvalidArgument("nonzero coefficient at q^%d below %d" % (n, valuation))
        if valuation < self._valuation:
            raise InvalidArgument("cannot lower the valuation of a determined window")
        return QSeries._raw(dict(self._coeffs), valuation, self._horizon)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries._raw({n + k: c for n, c in self._coeffs.items()},
                            self._valuation + k, self._horizon + k)

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality on the common determined window."""
        lo = min(self._valuation, other._valuation)
        hi = min(self._horizon, other._horizon)
        if hi <= max(self._valuation, other._valuation):
            raise InsufficientPrecision("windows do not overlap")
        for n in range(lo, hi):
            a = self._coeffs.get(n, 0)
            b = other._coeffs.get(n, 0)
            if a != b:
                return False
        return True

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Rational)):
                other = QSeries._raw({0: _as_fraction(other)} if other else {},
                                     min(0, self._valuation), self._horizon)
            else:
                return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({n: -c for n, c in self._coeffs.items()},
                            self._valuation, self._horizon)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return add(self, -other)
        if isinstance(other, (int, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, (int, Rational)):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return scale(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return scale(Fraction(1) / _as_fraction(other), self)
        if isinstance(other, QSeries):
            return mul(self, invert(other))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return invert(self) ** (-e)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if not e:
                break
            base = mul(base, base)
        if result is None:
            return QSeries._raw({0: Fraction(1)}, 0, self.terms)
        return result

    def __eq__(self, other):
        # structural: same window and same coefficients
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self._valuation == other._valuation and self._horizon == other._horizon
                and self._coeffs == other._coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._valuation, self._horizon,
                               tuple(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return "QSeries(%s, window=[%d, %d))" % (format_series(self), self._valuation,
                                                  self._horizon)

    def __str__(self):
        return format_series(self)


def add(a: QSeries, b: QSeries) -> QSeries:
    h = min(a.horizon, b.horizon)
    v = min(a.valuation, b.valuation)
    if h <= v:
        raise InsufficientPrecision("sum has empty window [%d, %d)" % (v, h), (v, h))
    out = {n: c for n, c in a._coeffs.items() if n < h}
    for n, c in b._coeffs.items():
        if n >= h:
            break
        s = out.get(n, 0) + c
        if s:
            out[n] = s
        else:
            out.pop(n, None)
    return QSeries._raw(out, v, h)


def _integer_form(a: QSeries, h: int):
    items = [(n, c) for n, c in a._coeffs.items() if n < h]
    den = 1
    for _, c in items:
        if c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return den, [(n, c.numerator * (den // c.denominator)) for n, c in items]


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product on the window both factors determine."""
    v = a.valuation + b.valuation
    h = min(a.horizon + b.valuation, b.horizon + a.valuation)
    if h <= v:
        raise InsufficientPrecision("product has empty window [%d, %d)" % (v, h), (v, h))
    # a coefficient of a at n contributes below h only when n < h - b.valuation
    da, ia = _integer_form(a, h - b.valuation)
    db, ib = _integer_form(b, h - a.valuation)
    acc = {}
    for na, ca in ia:
        limit = h - na
        for nb, cb in ib:
            if nb >= limit:
                break
            k = na + nb
            acc[k] = acc.get(k, 0) + ca * cb
    den = da * db
    return QSeries._raw({n: Fraction(c, den) for n, c in acc.items() if c}, v, h)


def scale(c, a: QSeries) -> QSeries:
    c = _as_fraction(c)
    if not c:
        return QSeries._raw({}, a.valuation, a.horizon)
    return QSeries._raw({n: c * x for n, x in a._coeffs.items()}, a.valuation, a.horizon)


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; the lowest window coefficient must be nonzero."""
    v = a.valuation
    lead = a._coeffs.get(v)
    if not lead:
        raise NotInvertible("coefficient of q^%d is zero; series is not invertible" % v)
    n_terms = a.terms
    # normalized a = lead * q^v * (1 + sum_{k>=1} u_k q^k)
    u = [a._coeffs.get(v + k, Fraction(0)) / lead for k in range(n_terms)]
    b = [Fraction(0)] * n_terms
    b[0] = Fraction(1)
    for k in range(1, n_terms):
        s = Fraction(0)
        for m in range(1, k + 1):
            um = u[m]
            if um:
                s += um * b[k - m]
        b[k] = -s
    inv_lead = 1 / lead
    return QSeries._raw({-v + k: inv_lead * c for k, c in enumerate(b) if c},
                        -v, -v + n_terms)


def coefficient(a: QSeries, n: int) -> Fraction:
    return a.coefficient(n)


# generators

class GeneratorName(enum.Enum):
    C4 = "C4"
    C6 = "C6"
    DELTA = "DELTA"
    DELTA_INV = "DELTA_INV"
    E2 = "E2"


def divisor_sums(k: int, count: int) -> list:
    """[sigma_k(0)=0, sigma_k(1), ..., sigma_k(count-1)] by a divisor sieve."""
    sig = [0] * max(count, 1)
    for d in range(1, count):
        p = d ** k
        for m in range(d, count, d):
            sig[m] += p
    return sig


def _eisenstein(scale_factor: int, k: int, terms: int) -> QSeries:
    sig = divisor_sums(k, terms)
    vals = [1] + [scale_factor * sig[n] for n in range(1, terms)]
    return QSeries._raw({n: Fraction(c) for n, c in enumerate(vals) if c}, 0, terms)


@lru_cache(maxsize=None)
def _generator(name: GeneratorName, terms: int) -> QSeries:
    if name is GeneratorName.C4:
        return _eisenstein(240, 3, terms)
    if name is GeneratorName.C6:
        return _eisenstein(-504, 5, terms)
    if name is GeneratorName.E2:
        return _eisenstein(-24, 1, terms)
    if name is GeneratorName.DELTA:
        # (c4^3 - c6^2)/1728 has zero constant term; one extra term buys the shift
        c4 = _generator(GeneratorName.C4, terms + 1)
        c6 = _generator(GeneratorName.C6, terms + 1)
        raw = scale(Fraction(1, 1728), c4 ** 3 - c6 ** 2)
        return raw.with_valuation(1)
    if name is GeneratorName.DELTA_INV:
        return invert(_generator(GeneratorName.DELTA, terms))
    raise InvalidArgument("unknown generator %r" % (name,))


def generator(name, terms: int) -> QSeries:
    """q-expansion of c4, c6, Delta, 1/Delta or E2 with ``terms`` determined coefficients."""
    if not isinstance(terms, int) or terms <= 0:
        raise InvalidArgument("terms must be a positive integer, got %r" % (terms,))
    if not isinstance(name, GeneratorName):
        try:
            name = GeneratorName(str(name).upper())
        except ValueError:
            raise InvalidArgument("unknown generator %r" % (name,)) from None
    return _generator(name, terms)


@lru_cache(maxsize=None)
def generator_power(name: GeneratorName, e: int, terms: int) -> QSeries:
    """``generator(name, terms) ** e``, cached; ``terms`` is preserved."""
    if e == 0:
        return QSeries._raw({0: Fraction(1)}, 0, terms)
    if e == 1:
        return _generator(name, terms)
    half = generator_power(name, e // 2, terms)
    sq = mul(half, half)
    if e % 2:
        sq = mul(sq, _generator(name, terms))
    return sq


# formatting and JSON

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_series(a: QSeries, var: str = "q") -> str:
    """Render as e.g. ``q^-1 + 24 + 324*q``."""
    parts = []
    for n, c in a._coeffs.items():
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if n == 0:
            body = _format_coeff(mag)
        else:
            mono = var if n == 1 else "%s^%d" % (var, n)
            body = mono if mag == 1 else "%s*%s" % (_format_coeff(mag), mono)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


def fraction_to_json(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def fraction_from_json(obj) -> Fraction:
    try:
        num = int(obj["num"])
        den = int(obj["den"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument("malformed rational %r" % (obj,)) from exc
    if den == 0:
        raise InvalidArgument("zero denominator in %r" % (obj,))
    return Fraction(num, den)


def to_json(a: QSeries) -> dict:
    return {
        "valuation": a.valuation,
        "horizon": a.horizon,
        "coeffs": [dict(n=n, **fraction_to_json(c)) for n, c in a._coeffs.items()],
    }


def from_json(obj) -> QSeries:
    try:
        valuation = obj["valuation"]
        horizon = obj["horizon"]
        entries = obj["coeffs"]
    except (KeyError, TypeError) as exc:
        raise InvalidArgument("malformed QSeries JSON: %s" % exc) from exc
    if not isinstance(valuation, int) or not isinstance(horizon, int):
        raise InvalidArgument("valuation and horizon must be integers")
    coeffs = {}
    for e in entries:
        if not isinstance(e, dict) or not isinstance(e.get("n"), int):
            raise InvalidArgument("malformed coefficient entry %r" % (e,))
        if e["n"] in coeffs:
            raise InvalidArgument("duplicate exponent %d" % e["n"])
        coeffs[e["n"]] = fraction_from_json(e)
    return QSeries(coeffs, valuation, horizon)
