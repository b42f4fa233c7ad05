"""
Rational evaluation of the two integral pairings.

SQFT:  <T, [M, N]> = (1/2 Delta * Phi(T) * Wit_rel([M, N]))|_{q^0}
SQM:   <T, [M, N]> = Psi(T) * Ind_rel([M, N])

The SQFT value is computed on whatever representative the witness carries.
Independence from the representative holds because weight-2 forms have no
constant term; ``well_definedness_check`` tests this rather than assuming it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import mfring, qseries
from .cosets import Coset
from .errors import InsufficientPrecision, InvalidArgument
from .mfring import MFElement
from .qseries import GeneratorName, QSeries, fraction_to_json
from .witnesses import Kind, Witness


@dataclass(frozen=True)
class PairingResult:
    value: Fraction
    d: int
    weights: Optional[tuple] = None

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1

    def to_json(self) -> dict:
        return {"value": fraction_to_json(self.value), "d": self.d,
                "integral": self.integral,
                "weights": list(self.weights) if self.weights is not None else None}


def _q0_of_product(factors) -> Fraction:
    """Coefficient of q^0 in a product of series, using only the precision needed."""
    total_val = sum(f.valuation for f in factors)
    if total_val > 0:
        return Fraction(0)
    need = 1 - total_val  # terms every factor must determine
    trimmed = []
    for f in factors:
        if f.terms < need:
            raise InsufficientPrecision(
                "pairing needs %d coefficients from q^%d but only [%d, %d) is known"
                % (need, f.valuation, f.valuation, f.horizon), (f.valuation, f.horizon))
        trimmed.append(f.truncate(f.valuation + need))
    prod = trimmed[0]
    for f in trimmed[1:]:
        prod = prod * f
    return prod.coefficient(0)


def pairing_integrand_value(phi: MFElement, rep: QSeries) -> Fraction:
    """(1/2 Delta phi rep)|_{q^0} for an arbitrary representative."""
    if phi.is_zero():
        return Fraction(0)
    v_phi = phi.valuation
    need = 1 - (1 + v_phi + rep.valuation)
    if need <= 0:
        return Fraction(0)
    delta = qseries.generator(GeneratorName.DELTA, need)
    phis = mfring.expand(phi, need)
    return _q0_of_product([delta, phis, rep]) / 2


def pair_sqft(phi: MFElement, w: Witness) -> PairingResult:
    if w.kind is not Kind.RELATIVE_WITTEN:
        raise InvalidArgument("SQFT pairing needs a relative Witten class, got %s" % w.kind.value)
    d = w.degree + 20
    if d % 4:
        raise InvalidArgument("pairing degree %d is not divisible by 4" % d)
    if phi.weight != -d // 2:
        raise InvalidArgument("phi has weight %d; pairing with a degree-%d class needs weight %d"
                              % (phi.weight, w.degree, -d // 2))
    value = pairing_integrand_value(phi, w.invariant.rep)
    return PairingResult(value, d, (12, -d // 2, (d - 20) // 2))


def pair_sqm(x, w: Witness) -> PairingResult:
    if w.kind is not Kind.RELATIVE_DIRAC:
        raise InvalidArgument("SQM pairing needs a relative Dirac class, got %s" % w.kind.value)
    return PairingResult(Fraction(x) * w.invariant, w.degree + 2)


@dataclass(frozen=True)
class WellDefinednessRecord:
    passed: bool
    trials: int
    baseline: Fraction
    counterexample: Optional[dict] = None


def random_member(weight: int, d_min: int, horizon: int, rng: random.Random,
                  max_terms: int = 6, bound: int = 50) -> MFElement:
    """Random integer combination of weight-``weight`` basis monomials with d >= d_min."""
    top = mfring.top_exponent(weight)
    if top is None or top < d_min:
        return MFElement.zero(weight)
    mons = mfring.basis(weight, d_min, min(top, horizon - 1))
    if not mons:
        return MFElement.zero(weight)
    chosen = rng.sample(mons, rng.randint(1, min(max_terms, len(mons))))
    coords = {}
    for m in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        coords[m] = c
    return MFElement(weight, coords)


def quasimodular_control(phi: MFElement, weight: int, horizon: int) -> QSeries:
    """E2 * m for a weight-(weight-2) monomial m chosen so the pairing shifts.

    E2 times a nonzero modular form is never modular, and choosing the
    monomial with leading exponent -(1 + phi.valuation) makes the integrand's
    q^0 coefficient move by half the leading coefficient of phi.
    """
    target_d = -(1 + phi.valuation) if not phi.is_zero() else 0
    m = mfring.basis_monomial(weight - 2, target_d)
    if m is None:
        m = mfring.basis_monomial(weight - 2, mfring.top_exponent(weight - 2))
    mono = mfring.expand_monomial(m, horizon)
    return qseries.generator(GeneratorName.E2, mono.terms) * mono


def well_definedness_check(phi: MFElement, w: Witness, trials: int, seed: int = 0,
                           pole_span: int = 12, inject: QSeries = None) -> WellDefinednessRecord:
    """Perturb the witness representative by random MF members; the pairing must not move.

    ``inject`` adds one extra perturbation that is *claimed* to be a member;
    a non-member there should make the check fail (negative control).
    """
    if trials < 0:
        raise InvalidArgument("trials must be non-negative")
    base = pair_sqft(phi, w)
    rep = w.invariant.rep
    weight = w.invariant.weight
    rng = random.Random(seed)
    top = mfring.top_exponent(weight)
    d_min = min(top, rep.valuation) - pole_span
    perturbations = []
    for _ in range(trials):
        m = random_member(weight, d_min, rep.horizon, rng)
        perturbations.append((str(m), m))
    if inject is not None:
        perturbations.append(("injected", inject))
    for label, p in perturbations:
        if isinstance(p, MFElement):
            if p.is_zero():
                continue
            p = mfring.expand_to(p, rep.horizon)
        shifted = Witness(w.name, w.degree, w.kind, Coset(weight, rep + p), w.provenance)
        value = pair_sqft(phi, shifted).value
        if value != base.value:
            return WellDefinednessRecord(False, trials, base.value, {
                "perturbation": label, "value": value, "delta": value - base.value})
    return WellDefinednessRecord(True, trials, base.value)
