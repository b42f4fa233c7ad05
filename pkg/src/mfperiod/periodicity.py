"""
Divisibility obstructions and the periodicity lower bounds they imply.

Every modulus here is the denominator of a pairing value recomputed from the
witness catalog.  Removing a witness makes the dependent case raise
MissingWitness instead of silently reusing a remembered answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import mfring
from .errors import InvalidArgument
from .mfring import delta_power, image_lattice_coefficient, is_unit
from .pairing import pair_sqft, pair_sqm
from .qseries import fraction_to_json
from .witnesses import (DEFAULT_TERMS, Witness, catalog_index, image_realizer, lookup,
                        product_witness)


@dataclass(frozen=True)
class ObstructionReport:
    target: str
    witness_chain: tuple
    pairing_value: Fraction  # value of the pairing at k = 1; at k it is k * this
    modulus: int
    citations: tuple = ()

    def obstructs(self, k: int) -> bool:
        """True when k * pairing_value is not an integer."""
        return (k * self.pairing_value).denominator != 1

    def to_json(self) -> dict:
        return {"target": self.target, "witness_chain": list(self.witness_chain),
                "pairing": fraction_to_json(self.pairing_value), "modulus": self.modulus,
                "citations": list(self.citations)}


@dataclass(frozen=True)
class CaseEntry:
    d: int
    method: str  # "obstruction" | "reduction" | "unit-grading"
    excluded: bool
    n: Optional[int] = None
    m: Optional[int] = None
    modulus: Optional[int] = None
    pairing: Optional[Fraction] = None
    detail: str = ""
    citations: tuple = ()

    def to_json(self) -> dict:
        out = {"d": self.d, "method": self.method, "excluded": self.excluded}
        for key in ("n", "m", "modulus"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.pairing is not None:
            out["pairing"] = fraction_to_json(self.pairing)
        out["detail"] = self.detail
        out["citations"] = list(self.citations)
        return out


@dataclass(frozen=True)
class LowerBoundReport:
    spectrum: str
    bound: int
    cases: tuple
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        return {"spectrum": self.spectrum, "bound": self.bound,
                "cases": [c.to_json() for c in self.cases], "notes": list(self.notes)}


def _modulus(value: Fraction) -> int:
    return Fraction(value).denominator


# chains for the three Delta-power obstructions: (realizer exponent or None, base witness)
_DELTA_CHAINS = {
    1: (None, "D4S3"),
    16: (15, "D4S3"),
    12: (8, "USPIN76"),
}


def obstruct_delta_power(d: int, witnesses: Mapping[str, Witness] = None,
                         terms: int = DEFAULT_TERMS) -> Optional[ObstructionReport]:
    """If k*Delta^-d is in the image of Phi, integrality forces modulus | k."""
    if not isinstance(d, int) or d < 1:
        raise InvalidArgument("d must be a positive integer")
    if d not in _DELTA_CHAINS:
        return None
    if witnesses is None:
        witnesses = catalog_index(terms)
    realizer_d, base_name = _DELTA_CHAINS[d]
    base = lookup(witnesses, base_name)
    chain = [base_name]
    cites = ["integrality of <T, [M,N]> = (Delta/2 * Phi(T) * Wit_rel[M,N])|q^0"]
    w = base
    if realizer_d is not None:
        realizer = image_realizer(realizer_d)
        w = product_witness(realizer, base)
        chain.insert(0, "%s (Wit = %s)" % (realizer.name, realizer.invariant))
        cites.append("Witten image lattice: minimal multiple of Delta^%d is %d"
                     % (realizer_d, image_lattice_coefficient(0, 0, realizer_d)))
        cites.append("product formula Wit_rel(L.[M,N]) = Wit(L) Wit_rel([M,N])")
    result = pair_sqft(delta_power(-d), w)
    return ObstructionReport("k*Delta^-%d in degree %d" % (d, -24 * d), tuple(chain),
                             result.value, _modulus(result.value), tuple(cites))


def naive_degree12_obstruction(witnesses: Mapping[str, Witness] = None,
                               terms: int = DEFAULT_TERMS) -> ObstructionReport:
    """The D4S3 * (24 Delta^11) attempt at Delta^-12; it yields no divisibility."""
    if witnesses is None:
        witnesses = catalog_index(terms)
    base = lookup(witnesses, "D4S3")
    realizer = image_realizer(11)
    w = product_witness(realizer, base)
    result = pair_sqft(delta_power(-12), w)
    return ObstructionReport("k*Delta^-12 via the minimal Delta^11 string class",
                             ("%s (Wit = %s)" % (realizer.name, realizer.invariant), "D4S3"),
                             result.value, _modulus(result.value),
                             ("gcd(11, 24) = 1 so 24*Delta^11 is the minimal Witten genus",))


def reduction_exponents(d: int):
    """Minimal n >= 1 and matching m with n*d = -12 + 24*m, or None if none exists."""
    if not isinstance(d, int) or not 1 <= d <= 23:
        raise InvalidArgument("d must lie in 1..23")
    if 12 % math.gcd(d, 24):
        return None
    for n in range(1, 25):
        if (n * d + 12) % 24 == 0:
            return n, (n * d + 12) // 24
    raise AssertionError("unreachable: congruence solvable but no n in 1..24")


def unit_grading_certificate(max_abs_weight: int = 24 * 12) -> bool:
    """Every unit of MF is +-Delta^d, so units sit only in weights divisible by 12.

    Checked on the basis: a weight-w monomial that is a unit exists only when
    12 | w, and products of units stay units.
    """
    for w in range(-max_abs_weight, max_abs_weight + 1, 2):
        top = mfring.top_exponent(w)
        for m in mfring.basis(w, top - max_abs_weight // 12 - 2, top):
            f = mfring.MFElement(w, {m: 1})
            if is_unit(f) and w % 12:
                return False
            if is_unit(f) != (m.i == 0 and m.j == 0):
                return False
    u, v = delta_power(5), delta_power(-7, -1)
    return is_unit(u * v) and is_unit(u ** 3)


def sqft_lower_bound(witnesses: Mapping[str, Witness] = None,
                     terms: int = DEFAULT_TERMS) -> LowerBoundReport:
    """Exclude every period 24d with 0 < d < 24 for the image ring of Phi."""
    if witnesses is None:
        witnesses = catalog_index(terms)
    if not unit_grading_certificate():
        raise AssertionError("unit grading certificate failed")
    # Delta^24 and Delta^-24 are Witten genera, hence in the image ring
    if image_lattice_coefficient(0, 0, 24) != 1 or image_lattice_coefficient(0, 0, -24) != 1:
        raise AssertionError("Delta^(+-24) not in the Witten image lattice")
    cases = [CaseEntry(0, "unit-grading", True,
                       detail="units of MF are +-Delta^d, so any period is a multiple of 24",
                       citations=("units of Z[c4, c6, Delta, 1/Delta] are +-Delta^d",))]
    obs16 = obstruct_delta_power(16, witnesses)
    obs12 = obstruct_delta_power(12, witnesses)
    bound = None
    for d in range(1, 25):
        if d == 24:
            # no witness obstructs Delta^-24: it is itself a Witten genus
            if obstruct_delta_power(24, witnesses) is None:
                bound = 24 * d
            break
        red = reduction_exponents(d)
        if red is None:
            # (Delta^-d)^(16/d) = Delta^-16 with k = 1
            power = 16 // d
            cases.append(CaseEntry(
                d, "obstruction", obs16.obstructs(1), n=power, modulus=obs16.modulus,
                pairing=obs16.pairing_value,
                detail="(Delta^-%d)^%d = Delta^-16 lies in the image with k = 1, but %d does "
                       "not divide 1" % (d, power, obs16.modulus),
                citations=obs16.citations + ("witness chain: " + " * ".join(obs16.witness_chain),)))
        else:
            n, m = red
            cases.append(CaseEntry(
                d, "reduction", obs12.obstructs(1), n=n, m=m, modulus=obs12.modulus,
                pairing=obs12.pairing_value,
                detail="(Delta^%d)^%d * (Delta^-24)^%d = Delta^-12 since %d*%d = -12 + 24*%d; "
                       "k = 1 but %d does not divide 1" % (d, n, m, n, d, m, obs12.modulus),
                citations=obs12.citations + ("witness chain: " + " * ".join(obs12.witness_chain),
                                             "Delta^(+-24) in the Witten image lattice")))
        if not cases[-1].excluded:
            bound = 24 * d
            break
    notes = ("bound certified for the graded image ring of Phi; transfer to the spectrum "
             "uses that Phi is a ring map",)
    return LowerBoundReport("SQFT", bound, tuple(cases), notes)


def sqm_lower_bound(witnesses: Mapping[str, Witness] = None,
                    terms: int = DEFAULT_TERMS) -> LowerBoundReport:
    """Exclude every period n with 0 < n < 8 for the image ring of Psi."""
    if witnesses is None:
        witnesses = catalog_index(terms)
    d2s1 = lookup(witnesses, "D2S1")
    bott = lookup(witnesses, "BOTT8")
    if bott.invariant != 1:
        raise AssertionError("degree-8 shift needs a spin manifold with Dirac index 1")
    res = pair_sqm(1, d2s1)
    modulus = _modulus(res.value)
    cases = []
    bound = None
    for n in range(1, 9):
        if n % 4:
            cases.append(CaseEntry(n, "unit-grading", True,
                                   detail="Psi lands in degrees 4Z; degree %d has zero image" % n,
                                   citations=("Psi: pi_* SQM -> Q[4k] is a graded ring map",)))
        elif n % 8:
            # x in degree n and its inverse in -n both lie in modulus*Z after shifting by BOTT8
            excluded = modulus > 1
            cases.append(CaseEntry(
                n, "obstruction", excluded, modulus=modulus, pairing=res.value,
                detail="degree %d = 4 mod 8 is tied to degree -4 by BOTT8 (index 1); there "
                       "x * Ind_rel(D2S1) = x*%s must be an integer, so x in %dZ; a unit pair "
                       "x*y = 1 with x, y in %dZ would put 1 in %dZ"
                       % (n, res.value, modulus, modulus, modulus * modulus),
                citations=("integrality of <T, [M,N]> = Psi(T) * Ind_rel([M,N])",
                           "Ind_rel([D^2, S^1_Lie]) = 1/2",
                           "8-dimensional spin manifold with Dirac index 1")))
        else:
            cases.append(CaseEntry(n, "obstruction", False, detail="no obstruction in degree 8"))
        if not cases[-1].excluded:
            bound = n
            break
    return LowerBoundReport("SQM", bound, tuple(cases))
