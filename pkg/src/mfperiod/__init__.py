"""Exact q-series and modular-form arithmetic for periodicity obstructions."""

from .cosets import Coset, canonicalize, coset_equal, mf_action
from .errors import (InsufficientPrecision, InvalidArgument, MFPeriodError, MissingWitness,
                     MixedWeight, NotInvertible)
from .mfring import (MFElement, MFMonomial, basis, delta_power, expand, image_lattice_contains,
                     parse_element, reduce)
from .pairing import pair_sqft, pair_sqm, well_definedness_check
from .periodicity import obstruct_delta_power, sqft_lower_bound, sqm_lower_bound
from .qseries import GeneratorName, QSeries, generator
from .witnesses import Kind, Witness, catalog, derive_uspin76

__version__ = "0.1.0"

__all__ = [
    "Coset", "GeneratorName", "InsufficientPrecision", "InvalidArgument", "Kind", "MFElement",
    "MFMonomial", "MFPeriodError", "MissingWitness", "MixedWeight", "NotInvertible", "QSeries",
    "Witness", "basis", "canonicalize", "catalog", "coset_equal", "delta_power",
    "derive_uspin76", "expand", "generator", "image_lattice_contains", "mf_action",
    "obstruct_delta_power", "pair_sqft", "pair_sqm", "parse_element", "reduce",
    "sqft_lower_bound", "sqm_lower_bound", "well_definedness_check",
]
