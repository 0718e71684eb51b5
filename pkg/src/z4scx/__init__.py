"""Quaternary codes from two-generator simplicial complexes.

Build Z4-linear codes from simplicial-complex defining sets, compute their
Lee weight distributions by enumeration and by closed form, and classify
them against a best-known-codes table.
"""

from z4scx.simplicial import SubsetMask, BitVectorSet, parse_subset
from z4scx.z4core import Z4Vector, gray, lee_weight, lee_distance
from z4scx.codegen import (
    Family,
    DefiningSet,
    QuaternaryCode,
    PreconditionError,
    build_defining_set,
    generate_code,
)
from z4scx.spectra import (
    WeightDistribution,
    lee_spectrum_bruteforce,
    lee_spectrum_closed_form,
    min_lee_distance,
    lee_enumerator_string,
)

__all__ = [
    "SubsetMask",
    "BitVectorSet",
    "parse_subset",
    "Z4Vector",
    "gray",
    "lee_weight",
    "lee_distance",
    "Family",
    "DefiningSet",
    "QuaternaryCode",
    "PreconditionError",
    "build_defining_set",
    "generate_code",
    "WeightDistribution",
    "lee_spectrum_bruteforce",
    "lee_spectrum_closed_form",
    "min_lee_distance",
    "lee_enumerator_string",
]

__version__ = "0.1.0"
