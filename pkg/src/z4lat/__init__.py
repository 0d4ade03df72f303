"""Self-dual codes over Z4, their Construction A lattices, theta series and shadows."""

from z4lat.gf2 import BinaryCode
from z4lat.lattice import LatticeBasis, construction_a, min_norm_and_kissing, theta_prefix
from z4lat.series import QuarterSeries
from z4lat.weights import SWE, WeightTriple, min_weights, swe
from z4lat.z4 import CodeType, Z4Code, complete_from_upper

__version__ = "0.1.0"

__all__ = [
    "BinaryCode",
    "CodeType",
    "LatticeBasis",
    "QuarterSeries",
    "SWE",
    "WeightTriple",
    "Z4Code",
    "complete_from_upper",
    "construction_a",
    "min_norm_and_kissing",
    "min_weights",
    "swe",
    "theta_prefix",
]
