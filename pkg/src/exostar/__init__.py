"""Exact Moyal and exotic star-products on Laurent polynomials in p."""

from .cohomology import (
    J3,
    J5,
    J7,
    J9,
    Cobound,
    DensityElement,
    OneCochain,
    TwoCochain,
    VectField,
    check_certificate,
    delta1,
    delta2,
    nontriviality_certificate,
)
from .expr import NormalizeError, ParseError, format_json, format_latex, format_text, parse, parse_phasefn
from .linalg import Infeasible, Solution, solve_linear
from .pdo import PDO, exotic_quantize, pdo_commutator, pdo_compose, quantize, weyl_quantize
from .poly import HScalar, PhaseFn, QPoly
from .scalars import GaussianRational
from .star import (
    ParityError,
    ProductKind,
    WeightedDensity,
    conjugated_moyal,
    exotic_product,
    moyal_product,
    phi_pullback,
    phi_pushforward,
    poisson,
    star_bracket,
    star_product,
    transvectant,
)

__version__ = "0.1.0"
