"""Exact automorphism groups of finite-dimensional Weil algebras.

Builds the quotient algebra from a generator/relation spec, derives the
polynomial constraint system an algebra endomorphism must satisfy, then
case-splits it into parametrized families with exact determinants and
connected-component counts.
"""

from .weil import AlgebraSpec, WeilAlgebra, WeilError, build_algebra
from .parsing import ParseError, parse_bindings, parse_polynomial, parse_specfile
from .endo import constraint_system, generic_endo, numeric_instantiate, substitute
from .solver import SolutionFamily, SolveResult, classify_det1, component_count, solve
from .report import analyze, build_report, canonical_json

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "WeilAlgebra",
    "WeilError",
    "build_algebra",
    "ParseError",
    "parse_bindings",
    "parse_polynomial",
    "parse_specfile",
    "constraint_system",
    "generic_endo",
    "numeric_instantiate",
    "substitute",
    "SolutionFamily",
    "SolveResult",
    "classify_det1",
    "component_count",
    "solve",
    "analyze",
    "build_report",
    "canonical_json",
    "__version__",
]
