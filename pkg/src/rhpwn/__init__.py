"""Exact computations for renormalized higher powers of white noise (RHPWN):
brackets, vacuum expectations, Fock positivity, moment laws, classical and
w∞ bridges, and central extensions."""

from .algebras import ConvolutionRule, IvanovRule, WinfRule, bracket_convolution, bracket_ivanov, bracket_winf
from .errors import RhpwnError
from .exact import ExactScalar, scalar
from .fock import (GeneralizedV1, GeneralizedV2, StrictFock, factorization_check, ghost_scan, gram,
                   vacuum_expectation)
from .lie import LieElement, Sym, bracket, check_axioms, generator, involute
from .parser import parse_element, parse_function
from .poly import FormalPolynomial
from .stepfn import StepFunction, chi

__version__ = "0.1.0"

__all__ = [
    "ConvolutionRule", "IvanovRule", "WinfRule", "bracket_convolution", "bracket_ivanov", "bracket_winf",
    "RhpwnError", "ExactScalar", "scalar", "GeneralizedV1", "GeneralizedV2", "StrictFock",
    "factorization_check", "ghost_scan", "gram", "vacuum_expectation", "LieElement", "Sym", "bracket",
    "check_axioms", "generator", "involute", "parse_element", "parse_function", "FormalPolynomial",
    "StepFunction", "chi",
]
