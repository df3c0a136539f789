"""Exact symplectic cohomologies of invariant forms on nilmanifolds and solvmanifolds."""

__version__ = "0.1.0"

from .checkers import (check_dd_lambda_lemma, check_lefschetz_decomposition, check_pairing,
                       check_strong_lefschetz)
from .cohomology import ALL_KINDS, KINDS, PRIMITIVE_KINDS, CohomologyEngine
from .errors import (DimensionMismatch, ModelError, NotPrimitiveError, ParseError, RingMismatch,
                     SympError, TripleError)
from .exterior import Form, format_form, parse_form, wedge
from .metric import HodgeContext, build_compatible_triple
from .model import InvariantModel, builtin_model, load_model, parse_model, validate_model
from .poly_forms import DarbouxChart
from .symplectic import SymplecticContext

__all__ = [
    "ALL_KINDS", "KINDS", "PRIMITIVE_KINDS", "CohomologyEngine", "DarbouxChart", "DimensionMismatch",
    "Form", "HodgeContext", "InvariantModel", "ModelError", "NotPrimitiveError", "ParseError",
    "RingMismatch", "SymplecticContext", "SympError", "TripleError", "build_compatible_triple",
    "builtin_model", "check_dd_lambda_lemma", "check_lefschetz_decomposition", "check_pairing",
    "check_strong_lefschetz", "format_form", "load_model", "parse_form", "parse_model",
    "validate_model", "wedge", "__version__",
]
