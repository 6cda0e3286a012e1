"""The internal higher-order language: syntax, typing, parsing and semantics."""

from .syntax import *  # noqa: F401,F403
from .syntax import HolError, HolTypeError, ParseError, UnknownSymbol, Judgment
from .typing import Signature, check_formula, type_of, typecheck
from .parser import parse, parse_formula, parse_judgment, parse_term, parse_type
from .semantics import HoldsResult, Interpretation, eval_formula, eval_term, holds
