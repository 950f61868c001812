"""Exact arithmetic for spaces of logarithmic differential forms on the projective line."""
__version__ = "0.1.0"

from .ff import Field, FieldElem, get_field, parse_field_spec, default_field
from .poly import Poly, RatFun
from .lspace import Prompt, LSpace, build_space, standard_space

__all__ = ["Field", "FieldElem", "get_field", "parse_field_spec", "default_field",
           "Poly", "RatFun", "Prompt", "LSpace", "build_space", "standard_space"]
