"""Exact face enumeration for uniform triangulations of simplicial complexes."""

from .polycore import Poly, f_from_h, h_from_f, symmetric_decompose
from .rootcert import interlaces, is_real_rooted
from .transform import apply_h, coeff_table, operator_D, operator_E
from .triangles import FTriangle, build, derive, validate

__version__ = "0.1.0"

__all__ = [
    "FTriangle",
    "Poly",
    "apply_h",
    "build",
    "coeff_table",
    "derive",
    "f_from_h",
    "h_from_f",
    "interlaces",
    "is_real_rooted",
    "operator_D",
    "operator_E",
    "symmetric_decompose",
    "validate",
]
