"""Exact computations with finite-dimensional quasitriangular Hopf algebras."""

from ._backend import BACKEND
from .catalog import by_name, doubled_nichols, dkn_ribbon, nichols, sweedler_h4, trivial, z2
from .documents import algebra_from_dict, algebra_to_dict, load_algebra
from .field import DEFAULT_LEVEL, CycloScalar, format_scalar, parse_scalar
from .hopf import (Element, HopfData, drinfeld_double, drinfeld_element, find_ribbon_elements,
                   is_factorizable, verify_hopf_axioms, verify_ribbon, verify_rmatrix)
from .report import Report
from .ribbon_ext import RibbonExtension, ribbon_extension

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CycloScalar", "DEFAULT_LEVEL", "Element", "HopfData", "Report",
    "RibbonExtension", "algebra_from_dict", "algebra_to_dict", "by_name", "dkn_ribbon",
    "doubled_nichols", "drinfeld_double", "drinfeld_element", "find_ribbon_elements",
    "format_scalar", "is_factorizable", "load_algebra", "nichols", "parse_scalar",
    "ribbon_extension", "sweedler_h4", "trivial", "verify_hopf_axioms", "verify_ribbon",
    "verify_rmatrix", "z2",
]
