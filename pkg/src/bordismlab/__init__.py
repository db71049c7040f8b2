"""Realizability of fixed-point data for (Z_2)^k actions on closed manifolds.

Exact GF(2) tools for deciding when a sum of tangent representations is the
fixed data of a smooth action, cross-checked by localization and by
labelled-graph constructions.
"""

from .gf2core import FormalPoly, Gf2Poly, GlMatrix, SymFn, eval_symfn, formal_sigma, gl_enumerate
from .repalgebra import GkRep, RepPolynomial, aut_orbit, enumerate_faithful
from .realizability import is_realizable
from .textio import parse_poly, print_poly

__version__ = "0.1.0"

__all__ = [
    "FormalPoly",
    "Gf2Poly",
    "GkRep",
    "GlMatrix",
    "RepPolynomial",
    "SymFn",
    "aut_orbit",
    "enumerate_faithful",
    "eval_symfn",
    "formal_sigma",
    "gl_enumerate",
    "is_realizable",
    "parse_poly",
    "print_poly",
]
