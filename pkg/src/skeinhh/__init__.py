"""Kauffman bracket skein modules of genus one Heegaard splittings.

The package computes the pieces needed to look for ``(1+t)``-torsion in the
skein module of a closed 3-manifold glued from two solid tori: bracket
evaluation in the solid torus, trace coordinates on the torus character
ring, ``Tor_1`` of the handlebody quotients and the low-degree Hochschild
boundary that decides whether a class survives.
"""

from .annulus import AnnulusDiagram, SolidTorusElement, resolve, state_sum
from .errors import ParseError, SkeinError
from .heegaard import H0, H1, GluingMatrix, SplittingSpec, handlebody_ideal, lens_matrix, preset, push_action
from .hochschild import (NO_TORSION_CERTIFIED, TORSION_WITNESS, HochschildChain, boundary, cycle_valuation,
                         lift_class, specialized_hh0, torsion_verdict)
from .laurent import INFINITY, LaurentPoly, parse_laurent
from .layers import curve_diagram, render, stack
from .parsing import format_element, parse_element
from .polyring import Ideal, MultiPoly, parse_poly, quotient_basis, tor1_module
from .surface import L, LM, M, SurfaceElement, TorusCurve, specialize, torus_relation, trace_poly

__version__ = "0.1.0"

__all__ = [
    "AnnulusDiagram", "SolidTorusElement", "resolve", "state_sum",
    "ParseError", "SkeinError",
    "H0", "H1", "GluingMatrix", "SplittingSpec", "handlebody_ideal", "lens_matrix", "preset", "push_action",
    "NO_TORSION_CERTIFIED", "TORSION_WITNESS", "HochschildChain", "boundary", "cycle_valuation",
    "lift_class", "specialized_hh0", "torsion_verdict",
    "INFINITY", "LaurentPoly", "parse_laurent",
    "curve_diagram", "render", "stack",
    "format_element", "parse_element",
    "Ideal", "MultiPoly", "parse_poly", "quotient_basis", "tor1_module",
    "L", "LM", "M", "SurfaceElement", "TorusCurve", "specialize", "torus_relation", "trace_poly",
]
