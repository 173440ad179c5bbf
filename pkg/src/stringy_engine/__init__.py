"""Stringy Engine.

Exact-rational computations on lattice polytopes: Fine interiors and the
Calabi-Yau classification of nondegenerate toric hypersurfaces, Mavlyutov
duality, stringy E-functions and stringy Euler numbers.

Polytopes and their face lattices are in the polytope module; the
combinatorial formulas are in the stringy module. Named polytope families
live in the families subpackage.
"""

from stringy_engine.errors import StringyError
from stringy_engine.fine_interior import CYClass, FineResult, Verdict, classify, fine
from stringy_engine.formats import parse_polytope, render_polytope
from stringy_engine.mavlyutov import classify_faces, face_dual, mav_dual
from stringy_engine.polytope import Polytope, Side, hull, polar
from stringy_engine.stringy import (
    efun_u,
    estr_cond,
    estr_general,
    estr_reflexive,
    mirror_test,
    stringy_report,
)

__all__ = [
    # Polytopes
    "Polytope",
    "Side",
    "hull",
    "polar",
    # Fine interior and classification
    "FineResult",
    "CYClass",
    "Verdict",
    "fine",
    "classify",
    # Mavlyutov duality
    "mav_dual",
    "classify_faces",
    "face_dual",
    # Stringy invariants
    "estr_general",
    "estr_reflexive",
    "estr_cond",
    "efun_u",
    "mirror_test",
    "stringy_report",
    # Files
    "parse_polytope",
    "render_polytope",
    "StringyError",
]
