"""Exact key forms, semidegree evaluation and compactification verdicts
for divisorial semidegrees on the complex plane."""
from .exact import BiLaurent, ParseError, PuiseuxPoly, XiPoly, parse_expr, parse_puiseux
from .semidegree import SemidegreeSpec, auto_scale, evaluate, from_weights, parse_datum, validate
from .keyforms import KeyFormSequence, compute_key_forms, semigroup_solve, verify_axioms
from .expansion import Presentation, adic_expand, reconstruct, weight
from .geometry import SignClass, geometry_report
from .conescan import ScanBudget, scan

__version__ = "0.1.0"

__all__ = [
    "BiLaurent",
    "ParseError",
    "PuiseuxPoly",
    "XiPoly",
    "parse_expr",
    "parse_puiseux",
    "SemidegreeSpec",
    "auto_scale",
    "evaluate",
    "from_weights",
    "parse_datum",
    "validate",
    "KeyFormSequence",
    "compute_key_forms",
    "semigroup_solve",
    "verify_axioms",
    "Presentation",
    "adic_expand",
    "reconstruct",
    "weight",
    "SignClass",
    "geometry_report",
    "ScanBudget",
    "scan",
]
