"""Exact traces of polynomial spline paths through semi-algebraic regions,
lasso-word trajectory traces, and LTL-without-next checking."""

__version__ = "0.1.0"

from .polyring import MultiPoly, PolyVec, UniPoly, multi_compose, multi_eval, poly_gcd, squarefree_part
from .rootiso import IsolatingInterval, has_root_closed, has_root_open, isolate_roots, min_root_sep
from .trace_gen import (
    Checkpoint,
    LassoWord,
    Region,
    Scene,
    SuffixSpec,
    certify_trace,
    poly_trace,
    spline_trace,
    stutter_reduce,
    trajectory_trace,
)
from .ltl import lasso_check, parse_formula

__all__ = [
    "UniPoly",
    "MultiPoly",
    "PolyVec",
    "multi_compose",
    "multi_eval",
    "poly_gcd",
    "squarefree_part",
    "IsolatingInterval",
    "has_root_open",
    "has_root_closed",
    "isolate_roots",
    "min_root_sep",
    "Region",
    "Scene",
    "SuffixSpec",
    "Checkpoint",
    "LassoWord",
    "poly_trace",
    "certify_trace",
    "spline_trace",
    "stutter_reduce",
    "trajectory_trace",
    "parse_formula",
    "lasso_check",
]
