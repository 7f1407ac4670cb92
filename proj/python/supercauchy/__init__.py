"""Computational superanalysis: commutative superalgebras, the d'' operator,
fundamental-solution kernels, and quadrature verification experiments."""

import json as _json

from ._core import (
    Algebra,
    ConditionError,
    PolyFunction,
    Error,
    algebra_from_json,
    builtin,
    kernel_d2_residual,
    poly_from_json,
)
from . import _core as _c

__all__ = [
    "Algebra",
    "ConditionError",
    "PolyFunction",
    "Error",
    "algebra_from_json",
    "builtin",
    "check_algebra",
    "classify",
    "divergence_selftest",
    "kernel_d2_residual",
    "poly_from_json",
    "reproduce_disk",
    "series",
]


def check_algebra(algebra):
    """Validation, (A0)/(A1) and annihilator report as a dict."""
    return _json.loads(algebra.report_json())


def classify(poly):
    """qS verdict plus the canonical rewriting when it exists."""
    return _json.loads(poly.classify_json())


def series(poly, max_degree):
    """Series expansion at the origin in y and the Z block variables."""
    return _json.loads(poly.series_json(max_degree))


def reproduce_disk(algebra, nodes=4096, seed=1):
    """Boundary reproduction of y^2 against direct evaluation; a dict report."""
    return _json.loads(_c.reproduce_disk_json(algebra, nodes, seed))


def divergence_selftest(dim, nodes=16384, seed=1):
    return _json.loads(_c.divergence_selftest_json(dim, nodes, seed))
