"""Exact closure, interior and pair operations on modules over small commutative rings."""

from .artinian import FinModule, Submodule, TruncatedAlgebra, build_algebra
from .linalg import Subspace, echelonize, membership_solve, subspace_combine
from .monomial import MonomialIdeal, newton_closure, ratliff_rush
from .operations import (
    PairOp,
    builtin,
    evaluate,
    hereditary_version,
    identity,
    jbe,
    jbf,
    preenvelope_version,
    residual_version,
    smile_dual,
)
from .properties import PairContext, PropertyReport, check_property, ideal_context, run_suite
from .semigroup import NumericalSemigroup, ValueIdeal

__all__ = [
    "FinModule", "Submodule", "TruncatedAlgebra", "build_algebra",
    "Subspace", "echelonize", "membership_solve", "subspace_combine",
    "MonomialIdeal", "newton_closure", "ratliff_rush",
    "PairOp", "builtin", "evaluate", "hereditary_version", "identity", "jbe", "jbf",
    "preenvelope_version", "residual_version", "smile_dual",
    "PairContext", "PropertyReport", "check_property", "ideal_context", "run_suite",
    "NumericalSemigroup", "ValueIdeal",
]
