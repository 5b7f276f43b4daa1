"""Exact noncommutative algebra over the canonical pair (r_i, p_i)."""

from chronon.ncalg.audit import audit_TE, audit_TK_3d, spin_orbit_pattern, te_commutator
from chronon.ncalg.expr import NCExpr, commutator, constraint_reduce, nc_multiply
from chronon.ncalg.matrix import (
    NCMatrix,
    angular_momentum,
    build_E_dirac,
    build_T_dirac,
    cross,
    dot,
    momentum_vector,
    nc_commutator_matrix,
    position_vector,
    sigma_dot,
    time_operator_diagonal,
)
from chronon.ncalg.ring import Coef

__all__ = [
    "Coef",
    "NCExpr",
    "NCMatrix",
    "angular_momentum",
    "audit_TE",
    "audit_TK_3d",
    "build_E_dirac",
    "build_T_dirac",
    "commutator",
    "constraint_reduce",
    "cross",
    "dot",
    "momentum_vector",
    "nc_commutator_matrix",
    "nc_multiply",
    "position_vector",
    "sigma_dot",
    "spin_orbit_pattern",
    "te_commutator",
    "time_operator_diagonal",
]
