"""Mechanical audits of the commutator claims for the time operator."""

from __future__ import annotations

from fractions import Fraction

from chronon.exact import ExactComplex, I
from chronon.ncalg.expr import NCExpr, commutator, constraint_reduce
from chronon.ncalg.matrix import (
    HBAR_C,
    NCMatrix,
    angular_momentum,
    build_E_dirac,
    build_T_dirac,
    nc_commutator_matrix,
    scale_block,
    sigma_dot,
    time_operator_diagonal,
)
from chronon.ncalg.ring import MASS, Coef
from chronon.report import AuditReport

MODES = ("plain", "constraint")


def _matrix_terms(mat: NCMatrix) -> dict:
    return {f"{i},{j}": e.term_strings() for i, j, e in mat.nonzero_entries()}


def _residual_lines(mat: NCMatrix) -> list[str]:
    return [f"[{i},{j}] {e}" for i, j, e in mat.nonzero_entries()]


def spin_orbit_pattern() -> NCMatrix:
    """``(2i/3) sigma.L`` on both diagonal 2x2 blocks, zero elsewhere."""
    block = scale_block(sigma_dot(angular_momentum()), ExactComplex(0, Fraction(2, 3)))
    zero = [[NCExpr(), NCExpr()], [NCExpr(), NCExpr()]]
    return NCMatrix.from_blocks(block, zero, zero, block)


def te_commutator(T: NCMatrix | None = None, E: NCMatrix | None = None) -> NCMatrix:
    T = build_T_dirac() if T is None else T
    E = build_E_dirac() if E is None else E
    return nc_commutator_matrix(T, E)


def audit_TE(mode: str = "constraint", T: NCMatrix | None = None, E: NCMatrix | None = None) -> AuditReport:
    """Check ``[T, E] = i hbar I4`` for the 4x4 operators.

    Both the plain residual ``[T, E] - i hbar I4`` and its L = 0 reduction are
    recorded; ``mode`` selects which one fills ``residual_terms``.  The
    expectation is a zero reduced residual in constraint mode and a plain
    residual equal to the ``(2i/3) sigma.L`` pattern in plain mode.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    C = te_commutator(T, E)
    target = NCMatrix.identity(4, HBAR_C * I)
    plain = C - target
    reduced = plain.map(constraint_reduce)

    def offdiag(mat):
        return NCMatrix([[mat[i, j] if (i < 2) != (j < 2) else NCExpr() for j in range(4)] for i in range(4)])

    def diag(mat):
        return mat - offdiag(mat)

    residual = reduced if mode == "constraint" else plain
    details = {
        "commutator": _matrix_terms(C),
        "plain_residual": _residual_lines(plain),
        "constraint_residual": _residual_lines(reduced),
        "plain_diagonal_matches_spin_orbit": diag(plain) == spin_orbit_pattern(),
        "constraint_diagonal_zero": diag(reduced).is_zero(),
        "constraint_offdiagonal_zero": offdiag(reduced).is_zero(),
    }
    return AuditReport(
        name="TE_commutator",
        mode=mode,
        lhs="[T, E]",
        rhs="i*hbar*I4",
        residual_terms=_residual_lines(residual),
        passed=reduced.is_zero() if mode == "constraint" else plain == spin_orbit_pattern(),
        details=details,
    )


def audit_TK_3d(prefactor=Fraction(1, 6)) -> AuditReport:
    """Commutator of the scalar time operator with ``K = S / 2m``.

    The canonical relations give ``[p.r, S] = [r.p, S] = 2 i hbar S``, so the
    expected normal form is ``2 * prefactor * i hbar``: ``i hbar / 3`` for the
    3-D prefactor 1/6 and ``i hbar`` for 1/2.  ``pass`` means the engine agrees with this
    oracle; the literal claim ``i hbar`` is recorded alongside.
    """
    prefactor = Fraction(prefactor)
    T = time_operator_diagonal(prefactor)
    S = sum((NCExpr.p(i) * NCExpr.p(i) for i in range(3)), NCExpr())
    K = S * NCExpr.scalar(Coef.symbol(MASS, -1, Fraction(1, 2)))
    result = commutator(T, K)
    oracle = NCExpr.scalar(HBAR_C * I * (prefactor * 2))
    claim = NCExpr.scalar(HBAR_C * I)
    return AuditReport(
        name="TK_3d_commutator",
        mode="plain",
        lhs=str(result),
        rhs=str(oracle),
        residual_terms=(result - oracle).term_strings(),
        passed=result == oracle,
        details={
            "prefactor": str(prefactor),
            "claimed": str(claim),
            "matches_claim": result == claim,
            "deviation_from_claim": (result - claim).term_strings(),
        },
    )
