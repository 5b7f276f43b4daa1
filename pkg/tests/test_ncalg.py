from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronon.exact import ExactComplex, I
from chronon.ncalg import (
    Coef,
    NCExpr,
    NCMatrix,
    angular_momentum,
    audit_TE,
    audit_TK_3d,
    build_E_dirac,
    build_T_dirac,
    commutator,
    constraint_reduce,
    cross,
    dot,
    momentum_vector,
    nc_commutator_matrix,
    position_vector,
    sigma_dot,
    spin_orbit_pattern,
    te_commutator,
    time_operator_diagonal,
)
from chronon.ncalg.ring import HBAR, LIGHT, MASS, PX, PY, PZ

R = position_vector()
P = momentum_vector()
HBAR_I = NCExpr.scalar(Coef.symbol(HBAR, 1, I))
S = sum((p * p for p in P), NCExpr())
INV_S = NCExpr.scalar(Coef.inv_S())


def generators():
    base = [*R, *P, INV_S, NCExpr.scalar(Coef.symbol(MASS)), NCExpr.scalar(Coef.symbol(LIGHT, -1))]
    return st.sampled_from(base)


small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def expressions(draw):
    """Sums of products of up to four generators with small integer coefficients."""
    total = NCExpr()
    for _ in range(draw(st.integers(1, 3))):
        term = NCExpr.scalar(draw(small_ints))
        for g in draw(st.lists(generators(), min_size=0, max_size=4)):
            term = term * g
        total = total + term
    return total


# canonical relations ---------------------------------------------------------


def test_canonical_commutator_x():
    assert R[0] * P[0] - P[0] * R[0] == HBAR_I


def test_normal_ordering_of_p_r():
    assert P[0] * R[0] == R[0] * P[0] - HBAR_I


def test_position_past_inverse_square():
    lhs = R[0] * INV_S - INV_S * R[0]
    expected = NCExpr.scalar(Coef.symbol(HBAR, 1, ExactComplex(0, -2)) * Coef.symbol(PX) * Coef.inv_S(2))
    assert lhs == expected


@pytest.mark.parametrize("i", range(3))
@pytest.mark.parametrize("j", range(3))
def test_canonical_relations_all_pairs(i, j):
    residual = R[i] * P[j] - P[j] * R[i] - (HBAR_I if i == j else NCExpr())
    assert residual.is_zero()


def test_r_dot_p_minus_p_dot_r():
    assert dot(R, P) - dot(P, R) == HBAR_I * 3


def test_positions_commute_and_momenta_commute():
    for i in range(3):
        for j in range(3):
            assert commutator(R[i], R[j]).is_zero()
            assert commutator(P[i], P[j]).is_zero()


@settings(max_examples=40, deadline=None)
@given(expressions(), expressions(), expressions())
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(expressions(), expressions(), expressions())
def test_multiplication_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=40, deadline=None)
@given(expressions(), expressions())
def test_anticommutator_independent_of_construction_order(a, b):
    first = a * b + b * a
    second = b * a + a * b
    assert first == second
    assert first.sorted_terms() == second.sorted_terms()


@settings(max_examples=30, deadline=None)
@given(expressions(), expressions(), expressions())
def test_jacobi_identity(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


def test_coefficient_ring_is_canonical():
    # (px^2 + py^2 + pz^2) / S reduces to 1
    c = Coef({m: ExactComplex(1) for m in [(0, 0, 0, 2, 0, 0), (0, 0, 0, 0, 2, 0), (0, 0, 0, 0, 0, 2)]}, 1)
    assert c == Coef.const(1)
    assert (Coef.inv_S() * Coef.symbol(PX)).k == 1


# Pauli contraction -------------------------------------------------------------


def _block_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


@pytest.mark.parametrize("A,B", [(R, P), (P, R), (R, R), (P, [INV_S * p for p in P])])
def test_pauli_contraction(A, B):
    lhs = _block_mul(sigma_dot(A), sigma_dot(B))
    ab = dot(A, B)
    cross_block = sigma_dot(cross(A, B))
    for i in range(2):
        for j in range(2):
            rhs = (ab if i == j else NCExpr()) + NCExpr.scalar(I) * cross_block[i][j]
            assert lhs[i][j] == rhs


# constraint reduction -----------------------------------------------------------


def test_constraint_kills_angular_momentum():
    for comp in angular_momentum():
        assert constraint_reduce(comp).is_zero()


def test_constraint_sorts_mixed_products():
    assert constraint_reduce(dot(R, P) * P[0]) == constraint_reduce(R[0] * S)
    assert constraint_reduce(dot(R, P) * P[0]) == R[0] * S


def test_constraint_leaves_diagonal_products():
    assert constraint_reduce(R[0] * P[0]) == R[0] * P[0]


@settings(max_examples=40, deadline=None)
@given(expressions())
def test_constraint_reduce_idempotent(e):
    once = constraint_reduce(e)
    assert constraint_reduce(once) == once


# Dirac-sector builders -------------------------------------------------------------


def test_E_entries():
    E = build_E_dirac()
    mc2 = Coef.symbol(MASS) * Coef.symbol(LIGHT, 2)
    assert E[0, 0] == NCExpr.scalar(mc2)
    assert E[0, 3] == NCExpr.scalar(Coef.symbol(LIGHT) * (Coef.symbol(PX) - Coef.symbol(PY, 1, I)))
    assert E[0, 2] == NCExpr.scalar(Coef.symbol(LIGHT) * Coef.symbol(PZ))


def test_T_entries():
    T = build_T_dirac()
    assert T[0, 2] == R[2] * NCExpr.scalar(Coef.symbol(LIGHT, -1, Fraction(1, 3)))
    for i in range(2):
        for j in range(2):
            assert T[2 + i, 2 + j] == -T[i, j]


def test_identity_commutes():
    E = build_E_dirac()
    assert nc_commutator_matrix(NCMatrix.identity(4), E).is_zero()
    assert nc_commutator_matrix(E, E).is_zero()


# audits -----------------------------------------------------------------------------


@pytest.fixture(scope="module")
def te_plain():
    return audit_TE("plain")


@pytest.fixture(scope="module")
def te_constraint():
    return audit_TE("constraint")


def test_plain_diagonal_is_spin_orbit(te_plain):
    assert te_plain.details["plain_diagonal_matches_spin_orbit"]


def test_plain_entry_00_oracle():
    # (sigma.r)(sigma.p) - (sigma.p)(sigma.r) = 3 i hbar + 2i sigma.L, weighted on the diagonal
    C = te_commutator()
    L = angular_momentum()
    expected = HBAR_I + NCExpr.scalar(ExactComplex(0, Fraction(2, 3))) * L[2]
    assert C[0, 0] == expected


def test_constraint_diagonal_vanishes(te_constraint):
    assert te_constraint.details["constraint_diagonal_zero"]


def test_constraint_offdiagonal_residual_oracle():
    # independent hand result: after L = 0 the off-diagonal blocks keep -+ 2 i hbar m c sigma.p / S
    C = te_commutator()
    reduced = (C - NCMatrix.identity(4, Coef.symbol(HBAR, 1, I))).map(constraint_reduce)
    k = Coef.symbol(HBAR, 1, ExactComplex(0, -2)) * Coef.symbol(MASS) * Coef.symbol(LIGHT) * Coef.inv_S()
    sp = sigma_dot(P)
    for i in range(2):
        for j in range(2):
            assert reduced[i, 2 + j] == NCExpr.scalar(k) * sp[i][j]
            assert reduced[2 + i, j] == NCExpr.scalar(-k) * sp[i][j]


def test_audit_reports_finding_not_crash(te_constraint):
    d = te_constraint.to_dict()
    assert d["pass"] is False
    assert d["residual_terms"]
    assert set(d) >= {"mode", "lhs", "rhs", "residual_terms", "pass"}


def test_audit_te_mode_validation():
    with pytest.raises(ValueError):
        audit_TE("fancy")


def test_te_residual_covariant_under_mass_rescaling():
    scale = lambda M: M.map(lambda e: e.map_coefs(lambda c: c.substitute_scale(MASS, 2)))  # noqa: E731
    T, E = build_T_dirac(), build_E_dirac()
    target = NCMatrix.identity(4, Coef.symbol(HBAR, 1, I))
    original = nc_commutator_matrix(T, E) - target
    rescaled = nc_commutator_matrix(scale(T), scale(E)) - target
    assert rescaled == scale(original)
    assert rescaled.map(constraint_reduce) == scale(original.map(constraint_reduce))


def test_tk_3d_is_one_third():
    report = audit_TK_3d()
    assert report.passed
    assert report.details["matches_claim"] is False
    assert report.lhs == str(NCExpr.scalar(Coef.symbol(HBAR, 1, ExactComplex(0, Fraction(1, 3)))))


def test_tk_with_half_prefactor_is_ihbar():
    report = audit_TK_3d(Fraction(1, 2))
    assert report.passed and report.details["matches_claim"]


def test_time_operator_commutes_with_constants():
    T = time_operator_diagonal()
    for c in (NCExpr.scalar(7), NCExpr.scalar(Coef.symbol(MASS)), NCExpr.scalar(Coef.symbol(HBAR))):
        assert commutator(T, c).is_zero()


def test_report_json_roundtrip(te_constraint):
    import json

    assert json.loads(te_constraint.to_json())["name"] == "TE_commutator"
