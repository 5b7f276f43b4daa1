import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronon.exact import ExactComplex
from chronon.opalg import (
    DiffOp,
    DivergentIntegralError,
    LaurentPoly,
    WeightedFunction,
    audit_TK_1d,
    inner_product,
    kinetic,
    moment,
    op_apply,
    op_commutator,
    op_compose,
    quadrature_inner_product,
    time_operator_1d,
    time_operator_3d_radial,
)

RATE = Fraction(1, 8)
Q = LaurentPoly.monomial(1)

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
exact = st.builds(ExactComplex, small, small)
laurent = st.dictionaries(st.integers(-3, 3), exact, max_size=3).map(LaurentPoly)
diffops = st.lists(laurent, min_size=1, max_size=3).map(DiffOp)
functions = st.dictionaries(st.integers(-3, 12), exact, min_size=1, max_size=4).map(lambda t: WeightedFunction(t, RATE))


def test_derivative_of_ground_shape():
    f = WeightedFunction({1: 1}, RATE)
    assert op_apply(DiffOp.D(), f) == WeightedFunction({-1: Fraction(1, 2), 7: Fraction(-1, 2)}, RATE)


def test_dilation_minus_one_on_ground_shape():
    f = WeightedFunction({1: 1}, RATE)
    op = DiffOp([LaurentPoly.const(-1), LaurentPoly.monomial(1, 2)])
    assert op_apply(op, f) == WeightedFunction({9: -1}, RATE)


def test_identity_application():
    f = WeightedFunction({1: 3, 6: ExactComplex(0, 2)}, RATE)
    assert op_apply(DiffOp.identity(), f) == f


def test_leibniz_D_q():
    assert op_commutator(DiffOp.D(), DiffOp.mult(Q)) == DiffOp.identity()


def test_one_dimensional_pair_gives_ihbar():
    assert op_commutator(time_operator_1d(), kinetic()) == DiffOp.mult(ExactComplex(0, 1))
    for m, hbar in [(2, 1), (Fraction(1, 3), 5)]:
        assert op_commutator(time_operator_1d(m, hbar), kinetic(m)) == DiffOp.mult(ExactComplex(0, hbar))
    assert audit_TK_1d().passed


def test_radial_3d_pair_gives_ihbar_over_three():
    assert op_commutator(time_operator_3d_radial(), kinetic()) == DiffOp.mult(ExactComplex(0, Fraction(1, 3)))


def test_normal_form_has_no_trailing_zero_orders():
    op = DiffOp([LaurentPoly.const(1), LaurentPoly(), LaurentPoly()])
    assert op.order == 0
    assert LaurentPoly({2: 0, 3: 1}).coeffs.keys() == {3}


@settings(max_examples=50, deadline=None)
@given(diffops, diffops, diffops)
def test_composition_associative(a, b, c):
    assert op_compose(op_compose(a, b), c) == op_compose(a, op_compose(b, c))


@settings(max_examples=50, deadline=None)
@given(diffops, diffops, diffops)
def test_commutator_antisymmetry_and_jacobi(a, b, c):
    assert op_commutator(a, b) == -op_commutator(b, a)
    jac = (op_commutator(a, op_commutator(b, c)) + op_commutator(b, op_commutator(c, a))
           + op_commutator(c, op_commutator(a, b)))
    assert jac.is_zero()


@settings(max_examples=50, deadline=None)
@given(diffops, diffops, functions)
def test_application_is_a_representation(a, b, f):
    assert op_apply(op_compose(a, b), f) == op_apply(a, op_apply(b, f))


@settings(max_examples=50, deadline=None)
@given(diffops, functions, functions)
def test_class_closed_and_linear(a, f, g):
    out = op_apply(a, f + g)
    assert isinstance(out, WeightedFunction) and out.rate == RATE
    assert out == op_apply(a, f) + op_apply(a, g)


@settings(max_examples=30, deadline=None)
@given(functions)
def test_symbolic_derivative_matches_numeric(f):
    q = 1.3
    h = 1e-5
    numeric = (f(q + h) - f(q - h)) / (2 * h)
    assert abs(complex(f.derivative()(q)) - complex(numeric)) <= 1e-6 * max(1.0, abs(complex(numeric)))


def test_moment_substitution_oracle():
    assert float(moment(Fraction(1), Fraction(1, 4))) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-15)
    f = WeightedFunction({2: 1}, RATE)  # q * e^{-q^4/8}, squared weight e^{-q^4/4}
    g = WeightedFunction({0: 1}, RATE)
    assert float(inner_product(f, g)) == pytest.approx(0.886226925452758, rel=1e-14)


def test_ground_state_normalized_and_orthogonal_to_second():
    z0 = WeightedFunction({1: 1}, RATE)
    z2 = WeightedFunction({9: 1, 1: -2}, RATE)
    with mpmath.workdps(50):
        assert abs(inner_product(z0, z0) * 2 / mpmath.sqrt(mpmath.pi) - 1) < mpmath.mpf(10) ** -45
        assert abs(inner_product(z0, z2)) < mpmath.mpf(10) ** -45


def test_inner_product_conjugates_left_argument():
    f = WeightedFunction({1: ExactComplex(0, 1)}, RATE)
    g = WeightedFunction({1: 1}, RATE)
    val = inner_product(f, g)
    assert isinstance(val, mpmath.mpc)
    assert float(val.imag) < 0 and val.real == 0


def test_divergent_integrals_rejected():
    with pytest.raises(DivergentIntegralError):
        inner_product(WeightedFunction({-1: 1}, RATE), WeightedFunction({-1: 1}, RATE))
    with pytest.raises(DivergentIntegralError):
        inner_product(WeightedFunction({1: 1}, 0), WeightedFunction({1: 1}, 0))
    with pytest.raises(DivergentIntegralError):
        moment(Fraction(-1), Fraction(1))


def test_inner_product_matches_quadrature_on_random_pairs():
    rng = random.Random(20241015)
    worst = 0.0
    for _ in range(100):
        def draw():
            terms = {rng.randint(0, 10): ExactComplex(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                                                      Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
                     for _ in range(rng.randint(1, 3))}
            return WeightedFunction(terms, rng.choice([Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)]))
        f, g = draw(), draw()
        exact_val = complex(inner_product(f, g))
        quad_val = quadrature_inner_product(f, g)
        worst = max(worst, abs(exact_val - quad_val))
    assert worst <= 1e-10
