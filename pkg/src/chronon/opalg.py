"""Exact one-dimensional differential-operator algebra.

Operators are ``sum_j a_j(q) D**j`` with ``D = d/dq`` and Laurent-polynomial
coefficients; functions live in the class ``sum_k c_k q**(e_k/2) exp(-lam q**4)``,
which every such operator maps into itself.  Half-integer powers are stored as
doubled integer exponents.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Mapping, Sequence, Tuple

import mpmath
import numpy as np
from scipy.integrate import quad

from chronon.exact import ExactComplex, ZERO
from chronon.report import AuditReport
from chronon.specfun import gamma_pos


class DivergentIntegralError(ValueError):
    """Raised when a moment integral does not converge."""


def _coerce(x) -> ExactComplex:
    return ExactComplex.coerce(x)


class LaurentPoly:
    """Finite Laurent polynomial ``sum_n c_n q**n`` with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        for n, c in (coeffs or {}).items():
            c = _coerce(c)
            if c:
                clean[int(n)] = c
        self.coeffs: Dict[int, ExactComplex] = clean

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, power: int, c=1) -> "LaurentPoly":
        return cls({power: c})

    def __add__(self, other) -> "LaurentPoly":
        other = _lp(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, ZERO) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __rsub__(self, other):
        return _lp(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _lp(other)
        out: Dict[int, ExactComplex] = {}
        for n, a in self.coeffs.items():
            for k, b in other.coeffs.items():
                out[n + k] = out.get(n + k, ZERO) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def deriv(self) -> "LaurentPoly":
        return LaurentPoly({n - 1: c * n for n, c in self.coeffs.items() if n != 0})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = _lp(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __call__(self, q):
        return sum(complex(c) * q**n for n, c in self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*q^{n}" for n, c in sorted(self.coeffs.items()))

    __repr__ = __str__


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


class DiffOp:
    """Operator ``sum_j a_j(q) D**j`` in normal form (derivatives on the right)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[LaurentPoly] | Mapping[int, LaurentPoly] = ()):
        if isinstance(coeffs, Mapping):
            order = max(coeffs, default=-1)
            items = [_lp(coeffs.get(j, LaurentPoly())) for j in range(order + 1)]
        else:
            items = [_lp(c) for c in coeffs]
        while items and items[-1].is_zero():
            items.pop()
        self.coeffs: Tuple[LaurentPoly, ...] = tuple(items)

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls([LaurentPoly.const(1)])

    @classmethod
    def D(cls) -> "DiffOp":
        return cls([LaurentPoly(), LaurentPoly.const(1)])

    @classmethod
    def mult(cls, poly) -> "DiffOp":
        return cls([_lp(poly)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int) -> LaurentPoly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else LaurentPoly()

    def __add__(self, other) -> "DiffOp":
        other = _op(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coefficient(j) + other.coefficient(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_op(other))

    def __rsub__(self, other):
        return _op(other) - self

    def __mul__(self, other) -> "DiffOp":
        return op_compose(self, _op(other))

    def __rmul__(self, other) -> "DiffOp":
        return op_compose(_op(other), self)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            try:
                other = _op(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})D^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero())

    __repr__ = __str__


def _op(x) -> DiffOp:
    return x if isinstance(x, DiffOp) else DiffOp.mult(x)


def _nth_deriv(p: LaurentPoly, n: int) -> LaurentPoly:
    for _ in range(n):
        p = p.deriv()
    return p


def op_compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """``a o b`` via ``D**j b(q) = sum_l C(j, l) b^(l)(q) D**(j-l)``."""
    out: Dict[int, LaurentPoly] = {}
    for j, aj in enumerate(a.coeffs):
        if aj.is_zero():
            continue
        for k, bk in enumerate(b.coeffs):
            if bk.is_zero():
                continue
            for l in range(j + 1):
                d = _nth_deriv(bk, l)
                if d.is_zero():
                    break
                order = j - l + k
                term = aj * d * comb(j, l)
                out[order] = out[order] + term if order in out else term
    return DiffOp(out)


def op_commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return op_compose(a, b) - op_compose(b, a)


def kinetic(m=1) -> DiffOp:
    """Multiplication by ``q**2 / 2m``."""
    return DiffOp.mult(LaurentPoly.monomial(2, Fraction(1) / (2 * Fraction(m))))


def time_operator_1d(m=1, hbar=1) -> DiffOp:
    """``i hbar (m / 2q**2)(2qD - 1)``, the momentum-space time operator on a line."""
    k = ExactComplex(0, Fraction(hbar) * Fraction(m) / 2)
    return DiffOp([LaurentPoly.monomial(-2, -k), LaurentPoly.monomial(-1, 2 * k)])


def time_operator_3d_radial(m=1, hbar=1) -> DiffOp:
    """``i hbar (m / 6q**2)(2qD - 3)``, the radial reduction of the 3-D scalar form."""
    k = ExactComplex(0, Fraction(hbar) * Fraction(m) / 6)
    return DiffOp([LaurentPoly.monomial(-2, -3 * k), LaurentPoly.monomial(-1, 2 * k)])


def audit_TK_1d(m=1, hbar=1) -> AuditReport:
    """``[T_1d, K] = i hbar`` as an operator normal form."""
    result = op_commutator(time_operator_1d(m, hbar), kinetic(m))
    target = DiffOp.mult(ExactComplex(0, Fraction(hbar)))
    return AuditReport(
        name="TK_1d_commutator",
        mode="exact",
        lhs=str(result),
        rhs=str(target),
        residual_terms=[] if result == target else [str(result - target)],
        passed=result == target,
        details={"m": str(Fraction(m)), "hbar": str(Fraction(hbar))},
    )


class WeightedFunction:
    """``sum_e c_e q**(e/2) * exp(-rate * q**4)`` with exact coefficients.

    ``terms`` maps doubled exponents ``e`` to coefficients.
    """

    __slots__ = ("terms", "rate")

    def __init__(self, terms: Mapping[int, object] | None = None, rate=Fraction(0)):
        clean = {}
        for e, c in (terms or {}).items():
            c = _coerce(c)
            if c:
                clean[int(e)] = c
        self.terms: Dict[int, ExactComplex] = dict(sorted(clean.items()))
        self.rate = Fraction(rate)

    def __add__(self, other: "WeightedFunction") -> "WeightedFunction":
        if self.rate != other.rate and self.terms and other.terms:
            raise ValueError("cannot add functions with different weight rates")
        rate = self.rate if self.terms else other.rate
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return WeightedFunction(out, rate)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "WeightedFunction":
        s = _coerce(s)
        return WeightedFunction({e: c * s for e, c in self.terms.items()}, self.rate)

    def conjugate(self) -> "WeightedFunction":
        return WeightedFunction({e: c.conjugate() for e, c in self.terms.items()}, self.rate)

    def mul_laurent(self, p: LaurentPoly) -> "WeightedFunction":
        out: Dict[int, ExactComplex] = {}
        for e, c in self.terms.items():
            for n, a in p.coeffs.items():
                out[e + 2 * n] = out.get(e + 2 * n, ZERO) + c * a
        return WeightedFunction(out, self.rate)

    def derivative(self) -> "WeightedFunction":
        # D(q^(e/2) w) = ((e/2) q^(e/2 - 1) - 4 rate q^(e/2 + 3)) w
        out: Dict[int, ExactComplex] = {}
        for e, c in self.terms.items():
            if e:
                out[e - 2] = out.get(e - 2, ZERO) + c * Fraction(e, 2)
            if self.rate:
                out[e + 6] = out.get(e + 6, ZERO) - c * (4 * self.rate)
        return WeightedFunction(out, self.rate)

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Tuple[int, ExactComplex]:
        e = max(self.terms)
        return e, self.terms[e]

    def __eq__(self, other):
        if not isinstance(other, WeightedFunction):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.terms == other.terms and self.rate == other.rate

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.rate if self.terms else 0))

    def __call__(self, q):
        """Evaluate in double precision (``q`` scalar or numpy array, ``q > 0``)."""
        q = np.asarray(q, dtype=float)
        total = np.zeros_like(q, dtype=complex)
        for e, c in self.terms.items():
            total = total + complex(c) * q ** (e / 2)
        return total * np.exp(-float(self.rate) * q**4)

    def __str__(self):
        if not self.terms:
            return "0"
        body = " + ".join(f"{c}*q^({e}/2)" for e, c in self.terms.items())
        return f"[{body}] * exp(-{self.rate} q^4)"

    __repr__ = __str__


def op_apply(op: DiffOp, f: WeightedFunction) -> WeightedFunction:
    """Exact application of ``op`` to ``f``."""
    result = WeightedFunction({}, f.rate)
    deriv = f
    for j, aj in enumerate(op.coeffs):
        if j:
            deriv = deriv.derivative()
        if not aj.is_zero():
            result = result + deriv.mul_laurent(aj)
    return result


def moment(s: Fraction, mu: Fraction, prec: int = 50) -> mpmath.mpf:
    """``int_0^inf q**s exp(-mu q**4) dq = Gamma((s+1)/4) / (4 mu**((s+1)/4))``."""
    s, mu = Fraction(s), Fraction(mu)
    if mu <= 0 or s <= -1:
        raise DivergentIntegralError(f"moment diverges for s={s}, mu={mu}")
    a = (s + 1) / 4
    with mpmath.workdps(prec):
        return gamma_pos(a, prec=prec) / (4 * mpmath.power(mpmath.mpf(mu.numerator) / mu.denominator, mpmath.mpf(a.numerator) / a.denominator))


def inner_product(f: WeightedFunction, g: WeightedFunction, prec: int = 50):
    """``int_0^inf conj(f) g dq`` from closed-form moments.

    Exact coefficient sums are grouped by total power before any floating
    arithmetic; the result is an ``mpf`` when the imaginary part vanishes
    exactly and an ``mpc`` otherwise.
    """
    if f.is_zero() or g.is_zero():
        return mpmath.mpf(0)
    mu = f.rate + g.rate
    grouped: Dict[int, ExactComplex] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            grouped[e1 + e2] = grouped.get(e1 + e2, ZERO) + c1.conjugate() * c2
    grouped = {e: c for e, c in grouped.items() if c}
    if not grouped:
        return mpmath.mpf(0)
    if mu <= 0:
        raise DivergentIntegralError("combined weight rate must be positive")
    if min(grouped) <= -2:
        raise DivergentIntegralError("integrand not integrable at the origin")
    with mpmath.workdps(prec):
        re = mpmath.mpf(0)
        im = mpmath.mpf(0)
        for e, c in sorted(grouped.items()):
            m = moment(Fraction(e, 2), mu, prec)
            re += mpmath.mpf(c.re.numerator) / c.re.denominator * m
            im += mpmath.mpf(c.im.numerator) / c.im.denominator * m
        if all(c.is_real() for c in grouped.values()):
            return +re
        return mpmath.mpc(re, im)


def quadrature_inner_product(f: WeightedFunction, g: WeightedFunction) -> complex:
    """Independent adaptive-quadrature value of ``int_0^inf conj(f) g dq``."""
    def integrand(q, part):
        v = complex(f(q).conjugate() * g(q))
        return v.real if part == 0 else v.imag

    # split at q = 1 so the endpoint power singularity is isolated
    re = quad(integrand, 0, 1, args=(0,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    re += quad(integrand, 1, float("inf"), args=(0,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    im = quad(integrand, 0, 1, args=(1,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    im += quad(integrand, 1, float("inf"), args=(1,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    return complex(re, im)
