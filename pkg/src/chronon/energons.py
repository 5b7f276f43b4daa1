"""Energon ladder operators and number states in momentum space.

Units are ``hbar = m = c = 1`` with ``q = p / mc``.  The ladder pair is

    f  = (K - i T) / sqrt(2) = (1/sqrt 2) [q^2/2 + (2qD - 1)/(2q^2)]
    f' = (K + i T) / sqrt(2) = (1/sqrt 2) [q^2/2 - (2qD - 1)/(2q^2)]

with ``K = q^2/2`` and ``T = i (2qD - 1)/(2 q^2)``.  The irrational ``1/sqrt 2``
is kept outside the rational operators ``g = sqrt 2 f`` and ``g' = sqrt 2 f'``.

A number state is stored as ``pi**(-1/4) * sqrt(norm_sq) * shape(q)`` with a
rational weighted ``shape`` whose leading coefficient is +1 or -1, so equal
states have equal representations.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

import mpmath
import numpy as np

from chronon.exact import ExactComplex
from chronon.opalg import (
    DiffOp,
    LaurentPoly,
    WeightedFunction,
    inner_product,
    kinetic,
    op_apply,
    op_commutator,
    quadrature_inner_product,
    time_operator_1d,
)

WEIGHT_RATE = Fraction(1, 8)
DEFAULT_NMAX = 8


class LadderError(ValueError):
    pass


@dataclass(frozen=True)
class LadderPair:
    """``g = sqrt(2) f`` and ``g_dag = sqrt(2) f_dag`` as exact operators."""

    g: DiffOp
    g_dag: DiffOp

    @classmethod
    def build(cls) -> "LadderPair":
        K = kinetic(1)
        iT = DiffOp.mult(ExactComplex(0, 1)) * time_operator_1d(1, 1)
        return cls(K - iT, K + iT)

    @property
    def f_commutator(self) -> DiffOp:
        """``[f, f_dag] = [g, g_dag] / 2``."""
        return op_commutator(self.g, self.g_dag) * Fraction(1, 2)

    @property
    def number_operator(self) -> DiffOp:
        """``F = f_dag f + 1/2 = (g_dag g + 1) / 2`` in units of ``mc^2``."""
        return (self.g_dag * self.g + 1) * Fraction(1, 2)


LADDER = LadderPair.build()


def _real_leading(shape: WeightedFunction) -> Fraction:
    _, lead = shape.leading()
    if not lead.is_real():
        raise LadderError("number-state shapes must have real leading coefficients")
    return lead.re


@dataclass(frozen=True, eq=False)
class NumberState:
    """``zeta_n(q) = pi**(-1/4) * sqrt(norm_sq) * shape(q)``."""

    n: int
    shape: WeightedFunction
    norm_sq: Fraction

    @classmethod
    def canonical(cls, n: int, shape: WeightedFunction, norm_sq) -> "NumberState":
        if shape.is_zero():
            raise LadderError("number state cannot vanish")
        lead = _real_leading(shape)
        scale = abs(lead)
        return cls(n, shape.scale(Fraction(1) / scale), Fraction(norm_sq) * scale * scale)

    def __eq__(self, other):
        if not isinstance(other, NumberState):
            return NotImplemented
        return self.n == other.n and self.shape == other.shape and self.norm_sq == other.norm_sq

    def __hash__(self):
        return hash((self.n, self.shape, self.norm_sq))

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        if np.any(q <= 0):
            raise ValueError("number states are evaluated on q > 0")
        pref = math.sqrt(self.norm_sq) * math.pi ** -0.25
        return (pref * self.shape(q)).real

    def polynomial_in_q2(self) -> List[Fraction]:
        """Coefficients ``c_k`` with ``shape = q**(1/2) * sum_k c_k q**(2k) * weight``."""
        coeffs = {}
        for e, c in self.shape.terms.items():
            if (e - 1) % 4 or not c.is_real():
                raise LadderError("shape is not q^(1/2) times a real polynomial in q^2")
            coeffs[(e - 1) // 4] = c.re
        return [coeffs.get(k, Fraction(0)) for k in range(max(coeffs) + 1)]

    def interior_zero_count(self) -> int:
        """Number of distinct zeros on ``(0, inf)`` (exact Sturm count)."""
        return positive_root_count(self.polynomial_in_q2())


def ground_state() -> NumberState:
    """``zeta_0 = sqrt(2) pi**(-1/4) q**(1/2) exp(-q**4/8)``."""
    return NumberState.canonical(0, WeightedFunction({1: 1}, WEIGHT_RATE), 2)


def ladder(state: NumberState, direction: str) -> NumberState:
    """``f_dag |n> = sqrt(n+1) |n+1>`` (``up``) and ``f |n> = sqrt(n) |n-1>`` (``down``)."""
    if direction == "up":
        shape = op_apply(LADDER.g_dag, state.shape)
        # zeta_{n+1} = g_dag zeta_n / sqrt(2 (n+1))
        return NumberState.canonical(state.n + 1, shape, state.norm_sq / (2 * (state.n + 1)))
    if direction == "down":
        if state.n == 0:
            raise LadderError("f annihilates the ground state")
        shape = op_apply(LADDER.g, state.shape)
        return NumberState.canonical(state.n - 1, shape, state.norm_sq / (2 * state.n))
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def number_state(n: int) -> NumberState:
    if n < 0:
        raise ValueError("n must be nonnegative")
    state = ground_state()
    for _ in range(n):
        state = ladder(state, "up")
    return state


def closed_form_states() -> List[NumberState]:
    """``zeta_1..zeta_3`` typed in from their printed closed forms.

    zeta_1 = pi^(-1/4) q^(5/2) w
    zeta_2 = (q^4 - 2) q^(1/2) w / (2 pi^(1/4))
    zeta_3 = (q^4 - 6) q^2 sqrt(2q) w / (4 sqrt(3) pi^(1/4))
    """
    w = WEIGHT_RATE
    z1 = NumberState.canonical(1, WeightedFunction({5: 1}, w), 1)
    z2 = NumberState.canonical(2, WeightedFunction({9: 1, 1: -2}, w), Fraction(1, 4))
    # sqrt(2) / (4 sqrt(3)) = sqrt(2/48)
    z3 = NumberState.canonical(3, WeightedFunction({13: 1, 5: -6}, w), Fraction(2, 48))
    return [z1, z2, z3]


def gram_entry(a: NumberState, b: NumberState, prec: int = 50):
    """``<a, b>`` from closed-form moments (mpmath value)."""
    with mpmath.workdps(prec):
        raw = inner_product(a.shape, b.shape, prec=prec)
        ratio = mpmath.sqrt(mpmath.mpf(a.norm_sq.numerator) / a.norm_sq.denominator
                            * mpmath.mpf(b.norm_sq.numerator) / b.norm_sq.denominator)
        return raw * ratio / mpmath.sqrt(mpmath.pi)


def boundary_term(a: NumberState, b: NumberState, prec: int = 50):
    """``lim_{q -> 0} conj(a) b / q``, the surface term of integrating ``f`` by parts.

    ``<a, f_dag b> = <f a, b> + boundary_term(a, b) / sqrt(2)``, so states whose
    shapes both start at ``q**(1/2)`` are not orthogonal to their neighbours.
    """
    ca = a.shape.terms.get(1)
    cb = b.shape.terms.get(1)
    if ca is None or cb is None:
        return mpmath.mpf(0)
    c = ca.conjugate() * cb
    with mpmath.workdps(prec):
        val = mpmath.mpf(c.re.numerator) / c.re.denominator
        ns = mpmath.mpf(a.norm_sq.numerator) / a.norm_sq.denominator * mpmath.mpf(b.norm_sq.numerator) / b.norm_sq.denominator
        return val * mpmath.sqrt(ns) / mpmath.sqrt(mpmath.pi)


def gram_entry_quadrature(a: NumberState, b: NumberState) -> float:
    raw = quadrature_inner_product(a.shape, b.shape)
    return raw.real * math.sqrt(float(a.norm_sq) * float(b.norm_sq)) / math.sqrt(math.pi)


def gram_matrix(states: Sequence[NumberState], quadrature: bool = False) -> np.ndarray:
    k = len(states)
    G = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            v = gram_entry_quadrature(states[i], states[j]) if quadrature else float(mpmath.re(gram_entry(states[i], states[j])))
            G[i, j] = G[j, i] = v
    return G


def verify_number_state(n: int, n_max: int = DEFAULT_NMAX) -> dict:
    """Exact eigen-relation of ``F`` and orthonormality against all lower states."""
    if n < 0 or n > n_max:
        raise ValueError(f"n must lie in [0, {n_max}]")
    states = [ground_state()]
    for _ in range(n):
        states.append(ladder(states[-1], "up"))
    zn = states[-1]
    F_zn = op_apply(LADDER.number_operator, zn.shape)
    eigen_exact = F_zn == zn.shape.scale(Fraction(2 * n + 1, 2))
    overlaps = [float(mpmath.re(gram_entry(s, zn))) for s in states]
    errors = [abs(v - (1.0 if s.n == n else 0.0)) for s, v in zip(states, overlaps)]
    same_parity = [e for s, e in zip(states, errors) if (n - s.n) % 2 == 0]
    return {
        "n": n,
        "eigenvalue": str(Fraction(2 * n + 1, 2)),
        "eigen_relation_exact": bool(eigen_exact),
        "overlaps": overlaps,
        "max_orthonormality_error": max(errors),
        "max_same_parity_error": max(same_parity),
        "interior_zeros": zn.interior_zero_count(),
        "pass": bool(eigen_exact) and max(errors) <= 1e-10,
    }


def emit_states_data(n_max: int, q_min: float, q_max: float, step: float) -> tuple[np.ndarray, np.ndarray]:
    """``(q, Z)`` with ``Z[:, n] = zeta_n(q)`` for ``n = 0..n_max``."""
    if q_min <= 0:
        raise ValueError("q-range must lie in (0, inf)")
    if not q_max > q_min or step <= 0:
        raise ValueError("empty q-range")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    count = int(math.floor((q_max - q_min) / step + 1e-9)) + 1
    q = q_min + step * np.arange(count)
    states = [ground_state()]
    for _ in range(n_max):
        states.append(ladder(states[-1], "up"))
    Z = np.column_stack([s(q) for s in states])
    return q, Z


def states_csv(q: np.ndarray, Z: np.ndarray, extra_header: Sequence[str] = (), mc: float | None = None) -> str:
    """CSV ``q,zeta0,...,zetaN``.

    With ``mc`` given, a physical momentum column ``p = q mc`` is appended and
    the amplitudes are rescaled by ``mc**(-1/2)`` so they stay normalized in ``p``.
    """
    buf = io.StringIO()
    for line in extra_header:
        buf.write(f"# {line}\n")
    buf.write(f"# n_max={Z.shape[1] - 1}\n")
    cols = ["q"] + [f"zeta{k}" for k in range(Z.shape[1])]
    scale = 1.0
    if mc is not None:
        buf.write(f"# mc={mc!r}\n")
        cols.append("p")
        scale = mc ** -0.5
    buf.write(",".join(cols) + "\n")
    for i, qi in enumerate(q):
        row = [repr(float(qi))] + [repr(float(v * scale)) for v in Z[i]]
        if mc is not None:
            row.append(repr(float(qi * mc)))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


# exact root counting ---------------------------------------------------------


def _trim(p: List[Fraction]) -> List[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b) and a:
        k = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[i + shift] -= k * bc
        a = _trim(a)
    return a


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def positive_root_count(coeffs: Sequence[Fraction]) -> int:
    """Distinct roots on ``(0, inf)`` of ``sum_k coeffs[k] y**k`` (Sturm's theorem)."""
    p = _trim([Fraction(c) for c in coeffs])
    if not p:
        raise ValueError("zero polynomial")
    while p[0] == 0:  # roots at y = 0 are not interior
        p.pop(0)
    if len(p) == 1:
        return 0
    chain = [p, [k * c for k, c in enumerate(p)][1:]]
    while True:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    at_zero = [s[0] for s in chain]
    at_inf = [s[-1] for s in chain]
    return _sign_changes(at_zero) - _sign_changes(at_inf)
