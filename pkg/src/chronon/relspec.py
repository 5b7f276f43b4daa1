"""Radial reduction, discretization and spectra of the 4x4 time operator.

Each 2-spinor block is restricted to ``a(q) chi + b(q) (sigma.n) chi`` with
``n = p/|p|``, giving four radial channels ordered ``(a+, b+, a-, b-)``.  With
``r = i hbar grad_p`` (``hbar = 1`` here):

* ``sigma.r`` sends ``a -> i a'`` (into the b channel) and
  ``b -> i (b' + 2 b / q)`` (into the a channel);
* ``p.grad`` acts as ``q D`` on both channels;
* ``c sigma.p`` swaps channels with a factor ``c q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from numpy.linalg import LinAlgError

from chronon.exact import ExactComplex, I
from chronon.ncalg.matrix import PAULI
from chronon.ncalg.ring import MOMENTUM, Coef
from chronon.opalg import DiffOp, LaurentPoly, WeightedFunction, op_apply, op_compose

CHANNELS = ("a+", "b+", "a-", "b-")
A_PLUS, B_PLUS, A_MINUS, B_MINUS = range(4)


class SpectrumError(RuntimeError):
    """Dense eigen-solver failure."""


# radial operators ------------------------------------------------------------


class RadialOperator:
    """4x4 matrix of :class:`DiffOp` acting on the channels ``(a+, b+, a-, b-)``."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[DiffOp]]):
        if len(entries) != 4 or any(len(r) != 4 for r in entries):
            raise ValueError("RadialOperator needs a 4x4 array")
        self.entries = tuple(tuple(e if isinstance(e, DiffOp) else DiffOp.mult(e) for e in r) for r in entries)

    @classmethod
    def zeros(cls) -> "RadialOperator":
        return cls([[DiffOp() for _ in range(4)] for _ in range(4)])

    @classmethod
    def scalar(cls, value) -> "RadialOperator":
        return cls([[DiffOp.mult(value) if i == j else DiffOp() for j in range(4)] for i in range(4)])

    def __getitem__(self, ij) -> DiffOp:
        return self.entries[ij[0]][ij[1]]

    @property
    def order(self) -> int:
        return max((e.order for r in self.entries for e in r), default=-1)

    def __add__(self, other: "RadialOperator") -> "RadialOperator":
        return RadialOperator([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "RadialOperator":
        return RadialOperator([[-a for a in r] for r in self.entries])

    def __sub__(self, other: "RadialOperator") -> "RadialOperator":
        return self + (-other)

    def __matmul__(self, other: "RadialOperator") -> "RadialOperator":
        out = []
        for i in range(4):
            row = []
            for j in range(4):
                acc = DiffOp()
                for k in range(4):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + op_compose(a, b)
                row.append(acc)
            out.append(row)
        return RadialOperator(out)

    def block_diagonal(self) -> "RadialOperator":
        """Entries coupling a block to itself (particle-particle, antiparticle-antiparticle)."""
        return RadialOperator([[self.entries[i][j] if (i < 2) == (j < 2) else DiffOp() for j in range(4)] for i in range(4)])

    def block_offdiagonal(self) -> "RadialOperator":
        return self - self.block_diagonal()

    def apply(self, fields: Sequence[WeightedFunction]) -> List[WeightedFunction]:
        rate = next((f.rate for f in fields if not f.is_zero()), Fraction(0))
        out = []
        for i in range(4):
            acc = WeightedFunction({}, rate)
            for j in range(4):
                if not self.entries[i][j].is_zero() and not fields[j].is_zero():
                    acc = acc + op_apply(self.entries[i][j], fields[j])
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def __eq__(self, other):
        if not isinstance(other, RadialOperator):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def describe(self) -> List[str]:
        return [f"[{CHANNELS[i]}<-{CHANNELS[j]}] {e}" for i, r in enumerate(self.entries) for j, e in enumerate(r)
                if not e.is_zero()]


def radial_commutator(a: RadialOperator, b: RadialOperator) -> RadialOperator:
    return (a @ b) - (b @ a)


def _q(power: int, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(power, c)


def time_diagonal_radial(m) -> DiffOp:
    """``i (m / 6 q^2)(2 q D - 3)`` -- radial image of ``(m/6p^2)(3 p.r - r.p)``."""
    m = Fraction(m)
    return DiffOp([_q(-2, ExactComplex(0, -m / 2)), _q(-1, ExactComplex(0, m / 3))])


def eq11_radial_form(m) -> DiffOp:
    """Radial scalar time operator assembled from its parts.

    ``p.r -> i q D`` and ``r.p f -> i q^-2 D(q^3 f)`` (divergence of ``p f``),
    combined as ``(m / 6 q^2)(3 p.r - r.p)``.  Built independently of
    :func:`time_diagonal_radial` for cross-checking.
    """
    m = Fraction(m)
    p_dot_r = DiffOp.mult(_q(1, I)) * DiffOp.D()
    r_dot_p = DiffOp.mult(_q(-2, I)) * DiffOp.D() * DiffOp.mult(_q(3))
    return DiffOp.mult(_q(-2, m / 6)) * (p_dot_r * 3 - r_dot_p)


def build_radial_operators(m=1, c=1) -> Tuple[RadialOperator, RadialOperator]:
    """Radial time operator ``T`` and Dirac Hamiltonian ``E`` (``hbar = 1``)."""
    m, c = Fraction(m), Fraction(c)
    if m <= 0 or c <= 0:
        raise ValueError("m and c must be positive")
    Z = DiffOp()
    mc2 = DiffOp.mult(m * c * c)
    cq = DiffOp.mult(_q(1, c))
    E = RadialOperator([
        [mc2, Z, Z, cq],
        [Z, mc2, cq, Z],
        [Z, cq, -mc2, Z],
        [cq, Z, Z, -mc2],
    ])
    A = time_diagonal_radial(m)
    k = ExactComplex(0, 1 / (3 * c))  # i / 3c
    a_to_b = DiffOp([LaurentPoly(), LaurentPoly.const(k)])
    b_to_a = DiffOp([_q(-1, k * 2), LaurentPoly.const(k)])
    T = RadialOperator([
        [A, Z, Z, b_to_a],
        [Z, A, a_to_b, Z],
        [Z, b_to_a, -A, Z],
        [a_to_b, Z, Z, -A],
    ])
    return T, E


def exact_commutator_residual(m=1, c=1) -> RadialOperator:
    """``[T, E] - i`` on the radial class (a matrix of multiplication operators)."""
    T, E = build_radial_operators(m, c)
    return radial_commutator(T, E) - RadialOperator.scalar(I)


# Cartesian oracle ------------------------------------------------------------


def _mono_p(axis: int) -> Coef:
    return Coef.symbol(MOMENTUM[axis])


def _s_power(j: int) -> Coef:
    return Coef({(0, 0, 0, 0, 0, 0): ExactComplex(1)}, -j)


def _laurent_to_S(poly: LaurentPoly, shift: int = 0) -> Coef:
    """``q^-shift * poly(q)`` as a function of ``S = q^2``; every power must be even."""
    acc = Coef()
    for n, c in poly.coeffs.items():
        n -= shift
        if n % 2:
            raise ValueError("field is outside the radial class (wrong parity)")
        acc = acc + _s_power(n // 2) * c
    return acc


def _sigma_p_times(spinor: Sequence[Coef]) -> List[Coef]:
    out = []
    for i in range(2):
        acc = Coef()
        for axis in range(3):
            for j in range(2):
                s = PAULI[axis][i][j]
                if s:
                    acc = acc + _mono_p(axis) * spinor[j] * s
        out.append(acc)
    return out


def radial_to_cartesian(fields: Sequence[WeightedFunction], spinor=(1, 0)) -> List[Coef]:
    """Four Cartesian components of ``(a+ chi + b+ sigma.n chi, a- chi + b- sigma.n chi)``.

    One constant 2-spinor ``chi`` serves both blocks: ``sigma.p`` carries it
    from one block to the other, so the class only closes with a shared ``chi``.
    """
    chi = [Coef.const(ExactComplex.coerce(x)) for x in spinor]
    sp = _sigma_p_times(chi)
    comps: List[Coef] = []
    for block in range(2):
        fa, fb = fields[2 * block], fields[2 * block + 1]
        for f in (fa, fb):
            if f.rate != 0 and not f.is_zero():
                raise ValueError("radial oracle fields must be Laurent polynomials (rate 0)")
            if any(e % 2 for e in f.terms):
                raise ValueError("field is outside the radial class (half-integer power)")
        a = _laurent_to_S(LaurentPoly({e // 2: c for e, c in fa.terms.items()}))
        b_over_q = _laurent_to_S(LaurentPoly({e // 2: c for e, c in fb.terms.items()}), shift=1)
        comps.extend(a * chi[i] + b_over_q * sp[i] for i in range(2))
    return comps


def _grad(f: Coef, axis: int) -> Coef:
    return f.deriv(MOMENTUM[axis])


def apply_T_cartesian(psi: Sequence[Coef], m=1, c=1) -> List[Coef]:
    """Full 3-D time operator with ``r = i grad_p`` on a 4-spinor of ring elements."""
    m, c = Fraction(m), Fraction(c)
    pre = Coef.inv_S() * (m / 6)

    def diag(f: Coef) -> Coef:
        p_dot_r = Coef()
        r_dot_p = Coef()
        for axis in range(3):
            p_dot_r = p_dot_r + _mono_p(axis) * _grad(f, axis) * I
            r_dot_p = r_dot_p + _grad(_mono_p(axis) * f, axis) * I
        return pre * (p_dot_r * 3 - r_dot_p)

    def sigma_r(spinor: Sequence[Coef]) -> List[Coef]:
        out = []
        for i in range(2):
            acc = Coef()
            for axis in range(3):
                for j in range(2):
                    s = PAULI[axis][i][j]
                    if s:
                        acc = acc + _grad(spinor[j], axis) * (s * I)
            out.append(acc * (1 / (3 * c)))
        return out

    up, down = list(psi[:2]), list(psi[2:])
    sr_down, sr_up = sigma_r(down), sigma_r(up)
    return ([diag(up[i]) + sr_down[i] for i in range(2)]
            + [sr_up[i] - diag(down[i]) for i in range(2)])


def apply_E_cartesian(psi: Sequence[Coef], m=1, c=1) -> List[Coef]:
    m, c = Fraction(m), Fraction(c)
    up, down = list(psi[:2]), list(psi[2:])
    sp_up, sp_down = _sigma_p_times(up), _sigma_p_times(down)
    mc2 = m * c * c
    return ([up[i] * mc2 + sp_down[i] * c for i in range(2)]
            + [sp_up[i] * c - down[i] * mc2 for i in range(2)])


def commutator_residual_cartesian(psi: Sequence[Coef], m=1, c=1) -> List[Coef]:
    """``([T, E] - i) psi`` computed entirely in Cartesian momentum components."""
    te = apply_T_cartesian(apply_E_cartesian(psi, m, c), m, c)
    et = apply_E_cartesian(apply_T_cartesian(psi, m, c), m, c)
    return [a - b - f * I for a, b, f in zip(te, et, psi)]


def _max_coef(values: Sequence[Coef]) -> float:
    best = 0.0
    for v in values:
        for _, c in v.num.items():
            best = max(best, abs(complex(c)))
    return best


def oracle_3d_compare(fields: Sequence[WeightedFunction], spinor=(1, 0), m=1, c=1) -> Dict[str, float]:
    """Compare radial and Cartesian application of ``T``, ``E`` and ``[T, E]``.

    ``fields`` are the four radial channels as rate-0 :class:`WeightedFunction`
    values with integer powers; a channel must have the parity that makes the
    Cartesian field polynomial-rational (a: even powers, b: odd powers).
    Returns the maximal coefficient deviation for each route; exact agreement
    gives 0.0.
    """
    psi = radial_to_cartesian(fields, spinor)
    T, E = build_radial_operators(m, c)
    out = {}
    for name, rad, cart in (
        ("T", T, lambda v: apply_T_cartesian(v, m, c)),
        ("E", E, lambda v: apply_E_cartesian(v, m, c)),
    ):
        radial = radial_to_cartesian(rad.apply(fields), spinor)
        out[name] = _max_coef([a - b for a, b in zip(radial, cart(psi))])
    residual_op = exact_commutator_residual(m, c)
    radial_res = radial_to_cartesian(residual_op.apply(fields), spinor)
    cart_res = commutator_residual_cartesian(psi, m, c)
    out["commutator"] = _max_coef([a - b for a, b in zip(radial_res, cart_res)])
    out["commutator_residual_norm"] = _max_coef(cart_res)
    return out


# grids and discretization ------------------------------------------------------


@dataclass(frozen=True)
class RadialGrid:
    q_min: float
    q_max: float
    n: int
    spacing: str = "uniform"

    def __post_init__(self):
        if not self.q_min > 0:
            raise ValueError("q_min must be positive")
        if not self.q_max > self.q_min:
            raise ValueError("q_max must exceed q_min")
        if self.spacing not in ("uniform", "logarithmic"):
            raise ValueError("spacing must be 'uniform' or 'logarithmic'")
        if self.n < 3:
            raise ValueError("grid needs at least 3 nodes")

    @property
    def nodes(self) -> np.ndarray:
        if self.spacing == "uniform":
            return np.linspace(self.q_min, self.q_max, self.n)
        return np.geomspace(self.q_min, self.q_max, self.n)

    def weights(self) -> np.ndarray:
        """Trapezoid weights for discrete L2 norms."""
        q = self.nodes
        w = np.zeros_like(q)
        dq = np.diff(q)
        w[:-1] += dq / 2
        w[1:] += dq / 2
        return w


def derivative_matrix(q: np.ndarray) -> np.ndarray:
    """Second-order three-point first-derivative matrix on arbitrary nodes.

    Central stencils in the interior, one-sided three-point stencils at the ends.
    """
    n = q.size
    Dm = np.zeros((n, n))

    def weights(x0, xs):
        x1, x2, x3 = xs
        return np.array([
            (2 * x0 - x2 - x3) / ((x1 - x2) * (x1 - x3)),
            (2 * x0 - x1 - x3) / ((x2 - x1) * (x2 - x3)),
            (2 * x0 - x1 - x2) / ((x3 - x1) * (x3 - x2)),
        ])

    Dm[0, :3] = weights(q[0], q[:3])
    Dm[-1, -3:] = weights(q[-1], q[-3:])
    for i in range(1, n - 1):
        Dm[i, i - 1:i + 2] = weights(q[i], q[i - 1:i + 2])
    return Dm


MIN_DISCRETIZE_NODES = 16


def discretize(op: RadialOperator, grid: RadialGrid) -> np.ndarray:
    """Dense ``4n x 4n`` matrix; block ``(i, j)`` acts on channel ``j`` and feeds channel ``i``."""
    if grid.n < MIN_DISCRETIZE_NODES:
        raise ValueError(f"grid too small: need n >= {MIN_DISCRETIZE_NODES}")
    q = grid.nodes
    n = grid.n
    D = derivative_matrix(q)
    powers = [np.eye(n)]
    for _ in range(op.order):
        powers.append(D @ powers[-1])
    out = np.zeros((4 * n, 4 * n), dtype=complex)
    for i in range(4):
        for j in range(4):
            entry = op[i, j]
            if entry.is_zero():
                continue
            block = np.zeros((n, n), dtype=complex)
            for k, coef in enumerate(entry.coeffs):
                if coef.is_zero():
                    continue
                block += coef(q)[:, None] * powers[k]
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = block
    return out


def stack_channels(grid: RadialGrid, funcs: Sequence[Callable[[np.ndarray], np.ndarray]]) -> np.ndarray:
    q = grid.nodes
    return np.concatenate([np.asarray(f(q), dtype=complex) * np.ones_like(q) for f in funcs])


def channel_norm(v: np.ndarray, grid: RadialGrid) -> float:
    w = np.tile(grid.weights(), 4)
    return math.sqrt(float(np.sum(w * np.abs(v) ** 2)))


def gaussian_bump(center: float = 2.5, width: float = 0.25):
    return lambda q: np.exp(-((q - center) ** 2) / (2 * width**2))


def default_test_vector(channel: int = A_PLUS, center: float = 2.5, width: float = 0.25):
    bump = gaussian_bump(center, width)
    zero = lambda q: np.zeros_like(q)  # noqa: E731
    return [bump if i == channel else zero for i in range(4)]


@dataclass
class CommutatorStudy:
    ns: List[int]
    hs: List[float]
    errors_vs_ihbar: List[float]
    errors_vs_continuum: List[float]
    orders_vs_ihbar: List[float]
    orders_vs_continuum: List[float]
    continuum_residual: List[str]

    @property
    def observed_order(self) -> float:
        """Convergence order of ``||([T_h, E_h] - i) v|| / ||v||`` on the finest pair."""
        return self.orders_vs_ihbar[-1]

    @property
    def discretization_order(self) -> float:
        return self.orders_vs_continuum[-1]

    def to_dict(self) -> dict:
        return {
            "n": self.ns,
            "h": self.hs,
            "errors_vs_ihbar": self.errors_vs_ihbar,
            "errors_vs_continuum": self.errors_vs_continuum,
            "orders_vs_ihbar": self.orders_vs_ihbar,
            "orders_vs_continuum": self.orders_vs_continuum,
            "observed_order": self.observed_order,
            "discretization_order": self.discretization_order,
            "continuum_residual": self.continuum_residual,
        }


def _orders(errs: Sequence[float], hs: Sequence[float]) -> List[float]:
    out = []
    for (e1, h1), (e2, h2) in zip(zip(errs, hs), zip(errs[1:], hs[1:])):
        if e1 == 0 or e2 == 0:
            out.append(float("inf"))
        else:
            out.append(math.log(e1 / e2) / math.log(h1 / h2))
    return out


def commutator_grid_check(ns: Sequence[int] = (64, 128, 256), q_min: float = 0.5, q_max: float = 4.5,
                          test_vector=None, m=1, c=1, margin: float = 1e-12) -> CommutatorStudy:
    """Grid study of ``[T_h, E_h]`` against ``i`` and against the exact continuum commutator.

    The test vector must vanish (below ``margin``) at both ends of the interval;
    vectors that touch the boundary are rejected.
    """
    test_vector = test_vector or default_test_vector()
    T, E = build_radial_operators(m, c)
    residual_op = exact_commutator_residual(m, c)
    C_exact = radial_commutator(T, E)
    errs_i, errs_c, hs = [], [], []
    for n in ns:
        grid = RadialGrid(q_min, q_max, n)
        v = stack_channels(grid, test_vector)
        ends = np.concatenate([v[k * n:k * n + 1] for k in range(4)] + [v[k * n + n - 1:k * n + n] for k in range(4)])
        if np.max(np.abs(ends)) > margin * max(1.0, float(np.max(np.abs(v)))):
            raise ValueError("test vector does not vanish at the boundary")
        Th, Eh = discretize(T, grid), discretize(E, grid)
        Ch = Th @ Eh - Eh @ Th
        nv = channel_norm(v, grid)
        errs_i.append(channel_norm(Ch @ v - 1j * v, grid) / nv)
        # C_exact has order 0: apply it pointwise
        exact = discretize(C_exact, grid) @ v
        errs_c.append(channel_norm(Ch @ v - exact, grid) / nv)
        hs.append((q_max - q_min) / (n - 1))
    return CommutatorStudy(list(ns), hs, errs_i, errs_c, _orders(errs_i, hs), _orders(errs_c, hs),
                           residual_op.describe())


@dataclass
class EigenSolution:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    grid: RadialGrid
    m: float
    c: float
    meta: Dict[str, object] = field(default_factory=dict)

    def interior_mask(self, edge_fraction: float = 0.1, threshold: float = 0.9) -> np.ndarray:
        n = self.grid.n
        k = max(1, int(round(edge_fraction * n)))
        inner = np.zeros(n, dtype=bool)
        inner[k:n - k] = True
        inner4 = np.tile(inner, 4)
        weight = np.abs(self.eigenvectors) ** 2
        frac = weight[inner4].sum(axis=0) / weight.sum(axis=0)
        return frac >= threshold

    def median_interior_imag(self) -> float:
        mask = self.interior_mask()
        if not mask.any():
            return float("nan")
        return float(np.median(np.abs(self.eigenvalues[mask].imag)))

    def sign_flip_asymmetry(self) -> float:
        """Max distance from ``-lambda`` to the spectrum, over all eigenvalues."""
        lam = self.eigenvalues
        d = np.abs(lam[:, None] + lam[None, :])
        return float(np.max(np.min(d, axis=1)))

    def to_csv(self, header: Sequence[str] = ()) -> str:
        lines = [f"# {h}" for h in header]
        lines.append("index,re_lambda,im_lambda,residual")
        for i, (lam, res) in enumerate(zip(self.eigenvalues, self.residuals)):
            lines.append(f"{i},{lam.real!r},{lam.imag!r},{float(res)!r}")
        return "\n".join(lines) + "\n"


def solve_time_spectrum(grid: RadialGrid, m=1, c=1) -> EigenSolution:
    """Dense eigen-decomposition of the discretized time operator."""
    T, _ = build_radial_operators(m, c)
    Th = discretize(T, grid)
    try:
        lam, vecs = np.linalg.eig(Th)
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise SpectrumError(str(exc)) from exc
    if not np.all(np.isfinite(lam)):
        raise SpectrumError("eigen-solver returned non-finite eigenvalues")
    order = np.lexsort((lam.imag, lam.real))
    lam, vecs = lam[order], vecs[:, order]
    res = np.linalg.norm(Th @ vecs - vecs * lam[None, :], axis=0) / np.linalg.norm(vecs, axis=0)
    sol = EigenSolution(lam, vecs, res, grid, float(m), float(c))
    sol.meta = {
        "median_interior_abs_imag": sol.median_interior_imag(),
        "interior_modes": int(sol.interior_mask().sum()),
        "sign_flip_asymmetry": sol.sign_flip_asymmetry(),
        "max_residual": float(np.max(res)),
    }
    return sol


def imag_refinement_study(ns: Sequence[int] = (64, 128), q_min: float = 0.5, q_max: float = 4.5,
                          m=1, c=1) -> dict:
    """Median ``|Im lambda|`` over interior-localized and over all modes per resolution.

    Reported only: on this boundary-free discretization the interior median is
    not monotone in ``n`` in general.
    """
    rows = []
    for n in ns:
        sol = solve_time_spectrum(RadialGrid(q_min, q_max, n), m, c)
        rows.append({
            "n": int(n),
            "median_interior_abs_imag": sol.median_interior_imag(),
            "median_abs_imag": float(np.median(np.abs(sol.eigenvalues.imag))),
            "interior_modes": int(sol.interior_mask().sum()),
        })
    return {"q_min": q_min, "q_max": q_max, "rows": rows}


# non-relativistic limit and dispersion --------------------------------------


def nonrel_limit_check(c_ladder: Sequence = (1, 2, 4, 8), m=1, grid: RadialGrid | None = None,
                       test_vector=None) -> dict:
    """Ratio of off-diagonal to diagonal action of ``T_h`` along a ladder of ``c``."""
    grid = grid or RadialGrid(0.5, 4.5, 128)
    test_vector = test_vector or [gaussian_bump(2.5, 0.3)] * 4
    v = stack_channels(grid, test_vector)
    ratios, diag_exact = [], []
    reference = eq11_radial_form(m)
    for c in c_ladder:
        T, _ = build_radial_operators(m, c)
        off = discretize(T.block_offdiagonal(), grid) @ v
        diag = discretize(T.block_diagonal(), grid) @ v
        ratios.append(channel_norm(off, grid) / channel_norm(diag, grid))
        ok = all(T[i, i] == reference for i in (A_PLUS, B_PLUS)) and all(T[i, i] == -reference for i in (A_MINUS, B_MINUS))
        ok = ok and T.block_diagonal() == RadialOperator(
            [[T[i, j] if i == j else DiffOp() for j in range(4)] for i in range(4)])
        diag_exact.append(ok)
    halvings = [r1 / r2 for r1, r2 in zip(ratios, ratios[1:])]
    return {
        "c": [float(Fraction(c)) for c in c_ladder],
        "ratios": ratios,
        "halving_factors": halvings,
        "halves_within_10pct": all(abs(h - 2) <= 0.2 for h in halvings),
        "diagonal_equals_scalar_form": all(diag_exact),
    }


def dirac_dispersion_check(grid: RadialGrid, m=1, c=1) -> dict:
    """Eigenvalues of discretized ``E`` node by node against ``+-c sqrt((mc)^2 + q^2)``."""
    _, E = build_radial_operators(m, c)
    Eh = discretize(E, grid)
    n = grid.n
    q = grid.nodes
    mf, cf = float(m), float(c)
    worst = 0.0
    for k in range(n):
        idx = [k, n + k, 2 * n + k, 3 * n + k]
        block = Eh[np.ix_(idx, idx)]
        lam = np.linalg.eigvalsh(block)
        e = cf * math.sqrt((mf * cf) ** 2 + q[k] ** 2)
        worst = max(worst, float(np.max(np.abs(lam - np.array([-e, -e, e, e])))))
    offblock = Eh.copy()
    for k in range(n):
        idx = [k, n + k, 2 * n + k, 3 * n + k]
        offblock[np.ix_(idx, idx)] = 0
    return {"max_deviation": worst, "node_coupling": float(np.max(np.abs(offblock)))}
