"""Quadratic-in-energy dispersion and the perturbed 4x4 Hamiltonian.

Plane waves ``exp(-i E t / hbar)`` in the second-order-in-time equation give
``E - alpha E**2 = h`` with ``alpha = 1 / (m c**2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import constants

ALPHA_UPPER_BOUND = 7.2e23  # J^-1
ELECTRON_MASS = constants.m_e
SPEED_OF_LIGHT = constants.c
HBAR_SI = constants.hbar

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class NonHermitianPotentialError(ValueError):
    pass


@dataclass(frozen=True)
class DeformationParam:
    alpha: float
    mass: float
    c: float
    satisfies_bound: bool


def alpha_of_mass(m: float, c: float = SPEED_OF_LIGHT) -> DeformationParam:
    """``alpha = 1 / (m c^2)`` and whether it respects the quoted upper bound.

    Pass ``c=1`` for natural units.
    """
    if not m > 0:
        raise ValueError("mass must be positive")
    alpha = 1.0 / (m * c * c)
    return DeformationParam(alpha, m, c, alpha < ALPHA_UPPER_BOUND)


def minimum_bound_mass(c: float = SPEED_OF_LIGHT) -> float:
    """Smallest mass whose ``alpha`` stays below the upper bound."""
    return 1.0 / (ALPHA_UPPER_BOUND * c * c)


@dataclass(frozen=True)
class EnergyRoots:
    h: float
    alpha: float
    e_plus: complex
    e_minus: complex
    complex_flag: bool

    @property
    def delta_e(self) -> complex:
        return self.e_plus - self.e_minus

    def min_time_step(self, hbar: float = 1.0) -> float:
        """Artifact convention ``2 pi hbar / (E+ - E-)`` for real roots."""
        if self.complex_flag:
            return float("nan")
        return 2 * math.pi * hbar / self.delta_e.real


def energy_roots(h: float, alpha: float) -> EnergyRoots:
    """Roots of ``alpha E^2 - E + h = 0``.

    The small root is computed as ``2h / (1 + sqrt(1 - 4 alpha h))`` to avoid
    cancellation when ``alpha h`` is tiny.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    disc = 1.0 - 4.0 * alpha * h
    flag = disc < 0
    root = cmath.sqrt(disc) if flag else complex(math.sqrt(disc))
    e_plus = (1.0 + root) / (2.0 * alpha)
    if flag:
        # real coefficients: the pair is exactly conjugate
        e_minus = e_plus.conjugate()
    else:
        e_plus, e_minus = complex(e_plus.real), complex((2.0 * h / (1.0 + root)).real)
    return EnergyRoots(h, alpha, e_plus, e_minus, flag)


def roots_csv(rows: Sequence[EnergyRoots], header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append("h,E_plus,E_minus,delta_E,complex_flag")
    for r in rows:
        def fmt(z: complex) -> str:
            return repr(z.real) if z.imag == 0 else f"{z.real!r}{z.imag:+.17g}j"
        lines.append(f"{r.h!r},{fmt(r.e_plus)},{fmt(r.e_minus)},{fmt(r.delta_e)},{int(r.complex_flag)}")
    return "\n".join(lines) + "\n"


# perturbed Hamiltonian ----------------------------------------------------------


def sigma_dot(v: Sequence[float]) -> np.ndarray:
    return sum(float(x) * s for x, s in zip(v, PAULI))


def rotation_to_z(p: Sequence[float]) -> np.ndarray:
    """SU(2) matrix ``U`` with ``U (sigma.p) U^dagger = |p| sigma_z``."""
    p = np.asarray(p, dtype=float)
    norm = float(np.linalg.norm(p))
    if norm == 0:
        return np.eye(2, dtype=complex)
    n = p / norm
    theta = math.acos(max(-1.0, min(1.0, n[2])))
    axis = np.array([n[1], -n[0], 0.0])  # z x n, normalized below
    an = float(np.linalg.norm(axis))
    if an < 1e-15:
        if n[2] > 0:
            return np.eye(2, dtype=complex)
        axis = np.array([1.0, 0.0, 0.0])
    else:
        axis = axis / an
    # rotation by theta about axis maps n onto z
    return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * sigma_dot(axis)


@dataclass
class PerturbedHamiltonian:
    p: Tuple[float, float, float]
    v_plus: np.ndarray
    v_minus: np.ndarray
    m: float = 1.0
    c: float = 1.0
    hermiticity: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        self.p = tuple(float(x) for x in self.p)
        self.v_plus = np.asarray(self.v_plus, dtype=complex)
        self.v_minus = np.asarray(self.v_minus, dtype=complex)
        self.hermiticity = {
            "v_plus": bool(np.allclose(self.v_plus, self.v_plus.conj().T, atol=1e-14)),
            "v_minus": bool(np.allclose(self.v_minus, self.v_minus.conj().T, atol=1e-14)),
        }

    @property
    def p2(self) -> float:
        return float(sum(x * x for x in self.p))

    def matrix(self, canonical: bool = True) -> np.ndarray:
        """``[[-V+ - p^2/m, c sigma.p], [c sigma.p, -V- + p^2/m]]``.

        With ``canonical`` the momentum is rotated onto z (and the potentials
        with it), which leaves the spectrum unchanged.
        """
        vp, vm = self.v_plus, self.v_minus
        if canonical:
            U = rotation_to_z(self.p)
            vp = U @ vp @ U.conj().T
            vm = U @ vm @ U.conj().T
            sp = math.sqrt(self.p2) * PAULI[2]
        else:
            sp = sigma_dot(self.p)
        k = self.p2 / self.m
        eye = np.eye(2)
        top = np.hstack([-vp - k * eye, self.c * sp])
        bottom = np.hstack([self.c * sp, -vm + k * eye])
        return np.vstack([top, bottom])

    def unperturbed(self) -> "PerturbedHamiltonian":
        z = np.zeros((2, 2))
        return PerturbedHamiltonian(self.p, z, z, self.m, self.c)


def _clusters(values: np.ndarray, tol: float) -> List[List[float]]:
    groups: List[List[float]] = []
    for v in np.sort(values):
        if groups and abs(v - groups[-1][-1]) <= tol:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return groups


def eigensplit(H: PerturbedHamiltonian, rel_tol: float = 1e-9) -> dict:
    """Exact eigenvalues, multiplicities and first-order degenerate estimates."""
    if not all(H.hermiticity.values()):
        raise NonHermitianPotentialError(f"potentials must be Hermitian: {H.hermiticity}")
    M = H.matrix(canonical=True)
    lam = np.linalg.eigvalsh(M)
    scale = max(1.0, float(np.max(np.abs(lam))))
    groups = _clusters(lam, rel_tol * scale)

    H0 = H.unperturbed().matrix(canonical=True)
    lam0, vec0 = np.linalg.eigh(H0)
    V = M - H0
    scale0 = max(1.0, float(np.max(np.abs(lam0))))
    estimates: List[float] = []
    split_pairs = []
    i = 0
    while i < len(lam0):
        j = i
        while j + 1 < len(lam0) and abs(lam0[j + 1] - lam0[i]) <= rel_tol * scale0:
            j += 1
        W = vec0[:, i:j + 1]
        shifts = np.linalg.eigvalsh(W.conj().T @ V @ W)
        level = [float(lam0[i] + s) for s in shifts]
        estimates.extend(level)
        exact_level = [float(x) for x in lam[i:j + 1]]
        split_pairs.append({
            "unperturbed": float(lam0[i]),
            "degeneracy": j - i + 1,
            "exact": exact_level,
            "first_order": level,
            "splitting": float(exact_level[-1] - exact_level[0]),
        })
        i = j + 1

    n_distinct = len(groups)
    pm_symmetric = bool(np.allclose(np.sort(lam), np.sort(-lam), atol=rel_tol * scale))
    n_split = sum(1 for s in split_pairs if s["degeneracy"] > 1 and s["splitting"] > rel_tol * scale)
    return {
        "eigenvalues": [float(x) for x in lam],
        "multiplicities": [len(g) for g in groups],
        "n_distinct": n_distinct,
        "pm_symmetric": pm_symmetric,
        "split_pairs": n_split,
        "levels": split_pairs,
        "first_order_estimates": sorted(estimates),
        "trace": float(np.trace(M).real),
        "canonical_axis": "z",
        "momentum": list(H.p),
    }
