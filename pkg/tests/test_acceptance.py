"""Acceptance gate: one check per acceptance criterion, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is added to the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import ei_quadrature_reference, ei_series_reference  # noqa: E402

from chronon import dispersion, eigentime, energons, relspec  # noqa: E402
from chronon.cli import run  # noqa: E402
from chronon.ncalg import audit_TE, audit_TK_3d  # noqa: E402
from chronon.opalg import DiffOp, audit_TK_1d, op_apply  # noqa: E402
from chronon.specfun import ei_imag  # noqa: E402

CRITERIA = {}
RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return wrap


def _csv_rows(path):
    lines = [l for l in Path(path).read_text().splitlines() if not l.startswith("#")]
    return np.array([[float(v) for v in l.split(",")] for l in lines[1:]])


@criterion(1, "exact ladder reproduces closed-form states; f annihilates the ground state")
def ac_ladder():
    t0 = time.perf_counter()
    generated = [energons.number_state(n) for n in (1, 2, 3)]
    match = generated == energons.closed_form_states()
    annihilated = op_apply(energons.LADDER.g, energons.ground_state().shape).is_zero()
    elapsed = time.perf_counter() - t0
    return match and annihilated and elapsed < 1.0, f"match={match} annihilated={annihilated} t={elapsed:.3f}s"


@criterion(2, "Gram matrix of zeta_0..zeta_5 is the identity")
def ac_gram():
    states = [energons.number_state(n) for n in range(6)]
    exact = np.max(np.abs(energons.gram_matrix(states) - np.eye(6)))
    quad = np.max(np.abs(energons.gram_matrix(states, quadrature=True) - np.eye(6)))
    return exact <= 1e-10 and quad <= 1e-8, f"max|G-I| closed form={exact:.3e} quadrature={quad:.3e}"


@criterion(3, "F zeta_n = (n + 1/2) zeta_n for n <= 5 and [f, f_dag] = 1, exactly")
def ac_number_operator():
    F = energons.LADDER.number_operator
    eig = all(op_apply(F, energons.number_state(n).shape) == energons.number_state(n).shape.scale(
        energons.Fraction(2 * n + 1, 2)) for n in range(6))
    comm = energons.LADDER.f_commutator == DiffOp.identity()
    return eig and comm, f"eigen-relations={eig} commutator={comm}"


@criterion(4, "1-D commutator [T, K] = i hbar exactly")
def ac_tk_1d():
    r = audit_TK_1d()
    return r.passed, f"normal form {r.lhs}"


@criterion(5, "3-D scalar commutator matches the canonical-commutator oracle i hbar/3")
def ac_tk_3d():
    r = audit_TK_3d()
    return r.passed and not r.details["matches_claim"], f"normal form {r.lhs}; deviation from i hbar: {r.details['deviation_from_claim']}"


@criterion(6, "[T, E] - i hbar I4: zero after L = 0 reduction; plain diagonal equals (2i/3) sigma.L")
def ac_te():
    constraint = audit_TE("constraint")
    plain = audit_TE("plain")
    d = constraint.details
    ok = constraint.passed and plain.passed
    detail = (f"reduced diagonal zero={d['constraint_diagonal_zero']} reduced off-diagonal zero="
              f"{d['constraint_offdiagonal_zero']} plain diagonal matches={d['plain_diagonal_matches_spin_orbit']}")
    return ok, detail


@criterion(7, "Ei(ix) against series, quadrature and reflection oracles")
def ac_ei():
    xs_series = np.concatenate([np.linspace(0.1, 30, 60), [0.1, 1.0, math.pi, 29.99, 30.0]])
    e_series = max(abs(ei_imag(x) - ei_series_reference(x)) for x in xs_series)
    xs_far = [30.5, 45.0, 77.7, 150.0, 333.3, 620.0, 1000.0]
    e_far = max(abs(ei_imag(x) - ei_quadrature_reference(x)) for x in xs_far)
    xs_refl = np.concatenate([xs_series, xs_far])
    e_refl = max(abs(ei_imag(-x) - ei_imag(x).conjugate()) for x in xs_refl)
    ok = e_series <= 1e-12 and e_far <= 1e-10 and e_refl <= 1e-13
    return ok, f"series={e_series:.2e} quadrature={e_far:.2e} reflection={e_refl:.2e}"


@criterion(8, "figure tables: particle plateau and decay; antiparticle tables mirror particle tables")
def ac_figures():
    part = eigentime.BranchParams.for_branch(eigentime.PARTICLE)
    d_pos = abs(eigentime.chi(50.0, part)) ** 2
    d_neg = abs(eigentime.chi(-50.0, part)) ** 2
    with tempfile.TemporaryDirectory() as out:
        code = run(["figures", "--which", "1,2,3,4", "--out", out])
        f1, f2, f3, f4 = (_csv_rows(Path(out) / f"fig{k}.csv") for k in (1, 2, 3, 4))
    same_x = f1.shape == f3.shape and f2.shape == f4.shape and bool(
        np.allclose(f1[:, 0], -f3[::-1, 0], rtol=0, atol=1e-12) and np.allclose(f2[:, 0], -f4[::-1, 0], rtol=0, atol=1e-12))
    mirror_density = float(np.max(np.abs(f2[:, 3] - f4[::-1, 3])))
    mirror_value = float(np.max(np.abs(f1[:, 1] - f3[::-1, 1]) + np.abs(f1[:, 2] + f3[::-1, 2])))
    ok = (code == 0 and abs(d_pos - 1) <= 0.01 and d_neg <= 1e-4 and same_x
          and mirror_density <= 1e-12 and mirror_value <= 1e-12)
    return ok, f"density(50)={d_pos:.5f} density(-50)={d_neg:.2e} mirror={max(mirror_density, mirror_value):.1e}"


@criterion(9, "eigenfunction residuals: inhomogeneous form vanishes, printed scalar form leaves m(6a - chi)/(6p^2)")
def ac_ode():
    r = eigentime.ode_residual_audit(1.0, np.linspace(0.1, 10.0, 200))
    d = r.details
    return r.passed, f"inhomogeneous={d['max_residual_c']:.2e} scalar-form deviation={d['max_deviation_a_from_prediction']:.2e}"


@criterion(10, "discretized E has eigenvalues +-sqrt(1 + q^2), each twice, at every node")
def ac_dirac():
    worst = 0.0
    for n in (64, 128):
        chk = relspec.dirac_dispersion_check(relspec.RadialGrid(0.5, 4.5, n))
        worst = max(worst, chk["max_deviation"], chk["node_coupling"])
    return worst <= 1e-12, f"max deviation {worst:.2e}"


@criterion(11, "discretized [T, E] -> i hbar with observed order >= 1.8 (n = 64, 128, 256)")
def ac_order():
    study = relspec.commutator_grid_check((64, 128, 256))
    detail = (f"errors vs i hbar {['%.3e' % e for e in study.errors_vs_ihbar]} order {study.observed_order:.3f}; "
              f"vs exact continuum commutator order {study.discretization_order:.3f}")
    return study.observed_order >= 1.8, detail


@criterion(12, "off-diagonal/diagonal T-action ratio halves per c doubling; diagonal is the scalar radial form")
def ac_nonrel():
    r = relspec.nonrel_limit_check()
    ok = r["halves_within_10pct"] and r["diagonal_equals_scalar_form"]
    return ok, f"halving factors {[round(h, 4) for h in r['halving_factors']]}"


@criterion(13, "dispersion roots, electron alpha, h = 0 roots and eigenvalue splitting")
def ac_dispersion():
    vieta = 0.0
    for alpha in (1.0, 0.5, 3.0):
        for h in np.linspace(-2.0, 1.0, 61):
            r = dispersion.energy_roots(float(h), alpha)
            vieta = max(vieta, abs(r.e_plus + r.e_minus - 1 / alpha) * alpha,
                        abs(r.e_plus * r.e_minus - h / alpha) / max(1.0, abs(h / alpha)))
    electron = dispersion.alpha_of_mass(dispersion.ELECTRON_MASS).alpha
    zero = dispersion.energy_roots(0.0, 1.0)
    zero_exact = zero.e_minus == 0 and zero.e_plus == 1
    p = (0.3, 0.4, 1.2)
    vp = np.array([[0.03, 0.01 - 0.02j], [0.01 + 0.02j, -0.015]])
    vm = np.array([[0.02, -0.005 + 0.01j], [-0.005 - 0.01j, 0.04]])
    generic = dispersion.eigensplit(dispersion.PerturbedHamiltonian(p, vp, vm))
    cpt = dispersion.eigensplit(dispersion.PerturbedHamiltonian(p, np.diag([0.01, -0.01]), np.diag([-0.01, 0.01])))
    ok = (vieta <= 1e-14 and abs(electron / 1.2e13 - 1) <= 0.02 and zero_exact
          and generic["n_distinct"] == 4 and cpt["split_pairs"] == 2)
    return ok, (f"vieta={vieta:.1e} alpha_e={electron:.4e} h0 exact={zero_exact} "
                f"generic distinct={generic['n_distinct']} cpt split pairs={cpt['split_pairs']}")


@criterion(14, "Fourier pair round trip and Parseval")
def ac_fourier():
    worst = 0.0
    for center, width in ((0.0, 1.0), (2.0, 0.7), (-1.5, 1.8)):
        r = eigentime.fourier_pair_check(center, width)
        worst = max(worst, r["roundtrip_deviation"], r["parseval_deviation"])
    return worst <= 1e-8, f"max deviation {worst:.2e}"


@criterion(15, "repeated figures and audit runs are byte-identical")
def ac_determinism():
    same = True
    with tempfile.TemporaryDirectory() as out:
        for sub in (["figures"], ["audit"]):
            run(sub + ["--out", out])
            first = {p.name: p.read_bytes() for p in Path(out).iterdir()}
            run(sub + ["--out", out])
            second = {p.name: p.read_bytes() for p in Path(out).iterdir()}
            same = same and first == second
    return same, f"identical={same}"


def evaluate(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'}  [{number:02d}] {title} :: {detail}"
    RESULTS[number] = line
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance(number):
    ok, line = evaluate(number)
    print(line)
    assert ok, line


if __name__ == "__main__":
    outcomes = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in outcomes:
        print(line)
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
