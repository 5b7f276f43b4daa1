"""Command-line entry point: audits, figure data, spectra, dispersion and energons.

Every file written starts with a schema line and the resolved configuration so
identical inputs give byte-identical outputs.  Exit codes: 0 when every audit
expectation holds, 1 when one fails, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from chronon import dispersion, eigentime, energons, relspec
from chronon.ncalg import audit_TE, audit_TK_3d
from chronon.opalg import audit_TK_1d
from chronon.specfun import PRECISION_ENV

SCHEMA = "chronon-output/1"
SUBCOMMANDS = ("audit", "figures", "spectrum", "dispersion", "energons")
UNITS = ("natural", "SI")
MODES = ("plain", "constraint")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    units: str = "natural"
    out: str = "chronon_out"
    range: str = ""
    step: float = 0.0
    grid: int = 128
    c: float = 1.0
    mass_kg: float = dispersion.ELECTRON_MASS
    nmax: int = 5
    mode: str = "constraint"
    which: str = "all"
    precision: int = 0
    config: str = ""
    overrides: List[str] = field(default_factory=list)

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.units not in UNITS:
            raise UsageError(f"units must be one of {UNITS}")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}")
        if self.step < 0:
            raise UsageError("step must be positive")
        if self.grid < relspec.MIN_DISCRETIZE_NODES:
            raise UsageError(f"grid must be at least {relspec.MIN_DISCRETIZE_NODES}")
        if not self.c > 0:
            raise UsageError("c must be positive")
        if not self.mass_kg > 0:
            raise UsageError("mass-kg must be positive")
        if self.nmax < 0:
            raise UsageError("nmax must be nonnegative")
        if self.precision and self.precision < 15:
            raise UsageError("precision must be at least 15 digits")
        self.figure_list()
        if self.range:
            self.parsed_range()

    def parsed_range(self) -> Tuple[float, float]:
        try:
            a, b = (float(v) for v in self.range.split(":"))
        except ValueError:
            raise UsageError(f"range must look like a:b, got {self.range!r}") from None
        if not (math.isfinite(a) and math.isfinite(b) and b > a):
            raise UsageError(f"range must satisfy a < b, got {self.range!r}")
        return a, b

    def range_or(self, default: Tuple[float, float]) -> Tuple[float, float]:
        return self.parsed_range() if self.range else default

    def step_or(self, default: float) -> float:
        return self.step if self.step else default

    def figure_list(self) -> List[int]:
        if self.which == "all":
            return [1, 2, 3, 4, 5]
        try:
            figs = sorted({int(v) for v in self.which.split(",")})
        except ValueError:
            raise UsageError(f"which must be 'all' or a list from 1-5, got {self.which!r}") from None
        if not figs or any(f < 1 or f > 5 for f in figs):
            raise UsageError("figure numbers run from 1 to 5")
        return figs

    def metadata(self) -> Dict[str, object]:
        return {k: v for k, v in asdict(self).items()}


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
CONFIG_KEYS = tuple(k for k in _FIELD_TYPES if k not in ("subcommand", "config", "overrides"))


def _convert(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise UsageError(f"{key}: cannot parse {raw!r}") from None
    return raw


def load_config(path: str) -> Dict[str, object]:
    """``key=value`` lines with ``#`` comments; unknown keys are rejected."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    values: Dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _convert(key, raw)
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chronon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "audit": "symbolic commutator audits and eigenfunction residuals",
        "figures": "CSV data for the time-eigenfunction and energon figures",
        "spectrum": "discretized relativistic time-operator spectrum",
        "dispersion": "quadratic dispersion roots and eigenvalue splitting",
        "energons": "energon number states",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--units", choices=UNITS)
        p.add_argument("--out", help="output directory")
        p.add_argument("--range", help="a:b sampling range")
        p.add_argument("--step", type=float)
        p.add_argument("--grid", type=int, help="radial grid nodes")
        p.add_argument("--c", type=float, help="speed of light in natural-unit runs")
        p.add_argument("--mass-kg", dest="mass_kg", type=float)
        p.add_argument("--nmax", type=int)
        p.add_argument("--mode", choices=MODES)
        p.add_argument("--which", help="figure numbers, e.g. 2 or 1,3 or all")
        p.add_argument("--precision", type=int, help=f"Ei working digits (sets {PRECISION_ENV})")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    from_file: Dict[str, object] = {}
    if args.config:
        from_file = load_config(args.config)
        cfg.config = args.config
        for k, v in from_file.items():
            setattr(cfg, k, v)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is None:
            continue
        if key in from_file and from_file[key] != value:
            cfg.overrides.append(f"{key}: {from_file[key]!r} -> {value!r}")
        setattr(cfg, key, value)
    cfg.validate()
    return cfg


# output helpers ----------------------------------------------------------------


def _header_lines(cfg: RunConfig) -> List[str]:
    meta = cfg.metadata()
    return [f"schema={SCHEMA}", "config=" + json.dumps(meta, sort_keys=True)]


def _write(cfg: RunConfig, name: str, text: str, written: List[str]) -> None:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text, encoding="utf-8")
    written.append(str(out / name))


def _json_text(cfg: RunConfig, payload: Dict[str, object]) -> str:
    doc = {"schema": SCHEMA, "config": cfg.metadata()}
    doc.update(payload)
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return str(obj)


# subcommands -------------------------------------------------------------------


def cmd_audit(cfg: RunConfig, written: List[str]) -> List[Tuple[str, bool]]:
    reports = [
        audit_TE(cfg.mode),
        audit_TK_3d(),
        audit_TK_1d(),
        eigentime.ode_residual_audit(1.0, np.linspace(0.1, 10.0, 100)),
    ]
    _write(cfg, "audit.json", _json_text(cfg, {"reports": [r.to_dict() for r in reports]}), written)
    return [(f"{r.name} ({r.mode})", r.passed) for r in reports]


FIGURE_BRANCH = {1: eigentime.PARTICLE, 2: eigentime.PARTICLE, 3: eigentime.ANTIPARTICLE, 4: eigentime.ANTIPARTICLE}


def cmd_figures(cfg: RunConfig, written: List[str]) -> List[Tuple[str, bool]]:
    checks = []
    for fig in cfg.figure_list():
        if fig == 5:
            checks += _energon_table(cfg, written, f"fig{fig}.csv")
            continue
        a, b = cfg.range_or((-20.0, 20.0))
        branch = FIGURE_BRANCH[fig]
        params = eigentime.BranchParams.for_branch(branch)
        samples = eigentime.emit_figure_data(a, b, cfg.step_or(0.05), branch)
        quantity = "re,im" if fig in (1, 3) else "density"
        text = eigentime.figure_csv(samples, params, _header_lines(cfg) + [f"figure={fig}", f"quantity={quantity}"])
        _write(cfg, f"fig{fig}.csv", text, written)
    return checks


def _energon_table(cfg: RunConfig, written: List[str], name: str) -> List[Tuple[str, bool]]:
    a, b = cfg.range_or((0.01, 4.0))
    if a <= 0:
        raise UsageError("energon q-range must lie in (0, inf)")
    q, Z = energons.emit_states_data(cfg.nmax, a, b, cfg.step_or(0.01))
    mc = cfg.mass_kg * dispersion.SPEED_OF_LIGHT if cfg.units == "SI" else None
    _write(cfg, name, energons.states_csv(q, Z, _header_lines(cfg), mc=mc), written)
    return []


def cmd_energons(cfg: RunConfig, written: List[str]) -> List[Tuple[str, bool]]:
    _energon_table(cfg, written, "energons.csv")
    reports = [energons.verify_number_state(n, n_max=max(cfg.nmax, energons.DEFAULT_NMAX)) for n in range(cfg.nmax + 1)]
    commutator_unit = energons.LADDER.f_commutator == 1
    payload = {
        "commutator_f_fdag": str(energons.LADDER.f_commutator),
        "commutator_is_identity": commutator_unit,
        "states": [
            dict(r, shape=str(energons.number_state(r["n"]).shape), norm_sq=str(energons.number_state(r["n"]).norm_sq))
            for r in reports
        ],
    }
    _write(cfg, "energons.json", _json_text(cfg, payload), written)
    checks = [("[f, f_dag] = 1", commutator_unit)]
    checks += [(f"F zeta_{r['n']} = {r['eigenvalue']} zeta_{r['n']}", r["eigen_relation_exact"]) for r in reports]
    checks += [(f"zeta_{r['n']} orthonormal to lower states", r["max_orthonormality_error"] <= 1e-10) for r in reports]
    return checks


def cmd_spectrum(cfg: RunConfig, written: List[str]) -> List[Tuple[str, bool]]:
    a, b = cfg.range_or((0.5, 4.5))
    if a <= 0:
        raise UsageError("radial range must lie in (0, inf)")
    grid = relspec.RadialGrid(a, b, cfg.grid)
    sol = relspec.solve_time_spectrum(grid, m=1, c=cfg.c)
    _write(cfg, "spectrum.csv", sol.to_csv(_header_lines(cfg)), written)
    disp = relspec.dirac_dispersion_check(grid, m=1, c=cfg.c)
    study = relspec.commutator_grid_check(q_min=a, q_max=b, m=1, c=cfg.c)
    nonrel = relspec.nonrel_limit_check(m=1)
    payload = {
        "eigen_meta": sol.meta,
        "imag_refinement": relspec.imag_refinement_study((cfg.grid // 2, cfg.grid), a, b, m=1, c=cfg.c),
        "dirac_dispersion": disp,
        "commutator_study": study.to_dict(),
        "nonrel_limit": nonrel,
    }
    _write(cfg, "spectrum.json", _json_text(cfg, payload), written)
    return [
        ("discretized E matches +-c sqrt((mc)^2 + q^2)", disp["max_deviation"] <= 1e-12),
        ("discretized [T, E] -> i hbar with order >= 1.8", study.observed_order >= 1.8),
        ("off-diagonal/diagonal ratio halves per c doubling", nonrel["halves_within_10pct"] and nonrel["diagonal_equals_scalar_form"]),
    ]


def cmd_dispersion(cfg: RunConfig, written: List[str]) -> List[Tuple[str, bool]]:
    if cfg.units == "SI":
        param = dispersion.alpha_of_mass(cfg.mass_kg)
    else:
        param = dispersion.alpha_of_mass(1.0, c=cfg.c)
    # range is in units of m c^2 so both unit systems share defaults
    a, b = cfg.range_or((-1.0, 0.5))
    step = cfg.step_or(0.01)
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    energy_scale = 1.0 / param.alpha
    rows = [dispersion.energy_roots((a + k * step) * energy_scale, param.alpha) for k in range(count)]
    _write(cfg, "dispersion.csv", dispersion.roots_csv(rows, _header_lines(cfg) + [f"alpha={param.alpha!r}"]), written)

    p = (0.3, 0.4, 1.2)
    delta = 0.01
    cpt = dispersion.eigensplit(dispersion.PerturbedHamiltonian(p, np.diag([delta, -delta]), np.diag([-delta, delta])))
    v_plus = np.array([[0.03, 0.01 - 0.02j], [0.01 + 0.02j, -0.015]])
    v_minus = np.array([[0.02, -0.005 + 0.01j], [-0.005 - 0.01j, 0.04]])
    generic = dispersion.eigensplit(dispersion.PerturbedHamiltonian(p, v_plus, v_minus))
    zero = dispersion.energy_roots(0.0, param.alpha)
    electron = dispersion.alpha_of_mass(dispersion.ELECTRON_MASS)
    payload = {
        "alpha": param.alpha,
        "alpha_within_bound": param.satisfies_bound,
        "minimum_time_step_convention": "2 pi hbar / (E_plus - E_minus)",
        "minimum_time_step_at_h0": zero.min_time_step(dispersion.HBAR_SI if cfg.units == "SI" else 1.0),
        "electron_alpha": electron.alpha,
        "eigensplit_cpt_symmetric": cpt,
        "eigensplit_generic": generic,
    }
    _write(cfg, "dispersion.json", _json_text(cfg, payload), written)
    return [
        ("h = 0 roots are {0, m c^2}", zero.e_minus == 0 and abs(zero.e_plus.real * param.alpha - 1) <= 1e-15),
        ("electron alpha within 2% of 1.2e13 / J", abs(electron.alpha / 1.2e13 - 1) <= 0.02),
        ("generic potentials give 4 distinct eigenvalues", generic["n_distinct"] == 4),
        ("CPT-symmetric potentials give two split pairs", cpt["split_pairs"] == 2 and cpt["pm_symmetric"]),
    ]


HANDLERS = {
    "audit": cmd_audit,
    "figures": cmd_figures,
    "spectrum": cmd_spectrum,
    "dispersion": cmd_dispersion,
    "energons": cmd_energons,
}


def _join_range_values(argv: Sequence[str]) -> List[str]:
    """Glue ``--range -10:10`` into ``--range=-10:10`` so argparse does not read a flag."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--range":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--range={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_join_range_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
    except UsageError as exc:
        print(f"chronon: error: {exc}", file=sys.stderr)
        return 2

    previous = os.environ.get(PRECISION_ENV)
    if cfg.precision:
        os.environ[PRECISION_ENV] = str(cfg.precision)
    written: List[str] = []
    try:
        checks = HANDLERS[cfg.subcommand](cfg, written)
    except (UsageError, ValueError) as exc:
        print(f"chronon: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if cfg.precision:
            if previous is None:
                os.environ.pop(PRECISION_ENV, None)
            else:
                os.environ[PRECISION_ENV] = previous

    for path in written:
        print(f"wrote {path}")
    for label, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {label}")
    return 0 if all(ok for _, ok in checks) else 1


def main() -> None:
    sys.exit(run())
