"""Coupling-grid sweeps, figure presets and CSV/summary emission.

Frequencies are in units of the qubit splitting (``w_a = 1``); a sweep is
fixed by the ratio ``w_b / w_a`` and a rectangular grid over the corotating
(``coupling1``) and counterrotating (``coupling2``) strengths.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
import csv
import functools
import json
import logging
from pathlib import Path

import numpy as np
import yaml

from . import entanglement as ent
from .errors import (
    ConfigInvalid, DegenerateB, DegenerateGround, NoConvergence, RootAmbiguous,
    RootNotFound, TruncationInsufficient, UnknownPreset,
)
from .exact import (
    DEFAULT_N_CAP, DEFAULT_TOL, converged_ground_state, ground_state,
    rayleigh_quotient, subspace_projection_norm,
)
from .fock import FockSpace, required_n_max
from .hamiltonian import SingleQubitParams, TwoQubitParams, build
from .transform import (
    ansatz_single, ansatz_two_qubit, fidelity, solve_xi1, solve_xi2,
    xi1_linear_approx, xi2_linear_approx,
)

log = logging.getLogger(__name__)

OK = "ok"
DEGENERATE = "degenerate"
NO_CONVERGENCE = "no_convergence"
ROOT_FAILED = "root_failed"

SURFACES = (
    "energy_exact", "energy_transformed", "energy_deviation", "fidelity",
    "entropy", "negativity_exact", "negativity_transformed", "negativity_deviation",
)
TWO_QUBIT_ONLY = {"negativity_exact", "negativity_transformed", "negativity_deviation"}

CSV_HEADER = ("coupling1", "coupling2", "value", "status")
MAX_COUPLING = 2.0


@dataclass(frozen=True)
class SweepConfig:
    model: str
    w_b_over_w_a: float
    coupling1_min: float
    coupling1_max: float
    coupling1_steps: int
    coupling2_min: float
    coupling2_max: float
    coupling2_steps: int
    outputs: tuple
    tol: float = DEFAULT_TOL
    n_cap: int = DEFAULT_N_CAP

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.model not in ("single", "two"):
            raise ConfigInvalid(f"model must be 'single' or 'two', got {self.model!r}")
        if not (isinstance(self.w_b_over_w_a, (int, float)) and self.w_b_over_w_a > 0):
            raise ConfigInvalid(f"w_b_over_w_a must be positive, got {self.w_b_over_w_a!r}")
        for axis in ("coupling1", "coupling2"):
            lo = getattr(self, f"{axis}_min")
            hi = getattr(self, f"{axis}_max")
            steps = getattr(self, f"{axis}_steps")
            if not isinstance(steps, int) or isinstance(steps, bool) or steps < 2:
                raise ConfigInvalid(f"{axis}_steps must be an integer >= 2, got {steps!r}")
            if not (0 <= lo <= hi <= MAX_COUPLING):
                raise ConfigInvalid(f"{axis} range must satisfy 0 <= min <= max <= {MAX_COUPLING}, got [{lo}, {hi}]")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ConfigInvalid(f"tol must be positive, got {self.tol!r}")
        if not isinstance(self.n_cap, int) or self.n_cap < 20:
            raise ConfigInvalid(f"n_cap must be an integer >= 20, got {self.n_cap!r}")
        if not self.outputs:
            raise ConfigInvalid("outputs must name at least one surface")
        for kind in self.outputs:
            if kind not in SURFACES:
                raise ConfigInvalid(f"unknown surface {kind!r}; choose from {', '.join(SURFACES)}")
            if self.model == "single" and kind in TWO_QUBIT_ONLY:
                raise ConfigInvalid(f"surface {kind!r} needs the two-qubit model")
        if len(set(self.outputs)) != len(self.outputs):
            raise ConfigInvalid("outputs contain duplicates")

    @property
    def grid1(self):
        return np.linspace(self.coupling1_min, self.coupling1_max, self.coupling1_steps)

    @property
    def grid2(self):
        return np.linspace(self.coupling2_min, self.coupling2_max, self.coupling2_steps)


@dataclass(frozen=True)
class SurfaceRecord:
    coupling1: float
    coupling2: float
    value: float
    status: str

    def csv_row(self):
        value = "" if self.status != OK or self.value is None else format(self.value, ".17g")
        return (format(self.coupling1, ".17g"), format(self.coupling2, ".17g"), value, self.status)


@dataclass
class SweepResult:
    config: SweepConfig
    surfaces: dict
    summary: dict
    paths: list = field(default_factory=list)

    @property
    def all_ok(self):
        return all(r.status == OK for recs in self.surfaces.values() for r in recs)


# -- config files ---------------------------------------------------------------

_CONFIG_KEYS = {f.name for f in fields(SweepConfig)}
_REQUIRED_KEYS = _CONFIG_KEYS - {"tol", "n_cap"}


def parse_config(mapping):
    """Build a :class:`SweepConfig` from a flat mapping; unknown keys are errors."""
    if not isinstance(mapping, dict):
        raise ConfigInvalid("config must be a flat key: value mapping")
    unknown = set(mapping) - _CONFIG_KEYS
    if unknown:
        raise ConfigInvalid(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = _REQUIRED_KEYS - set(mapping)
    if missing:
        raise ConfigInvalid(f"missing config keys: {', '.join(sorted(missing))}")
    values = dict(mapping)
    outputs = values["outputs"]
    if isinstance(outputs, str):
        outputs = [o.strip() for o in outputs.split(",") if o.strip()]
    if not isinstance(outputs, (list, tuple)):
        raise ConfigInvalid("outputs must be a list or comma-separated string")
    values["outputs"] = tuple(outputs)
    for key in ("w_b_over_w_a", "coupling1_min", "coupling1_max", "coupling2_min", "coupling2_max", "tol"):
        if key in values:
            v = values[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigInvalid(f"{key} must be a number, got {v!r}")
            values[key] = float(v)
    return SweepConfig(**values)


def load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigInvalid(f"cannot parse config {path}: {exc}") from exc
    return parse_config(data)


def config_to_mapping(config):
    d = asdict(config)
    d["outputs"] = list(config.outputs)
    return d


# -- per-point evaluation -----------------------------------------------------------

def _make_params(model, wb, c1, c2):
    if model == "single":
        return SingleQubitParams(1.0, wb, c1, c2)
    return TwoQubitParams(1.0, wb, c1, c2)


@functools.lru_cache(maxsize=None)
def evaluate_point(model, wb, c1, c2, tol=DEFAULT_TOL, n_cap=DEFAULT_N_CAP):
    """All scalar diagnostics at one parameter point.

    Returns a dict with ``values`` and ``status`` (both keyed by surface
    name) and a ``diagnostics`` dict of auxiliary scalars. Two-qubit states
    are compared in the rotated frame; entanglement between the qubits does
    not depend on the frame because the connecting rotation is local.
    """
    params = _make_params(model, float(wb), float(c1), float(c2))
    frame = "original" if model == "single" else "rotated"
    values = dict.fromkeys(SURFACES)
    status = dict.fromkeys(SURFACES, OK)
    diag = {}

    exact = None
    try:
        exact = converged_ground_state(params, tol=tol, n_cap=n_cap, frame=frame, allow_degenerate=True)
    except NoConvergence as exc:
        log.info("no convergence at %s: %s", params, exc)

    ansatz = None
    try:
        xi = solve_xi1(params) if model == "single" else solve_xi2(params)
        n_need = required_n_max(xi)
        n_use = max(n_need, exact.n_max_used if exact is not None else n_need)
        space = FockSpace(n_use)
        ansatz = (ansatz_single(params, space, xi) if model == "single"
                  else ansatz_two_qubit(params, space, xi))
    except (RootNotFound, RootAmbiguous, DegenerateB, TruncationInsufficient, ValueError) as exc:
        log.info("transformation failed at %s: %s", params, exc)

    # Exact state at the ansatz cutoff when the coherent states need more room.
    if exact is not None and ansatz is not None and ansatz.space.n_max > exact.n_max_used:
        H = build(params, ansatz.space, frame)
        try:
            e, v = ground_state(H)
            sub = None
        except DegenerateGround as exc:
            e, v, sub = exc.energy, exc.subspace[:, 0], exc.subspace
        exact_e, exact_v, exact_sub, H_cmp = e, v, sub, H
    elif exact is not None:
        exact_e, exact_v, exact_sub, H_cmp = exact.energy, exact.state, exact.degenerate_subspace, exact.hamiltonian
    fock_dim = None

    if exact is not None:
        values["energy_exact"] = exact.energy
        diag.update(n_max_used=exact.n_max_used, energy_convergence=exact.energy_convergence,
                    spectral_gap=exact.gap, degenerate=exact.degenerate)
        fock_dim = exact.hamiltonian.space.dim
    if ansatz is not None:
        values["energy_transformed"] = ansatz.energy_transformed
        diag.update(xi=ansatz.xi, root_residual=ansatz.root_residual,
                    energy_quadratic_approx=ansatz.energy_quadratic_approx,
                    xi_linear_approx=(xi1_linear_approx(params) if model == "single"
                                      else xi2_linear_approx(params)))
        if model == "two":
            es = ansatz.eigensystem
            beta = -es.nu[2] / es.B
            values["negativity_transformed"] = ent.negativity_closed_form(ansatz.xi, beta)
            diag.update(three_level_A=es.A, three_level_B=es.B, beta=beta,
                        negativity_perturbative=ent.negativity_perturbative(params))

    state_ok = exact is not None and not exact.degenerate
    if state_ok:
        if model == "single":
            values["entropy"] = ent.single_qubit_report(exact.state, fock_dim).entropy
        else:
            rep = ent.two_qubit_report(exact.state, fock_dim)
            values["entropy"] = rep.entropy
            values["negativity_exact"] = rep.negativity
    if exact is not None and ansatz is not None:
        values["energy_deviation"] = values["energy_transformed"] - values["energy_exact"]
        diag["energy_variational"] = rayleigh_quotient(H_cmp, ansatz.ansatz_state)
        diag["energy_exact_at_ansatz_cutoff"] = exact_e
        if exact_sub is None:
            values["fidelity"] = fidelity(ansatz.ansatz_state, exact_v)
        else:
            diag["fidelity_subspace"] = subspace_projection_norm(ansatz.ansatz_state, exact_sub)
        if model == "two" and values["negativity_exact"] is not None:
            values["negativity_deviation"] = values["negativity_exact"] - values["negativity_transformed"]

    needs_exact = ("energy_exact", "energy_deviation", "fidelity", "entropy",
                   "negativity_exact", "negativity_deviation")
    needs_root = ("energy_transformed", "energy_deviation", "fidelity",
                  "negativity_transformed", "negativity_deviation")
    needs_state = ("fidelity", "entropy", "negativity_exact", "negativity_deviation")
    for kind in SURFACES:
        if exact is None and kind in needs_exact:
            status[kind] = NO_CONVERGENCE
        elif ansatz is None and kind in needs_root:
            status[kind] = ROOT_FAILED
        elif exact is not None and exact.degenerate and kind in needs_state:
            status[kind] = DEGENERATE
        elif exact is not None and exact_sub is not None and kind == "fidelity":
            status[kind] = DEGENERATE
        if status[kind] != OK:
            values[kind] = None
    if model == "single":
        for kind in TWO_QUBIT_ONLY:
            values[kind] = None
    return {"values": values, "status": status, "diagnostics": diag}


def _evaluate_row(args):
    model, wb, c1, grid2, tol, n_cap = args
    return [evaluate_point(model, wb, c1, float(c2), tol, n_cap) for c2 in grid2]


def evaluate_grid(config, workers=1):
    """Row-major list of point results (``coupling1`` outer, ``coupling2`` inner)."""
    grid2 = [float(c) for c in config.grid2]
    tasks = [(config.model, float(config.w_b_over_w_a), float(c1), grid2, config.tol, config.n_cap)
             for c1 in config.grid1]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, tasks))
    else:
        rows = [_evaluate_row(t) for t in tasks]
    return [pt for row in rows for pt in row]


def _surface_summary(records):
    ok = [r for r in records if r.status == OK]
    counts = {}
    for r in records:
        counts[r.status] = counts.get(r.status, 0) + 1
    out = {"n_points": len(records), "n_ok": len(ok), "status_counts": dict(sorted(counts.items()))}
    if ok:
        lo = min(ok, key=lambda r: r.value)
        hi = max(ok, key=lambda r: r.value)
        out.update(min=lo.value, argmin=[lo.coupling1, lo.coupling2],
                   max=hi.value, argmax=[hi.coupling1, hi.coupling2])
    return out


def run_sweep(config, out_dir=None, workers=1):
    """Evaluate ``config`` and, if ``out_dir`` is given, write one CSV per
    surface plus ``summary.json``.

    Per-point failures are recorded as statuses; the sweep never aborts on
    them.
    """
    points = evaluate_grid(config, workers)
    pairs = [(float(c1), float(c2)) for c1 in config.grid1 for c2 in config.grid2]
    surfaces = {}
    for kind in config.outputs:
        surfaces[kind] = [
            SurfaceRecord(c1, c2, pt["values"][kind], pt["status"][kind])
            for (c1, c2), pt in zip(pairs, points)
        ]
    n_used = [pt["diagnostics"]["n_max_used"] for pt in points if "n_max_used" in pt["diagnostics"]]
    conv = [pt["diagnostics"]["energy_convergence"] for pt in points if "energy_convergence" in pt["diagnostics"]]
    summary = {
        "config": config_to_mapping(config),
        "surfaces": {k: _surface_summary(v) for k, v in surfaces.items()},
        "convergence": {
            "n_points": len(points),
            "n_converged": len(n_used),
            "max_n_max_used": max(n_used) if n_used else None,
            "min_n_max_used": min(n_used) if n_used else None,
            "max_energy_convergence": max(conv) if conv else None,
        },
    }
    result = SweepResult(config, surfaces, summary)
    if out_dir is not None:
        result.paths = write_outputs(result, out_dir)
    return result


def write_outputs(result, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for kind, records in result.surfaces.items():
        p = out / f"{kind}.csv"
        with p.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in records:
                w.writerow(r.csv_row())
        paths.append(p)
    p = out / "summary.json"
    p.write_text(json.dumps(result.summary, indent=2, sort_keys=True) + "\n")
    paths.append(p)
    return paths


def read_surface(path):
    """Parse a surface CSV back into :class:`SurfaceRecord` objects."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"unexpected header {rows[0]}")
    return [SurfaceRecord(float(a), float(b), float(v) if v else None, s) for a, b, v, s in rows[1:]]


# -- figure presets -------------------------------------------------------------------

DETUNINGS = (0.8, 1.0, 1.2)
PRESET_GRID = dict(coupling1_min=0.0, coupling1_max=1.5, coupling1_steps=61,
                   coupling2_min=0.0, coupling2_max=1.5, coupling2_steps=61)

_PRESETS = {
    "fig1": ("single", DETUNINGS, ("energy_exact", "energy_transformed", "energy_deviation")),
    "fig2": ("single", DETUNINGS, ("fidelity",)),
    "fig3": ("single", DETUNINGS, ("entropy",)),
    "fig4": ("two", DETUNINGS, ("energy_exact", "energy_transformed", "energy_deviation")),
    "fig5": ("two", DETUNINGS, ("fidelity",)),
    "fig6": ("two", DETUNINGS, ("negativity_exact", "negativity_transformed", "negativity_deviation")),
    "fig7": ("two", (1.0,), ("negativity_exact",)),
    "fig8": ("two", DETUNINGS, ("entropy",)),
}

PRESET_NAMES = tuple(_PRESETS)


def figure_preset(name):
    """Sweep configurations behind one figure, one per detuning."""
    try:
        model, ratios, outputs = _PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(_PRESETS)}") from None
    return [SweepConfig(model=model, w_b_over_w_a=r, outputs=outputs, **PRESET_GRID) for r in ratios]


def ratio_tag(ratio):
    return f"wb{ratio:g}"


def run_preset(name, out_dir, workers=1):
    """Run every detuning of a preset into ``out_dir/<name>/wb<ratio>/``."""
    results = []
    for cfg in figure_preset(name):
        results.append(run_sweep(cfg, Path(out_dir) / name / ratio_tag(cfg.w_b_over_w_a), workers))
    return results
