"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 completed with at least one
point whose status is not ``ok``.
"""
import argparse
import json
import logging
import sys

from .errors import ConfigInvalid, NoConvergence, UnknownPreset
from .exact import DEFAULT_N_CAP, DEFAULT_N_START, DEFAULT_N_STEP, DEFAULT_TOL, converged_ground_state
from .sweep import (
    OK, PRESET_NAMES, _make_params, evaluate_point, figure_preset, load_config,
    ratio_tag, run_sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NOT_OK = 3


def _add_point_args(p):
    p.add_argument("--model", choices=("single", "two"), required=True)
    p.add_argument("--wb", type=float, default=1.0, help="w_b / w_a")
    p.add_argument("--c1", type=float, required=True, help="corotating coupling / w_a")
    p.add_argument("--c2", type=float, required=True, help="counterrotating coupling / w_a")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--n-cap", type=int, default=DEFAULT_N_CAP)


def build_parser():
    parser = argparse.ArgumentParser(prog="asymrabi", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("config")
    p.add_argument("--out", default=None, help="output directory (default: <config stem>_out)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("preset", help="run the sweeps behind one figure")
    p.add_argument("name", help=", ".join(PRESET_NAMES))
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("point", help="print all diagnostics at one parameter point")
    _add_point_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("convergence", help="print the Fock-cutoff convergence log")
    _add_point_args(p)
    p.add_argument("--n-start", type=int, default=DEFAULT_N_START)
    p.add_argument("--n-step", type=int, default=DEFAULT_N_STEP)
    return parser


def _cmd_sweep(args):
    from pathlib import Path

    cfg = load_config(args.config)
    out = args.out or f"{Path(args.config).stem}_out"
    res = run_sweep(cfg, out, workers=args.jobs)
    for p in res.paths:
        print(p)
    return EXIT_OK if res.all_ok else EXIT_NOT_OK


def _cmd_preset(args):
    from pathlib import Path

    configs = figure_preset(args.name)
    all_ok = True
    for cfg in configs:
        res = run_sweep(cfg, Path(args.out) / args.name / ratio_tag(cfg.w_b_over_w_a), workers=args.jobs)
        all_ok &= res.all_ok
        for p in res.paths:
            print(p)
    return EXIT_OK if all_ok else EXIT_NOT_OK


def _cmd_point(args):
    try:
        _make_params(args.model, args.wb, args.c1, args.c2)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    pt = evaluate_point(args.model, args.wb, args.c1, args.c2, args.tol, args.n_cap)
    kinds = [k for k in pt["values"] if not (args.model == "single" and k.startswith("negativity"))]
    if args.json:
        payload = {"values": {k: pt["values"][k] for k in kinds},
                   "status": {k: pt["status"][k] for k in kinds},
                   "diagnostics": pt["diagnostics"]}
        print(json.dumps(payload, indent=2, sort_keys=True, default=float))
    else:
        for k in kinds:
            v = pt["values"][k]
            print(f"{k:24s} {'' if v is None else format(v, '.12g'):>20s}  {pt['status'][k]}")
        for k, v in sorted(pt["diagnostics"].items()):
            print(f"{k:24s} {format(v, '.12g') if isinstance(v, float) else str(v):>20s}")
    return EXIT_OK if all(pt["status"][k] == OK for k in kinds) else EXIT_NOT_OK


def _cmd_convergence(args):
    try:
        params = _make_params(args.model, args.wb, args.c1, args.c2)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    frame = "original" if args.model == "single" else "rotated"
    try:
        sol = converged_ground_state(params, tol=args.tol, n_start=args.n_start, n_step=args.n_step,
                                     n_cap=args.n_cap, frame=frame, allow_degenerate=True)
    except NoConvergence as exc:
        print(f"no convergence: {exc}")
        return EXIT_NOT_OK
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    print(f"{'n_max':>6s} {'energy':>22s} {'change':>12s}")
    prev = None
    for n, e in sol.history:
        change = "" if prev is None else format(abs(e - prev), ".3e")
        print(f"{n:6d} {e:22.15f} {change:>12s}")
        prev = e
    print(f"converged at n_max={sol.n_max_used} (change {sol.energy_convergence:.3e} < {args.tol:g}),"
          f" gap {sol.gap:.3e}{' DEGENERATE' if sol.degenerate else ''}")
    return EXIT_NOT_OK if sol.degenerate else EXIT_OK


_COMMANDS = {
    "sweep": _cmd_sweep,
    "preset": _cmd_preset,
    "point": _cmd_point,
    "convergence": _cmd_convergence,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ConfigInvalid, UnknownPreset) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
