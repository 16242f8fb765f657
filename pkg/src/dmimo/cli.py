"""Command line front end.

Subcommands:
  caf        zero-Doppler cross-ambiguity slices for a waveform set
  analyze    analytic performance sweep from an experiment file
  simulate   analyze plus seeded Monte Carlo confirmation columns
  threshold  print one detection threshold

All outputs are CSV with a header row, '.' decimals, and line-feed
terminators; rows are ordered by sweep index, then system, then
detector, so output bytes depend only on the experiment file and seed.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .analysis import (
    DetectorKind,
    analyze_detector,
    noncentrality,
    threshold,
)
from .detectors import CompensationSet
from .experiments import (
    ExperimentError,
    ExperimentSpec,
    load_experiment,
    scenario_at,
    sweep_value_si,
)
from .montecarlo import TrialConfig, run_trials
from .scene import SyncErrors, colocated_scenario
from .waveforms import caf

__all__ = ["main"]

_ANALYZE_COLUMNS = [
    "sweep_variable", "sweep_value", "sweep_value_si", "system", "detector",
    "gamma", "lambda", "varsigma", "pfa_target", "pd_analytic", "error"]
_SIMULATE_COLUMNS = _ANALYZE_COLUMNS + [
    "pd_empirical", "ci_halfwidth", "trials", "seed"]
_CAF_COLUMNS = ["m", "mbar", "nu_over_tp", "nu_s", "f_hz", "re", "im", "abs"]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _open_out(path):
    if not path:
        raise SystemExit("error: --out must name a file")
    return open(path, "w", newline="")


def _write_rows(path, columns, rows):
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row.get(c)) for c in columns])


def _load(path) -> ExperimentSpec:
    try:
        return load_experiment(path)
    except (OSError, ExperimentError) as exc:
        raise SystemExit(f"error: {exc}")


def cmd_caf(args) -> int:
    spec = _load(args.experiment)
    pulses = spec.scenario.pulses
    tp = spec.pulse_s
    nus = np.linspace(-tp, tp, args.points)
    rows = []
    for m, pm in enumerate(pulses):
        for mb, pmb in enumerate(pulses):
            for nu in nus:
                val = caf(pm, pmb, float(nu), 0.0)
                rows.append({
                    "m": m + 1, "mbar": mb + 1,
                    "nu_over_tp": float(nu) / tp, "nu_s": float(nu),
                    "f_hz": 0.0, "re": val.real, "im": val.imag,
                    "abs": abs(val)})
    _write_rows(args.out, _CAF_COLUMNS, rows)
    return 0


def _sweep_systems(spec: ExperimentSpec):
    """(system name, scenario, errors, compensation or error text) per
    sweep point, in fixed output order."""
    for value in spec.sweep_values:
        try:
            sc = scenario_at(spec, float(value))
        except ValueError as exc:
            yield float(value), "distributed", None, None, str(exc)
            continue
        yield float(value), "distributed", sc, spec.errors, None
        if spec.colocated_benchmark:
            co = colocated_scenario(sc)
            yield (float(value), "colocated", co,
                   SyncErrors.zeros(co.m_tx, co.n_rx), None)


def _analytic_rows(spec: ExperimentSpec):
    for value, system, sc, err, bad in _sweep_systems(spec):
        base = {
            "sweep_variable": spec.sweep_variable, "sweep_value": value,
            "sweep_value_si": sweep_value_si(spec.sweep_variable, value,
                                            spec.pulse_s),
            "system": system, "pfa_target": spec.pfa_target}
        if bad is not None:
            for det in spec.detectors:
                yield dict(base, detector=det.value, error=bad), None, None
            continue
        comp = CompensationSet.from_scenario(sc, err)
        for det in spec.detectors:
            row = dict(base, detector=det.value)
            try:
                pt = analyze_detector(det, sc, err, comp, spec.pfa_target)
            except ValueError as exc:
                yield dict(row, error=str(exc)), None, None
                continue
            row.update(gamma=pt.gamma, pd_analytic=float(pt.pd),
                       varsigma=pt.varsigma)
            row["lambda"] = pt.lam
            yield row, sc, (err, comp, pt)
    return


def cmd_analyze(args) -> int:
    spec = _load(args.experiment)
    rows = [row for row, _, _ in _analytic_rows(spec)]
    _write_rows(args.out, _ANALYZE_COLUMNS, rows)
    return 0


def cmd_simulate(args) -> int:
    spec = _load(args.experiment)
    trials = args.trials if args.trials is not None else spec.trials
    seed = args.seed if args.seed is not None else spec.seed
    rows = []
    gate_failed = False
    point = 0
    for row, sc, extra in _analytic_rows(spec):
        point += 1
        row = dict(row, trials=trials, seed=seed)
        if extra is None:
            rows.append(row)
            continue
        err, comp, pt = extra
        cfg = TrialConfig(trials=trials, seed=seed + point, hypothesis="H1",
                          target_draw=sc.target)
        det = DetectorKind(row["detector"])
        res = run_trials(sc, err, comp, [det], {det: pt.gamma}, cfg)[det]
        row.update(pd_empirical=float(res.p_hat),
                   ci_halfwidth=res.ci_halfwidth)
        half = max(res.ci_halfwidth, 3.0 / trials)
        if abs(res.p_hat - pt.pd) > half:
            gate_failed = True
        rows.append(row)
    _write_rows(args.out, _SIMULATE_COLUMNS, rows)
    if gate_failed:
        print("warning: empirical results deviate from analysis beyond "
              "the confidence gate", file=sys.stderr)
        return 1
    return 0


def cmd_threshold(args) -> int:
    det = DetectorKind(args.detector)
    try:
        gamma = threshold(det, args.pfa, args.k_pulses, args.m_tx,
                          args.n_rx, args.sigma2, args.varsigma)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    print(_fmt(gamma))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmimo",
        description="Distributed MIMO radar detection analysis and "
                    "simulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("caf", help="export zero-Doppler ambiguity slices")
    p.add_argument("--experiment", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--points", type=int, default=401)
    p.set_defaults(func=cmd_caf)

    p = sub.add_parser("analyze", help="run the analytic sweep")
    p.add_argument("--experiment", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate",
                       help="run the sweep with Monte Carlo confirmation")
    p.add_argument("--experiment", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("threshold", help="print one detection threshold")
    p.add_argument("--detector", required=True,
                   choices=[d.value for d in DetectorKind])
    p.add_argument("--pfa", type=float, required=True)
    p.add_argument("--k-pulses", type=int, required=True)
    p.add_argument("--m-tx", type=int, required=True)
    p.add_argument("--n-rx", type=int, required=True)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--varsigma", type=float, default=None)
    p.set_defaults(func=cmd_threshold)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
