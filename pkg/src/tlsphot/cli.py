"""Batch front-end: named experiments, CSV emission, convergence reporting.

Every run writes one CSV table, a manifest that echoes the resolved
configuration, a convergence report comparing each headline scalar at the
base grid and at doubled resolution, and a minimal plot script.  Outputs are
deterministic: identical configuration yields byte-identical files.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .circuits import (
    LOGICAL_BASIS,
    bell_analyzer,
    bell_state,
    cz_gate,
    identify_bell_state,
    logical_state,
    make_pump,
    matching_residual,
    ns_gate,
    photon_sorter,
)
from .grid import PulseShape, SpectralGrid, make_pulse, product_state
from .modeops import leakage_metric, sum_rail
from .roots import NoCrossingError
from .scatter import (
    TlsParams,
    epsilon1_analytic,
    eta_analytic,
    eta_numeric,
    matching_sigma,
    scatter_two,
)
from .states import FewPhotonState, fidelity, project_detection
from .sweeps import SweepSpec, fig1b_data, fig3_data, loss_curves

EXPERIMENTS = ("fig1b", "loss-curves", "fig3", "matching-points",
               "sorter-demo", "bell-demo", "ns-demo", "cz-demo")

DEFAULTS = {
    "grid": {"n_points": "auto", "delta_max": "auto"},
    "tls": {"beta": "1.0", "gamma_wg": "1.0"},
    "sweep": {"beta_values": "1.0, 0.95, 0.90", "sigma_min": "0.02",
              "sigma_max": "5.0", "sigma_count": "120"},
    "run": {"branch": "upper", "sigma": "auto"},
    "convergence": {"tolerance": "1e-3"},
}

_DEMO_N_POINTS = 1201
_DEMO_DELTA_MAX = 60.0


class ConfigError(ValueError):
    pass


def _parse_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"parse error in {path}: {exc}") from exc
    return {section: dict(parser[section]) for section in parser.sections()}


def load_config(path: str | None, overrides: dict | None = None) -> dict:
    """Resolve DEFAULTS <- config file <- command-line overrides."""
    cfg = {sec: dict(vals) for sec, vals in DEFAULTS.items()}
    if path is not None:
        for sec, vals in _parse_file(path).items():
            if sec not in cfg:
                raise ConfigError(f"unknown config section [{sec}]")
            for key, val in vals.items():
                if key not in cfg[sec]:
                    raise ConfigError(f"unknown key {key!r} in section [{sec}]")
                cfg[sec][key] = val
    for dotted, val in (overrides or {}).items():
        sec, key = dotted.split(".")
        cfg[sec][key] = str(val)
    return cfg


def validate_config(path: str) -> list:
    """Diagnostics for a config file: unknown keys, ranges, grid resolution."""
    diagnostics = []
    try:
        file_cfg = _parse_file(path)
    except ConfigError as exc:
        return [str(exc)]
    for sec, vals in file_cfg.items():
        if sec not in DEFAULTS:
            diagnostics.append(f"unknown section [{sec}]")
            continue
        for key in vals:
            if key not in DEFAULTS[sec]:
                diagnostics.append(f"unknown key {key!r} in section [{sec}]")
    try:
        cfg = load_config(path)
    except ConfigError:
        return diagnostics
    checks = [
        ("tls", "beta", lambda v: 0.0 < v <= 1.0, "must be in (0, 1]"),
        ("tls", "gamma_wg", lambda v: v > 0.0, "must be positive"),
        ("sweep", "sigma_min", lambda v: v > 0.0, "must be positive"),
        ("sweep", "sigma_max", lambda v: v > 0.0, "must be positive"),
        ("sweep", "sigma_count", lambda v: v >= 2, "must be at least 2"),
        ("convergence", "tolerance", lambda v: v > 0.0, "must be positive"),
    ]
    for sec, key, ok, msg in checks:
        raw = cfg[sec][key]
        try:
            val = float(raw)
        except ValueError:
            diagnostics.append(f"{sec}.{key}: not a number: {raw!r}")
            continue
        if not ok(val):
            diagnostics.append(f"{sec}.{key} = {raw}: {msg}")
    if cfg["run"]["branch"] not in ("upper", "lower"):
        diagnostics.append(f"run.branch must be upper or lower, "
                           f"got {cfg['run']['branch']!r}")
    sigma = cfg["run"]["sigma"]
    n_raw, dmax_raw = cfg["grid"]["n_points"], cfg["grid"]["delta_max"]
    if n_raw != "auto":
        n = int(n_raw)
        if n < 3 or n % 2 == 0:
            diagnostics.append(f"grid.n_points must be odd and >= 3, got {n}")
        elif sigma != "auto" and dmax_raw != "auto":
            h = 2.0 * float(dmax_raw) / (n - 1)
            if h > float(sigma) / 10.0:
                diagnostics.append(
                    f"grid resolution: spacing {h:.4g} exceeds sigma/10 "
                    f"= {float(sigma) / 10.0:.4g}"
                )
    return diagnostics


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: Path, columns: list, rows: list) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")


_PLOT_TEMPLATE = """\
#!/usr/bin/env python3
\"\"\"Regenerate the {experiment} figure from {csv_name} (needs matplotlib).\"\"\"
import csv
import matplotlib.pyplot as plt

with open("{csv_name}") as fh:
    rows = list(csv.DictReader(fh))

x = [float(r["{x}"]) for r in rows]
for column in {y_cols}:
    plt.plot(x, [float(r[column]) for r in rows], label=column)
plt.xlabel("{x}")
plt.legend()
plt.savefig("{experiment}.png", dpi=150)
"""


def _demo_grid(cfg: dict) -> SpectralGrid:
    n = cfg["grid"]["n_points"]
    dmax = cfg["grid"]["delta_max"]
    return SpectralGrid(
        float(dmax) if dmax != "auto" else _DEMO_DELTA_MAX,
        int(n) if n != "auto" else _DEMO_N_POINTS,
    )


def _sweep_spec(cfg: dict) -> SweepSpec:
    n = cfg["grid"]["n_points"]
    return SweepSpec(
        beta_values=tuple(float(b) for b in
                          cfg["sweep"]["beta_values"].split(",")),
        sigma_range=(float(cfg["sweep"]["sigma_min"]),
                     float(cfg["sweep"]["sigma_max"])),
        sigma_count=int(float(cfg["sweep"]["sigma_count"])),
        n_points=None if n == "auto" else int(n),
    )


def _operating_pulse(cfg: dict, grid: SpectralGrid):
    p = TlsParams(gamma_wg=float(cfg["tls"]["gamma_wg"]))
    beta = float(cfg["tls"]["beta"])
    p = TlsParams.from_beta(beta, gamma_wg=p.gamma_wg)
    sigma_cfg = cfg["run"]["sigma"]
    if sigma_cfg != "auto":
        sigma = float(sigma_cfg)
    else:
        sigma = matching_sigma(p, branch=cfg["run"]["branch"])
    pulse = make_pulse(PulseShape("lorentzian", sigma), grid)
    return p, sigma, pulse


# -- experiment table builders --------------------------------------------
# Each builder returns (columns, rows, headlines); headlines maps a scalar
# name to a callable taking a refinement factor (1 = base grid, 2 = doubled).


def _build_fig1b(cfg):
    spec = _sweep_spec(cfg)
    rows = fig1b_data(spec)
    columns = ["beta", "sigma_over_gamma", "eta", "half_eps1_sq",
               "is_crossing"]
    beta0 = spec.beta_values[0]

    def headline(refine):
        p = TlsParams.from_beta(beta0)
        if p.gamma_loss == 0.0:
            return eta_analytic(0.5, p.gamma_wg)
        grid = SpectralGrid.for_pulse_width(0.5, n_points=spec.n_points)
        if refine > 1:
            grid = grid.refine(refine)
        f = make_pulse(PulseShape("lorentzian", 0.5), grid)
        return eta_numeric(p, f)

    return columns, rows, {"eta_sigma_half": headline}


def _build_loss_curves(cfg):
    spec = _sweep_spec(cfg)
    rows = loss_curves(spec, branch=cfg["run"]["branch"])
    columns = ["beta", "sigma", "two_photon_loss", "two_singles_loss",
               "matched"]
    betas = [r["beta"] for r in rows if r["matched"]]
    beta_ref = min(betas) if betas else 1.0

    def headline(refine):
        p = TlsParams.from_beta(beta_ref)
        n = spec.n_points
        if refine > 1:
            base = SpectralGrid.for_pulse_width(1.0, n_points=n)
            n = base.refine(refine).n_points
        sigma = matching_sigma(p, branch=cfg["run"]["branch"], n_points=n)
        return 1.0 - epsilon1_analytic(p, sigma) ** 2

    return columns, rows, {"two_singles_loss": headline}


def _build_fig3(cfg):
    spec = _sweep_spec(cfg)
    rows = fig3_data(spec, branch=cfg["run"]["branch"])
    columns = ["beta", "bell_success", "cz_success", "matched"]
    betas = [r["beta"] for r in rows if r["matched"]]
    beta_ref = min(betas) if betas else 1.0

    def headline(refine):
        p = TlsParams.from_beta(beta_ref)
        n = spec.n_points
        if refine > 1:
            base = SpectralGrid.for_pulse_width(1.0, n_points=n)
            n = base.refine(refine).n_points
        sigma = matching_sigma(p, branch=cfg["run"]["branch"], n_points=n)
        return epsilon1_analytic(p, sigma) ** 4

    return columns, rows, {"cz_success": headline}


def _build_matching_points(cfg):
    p = TlsParams.from_beta(float(cfg["tls"]["beta"]),
                            gamma_wg=float(cfg["tls"]["gamma_wg"]))
    n = cfg["grid"]["n_points"]
    n_points = None if n == "auto" else int(n)
    rows = []
    for branch in ("lower", "upper"):
        try:
            sigma = matching_sigma(p, branch=branch, n_points=n_points)
        except NoCrossingError:
            rows.append({"branch": branch, "sigma": float("nan"),
                         "eta_at_sigma": float("nan"),
                         "residual": float("nan"), "matched": False})
            continue
        if p.gamma_loss == 0.0:
            eta = eta_analytic(sigma, p.gamma_wg)
        else:
            grid = SpectralGrid.for_pulse_width(sigma, p.gamma_wg,
                                                n_points=n_points)
            eta = eta_numeric(p, make_pulse(
                PulseShape("lorentzian", sigma), grid))
        rows.append({
            "branch": branch,
            "sigma": sigma,
            "eta_at_sigma": eta,
            "residual": eta - 0.5 * epsilon1_analytic(p, sigma) ** 2,
            "matched": True,
        })
    columns = ["branch", "sigma", "eta_at_sigma", "residual", "matched"]

    def headline(refine):
        n_ref = n_points
        if refine > 1:
            base = SpectralGrid.for_pulse_width(1.0, n_points=n_points)
            n_ref = base.refine(refine).n_points
        return matching_sigma(p, branch="upper", n_points=n_ref)

    return columns, rows, {"sigma_upper": headline}


def _sorter_rows(cfg, grid):
    p, sigma, pulse = _operating_pulse(cfg, grid)
    alpha = xi = 1.0 / np.sqrt(2.0)
    state = FewPhotonState.vacuum(grid, ("sig",))
    state.vacuum_amp = 0.0j
    state.one_photon["sig"] = alpha * pulse.values
    state.two_photon[("sig", "sig")] = xi * np.outer(pulse.values,
                                                     pulse.values)
    out = photon_sorter(state, "sig", p, pulse)
    anc = sum_rail("sig")
    pump = make_pump(p, pulse)
    pair_out = scatter_two(p, product_state(pulse))
    rows = [
        {"quantity": "beta", "value": p.beta_dir},
        {"quantity": "sigma", "value": sigma},
        {"quantity": "input_one_photon_weight", "value": alpha**2},
        {"quantity": "input_two_photon_weight", "value": xi**2},
        {"quantity": "ancilla_one_photon_weight",
         "value": project_detection(out, {anc: 1})},
        {"quantity": "signal_two_photon_weight",
         "value": project_detection(out, {"sig": 2})},
        {"quantity": "lost_mass", "value": out.lost_mass},
        {"quantity": "matching_residual", "value": matching_residual(p, pulse)},
        {"quantity": "pulse_gate_leakage_norm",
         "value": leakage_metric(pump, pair_out)},
    ]
    return rows, out


def _build_sorter_demo(cfg):
    grid = _demo_grid(cfg)
    rows, _ = _sorter_rows(cfg, grid)

    def headline(refine):
        g = grid if refine == 1 else grid.refine(refine)
        demo_rows, _ = _sorter_rows(cfg, g)
        return next(r["value"] for r in demo_rows
                    if r["quantity"] == "ancilla_one_photon_weight")

    return ["quantity", "value"], rows, {"ancilla_one_photon_weight": headline}


def _bell_rows(cfg, grid):
    p, _, pulse = _operating_pulse(cfg, grid)
    rows = []
    success = {}
    for which in ("psi+", "psi-", "phi+", "phi-"):
        report = bell_analyzer(bell_state(grid, pulse, which), p, pulse)
        success[which] = report.success_prob
        for pattern, prob in sorted(report.pattern_probs.items()):
            if prob < 1e-12:
                continue
            rows.append({
                "input_state": which,
                "pattern": "+".join(str(d) for d in pattern),
                "probability": prob,
                "identifies": identify_bell_state(pattern) or "none",
            })
        rows.append({"input_state": which, "pattern": "total_conclusive",
                     "probability": report.success_prob,
                     "identifies": which})
        rows.append({"input_state": which, "pattern": "heralded_failure",
                     "probability": report.lost_mass, "identifies": "none"})
    return rows, success


def _build_bell_demo(cfg):
    grid = _demo_grid(cfg)
    rows, success = _bell_rows(cfg, grid)

    def headline(refine):
        g = grid if refine == 1 else grid.refine(refine)
        _, s = _bell_rows(cfg, g)
        return s["psi+"]

    return (["input_state", "pattern", "probability", "identifies"], rows,
            {"psi_plus_success": headline})


def _ns_rows(cfg, grid):
    p, sigma, pulse = _operating_pulse(cfg, grid)
    amp = 1.0 / np.sqrt(3.0)
    state = FewPhotonState.vacuum(grid, ("sig",))
    state.vacuum_amp = amp
    state.one_photon["sig"] = amp * pulse.values
    state.two_photon[("sig", "sig")] = amp * np.outer(pulse.values,
                                                      pulse.values)
    out = ns_gate(state, "sig", p, pulse)
    target = FewPhotonState.vacuum(grid, ("sig",))
    target.vacuum_amp = amp
    target.one_photon["sig"] = amp * pulse.values
    target.two_photon[("sig", "sig")] = -amp * np.outer(pulse.values,
                                                        pulse.values)
    fid = fidelity(out, target)
    rows = [
        {"quantity": "beta", "value": p.beta_dir},
        {"quantity": "sigma", "value": sigma},
        {"quantity": "fidelity_to_sign_flipped_input", "value": fid},
        {"quantity": "surviving_probability",
         "value": out.surviving_norm_sq()},
        {"quantity": "lost_mass", "value": out.lost_mass},
        {"quantity": "total_probability", "value": out.total_probability()},
    ]
    return rows, fid


def _build_ns_demo(cfg):
    grid = _demo_grid(cfg)
    rows, _ = _ns_rows(cfg, grid)

    def headline(refine):
        g = grid if refine == 1 else grid.refine(refine)
        _, fid = _ns_rows(cfg, g)
        return fid

    return ["quantity", "value"], rows, {"ns_fidelity": headline}


def _cz_rows(cfg, grid):
    p, sigma, pulse = _operating_pulse(cfg, grid)
    rows = []
    fid_super = float("nan")
    cases = [((0, 0), "basis_00"), ((0, 1), "basis_01"),
             ((1, 0), "basis_10"), ((1, 1), "basis_11"),
             (None, "superposition")]
    for basis, name in cases:
        if basis is None:
            amps_in = {b: 0.5 for b in LOGICAL_BASIS}
        else:
            amps_in = {basis: 1.0}
        report = cz_gate(logical_state(grid, pulse, amps_in), p, pulse)
        row = {"input": name,
               "success_prob": report.success_prob,
               "fidelity": report.fidelity_to_target,
               "lost_mass": report.lost_mass}
        for b in LOGICAL_BASIS:
            a = report.logical_amplitudes[b]
            row[f"amp_{b[0]}{b[1]}_re"] = a.real
            row[f"amp_{b[0]}{b[1]}_im"] = a.imag
        rows.append(row)
        if basis is None:
            fid_super = report.fidelity_to_target
    return rows, fid_super


def _build_cz_demo(cfg):
    grid = _demo_grid(cfg)
    rows, _ = _cz_rows(cfg, grid)
    columns = (["input", "success_prob", "fidelity", "lost_mass"]
               + [f"amp_{b[0]}{b[1]}_{part}" for b in LOGICAL_BASIS
                  for part in ("re", "im")])

    def headline(refine):
        g = grid if refine == 1 else grid.refine(refine)
        _, fid = _cz_rows(cfg, g)
        return fid

    return columns, rows, {"cz_superposition_fidelity": headline}


_BUILDERS = {
    "fig1b": _build_fig1b,
    "loss-curves": _build_loss_curves,
    "fig3": _build_fig3,
    "matching-points": _build_matching_points,
    "sorter-demo": _build_sorter_demo,
    "bell-demo": _build_bell_demo,
    "ns-demo": _build_ns_demo,
    "cz-demo": _build_cz_demo,
}


def run(experiment: str, cfg: dict, out_dir: str) -> int:
    """Execute one experiment; write CSV, manifest, convergence report."""
    if experiment not in _BUILDERS:
        print(f"unknown experiment {experiment!r}; choose from "
              f"{', '.join(EXPERIMENTS)}", file=sys.stderr)
        return 2
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"output directory not writable: {exc}", file=sys.stderr)
        return 1

    columns, rows, headlines = _BUILDERS[experiment](cfg)
    stem = experiment.replace("-", "_")
    try:
        write_csv(out / f"{stem}.csv", columns, rows)
    except OSError as exc:
        print(f"failed to write CSV: {exc}", file=sys.stderr)
        return 1

    tolerance = float(cfg["convergence"]["tolerance"])
    conv_rows = []
    converged = True
    for name, fn in headlines.items():
        base, refined = fn(1), fn(2)
        drift = abs(refined - base)
        ok = drift <= tolerance
        converged &= ok
        conv_rows.append({"scalar": name, "base_value": base,
                          "refined_value": refined, "drift": drift,
                          "tolerance": tolerance, "converged": ok})
    write_csv(out / "convergence.csv",
              ["scalar", "base_value", "refined_value", "drift", "tolerance",
               "converged"], conv_rows)

    manifest = {
        "experiment": experiment,
        "version": __version__,
        "config": cfg,
        "columns": columns,
        "convergence_tolerance": tolerance,
        "outputs": [f"{stem}.csv", "convergence.csv", f"plot_{stem}.py"],
    }
    with open(out / "manifest.json", "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    numeric = [c for c in columns[1:]
               if rows and isinstance(rows[0][c], (int, float, np.floating))
               and not isinstance(rows[0][c], bool)]
    plot = _PLOT_TEMPLATE.format(experiment=stem, csv_name=f"{stem}.csv",
                                 x=columns[0], y_cols=numeric[:4])
    (out / f"plot_{stem}.py").write_text(plot)

    if not converged:
        print("convergence failure; see convergence.csv", file=sys.stderr)
        return 3
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tlsphot",
        description="Two-level-scatterer photonics experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run a named experiment")
    runp.add_argument("experiment")
    runp.add_argument("--config", default=None)
    runp.add_argument("--out", default=".")
    runp.add_argument("--beta", type=float, default=None)
    runp.add_argument("--sigma", type=float, default=None)
    runp.add_argument("--grid-n", type=int, default=None)
    runp.add_argument("--grid-max", type=float, default=None)
    valp = sub.add_parser("validate", help="check a config file")
    valp.add_argument("--config", required=True)

    args = parser.parse_args(argv)
    if args.command == "validate":
        diagnostics = validate_config(args.config)
        for line in diagnostics:
            print(line)
        return 0 if not diagnostics else 2

    overrides = {}
    if args.beta is not None:
        overrides["tls.beta"] = args.beta
    if args.sigma is not None:
        overrides["run.sigma"] = args.sigma
    if args.grid_n is not None:
        overrides["grid.n_points"] = args.grid_n
    if args.grid_max is not None:
        overrides["grid.delta_max"] = args.grid_max
    try:
        cfg = load_config(args.config, overrides)
    except (ConfigError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    return run(args.experiment, cfg, args.out)


if __name__ == "__main__":
    sys.exit(main())
