"""
Command-line front end: runs simulator sweeps and writes CSV + manifest.

Subcommands
-----------
spectrum     sampled spectra per measurement case (one CSV each)
noise-sweep  3-sigma readout noise vs photon number per bin
map          SNR enhancement over an (r, alpha) grid
linewidth    enhancement vs r for a set of input-linewidth ratios
dynrange     pair-scheme noise against dynamic range vs r

Configuration precedence: command-line flags > JSON config file (--config)
> built-in defaults.  All CSV numbers use 9 significant digits so reruns
with identical parameters are byte-identical; a JSON manifest describing
the resolved parameters and outputs is written next to every run's CSVs.
The default output directory is $WGMSIM_OUT_DIR, else ./wgmsim_runs.

Exit codes: 0 success, 2 invalid arguments or config, 3 runtime failure
(flat spectrum, unresolvable grid).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .noise import (
    NoiseRunConfig,
    dynamic_range_exclusion,
    simulate_case,
    sweep_coupling_map,
    sweep_linewidth,
    sweep_photon_number,
)
from .resonator import ResonatorConfig
from .spectra import (
    FlatSpectrumError,
    GridResolutionError,
    MeasurementCase,
    convolve_gaussian,
    find_operating_point,
    sample_spectrum,
)

_COMMON_DEFAULTS = {
    "alpha": 0.9997,
    "r": 0.9996,
    "radius_um": 40.0,
    "ref_index": 1.45,
    "lambda0_nm": 780.0,
    "n_photons": 380.0,
    "n_steps": 1000,
    "jitter_fm": 1.0,
    "width_ratio": 0.0,
    "seed": 12345,
    "out_dir": None,
    "grid_points": 4001,
    "grid_span_gamma": 5.0,
}

_COMMAND_DEFAULTS = {
    "spectrum": {"case": "all"},
    "noise-sweep": {
        "n_values": "1e2,3e2,1e3,3e3,1e4,3e4,1e5,3e5,1e6,3e6,1e7",
        "include_single": True,
    },
    "map": {
        "map_cells": 20,
        "r_min": 0.999,
        "r_max": 0.9999,
        "alpha_min": 0.999,
        "alpha_max": 0.9999,
    },
    "linewidth": {
        "ratios": "0.1,0.2,0.3,0.5,1.0",
        "r_min": 0.999,
        "r_max": 0.99969,
        "r_points": 24,
    },
    "dynrange": {
        "fractions": "0.2,0.4,0.6,0.8",
        "r_min": 0.999,
        "r_max": 0.99969,
        "r_points": 24,
    },
}

_CASE_FLAGS = {
    "classical": MeasurementCase.CLASSICAL_WGM,
    "mzi": MeasurementCase.CLASSICAL_WGM_MZI,
    "entangled": MeasurementCase.ENTANGLED_WGM_MZI,
    "single": MeasurementCase.CLASSICAL_WGM_MZI_SINGLE,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgmsim",
        description="WGM sensing simulator: classical and photon-pair readout",
    )
    parser.add_argument("--version", action="version", version=f"wgmsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=str, help="JSON config file (flags override it)")
        p.add_argument("--alpha", type=float, help="round-trip amplitude transmission")
        p.add_argument("--r", type=float, help="coupler through-coefficient")
        p.add_argument("--radius-um", type=float, help="resonator radius [um]")
        p.add_argument("--ref-index", type=float, help="mode refractive index")
        p.add_argument("--lambda0-nm", type=float, help="resonance wavelength [nm]")
        p.add_argument("--n-photons", type=float, help="mean photons per time bin")
        p.add_argument("--n-steps", type=int, help="Monte Carlo time bins (>= 100)")
        p.add_argument("--jitter-fm", type=float, help="1-sigma resonance jitter [fm]")
        p.add_argument("--width-ratio", type=float, help="input linewidth / WGM linewidth")
        p.add_argument("--seed", type=int, help="RNG seed")
        p.add_argument("--out-dir", type=str, help="output directory")
        p.add_argument("--grid-points", type=int, help="detuning grid points")
        p.add_argument("--grid-span-gamma", type=float, help="grid half-span [linewidths]")

    p = sub.add_parser("spectrum", help="write sampled spectra per case")
    add_common(p)
    p.add_argument("--case", choices=[*_CASE_FLAGS, "all"], help="which case(s) to sample")

    p = sub.add_parser("noise-sweep", help="noise vs photon number per bin")
    add_common(p)
    p.add_argument("--n-values", type=str, help="comma list of photon numbers")
    p.add_argument(
        "--include-single",
        action="store_const",
        const=True,
        help="also sweep the single-output MZI variant",
    )

    p = sub.add_parser("map", help="SNR enhancement over an (r, alpha) grid")
    add_common(p)
    p.add_argument("--map-cells", type=int, help="cells per axis")
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)

    p = sub.add_parser("linewidth", help="enhancement vs r per input width ratio")
    add_common(p)
    p.add_argument("--ratios", type=str, help="comma list of width ratios")
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--r-points", type=int)

    p = sub.add_parser("dynrange", help="pair-scheme noise vs dynamic range")
    add_common(p)
    p.add_argument("--fractions", type=str, help="comma list of dynamic-range fractions")
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--r-points", type=int)

    return parser


def _resolve_params(args: argparse.Namespace) -> dict:
    """Merge defaults, config file, and explicit flags (in that order)."""
    params = dict(_COMMON_DEFAULTS)
    params.update(_COMMAND_DEFAULTS[args.command])
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(params)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        params.update(loaded)
    for key in params:
        flag = getattr(args, key, None)
        if flag is not None:
            params[key] = flag
    return params


def _float_list(text: str, name: str) -> list[float]:
    try:
        values = [float(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"{name} must be a comma-separated number list") from exc
    if not values:
        raise ValueError(f"{name} must not be empty")
    return values


def _make_cfg(params: dict) -> ResonatorConfig:
    return ResonatorConfig(
        r=params["r"],
        alpha=params["alpha"],
        radius=params["radius_um"] * 1e-6,
        ref_index=params["ref_index"],
        lambda0=params["lambda0_nm"] * 1e-9,
    )


def _make_run(params: dict) -> NoiseRunConfig:
    return NoiseRunConfig(
        photons_per_bin=params["n_photons"],
        n_steps=params["n_steps"],
        jitter_sigma_fm=params["jitter_fm"],
        seed=params["seed"],
        width_ratio=params["width_ratio"],
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return "%.9g" % value
    return str(value)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _out_dir(params: dict) -> Path:
    out = params["out_dir"] or os.environ.get("WGMSIM_OUT_DIR") or "wgmsim_runs"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_manifest(
    out: Path, command: str, params: dict, outputs: list[Path], started: float
) -> Path:
    manifest = {
        "command": command,
        "parameters": params,
        "seed": params["seed"],
        "version": __version__,
        "outputs": [p.name for p in outputs],
        "duration_s": round(time.monotonic() - started, 6),
    }
    path = out / f"manifest_{command.replace('-', '_')}.json"
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _cmd_spectrum(params: dict) -> list[Path]:
    cfg = _make_cfg(params)
    picked = (
        list(_CASE_FLAGS.values())
        if params["case"] == "all"
        else [_CASE_FLAGS[params["case"]]]
    )
    out = _out_dir(params)
    written = []
    for case in picked:
        spec = sample_spectrum(
            cfg, case, span=params["grid_span_gamma"], points=params["grid_points"]
        )
        spec = convolve_gaussian(spec, params["width_ratio"])
        op = find_operating_point(spec)
        name = (
            f"spectrum_{case.label}_r{_fmt(cfg.r)}_a{_fmt(cfg.alpha)}"
            f"_w{_fmt(params['width_ratio'])}.csv"
        )
        path = out / name
        _write_csv(
            path,
            ["detuning_gamma", "value"],
            zip(spec.detunings.tolist(), spec.values.tolist()),
        )
        print(
            f"{case.label}: operating detuning {op.detuning:+.6g} gamma, "
            f"gradient {op.gradient:.6g}/gamma, dynamic range {op.dynamic_range:.6g} gamma"
        )
        written.append(path)
    return written


def _cmd_noise_sweep(params: dict) -> list[Path]:
    from .spectra import MAIN_CASES

    cfg = _make_cfg(params)
    run = _make_run(params)
    n_values = _float_list(params["n_values"], "n_values")
    cases = list(MAIN_CASES)
    if params["include_single"]:
        cases.append(MeasurementCase.CLASSICAL_WGM_MZI_SINGLE)
    results = sweep_photon_number(
        cfg,
        run,
        n_values,
        cases=cases,
        span=params["grid_span_gamma"],
        points=params["grid_points"],
    )
    out = _out_dir(params)
    path = out / "photon_sweep.csv"
    rows = []
    for k, n in enumerate(n_values):
        for j, case in enumerate(cases):
            res = results[k * len(cases) + j]
            rows.append((case.label, n, res.delta_omega_3sigma_fm))
    _write_csv(path, ["case", "N", "delta_omega_3sigma_fm"], rows)
    return [path]


def _cmd_map(params: dict) -> list[Path]:
    cfg = _make_cfg(params)
    run = _make_run(params)
    cells = int(params["map_cells"])
    if cells < 1:
        raise ValueError("map_cells must be >= 1")
    r_values = np.linspace(params["r_min"], params["r_max"], cells)
    a_values = np.linspace(params["alpha_min"], params["alpha_max"], cells)
    rows = sweep_coupling_map(
        r_values,
        a_values,
        run,
        cfg_template=cfg,
        span=params["grid_span_gamma"],
        points=params["grid_points"],
    )
    out = _out_dir(params)
    path = out / "coupling_map.csv"
    _write_csv(
        path,
        ["r", "alpha", "snr_vs_classical_wgm", "snr_vs_classical_mzi", "dr_violation_flag"],
        (
            (
                row["r"],
                row["alpha"],
                row["snr_vs_classical_wgm"],
                row["snr_vs_classical_mzi"],
                row["dr_violation_flag"],
            )
            for row in rows
        ),
    )
    return [path]


def _linewidth_r_values(params: dict) -> np.ndarray:
    if params["r_points"] < 2:
        raise ValueError("r_points must be >= 2")
    if not params["r_min"] < params["r_max"]:
        raise ValueError("r_min must be below r_max")
    return np.linspace(params["r_min"], params["r_max"], int(params["r_points"]))


def _cmd_linewidth(params: dict) -> list[Path]:
    cfg = _make_cfg(params)
    run = _make_run(params)
    ratios = _float_list(params["ratios"], "ratios")
    rows = sweep_linewidth(
        cfg,
        run,
        ratios,
        _linewidth_r_values(params),
        span=params["grid_span_gamma"],
        points=params["grid_points"],
    )
    out = _out_dir(params)
    path = out / "linewidth_sweep.csv"
    _write_csv(
        path,
        ["width_ratio", "r", "snr_vs_classical_mzi"],
        ((row["width_ratio"], row["r"], row["snr_vs_classical_mzi"]) for row in rows),
    )
    return [path]


def _cmd_dynrange(params: dict) -> list[Path]:
    cfg = _make_cfg(params)
    run = _make_run(params)
    fractions = _float_list(params["fractions"], "fractions")
    if any(not 0 < f <= 1 for f in fractions):
        raise ValueError("fractions must lie in (0, 1]")
    rows = dynamic_range_exclusion(
        cfg,
        run,
        _linewidth_r_values(params),
        fractions=fractions,
        span=params["grid_span_gamma"],
        points=params["grid_points"],
    )
    out = _out_dir(params)
    path = out / "dynamic_range.csv"
    _write_csv(
        path,
        ["r", "dynamic_range_gamma", "noise_3sigma_gamma", "max_fraction_satisfied"],
        (
            (
                row["r"],
                row["dynamic_range_gamma"],
                row["noise_3sigma_gamma"],
                row["max_fraction_satisfied"],
            )
            for row in rows
        ),
    )
    return [path]


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "noise-sweep": _cmd_noise_sweep,
    "map": _cmd_map,
    "linewidth": _cmd_linewidth,
    "dynrange": _cmd_dynrange,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        params = _resolve_params(args)
        outputs = _COMMANDS[args.command](params)
    except (FlatSpectrumError, GridResolutionError) as exc:
        # Subclasses of ValueError: must be tried before the exit-2 handler.
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    manifest = _write_manifest(_out_dir(params), args.command, params, outputs, started)
    print(f"wrote {len(outputs)} file(s) and {manifest.name} to {manifest.parent}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
