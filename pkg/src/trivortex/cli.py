"""Command-line front end.

All lengths on the command line are in units of lambda0 and all angles
in degrees; internally everything is radians and absolute lengths.
Subcommands: render, predict, detect, compare, ellipse, sweep,
trajectories.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import reports
from .analytic import hyperbola_m, hyperbola_n, mn_scale, predict_all
from .detector import detect_vortices, match
from .diffraction import fresnel_number, max_source_spacing, screen_from_arrangement
from .errors import DomainError
from .lattice import (
    bounding_rectangle,
    conic_from_arrangement,
    enumerate_lattice,
    estimate_count,
    lattice_shift,
)
from .wavefield import PlaneWave, SourceArrangement, Window, farfield_value, sample_grid

# |field| below this fraction of the 3/r envelope counts as a real zero
PHYSICAL_TOL = 1e-6

RASTER_KIND_FLAGS = {
    "amplitude": "amplitude",
    "phase": "phase",
    "phase-bg": "phase_bg_subtracted",
}


@dataclass
class RunConfig:
    """One parsed CLI invocation."""

    command: str
    lambda0: float = 1.0
    r2: float = 3.0
    r3: float = 3.0
    theta3: float = 60.0
    phi2: float = 0.0
    phi3: float = 0.0
    amplitudes: str = "1,1,1"
    z0: float = 25.0
    half_width: float = None
    center_x: float = 0.0
    center_y: float = 0.0
    resolution: int = 512
    model: str = "exact"
    waves: list = None
    out: str = None
    kind: str = "amplitude"
    figure: str = None
    no_figure: bool = False
    tolerance: float = None
    param: str = "theta3"
    start: float = 0.0
    stop: float = 180.0
    steps: int = 37
    theta_samples: int = 1024


def _arrangement(cfg: RunConfig) -> SourceArrangement:
    amps = tuple(float(a) for a in cfg.amplitudes.split(","))
    if len(amps) != 3:
        raise ValueError("amplitudes must be three comma-separated values")
    lam = cfg.lambda0
    return SourceArrangement(
        lambda0=lam,
        r2=cfg.r2 * lam,
        r3=cfg.r3 * lam,
        theta3=math.radians(cfg.theta3),
        phi2=math.radians(cfg.phi2),
        phi3=math.radians(cfg.phi3),
        amplitudes=amps,
    )


def _window(cfg: RunConfig) -> Window:
    lam = cfg.lambda0
    half = cfg.half_width if cfg.half_width is not None else 0.6 * cfg.z0
    return Window(
        half_width=half * lam,
        center_x=cfg.center_x * lam,
        center_y=cfg.center_y * lam,
    )


def _waves(cfg: RunConfig):
    lam = cfg.lambda0
    if not cfg.waves:
        return [PlaneWave(1.0, (0.0, 0.0, 2.0 * math.pi / lam), 0.0)]
    out = []
    for spec in cfg.waves:
        parts = [float(p) for p in spec.split(",")]
        if len(parts) < 3 or len(parts) > 5:
            raise ValueError("--wave needs kx,ky,kz[,amp[,phase_deg]]")
        kx, ky, kz = (p / lam for p in parts[:3])
        amp = parts[3] if len(parts) > 3 else 1.0
        phase = math.radians(parts[4]) if len(parts) > 4 else 0.0
        out.append(PlaneWave(amp, (kx, ky, kz), phase))
    return out


def _grid(cfg: RunConfig):
    arr = _arrangement(cfg)
    window = _window(cfg)
    z0 = cfg.z0 * cfg.lambda0
    if cfg.model == "planewave":
        return arr, sample_grid(_waves(cfg), window, cfg.resolution, "planewave", 0.0)
    if cfg.model == "pinhole":
        screen = screen_from_arrangement(arr)
        return arr, sample_grid(screen, window, cfg.resolution, "pinhole", z0)
    return arr, sample_grid(arr, window, cfg.resolution, cfg.model, z0)


def _stem(path: str) -> str:
    for suffix in (".json", ".csv", ".pgm", ".png"):
        if path.endswith(suffix):
            return path[: -len(suffix)]
    return path


def cmd_render(cfg: RunConfig):
    if cfg.out is None:
        raise ValueError("render needs --out for the PGM file")
    arr, grid = _grid(cfg)
    kind = RASTER_KIND_FLAGS[cfg.kind]
    reports.write_raster(grid, kind, cfg.out, arr=arr)
    if cfg.figure:
        from .figures import save_field_figure

        save_field_figure(grid, cfg.figure, kind=kind, arr=arr)


def cmd_predict(cfg: RunConfig):
    arr = _arrangement(cfg)
    preds = predict_all(arr, cfg.z0 * cfg.lambda0)
    reports.write_predictions_csv(preds, cfg.out, arr.lambda0)


def cmd_detect(cfg: RunConfig):
    arr, grid = _grid(cfg)
    dets = detect_vortices(grid)
    reports.write_detections_csv(dets, cfg.out, cfg.lambda0)
    if cfg.figure:
        from .figures import save_field_figure

        save_field_figure(grid, cfg.figure, kind="amplitude", detections=dets)


def cmd_ellipse(cfg: RunConfig):
    arr = _arrangement(cfg)
    desc = conic_from_arrangement(arr)
    rect = bounding_rectangle(arr)
    points = enumerate_lattice(arr)
    dm, dn = lattice_shift(arr.phi2, arr.phi3)
    report = {
        "arrangement": reports.arrangement_dict(arr),
        "ellipse": reports.ellipse_dict(desc),
        "bounding_rectangle": {
            "center_m": rect.center_m,
            "center_n": rect.center_n,
            "width_m": rect.width_m,
            "width_n": rect.width_n,
        },
        "lattice_shift": {"dm": dm, "dn": dn},
        "lattice": reports.lattice_entries(arr, points),
        "counts": {"pairs": len(points), "vortices": 2 * len(points)},
        "estimate": estimate_count(arr),
    }
    reports.write_json_report(report, cfg.out)
    if cfg.figure:
        from .figures import save_ellipse_figure

        save_ellipse_figure(arr, points, cfg.figure)


def cmd_compare(cfg: RunConfig):
    if cfg.out is None:
        raise ValueError("compare needs --out for the JSON report")
    if cfg.model == "planewave":
        raise ValueError("compare works on source models, not plane waves")
    arr, grid = _grid(cfg)
    z0 = cfg.z0 * cfg.lambda0
    window = _window(cfg)
    preds = predict_all(arr, z0)
    dets = detect_vortices(grid)
    in_window = [
        i
        for i, p in enumerate(preds)
        if abs(p.x - window.center_x) <= window.half_width
        and abs(p.y - window.center_y) <= window.half_width
    ]
    tol = (cfg.tolerance if cfg.tolerance is not None else 0.02 * cfg.z0) * cfg.lambda0
    sub = [preds[i] for i in in_window]
    rep = match(sub, dets, tol)
    remap = lambda idx: in_window[idx]
    rep_pairs = [(remap(i), j, d) for i, j, d in rep.pairs]
    rep_un_p = [remap(i) for i in rep.unmatched_predictions]
    rep_rej = [(remap(i), j, d) for i, j, d in rep.rejected]
    lam = arr.lambda0
    desc = conic_from_arrangement(arr)
    points = enumerate_lattice(arr)
    stem = _stem(cfg.out)
    pred_csv = stem + "_predictions.csv"
    det_csv = stem + "_detections.csv"
    reports.write_predictions_csv(preds, pred_csv, lam)
    reports.write_detections_csv(dets, det_csv, lam)
    figure_path = None
    if not cfg.no_figure:
        figure_path = cfg.figure or (stem + "_overlay.png")
        from .figures import save_field_figure

        save_field_figure(
            grid, figure_path, kind="amplitude", predictions=sub, detections=dets
        )
    match_report = reports.match_dict(
        type(rep)(
            pairs=rep_pairs,
            unmatched_predictions=rep_un_p,
            unmatched_detections=rep.unmatched_detections,
            rms_residual=rep.rms_residual,
            rejected=rep_rej,
        ),
        lam,
        tol,
    )
    report = {
        "arrangement": reports.arrangement_dict(arr),
        "plane": {
            "z0_over_lambda0": z0 / lam,
            "half_width_over_lambda0": window.half_width / lam,
            "center_x_over_lambda0": window.center_x / lam,
            "center_y_over_lambda0": window.center_y / lam,
            "resolution": cfg.resolution,
            "model": cfg.model,
        },
        "ellipse": reports.ellipse_dict(desc),
        "lattice": reports.lattice_entries(arr, points),
        "counts": {
            "pairs": len(points),
            "predictions": len(preds),
            "predictions_in_window": len(in_window),
            "detections": len(dets),
        },
        "predictions_in_window": in_window,
        "match": match_report,
        "fresnel_number": fresnel_number(max_source_spacing(arr), lam, z0),
        "outputs": {
            "predictions_csv": pred_csv,
            "detections_csv": det_csv,
            "figure": figure_path,
        },
    }
    reports.write_json_report(report, cfg.out)


def cmd_sweep(cfg: RunConfig):
    if cfg.out is None:
        raise ValueError("sweep needs --out for the CSV file")
    if cfg.steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    values = np.linspace(cfg.start, cfg.stop, cfg.steps)
    rows = []
    counts = []
    estimates = []
    curve_rows = []
    for val in values:
        step_cfg = _override(cfg, cfg.param, float(val))
        arr = _arrangement(step_cfg)
        points = enumerate_lattice(arr)
        est = estimate_count(arr)
        rows.append((float(val), len(points), 2 * len(points), est))
        counts.append(len(points))
        estimates.append(est)
        if cfg.param in ("phi2", "phi3"):
            kind = "m" if cfg.param == "phi2" else "n"
            idx_values = sorted({p[0] if kind == "m" else p[1] for p in points})
            three_k_r = 3.0 * arr.k * (arr.r2 if kind == "m" else arr.r3)
            for idx in idx_values:
                ms, ns = mn_scale(idx, idx, arr.phi2, arr.phi3)
                scale = ms if kind == "m" else ns
                if scale == 0.0:
                    continue
                curve_rows.append(
                    (float(val), kind, idx, scale, abs(scale) / three_k_r)
                )
    with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("value_deg,pairs,vortices,estimate\n")
        for val, pairs, vortices, est in rows:
            fh.write(
                "%s,%d,%d,%s\n" % (reports.fmt(val), pairs, vortices, reports.fmt(est))
            )
    if cfg.param in ("phi2", "phi3"):
        with open(_stem(cfg.out) + "_curves.csv", "w", encoding="utf-8", newline="") as fh:
            fh.write("value_deg,kind,index,scale_rad,cutoff_cos\n")
            for val, kind, idx, scale, cutoff in curve_rows:
                fh.write(
                    "%s,%s,%d,%s,%s\n"
                    % (reports.fmt(val), kind, idx, reports.fmt(scale), reports.fmt(cutoff))
                )
    if cfg.figure:
        from .figures import save_sweep_figure

        save_sweep_figure(
            [r[0] for r in rows], counts, estimates, cfg.figure, cfg.param + " (deg)"
        )


def _override(cfg: RunConfig, param: str, value: float) -> RunConfig:
    from dataclasses import replace

    if param not in ("theta3", "phi2", "phi3"):
        raise ValueError("sweep parameter must be theta3, phi2 or phi3")
    return replace(cfg, **{param: value})


def cmd_trajectories(cfg: RunConfig):
    if cfg.out is None:
        raise ValueError("trajectories needs --out for the curves CSV")
    arr = _arrangement(cfg)
    lam = arr.lambda0
    z0 = cfg.z0 * lam
    half = (cfg.half_width if cfg.half_width is not None else 0.6 * cfg.z0) * lam
    points = enumerate_lattice(arr)
    m_values = sorted({m for m, _ in points})
    n_values = sorted({n for _, n in points})
    thetas = np.linspace(0.0, 2.0 * math.pi, cfg.theta_samples, endpoint=False)
    r_cap = 3.0 * half
    curves = []
    curve_rows = []
    for kind, indices, func in (
        ("m", m_values, hyperbola_m),
        ("n", n_values, hyperbola_n),
    ):
        for idx in indices:
            xs = []
            ys = []
            for th in thetas:
                r = func(idx, arr, z0, float(th))
                if r is None or r > r_cap:
                    xs.append(math.nan)
                    ys.append(math.nan)
                    continue
                x = r * math.cos(th)
                y = r * math.sin(th)
                xs.append(x)
                ys.append(y)
                curve_rows.append((kind, idx, float(th), r, x, y))
            curves.append(("%s=%d" % (kind, idx), xs, ys))
    preds = predict_all(arr, z0)
    inter_points = []
    for p in preds:
        mag = abs(farfield_value(arr, p.r_perp, p.theta, z0))
        envelope = 3.0 / math.hypot(z0, p.r_perp)
        physical = mag < PHYSICAL_TOL * envelope
        inter_points.append((p, mag, physical))
    with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("kind,index,theta_rad,r_perp_over_lambda0,x_over_lambda0,y_over_lambda0\n")
        for kind, idx, th, r, x, y in curve_rows:
            fh.write(
                "%s,%d,%s,%s,%s,%s\n"
                % (
                    kind,
                    idx,
                    reports.fmt(th),
                    reports.fmt(r / lam),
                    reports.fmt(x / lam),
                    reports.fmt(y / lam),
                )
            )
    with open(_stem(cfg.out) + "_intersections.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(
            "m,n,branch,theta_rad,r_perp_over_lambda0,"
            "x_over_lambda0,y_over_lambda0,farfield_abs,physical\n"
        )
        for p, mag, physical in inter_points:
            fh.write(
                "%d,%d,%s,%s,%s,%s,%s,%s,%s\n"
                % (
                    p.m,
                    p.n,
                    p.branch,
                    reports.fmt(p.theta),
                    reports.fmt(p.r_perp / lam),
                    reports.fmt(p.x / lam),
                    reports.fmt(p.y / lam),
                    reports.fmt(mag),
                    "true" if physical else "false",
                )
            )
    if not cfg.no_figure:
        figure_path = cfg.figure or (_stem(cfg.out) + ".png")
        from .figures import save_trajectories_figure

        save_trajectories_figure(
            curves,
            [(p.x, p.y, ok) for p, _, ok in inter_points],
            figure_path,
            half,
        )


_HANDLERS = {
    "render": cmd_render,
    "predict": cmd_predict,
    "detect": cmd_detect,
    "compare": cmd_compare,
    "ellipse": cmd_ellipse,
    "sweep": cmd_sweep,
    "trajectories": cmd_trajectories,
}


def run(config: RunConfig) -> int:
    """Execute one parsed invocation; returns the process exit code."""
    _HANDLERS[config.command](config)
    return 0


def _add_arrangement_args(p):
    p.add_argument("--lambda0", type=float, default=1.0, help="wavelength unit (default 1)")
    p.add_argument("--r2", type=float, default=3.0, help="source-2 distance in lambda0")
    p.add_argument("--r3", type=float, default=3.0, help="source-3 distance in lambda0")
    p.add_argument("--theta3", type=float, default=60.0, help="source-3 angle in degrees")
    p.add_argument("--phi2", type=float, default=0.0, help="source-2 phase in degrees")
    p.add_argument("--phi3", type=float, default=0.0, help="source-3 phase in degrees")
    p.add_argument(
        "--amplitudes", default="1,1,1", help="three source amplitudes, comma separated"
    )
    p.add_argument("--z0", type=float, default=25.0, help="plane height in lambda0")


def _add_grid_args(p):
    p.add_argument(
        "--half-width",
        dest="half_width",
        type=float,
        default=None,
        help="window half width in lambda0 (default 0.6*z0)",
    )
    p.add_argument("--center-x", dest="center_x", type=float, default=0.0)
    p.add_argument("--center-y", dest="center_y", type=float, default=0.0)
    p.add_argument("--resolution", type=int, default=512, help="samples per side")
    p.add_argument(
        "--model",
        choices=("exact", "farfield", "pinhole", "planewave"),
        default="exact",
    )
    p.add_argument(
        "--wave",
        dest="waves",
        action="append",
        default=None,
        help="plane wave kx,ky,kz[,amp[,phase_deg]] in 1/lambda0; repeatable",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trivortex",
        description="Predict, detect and compare phase vortices of three-source interference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="write a PGM raster of one field channel")
    _add_arrangement_args(p)
    _add_grid_args(p)
    p.add_argument("--kind", choices=tuple(RASTER_KIND_FLAGS), default="amplitude")
    p.add_argument("--out", required=True, help="output PGM path")
    p.add_argument("--figure", default=None, help="optional PNG figure path")

    p = sub.add_parser("predict", help="closed-form vortex positions as CSV")
    _add_arrangement_args(p)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")

    p = sub.add_parser("detect", help="detect vortices on a sampled raster")
    _add_arrangement_args(p)
    _add_grid_args(p)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument("--figure", default=None, help="optional PNG overlay path")

    p = sub.add_parser("compare", help="predict, detect and match; JSON report plus CSVs")
    _add_arrangement_args(p)
    _add_grid_args(p)
    p.add_argument("--tolerance", type=float, default=None, help="match tolerance in lambda0 (default 0.02*z0)")
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--figure", default=None, help="overlay PNG path (default alongside --out)")
    p.add_argument("--no-figure", dest="no_figure", action="store_true")

    p = sub.add_parser("ellipse", help="admissibility ellipse and index lattice as JSON")
    _add_arrangement_args(p)
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.add_argument("--figure", default=None, help="optional PNG diagram path")

    p = sub.add_parser("sweep", help="lattice count across a parameter sweep")
    _add_arrangement_args(p)
    p.add_argument("--param", choices=("theta3", "phi2", "phi3"), default="theta3")
    p.add_argument("--start", type=float, default=0.0, help="sweep start in degrees")
    p.add_argument("--stop", type=float, default=180.0, help="sweep stop in degrees")
    p.add_argument("--steps", type=int, default=37)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--figure", default=None, help="optional PNG plot path")

    p = sub.add_parser("trajectories", help="phase-variation curves and their crossings")
    _add_arrangement_args(p)
    p.add_argument(
        "--half-width",
        dest="half_width",
        type=float,
        default=None,
        help="figure half width in lambda0 (default 0.6*z0)",
    )
    p.add_argument("--theta-samples", dest="theta_samples", type=int, default=1024)
    p.add_argument("--out", required=True, help="curves CSV path")
    p.add_argument("--figure", default=None, help="figure PNG path (default alongside --out)")
    p.add_argument("--no-figure", dest="no_figure", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(**vars(ns))
    try:
        return run(cfg)
    except (DomainError, ValueError) as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
