"""File output: PGM rasters, delimited tables, JSON reports.

All text output is UTF-8 with LF line endings and 17-significant-digit
floats, so identical inputs serialise to identical bytes.
"""

from __future__ import annotations

import contextlib
import csv
import json
import math
import sys

import numpy as np

from .analytic import VortexPrediction
from .detector import DetectedVortex
from .lattice import admissibility_margin, classify
from .wavefield import FieldGrid, subtract_background

RASTER_KINDS = ("amplitude", "phase", "phase_bg_subtracted")

PREDICTION_FIELDS = (
    "m",
    "n",
    "branch",
    "theta_rad",
    "r_perp_over_lambda0",
    "x_over_lambda0",
    "y_over_lambda0",
)

DETECTION_FIELDS = ("charge", "x_over_lambda0", "y_over_lambda0", "min_amp")

# an index this close to the ellipse boundary is flagged for review
BOUNDARY_MARGIN = 1e-6


def fmt(x) -> str:
    return format(float(x), ".17g")


@contextlib.contextmanager
def _text_sink(path):
    """Open a text path for writing, with None or "-" meaning stdout."""
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def raster_bytes(grid: FieldGrid, kind: str, arr=None) -> bytes:
    """Binary 8-bit PGM for one raster channel.

    amplitude maps linearly with the grid minimum at 0 and maximum at
    255 (all zeros for a constant grid); phase maps -pi to 0 and
    just-below-pi to 255.  Row 0 of the written image is the maximum-y
    row, matching the usual top-down image convention.
    """
    if kind not in RASTER_KINDS:
        raise ValueError("unknown raster kind %r" % (kind,))
    if kind == "amplitude":
        data = grid.amplitude()
        lo = float(data.min())
        hi = float(data.max())
        if hi == lo:
            scaled = np.zeros_like(data)
        else:
            scaled = (data - lo) / (hi - lo)
    else:
        g = grid
        if kind == "phase_bg_subtracted":
            if arr is None:
                raise ValueError("background subtraction needs the arrangement")
            g = subtract_background(grid, arr)
        scaled = (g.phase() + math.pi) / (2.0 * math.pi)
    pixels = np.rint(255.0 * scaled).astype(np.uint8)
    pixels = pixels[::-1, :]
    h, w = pixels.shape
    header = ("P5\n%d %d\n255\n" % (w, h)).encode("ascii")
    return header + pixels.tobytes()


def write_raster(grid: FieldGrid, kind: str, path, arr=None):
    with open(path, "wb") as fh:
        fh.write(raster_bytes(grid, kind, arr=arr))


def write_predictions_csv(predictions, path, lambda0: float):
    with _text_sink(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PREDICTION_FIELDS)
        for p in predictions:
            w.writerow(
                [
                    p.m,
                    p.n,
                    p.branch,
                    fmt(p.theta),
                    fmt(p.r_perp / lambda0),
                    fmt(p.x / lambda0),
                    fmt(p.y / lambda0),
                ]
            )


def read_predictions_csv(path, lambda0: float, z0: float):
    """Inverse of write_predictions_csv; exact when lambda0 is 1."""
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = csv.reader(fh)
        header = next(rows)
        if tuple(header) != PREDICTION_FIELDS:
            raise ValueError("unexpected prediction CSV header: %r" % (header,))
        for row in rows:
            m, n, branch, theta, r_perp, x, y = row
            out.append(
                VortexPrediction(
                    m=int(m),
                    n=int(n),
                    branch=branch,
                    theta=float(theta),
                    r_perp=float(r_perp) * lambda0,
                    x=float(x) * lambda0,
                    y=float(y) * lambda0,
                    z0=z0,
                )
            )
    return out


def write_detections_csv(detections, path, lambda0: float):
    with _text_sink(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DETECTION_FIELDS)
        for d in detections:
            w.writerow(
                [
                    d.charge,
                    fmt(d.position[0] / lambda0),
                    fmt(d.position[1] / lambda0),
                    fmt(d.plaquette_min_amplitude),
                ]
            )


def read_detections_csv(path, lambda0: float):
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = csv.reader(fh)
        header = next(rows)
        if tuple(header) != DETECTION_FIELDS:
            raise ValueError("unexpected detection CSV header: %r" % (header,))
        for row in rows:
            charge, x, y, amp = row
            out.append(
                DetectedVortex(
                    charge=int(charge),
                    pixel=(-1, -1),
                    position=(float(x) * lambda0, float(y) * lambda0),
                    plaquette_min_amplitude=float(amp),
                )
            )
    return out


def write_json_report(report: dict, path):
    with _text_sink(path) as fh:
        fh.write(json.dumps(report, indent=2, sort_keys=True))
        fh.write("\n")


def arrangement_dict(arr) -> dict:
    return {
        "lambda0": arr.lambda0,
        "r2_over_lambda0": arr.r2 / arr.lambda0,
        "r3_over_lambda0": arr.r3 / arr.lambda0,
        "theta3_rad": arr.theta3,
        "phi2_rad": arr.phi2,
        "phi3_rad": arr.phi3,
        "amplitudes": list(arr.amplitudes),
    }


def ellipse_dict(desc) -> dict:
    d = {
        "a": desc.a,
        "h": desc.h,
        "b": desc.b,
        "g": desc.g,
        "f": desc.f,
        "c": desc.c,
        "Delta": desc.Delta,
        "delta": desc.delta,
        "tau": desc.tau,
        "center_m": desc.m0,
        "center_n": desc.n0,
        "phi_rot_rad": desc.phi_rot,
        "s_plus": desc.s_plus,
        "s_minus": desc.s_minus,
        "lambda_plus": desc.lambda_plus,
        "lambda_minus": desc.lambda_minus,
        "kind": classify(desc),
    }
    if math.isnan(desc.m0):
        d["center_m"] = None
        d["center_n"] = None
    return d


def lattice_entries(arr, points) -> list:
    out = []
    for m, n in points:
        depth = admissibility_margin(arr, m, n)
        out.append(
            {
                "m": m,
                "n": n,
                "depth": depth,
                "near_boundary": bool(depth < BOUNDARY_MARGIN),
            }
        )
    return out


def match_dict(report, lambda0: float, tolerance: float) -> dict:
    return {
        "tolerance_over_lambda0": tolerance / lambda0,
        "pairs": [
            {
                "prediction": i,
                "detection": j,
                "distance_over_lambda0": dist / lambda0,
            }
            for i, j, dist in report.pairs
        ],
        "unmatched_predictions": list(report.unmatched_predictions),
        "unmatched_detections": list(report.unmatched_detections),
        "rejected_beyond_tolerance": [
            {
                "prediction": i,
                "nearest_detection": j,
                "distance_over_lambda0": dist / lambda0,
            }
            for i, j, dist in report.rejected
        ],
        "rms_residual_over_lambda0": report.rms_residual / lambda0,
        "matched_count": len(report.pairs),
    }
