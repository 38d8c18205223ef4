"""Numeric vortex detection via plaquette winding numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooSmall
from .wavefield import TWO_PI, FieldGrid

# Newton on the bilinear cell falls back to the cell centre beyond this.
JACOBIAN_COND_LIMIT = 1e8


@dataclass(frozen=True)
class DetectedVortex:
    """One phase singularity found on a raster."""

    charge: int
    pixel: tuple
    position: tuple
    plaquette_min_amplitude: float


@dataclass(frozen=True)
class MatchReport:
    """Outcome of pairing predicted against detected vortex cores.

    pairs holds (prediction index, detection index, distance) for every
    accepted pair; rejected holds the nearest-detection diagnostic for
    each prediction left unmatched, for manual review.  rms_residual is
    over accepted pairs only (0.0 when there are none).
    """

    pairs: list
    unmatched_predictions: list
    unmatched_detections: list
    rms_residual: float
    rejected: list = field(default_factory=list)


def _wrap(d: float) -> float:
    w = d % TWO_PI
    if w > math.pi:
        w -= TWO_PI
    return w


def _wrap_array(d):
    w = np.mod(d, TWO_PI)
    return np.where(w > math.pi, w - TWO_PI, w)


def winding_number(phases) -> int:
    """Net turns of phase around one counter-clockwise plaquette.

    phases are the four corner phases in counter-clockwise order; each
    step difference is wrapped to (-pi, pi] before summing.
    """
    if len(phases) != 4:
        raise ValueError("need exactly four corner phases")
    total = 0.0
    for i in range(4):
        total += _wrap(phases[(i + 1) % 4] - phases[i])
    return int(round(total / TWO_PI))


def detect_vortices(grid: FieldGrid):
    """All phase singularities on a raster, in row-major plaquette order.

    Every 2x2 plaquette is tested for a nonzero winding number; winding
    alone decides, no amplitude threshold is applied.  Charges are the
    winding numbers; positions are refined inside the plaquette by
    Newton iteration on the bilinear interpolant of the complex field,
    falling back to the plaquette centre when the 2x2 Jacobian is
    ill-conditioned.  The reported pixel is the plaquette's low corner
    (row, col).
    """
    values = grid.values
    if values.shape[0] < 2 or values.shape[1] < 2:
        raise GridTooSmall("winding needs at least 2x2 samples")
    ph = np.angle(values)
    d_bottom = _wrap_array(ph[:-1, 1:] - ph[:-1, :-1])
    d_right = _wrap_array(ph[1:, 1:] - ph[:-1, 1:])
    d_top = _wrap_array(ph[1:, :-1] - ph[1:, 1:])
    d_left = _wrap_array(ph[:-1, :-1] - ph[1:, :-1])
    winding = np.rint((d_bottom + d_right + d_top + d_left) / TWO_PI).astype(int)
    amp = np.abs(values)
    out = []
    for r, c in zip(*np.nonzero(winding)):
        cell = values[r : r + 2, c : c + 2]
        u, v = _bilinear_zero(cell)
        out.append(
            DetectedVortex(
                charge=int(winding[r, c]),
                pixel=(int(r), int(c)),
                position=(
                    grid.origin_x + (c + u) * grid.step,
                    grid.origin_y + (r + v) * grid.step,
                ),
                plaquette_min_amplitude=float(amp[r : r + 2, c : c + 2].min()),
            )
        )
    return out


def _bilinear_zero(cell):
    """Zero of the bilinear interpolant in cell coordinates (u, v) in [0, 1]^2.

    cell[dv, du] are the complex corner values; u runs along columns.
    """
    f00 = cell[0, 0]
    f10 = cell[0, 1]
    f01 = cell[1, 0]
    f11 = cell[1, 1]
    u = 0.5
    v = 0.5
    for _ in range(12):
        fu = (f10 - f00) * (1.0 - v) + (f11 - f01) * v
        fv = (f01 - f00) * (1.0 - u) + (f11 - f10) * u
        jac = np.array([[fu.real, fv.real], [fu.imag, fv.imag]])
        if not np.all(np.isfinite(jac)) or np.linalg.cond(jac) > JACOBIAN_COND_LIMIT:
            return 0.5, 0.5
        val = (
            f00 * (1.0 - u) * (1.0 - v)
            + f10 * u * (1.0 - v)
            + f01 * (1.0 - u) * v
            + f11 * u * v
        )
        du, dv = np.linalg.solve(jac, [-val.real, -val.imag])
        u += du
        v += dv
        if not (-0.5 <= u <= 1.5 and -0.5 <= v <= 1.5):
            return 0.5, 0.5
        if abs(du) + abs(dv) < 1e-13:
            break
    return min(max(u, 0.0), 1.0), min(max(v, 0.0), 1.0)


def match(predictions, detections, tolerance: float) -> MatchReport:
    """Greedy nearest-first pairing of predictions with detections.

    Candidate pairs are taken in ascending distance order; each element
    is used at most once and pairs beyond tolerance are never accepted.
    Predictions and detections are referenced by list index.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    cand = []
    for i, p in enumerate(predictions):
        for j, d in enumerate(detections):
            dx = p.x - d.position[0]
            dy = p.y - d.position[1]
            cand.append((math.hypot(dx, dy), i, j))
    cand.sort()
    used_p = set()
    used_d = set()
    pairs = []
    for dist, i, j in cand:
        if dist > tolerance:
            break
        if i in used_p or j in used_d:
            continue
        pairs.append((i, j, dist))
        used_p.add(i)
        used_d.add(j)
    unmatched_p = [i for i in range(len(predictions)) if i not in used_p]
    unmatched_d = [j for j in range(len(detections)) if j not in used_d]
    rejected = []
    for dist, i, j in cand:
        if i in used_p or j in used_d:
            continue
        if all(r[0] != i for r in rejected):
            rejected.append((i, j, dist))
    rms = 0.0
    if pairs:
        rms = math.sqrt(sum(d * d for _, _, d in pairs) / len(pairs))
    return MatchReport(
        pairs=pairs,
        unmatched_predictions=unmatched_p,
        unmatched_detections=unmatched_d,
        rms_residual=rms,
        rejected=rejected,
    )
