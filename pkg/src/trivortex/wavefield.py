"""Complex scalar interference fields on observation planes.

Three synthesis models are provided: a superposition of plane waves, the
exact superposition of spherical waves from three point sources in the
z = 0 plane, and a far-field form in which each spherical phase is
linearised about the observation radius.  Rasters sample any of these
models (plus the diffraction-kernel model) at pixel centres on a square
window of an observation plane.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import SourceCoincidence, UnequalAmplitudes

TWO_PI = 2.0 * math.pi

MODEL_TAGS = ("exact", "farfield", "planewave", "pinhole")


@dataclass(frozen=True)
class PlaneWave:
    """One monochromatic plane wave A exp(i(k.r + phi))."""

    amplitude: float
    wavevector: tuple
    phase_offset: float = 0.0

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("amplitude must be nonnegative")
        kx, ky, kz = self.wavevector
        if kx * kx + ky * ky + kz * kz <= 0.0:
            raise ValueError("wavevector must be nonzero")


@dataclass(frozen=True)
class SourceArrangement:
    """Three monochromatic point sources in the z = 0 plane.

    Source 1 sits at the origin, source 2 at distance r2 along +x, and
    source 3 at distance r3 at polar angle theta3 measured from the
    source-2 direction.  phi2 and phi3 are emission phases relative to
    source 1; amplitudes are the per-source strengths.
    """

    lambda0: float
    r2: float
    r3: float
    theta3: float
    phi2: float = 0.0
    phi3: float = 0.0
    amplitudes: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.lambda0 <= 0:
            raise ValueError("lambda0 must be positive")
        if self.r2 < 0 or self.r3 < 0:
            raise ValueError("source separations must be nonnegative")
        if len(self.amplitudes) != 3 or any(a < 0 for a in self.amplitudes):
            raise ValueError("amplitudes must be three nonnegative reals")

    @property
    def k(self) -> float:
        """Wavenumber 2 pi / lambda0."""
        return TWO_PI / self.lambda0

    def source_positions(self):
        """Source coordinates as a 3x3 array, one row per source."""
        return np.array(
            [
                [0.0, 0.0, 0.0],
                [self.r2, 0.0, 0.0],
                [
                    self.r3 * math.cos(self.theta3),
                    self.r3 * math.sin(self.theta3),
                    0.0,
                ],
            ]
        )

    def centroid(self):
        return self.source_positions().mean(axis=0)

    def phases(self):
        return np.array([0.0, self.phi2, self.phi3])

    def require_equal_amplitudes(self):
        a1, a2, a3 = self.amplitudes
        if not (a1 == a2 == a3):
            raise UnequalAmplitudes(
                "operation assumes equal source amplitudes, got %r" % (self.amplitudes,)
            )

    def require_unit_amplitudes(self):
        if tuple(self.amplitudes) != (1.0, 1.0, 1.0):
            raise UnequalAmplitudes(
                "far-field model assumes unit amplitudes, got %r" % (self.amplitudes,)
            )


@dataclass(frozen=True)
class Window:
    """Square sampling window on an observation plane."""

    half_width: float
    center_x: float = 0.0
    center_y: float = 0.0

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")


@dataclass(frozen=True)
class FieldGrid:
    """Complex field samples on a uniform raster.

    values[row, col] is the sample at (origin_x + col*step,
    origin_y + row*step); rows run toward +y.  z0 is the height of the
    observation plane above the source plane.
    """

    values: np.ndarray
    origin_x: float
    origin_y: float
    step: float
    z0: float
    model_tag: str

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("values must be a nonempty 2D array")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.model_tag not in MODEL_TAGS:
            raise ValueError("unknown model tag %r" % (self.model_tag,))
        if self.model_tag != "planewave" and self.z0 <= 0:
            raise ValueError("z0 must be positive for source-plane models")
        object.__setattr__(self, "values", v)

    @property
    def shape(self):
        return self.values.shape

    def x_coords(self):
        return self.origin_x + self.step * np.arange(self.values.shape[1])

    def y_coords(self):
        return self.origin_y + self.step * np.arange(self.values.shape[0])

    def amplitude(self):
        return np.abs(self.values)

    def phase(self):
        """Principal phase in [-pi, pi)."""
        ph = np.angle(self.values)
        return np.where(ph == math.pi, -math.pi, ph)


def plane_superposition(waves, point) -> complex:
    """Sum of plane waves at a 3D point."""
    if not waves:
        raise ValueError("waves must be nonempty")
    x, y, z = point
    total = 0j
    for w in waves:
        kx, ky, kz = w.wavevector
        total += w.amplitude * cmath.exp(
            1j * (kx * x + ky * y + kz * z + w.phase_offset)
        )
    return total


def _plane_values(waves, xs, ys, z):
    total = np.zeros(np.broadcast(xs, ys).shape, dtype=complex)
    for w in waves:
        kx, ky, kz = w.wavevector
        total += w.amplitude * np.exp(
            1j * (kx * xs + ky * ys + kz * z + w.phase_offset)
        )
    return total


def _spherical_values(arr: SourceArrangement, xs, ys, z):
    total = np.zeros(np.broadcast(xs, ys).shape, dtype=complex)
    k = arr.k
    for (sx, sy, sz), amp, phi in zip(
        arr.source_positions(), arr.amplitudes, arr.phases()
    ):
        d = np.sqrt((xs - sx) ** 2 + (ys - sy) ** 2 + (z - sz) ** 2)
        if np.any(d == 0.0):
            raise SourceCoincidence("evaluation point coincides with a source")
        total += (amp / d) * np.exp(1j * (k * d + phi))
    return total


def spherical_superposition(arr: SourceArrangement, point) -> complex:
    """Exact three-source spherical-wave field at a 3D point.

    Each source contributes (A_j / d_j) exp(i(k d_j + phi_j)) with d_j
    the distance from source j to the point.  Raises SourceCoincidence
    when the point sits on a source.
    """
    x, y, z = point
    return complex(_spherical_values(arr, np.float64(x), np.float64(y), z))


def _farfield_values(arr: SourceArrangement, r_perp, theta, z0):
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    arr.require_unit_amplitudes()
    k = arr.k
    r = np.sqrt(z0 * z0 + r_perp * r_perp)
    base = k * r
    ph2 = base - k * r_perp * arr.r2 * np.cos(theta) / r + arr.phi2
    ph3 = base - k * r_perp * arr.r3 * np.cos(theta - arr.theta3) / r + arr.phi3
    return (np.exp(1j * base) + np.exp(1j * ph2) + np.exp(1j * ph3)) / r


def farfield_value(arr: SourceArrangement, r_perp, theta, z0) -> complex:
    """Linearised far-field model at cylindrical point (r_perp, theta, z0).

    Valid for unit amplitudes only; the common 1/r envelope multiplies
    three unit phasors whose relative phases are the transverse path
    differences.
    """
    return complex(
        _farfield_values(arr, np.float64(r_perp), np.float64(theta), z0)
    )


def sample_grid(source, window: Window, resolution: int, model: str, z0=None) -> FieldGrid:
    """Sample a field model on a square raster.

    source is a SourceArrangement for models "exact" and "farfield", a
    sequence of PlaneWave for "planewave", and a PinholeScreen for
    "pinhole".  Samples sit at pixel centres; row 0 is the window's
    minimum-y edge.  For "planewave" the plane is z = z0 (default 0).
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if model not in MODEL_TAGS:
        raise ValueError("unknown model %r" % (model,))
    step = 2.0 * window.half_width / resolution
    xs = window.center_x - window.half_width + (np.arange(resolution) + 0.5) * step
    ys = window.center_y - window.half_width + (np.arange(resolution) + 0.5) * step
    gx, gy = np.meshgrid(xs, ys)
    if model == "planewave":
        z = 0.0 if z0 is None else z0
        values = _plane_values(source, gx, gy, z)
    elif model == "exact":
        _require_height(z0)
        values = _spherical_values(source, gx, gy, z0)
    elif model == "farfield":
        _require_height(z0)
        r_perp = np.hypot(gx, gy)
        theta = np.arctan2(gy, gx)
        values = _farfield_values(source, r_perp, theta, z0)
    else:
        _require_height(z0)
        from .diffraction import pinhole_values

        values = pinhole_values(source, gx, gy, z0)
    return FieldGrid(
        values=values,
        origin_x=float(xs[0]),
        origin_y=float(ys[0]),
        step=float(step),
        z0=0.0 if z0 is None else float(z0),
        model_tag=model,
    )


def _require_height(z0):
    if z0 is None or z0 <= 0:
        raise ValueError("z0 must be positive for this model")


def subtract_background(grid: FieldGrid, arr: SourceArrangement) -> FieldGrid:
    """Remove the common spherical carrier phase from a raster.

    Multiplies each sample by exp(-i k d_c), where d_c is the distance
    from the source centroid to the sample point.  The factor is a
    smooth unit-modulus gauge, so amplitudes and all winding numbers
    are unchanged; only the rendered phase picture loses its carrier
    rings.
    """
    if grid.model_tag not in ("exact", "farfield"):
        raise ValueError("background subtraction applies to spherical-source rasters")
    cx, cy, cz = arr.centroid()
    gx, gy = np.meshgrid(grid.x_coords(), grid.y_coords())
    d = np.sqrt((gx - cx) ** 2 + (gy - cy) ** 2 + (grid.z0 - cz) ** 2)
    return replace(grid, values=grid.values * np.exp(-1j * arr.k * d))
