"""Point-pinhole propagation kernels for the half-space z > 0.

A screen of point pinholes in z = 0 re-radiates an incident unit plane
wave; the full first-kind kernel and its leading far-zone form let the
pinhole picture be compared against ideal point sources.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularPoint
from .wavefield import TWO_PI, SourceArrangement


@dataclass(frozen=True)
class PinholeScreen:
    """Point pinholes in the z = 0 plane with complex transmission weights.

    pinholes is a tuple of (x, y, weight); k is the illumination
    wavenumber.
    """

    pinholes: tuple
    k: float

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("k must be positive")
        if not self.pinholes:
            raise ValueError("screen needs at least one pinhole")


def screen_from_arrangement(arr: SourceArrangement) -> PinholeScreen:
    """Pinholes at the source positions, weighted A_j exp(i phi_j)."""
    holes = []
    for (x, y, _), amp, phi in zip(
        arr.source_positions(), arr.amplitudes, arr.phases()
    ):
        holes.append((float(x), float(y), amp * cmath.exp(1j * phi)))
    return PinholeScreen(pinholes=tuple(holes), k=arr.k)


def rs_kernel(obs, hole, k: float) -> complex:
    """Full half-space point-aperture kernel at observation point obs.

    obs is (x, y, z) with z > 0; hole is the pinhole (x, y) in the
    screen plane.  Includes the reactive 1/r^2 term, so it is exact at
    any distance from the aperture.
    """
    x, y, z = obs
    hx, hy = hole[0], hole[1]
    r = math.sqrt((x - hx) ** 2 + (y - hy) ** 2 + z * z)
    if r == 0.0:
        raise SingularPoint("observation point sits on the pinhole")
    if z <= 0:
        raise ValueError("observation half-space is z > 0")
    return (0.5 / math.pi) * (z / r) * (1j * k / r - 1.0 / (r * r)) * cmath.exp(
        1j * k * r
    )


def rs_kernel_far(obs, hole, k: float) -> complex:
    """Radiative part of rs_kernel, valid once k r >> 1."""
    x, y, z = obs
    hx, hy = hole[0], hole[1]
    r = math.sqrt((x - hx) ** 2 + (y - hy) ** 2 + z * z)
    if r == 0.0:
        raise SingularPoint("observation point sits on the pinhole")
    if z <= 0:
        raise ValueError("observation half-space is z > 0")
    return (1j * k * z / (TWO_PI * r * r)) * cmath.exp(1j * k * r)


def pinhole_field(screen: PinholeScreen, obs) -> complex:
    """Weighted sum of full kernels over the screen's pinholes."""
    total = 0j
    for hx, hy, w in screen.pinholes:
        total += w * rs_kernel(obs, (hx, hy), screen.k)
    return total


def pinhole_values(screen: PinholeScreen, xs, ys, z):
    """Vectorised pinhole_field over arrays of in-plane coordinates."""
    if z <= 0:
        raise ValueError("observation half-space is z > 0")
    total = np.zeros(np.broadcast(xs, ys).shape, dtype=complex)
    k = screen.k
    for hx, hy, w in screen.pinholes:
        r = np.sqrt((xs - hx) ** 2 + (ys - hy) ** 2 + z * z)
        total += (
            w
            * (0.5 / math.pi)
            * (z / r)
            * (1j * k / r - 1.0 / (r * r))
            * np.exp(1j * k * r)
        )
    return total


def max_source_spacing(arr: SourceArrangement) -> float:
    """Largest pairwise separation among the three sources."""
    pos = arr.source_positions()
    best = 0.0
    for i in range(3):
        for j in range(i + 1, 3):
            best = max(best, float(np.linalg.norm(pos[i] - pos[j])))
    return best


def fresnel_number(max_spacing: float, lambda0: float, z: float) -> float:
    """Fresnel number a^2 / (lambda0 z) for aperture extent a."""
    if lambda0 <= 0 or z <= 0:
        raise ValueError("lambda0 and z must be positive")
    if max_spacing < 0:
        raise ValueError("max_spacing must be nonnegative")
    return max_spacing * max_spacing / (lambda0 * z)
