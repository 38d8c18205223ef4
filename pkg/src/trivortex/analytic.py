"""Closed-form prediction of far-field phase vortices.

A zero of the far-field three-source model requires the three unit
phasors to close into an equilateral triangle: relative to source 1,
the source-2 phasor must sit at 2 pi / 3 and the source-3 phasor at
4 pi / 3, each up to a whole number of turns.  The integer turn pair
(m, n) therefore indexes every vortex of the model.  Eliminating the
radial coordinate gives one polar angle per index; substituting back
gives the radius, which is real only when the index is admissible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CollinearArrangement, DegenerateIndex
from .wavefield import TWO_PI, SourceArrangement

# sin(theta3) below this counts as collinear: at 180 degrees the exact
# sine only reaches ~1e-16, so an exact-zero test would never fire.
COLLINEAR_SIN_TOL = 1e-9


@dataclass(frozen=True)
class VortexPrediction:
    """One predicted vortex core on the plane z = z0."""

    m: int
    n: int
    branch: str
    theta: float
    r_perp: float
    x: float
    y: float
    z0: float


def _m_scale(m: int, phi2: float) -> float:
    return 2.0 * (1 + 3 * m) * math.pi - 3.0 * phi2


def _n_scale(n: int, phi3: float) -> float:
    return 2.0 * (2 + 3 * n) * math.pi - 3.0 * phi3


def mn_scale(m: int, n: int, phi2: float = 0.0, phi3: float = 0.0):
    """Phasor turn scales for index (m, n).

    The source-2 phasor closes the triangle when its transverse phase
    equals -(m scale)/3, and likewise for source 3 with the n scale.
    Shifting an emission phase by 2 pi shifts the scale by one turn
    index: m_scale(m, phi2 + 2 pi) == m_scale(m - 1, phi2).
    """
    return _m_scale(m, phi2), _n_scale(n, phi3)


def _require_predictable(arr: SourceArrangement):
    arr.require_equal_amplitudes()
    if arr.r2 <= 0 or arr.r3 <= 0:
        raise ValueError("predictor needs strictly positive source separations")


def _sin_theta3(arr: SourceArrangement) -> float:
    s = math.sin(arr.theta3)
    if abs(s) < COLLINEAR_SIN_TOL:
        raise CollinearArrangement("sources are collinear, no closed-form angle")
    return s


def predict_theta(m: int, n: int, arr: SourceArrangement) -> float:
    """Polar angle of the index-(m, n) vortex pair, principal branch."""
    _require_predictable(arr)
    s3 = _sin_theta3(arr)
    ms, ns = mn_scale(m, n, arr.phi2, arr.phi3)
    if ms == 0.0:
        raise DegenerateIndex("m scale vanishes for this index and phase")
    ratio = (arr.r2 / arr.r3) * (ns / ms)
    return math.atan((ratio - math.cos(arr.theta3)) / s3)


def predict_vortex(m: int, n: int, arr: SourceArrangement, z0: float):
    """Both vortices carrying index (m, n) on the plane z = z0.

    Returns a pair of VortexPrediction, one on the principal-angle
    branch ("plus") and one diametrically opposite ("minus"), or None
    when the index is not admissible (the radius turns imaginary).
    """
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    _require_predictable(arr)
    s3 = _sin_theta3(arr)
    ms, _ = mn_scale(m, n, arr.phi2, arr.phi3)
    if ms == 0.0:
        raise DegenerateIndex("m scale vanishes for this index and phase")
    theta = predict_theta(m, n, arr)
    scaled = 3.0 * arr.k * arr.r2 / ms
    t = math.tan(theta)
    radicand = scaled * scaled / (1.0 + t * t) - 1.0
    if radicand <= 0.0:
        return None
    r_perp = z0 / math.sqrt(radicand)
    out = []
    for branch, ang in (("plus", theta % TWO_PI), ("minus", (theta + math.pi) % TWO_PI)):
        out.append(
            VortexPrediction(
                m=m,
                n=n,
                branch=branch,
                theta=ang,
                r_perp=r_perp,
                x=r_perp * math.cos(ang),
                y=r_perp * math.sin(ang),
                z0=z0,
            )
        )
    return tuple(out)


def hyperbola_m(m: int, arr: SourceArrangement, z0: float, theta: float):
    """Radius of the index-m phase-variation curve at polar angle theta.

    The curve collects the points where the source-2 phasor angle stays
    pinned at its index-m closure value while the source-3 phasor is
    left free.  Returns None where no real radius exists (including
    cos(theta) = 0, where the curve escapes to infinity).
    """
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    if arr.r2 <= 0:
        raise ValueError("r2 must be positive for the m-curve")
    ms = _m_scale(m, arr.phi2)
    if ms == 0.0:
        raise DegenerateIndex("m scale vanishes for this index and phase")
    return _hyperbola_radius(ms, 3.0 * arr.k * arr.r2, theta, z0)


def hyperbola_n(n: int, arr: SourceArrangement, z0: float, theta: float):
    """Radius of the index-n phase-variation curve at polar angle theta.

    Sibling of hyperbola_m with the roles of the sources swapped: the
    angle is measured against the source-3 direction theta3.
    """
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    if arr.r3 <= 0:
        raise ValueError("r3 must be positive for the n-curve")
    ns = _n_scale(n, arr.phi3)
    if ns == 0.0:
        raise DegenerateIndex("n scale vanishes for this index and phase")
    return _hyperbola_radius(ns, 3.0 * arr.k * arr.r3, theta - arr.theta3, z0)


def _hyperbola_radius(scale, three_k_r, angle, z0):
    c = math.cos(angle)
    denom = (three_k_r * c) ** 2 - scale * scale
    if denom <= 0.0:
        return None
    return abs(scale) * z0 / math.sqrt(denom)


def collinear_limit(epsilon: float, m: int, n: int, arr: SourceArrangement, z0: float):
    """Vortex position for a near-collinear arrangement theta3 = pi + epsilon.

    Expands the closed form around the collinear axis; arr supplies
    separations, phases and wavelength while the opening angle is taken
    as pi + epsilon directly.  Returns (theta, r_perp), with r_perp None
    once the radicand turns negative: the vortex has escaped to infinity
    and gone, which is the collinear destruction mechanism.  Only small
    perturbations |epsilon| < 0.1 are meaningful here.
    """
    if abs(epsilon) >= 0.1:
        raise ValueError("perturbative form needs |epsilon| < 0.1")
    if z0 <= 0:
        raise ValueError("z0 must be positive")
    _require_predictable(arr)
    ms, ns = mn_scale(m, n, arr.phi2, arr.phi3)
    if ms == 0.0:
        raise DegenerateIndex("m scale vanishes for this index and phase")
    shifted = (arr.r2 / arr.r3) * (ns / ms) + 1.0
    if shifted == 0.0:
        theta = 0.0
        tan_sq = 0.0
    elif epsilon == 0.0:
        return math.pi / 2.0, None
    else:
        t = shifted / epsilon
        theta = math.atan(t)
        tan_sq = t * t
    scaled = 3.0 * arr.k * arr.r2 / ms
    radicand = scaled * scaled / (1.0 + tan_sq) - 1.0
    if radicand <= 0.0:
        return theta, None
    return theta, z0 / math.sqrt(radicand)


def predict_all(arr: SourceArrangement, z0: float):
    """Every admissible vortex on the plane z = z0, both branches.

    Enumerates the admissible index lattice and expands each index into
    its two branches.  Sorted by (m, n) with the principal branch first.
    """
    from .lattice import enumerate_lattice

    out = []
    for m, n in enumerate_lattice(arr):
        pair = predict_vortex(m, n, arr, z0)
        if pair is None:
            continue
        out.extend(pair)
    out.sort(key=lambda p: (p.m, p.n, p.branch != "plus"))
    return out
