"""Index-plane geometry: which integer turn pairs admit vortices.

Admissible (m, n) pairs lie strictly inside an ellipse in the index
plane whose shape is fixed by the source geometry alone; relative
emission phases only translate it.  Conic coefficients follow the
convention a m^2 + 2 h m n + b n^2 + 2 g m + 2 f n + c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import COLLINEAR_SIN_TOL
from .wavefield import TWO_PI, SourceArrangement


@dataclass(frozen=True)
class EllipseDescriptor:
    """Conic coefficients and derived geometry of the admissibility ellipse."""

    a: float
    h: float
    b: float
    g: float
    f: float
    c: float
    Delta: float
    delta: float
    tau: float
    m0: float
    n0: float
    phi_rot: float
    s_plus: float
    s_minus: float
    lambda_plus: float
    lambda_minus: float


@dataclass(frozen=True)
class BoundingRectangle:
    """Axis-aligned envelope of the admissibility ellipse."""

    center_m: float
    center_n: float
    width_m: float
    width_n: float


def conic_from_arrangement(arr: SourceArrangement) -> EllipseDescriptor:
    """Admissibility conic for zero emission phases.

    Phases are deliberately excluded: they rigidly translate the figure
    by lattice_shift, so the shape is computed once for phi2 = phi3 = 0
    and shifted afterwards.
    """
    k, r2, r3 = arr.k, arr.r2, arr.r3
    c3 = math.cos(arr.theta3)
    s3 = math.sin(arr.theta3)
    a = 9.0 * r3 * r3
    h = -9.0 * r2 * r3 * c3
    b = 9.0 * r2 * r2
    g = 3.0 * r3 * r3 - 6.0 * r2 * r3 * c3
    f = 6.0 * r2 * r2 - 3.0 * r2 * r3 * c3
    c = (
        r3 * r3
        + 4.0 * r2 * r2
        - 4.0 * r2 * r3 * c3
        - (3.0 * k * r2 * r3 * s3 / TWO_PI) ** 2
    )
    big_delta = (
        a * (b * c - f * f) - h * (h * c - f * g) + g * (h * f - b * g)
    )
    small_delta = a * b - h * h
    tau = a + b
    denom = h * h - a * b
    if denom != 0.0:
        m0 = (b * g - h * f) / denom
        n0 = (a * f - h * g) / denom
    else:
        m0 = math.nan
        n0 = math.nan
    if h == 0.0:
        phi_rot = 0.0
    else:
        phi_rot = 0.5 * math.atan2(1.0, (b - a) / (2.0 * h))
    disc = math.sqrt(max(tau * tau - 4.0 * small_delta, 0.0))
    lambda_plus = 0.5 * (tau + disc)
    lambda_minus = 0.5 * (tau - disc)
    s_plus = _semi_axis(big_delta, lambda_plus, small_delta)
    s_minus = _semi_axis(big_delta, lambda_minus, small_delta)
    return EllipseDescriptor(
        a=a,
        h=h,
        b=b,
        g=g,
        f=f,
        c=c,
        Delta=big_delta,
        delta=small_delta,
        tau=tau,
        m0=m0,
        n0=n0,
        phi_rot=phi_rot,
        s_plus=s_plus,
        s_minus=s_minus,
        lambda_plus=lambda_plus,
        lambda_minus=lambda_minus,
    )


def _semi_axis(big_delta, lam, small_delta):
    if lam == 0.0 or small_delta == 0.0:
        return 0.0
    return math.sqrt(abs(big_delta / (lam * small_delta)))


def classify(desc: EllipseDescriptor) -> str:
    """One of "ellipse", "degenerate_line", "empty".

    A vanished source separation (a or b zero) admits nothing; collinear
    sources flatten the figure onto a line.  Collinearity is judged on
    delta relative to a*b since sin(theta3) never reaches exact zero in
    floating point.
    """
    if desc.a == 0.0 or desc.b == 0.0:
        return "empty"
    if desc.delta <= (COLLINEAR_SIN_TOL ** 2) * desc.a * desc.b:
        return "degenerate_line"
    if desc.Delta != 0.0 and desc.delta > 0.0 and desc.Delta / desc.tau < 0.0:
        return "ellipse"
    return "empty"


def lattice_shift(phi2: float, phi3: float):
    """Rigid index-plane translation produced by the emission phases."""
    return phi2 / TWO_PI, phi3 / TWO_PI


def bounding_rectangle(arr: SourceArrangement) -> BoundingRectangle:
    """Tight axis-aligned envelope of the (phase-shifted) ellipse.

    The extents are independent of theta3: the ellipse always touches
    the same rectangle of full widths k r2 / pi by k r3 / pi centred on
    (-1/3, -2/3) plus the phase shift.
    """
    dm, dn = lattice_shift(arr.phi2, arr.phi3)
    return BoundingRectangle(
        center_m=-1.0 / 3.0 + dm,
        center_n=-2.0 / 3.0 + dn,
        width_m=arr.k * arr.r2 / math.pi,
        width_n=arr.k * arr.r3 / math.pi,
    )


def admissibility_margin(arr: SourceArrangement, m, n):
    """Normalised depth of index (m, n) inside the ellipse.

    1 at the centre, 0 on the boundary, negative outside; the value is
    the conic form rescaled by its central value, so it is dimensionless
    and phase shifts are handled exactly.  m and n may be arrays.
    """
    if arr.r2 <= 0 or arr.r3 <= 0:
        return -math.inf
    s3 = math.sin(arr.theta3)
    if abs(s3) < COLLINEAR_SIN_TOL:
        return -math.inf
    dm, dn = lattice_shift(arr.phi2, arr.phi3)
    mp = 1.0 + 3.0 * (m - dm)
    np_ = 2.0 + 3.0 * (n - dn)
    rhs = (3.0 * arr.k * arr.r2 * s3 / TWO_PI) ** 2
    lhs = (mp * s3) ** 2 + (np_ * (arr.r2 / arr.r3) - mp * math.cos(arr.theta3)) ** 2
    return 1.0 - lhs / rhs


def enumerate_lattice(arr: SourceArrangement, z0=None):
    """All admissible integer index pairs, sorted lexicographically.

    Admissibility is strict interior membership and does not depend on
    the plane height, so z0 is accepted only for signature symmetry with
    the predictor.  Collinear or degenerate arrangements yield an empty
    list rather than an error.
    """
    del z0
    if arr.r2 <= 0 or arr.r3 <= 0:
        return []
    s3 = math.sin(arr.theta3)
    if abs(s3) < COLLINEAR_SIN_TOL:
        return []
    rect = bounding_rectangle(arr)
    m_lo = math.ceil(rect.center_m - rect.width_m / 2.0 - 1.0)
    m_hi = math.floor(rect.center_m + rect.width_m / 2.0 + 1.0)
    n_lo = math.ceil(rect.center_n - rect.width_n / 2.0 - 1.0)
    n_hi = math.floor(rect.center_n + rect.width_n / 2.0 + 1.0)
    ms = np.arange(m_lo, m_hi + 1)
    ns = np.arange(n_lo, n_hi + 1)
    gm, gn = np.meshgrid(ms, ns, indexing="ij")
    dm, dn = lattice_shift(arr.phi2, arr.phi3)
    mp = 1.0 + 3.0 * (gm - dm)
    np_ = 2.0 + 3.0 * (gn - dn)
    rhs = (3.0 * arr.k * arr.r2 * s3 / TWO_PI) ** 2
    lhs = (mp * s3) ** 2 + (np_ * (arr.r2 / arr.r3) - mp * math.cos(arr.theta3)) ** 2
    inside = lhs < rhs
    return sorted(zip(gm[inside].tolist(), gn[inside].tolist()))


def estimate_count(arr: SourceArrangement) -> float:
    """Area-based estimate of the admissible index count.

    Ellipse area over unit cell area; each admissible index carries two
    vortices, so twice the enumerated count is the matching quantity.
    """
    return (arr.k ** 2 / TWO_PI) * abs(arr.r2 * arr.r3 * math.sin(arr.theta3))
