"""Phase vortices of three-source interference.

Closed-form prediction of vortex cores in the far field of three
monochromatic point sources, enumeration of the admissible index
lattice, numeric winding-number detection on sampled rasters, and
point-pinhole diffraction kernels for cross-checking the source model.
"""

from .analytic import (
    VortexPrediction,
    collinear_limit,
    hyperbola_m,
    hyperbola_n,
    mn_scale,
    predict_all,
    predict_theta,
    predict_vortex,
)
from .detector import DetectedVortex, MatchReport, detect_vortices, match, winding_number
from .diffraction import (
    PinholeScreen,
    fresnel_number,
    max_source_spacing,
    pinhole_field,
    rs_kernel,
    rs_kernel_far,
    screen_from_arrangement,
)
from .errors import (
    CollinearArrangement,
    DegenerateIndex,
    DomainError,
    GridTooSmall,
    SingularPoint,
    SourceCoincidence,
    UnequalAmplitudes,
)
from .lattice import (
    BoundingRectangle,
    EllipseDescriptor,
    admissibility_margin,
    bounding_rectangle,
    classify,
    conic_from_arrangement,
    enumerate_lattice,
    estimate_count,
    lattice_shift,
)
from .reports import write_raster
from .wavefield import (
    FieldGrid,
    PlaneWave,
    SourceArrangement,
    Window,
    farfield_value,
    plane_superposition,
    sample_grid,
    spherical_superposition,
    subtract_background,
)

__version__ = "0.1.0"

__all__ = [
    "BoundingRectangle",
    "CollinearArrangement",
    "DegenerateIndex",
    "DetectedVortex",
    "DomainError",
    "EllipseDescriptor",
    "FieldGrid",
    "GridTooSmall",
    "MatchReport",
    "PinholeScreen",
    "PlaneWave",
    "SingularPoint",
    "SourceArrangement",
    "SourceCoincidence",
    "UnequalAmplitudes",
    "VortexPrediction",
    "Window",
    "admissibility_margin",
    "bounding_rectangle",
    "classify",
    "collinear_limit",
    "conic_from_arrangement",
    "detect_vortices",
    "enumerate_lattice",
    "estimate_count",
    "farfield_value",
    "fresnel_number",
    "hyperbola_m",
    "hyperbola_n",
    "lattice_shift",
    "match",
    "max_source_spacing",
    "mn_scale",
    "pinhole_field",
    "plane_superposition",
    "predict_all",
    "predict_theta",
    "predict_vortex",
    "rs_kernel",
    "rs_kernel_far",
    "sample_grid",
    "screen_from_arrangement",
    "spherical_superposition",
    "subtract_background",
    "winding_number",
    "write_raster",
]
