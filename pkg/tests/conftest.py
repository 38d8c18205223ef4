import math

import pytest

from trivortex import SourceArrangement


@pytest.fixture
def arr60():
    """Equal 3-wavelength arms opened at 60 degrees."""
    return SourceArrangement(lambda0=1.0, r2=3.0, r3=3.0, theta3=math.radians(60.0))


@pytest.fixture
def arr175():
    """Near-collinear arrangement with a handful of surviving vortices."""
    return SourceArrangement(lambda0=1.0, r2=3.0, r3=3.0, theta3=math.radians(175.0))
