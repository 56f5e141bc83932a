import math

import numpy as np
import pytest

from stampfold.geometry import Polygon

LATIN_CROSS = [
    (0, 0), (1, 0), (1, 2), (2, 2), (2, 3), (1, 3),
    (1, 4), (0, 4), (0, 3), (-1, 3), (-1, 2), (0, 2),
]


@pytest.fixture
def latin_cross() -> Polygon:
    return Polygon(LATIN_CROSS)


@pytest.fixture
def unit_square() -> Polygon:
    return Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def triangle_side2() -> Polygon:
    return Polygon([(0, 0), (2, 0), (1, math.sqrt(3))])


def random_star_polygon(rng, n: int, r_lo=0.5, r_hi=2.0) -> Polygon:
    """Simple polygon by construction: star-shaped around the origin.

    All angular gaps stay below pi so every chord remains inside its wedge.
    """
    while True:
        angles = np.sort(rng.uniform(0, 2 * math.pi, size=n))
        gaps = np.diff(angles, append=angles[0] + 2 * math.pi)
        if gaps.min() >= 0.05 and gaps.max() <= 2.6:
            break
    radii = rng.uniform(r_lo, r_hi, size=n)
    pts = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    return Polygon(pts)
