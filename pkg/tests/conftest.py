from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewgentle import (
    double_cover,
    one_orbifold_disc,
    two_hole_torus_surface,
    two_marked_disc,
    two_orbifold_cylinder,
    two_orbifold_disc,
)


@pytest.fixture(scope="session")
def cylinders():
    return {v: two_orbifold_cylinder(v) for v in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def disc():
    return two_marked_disc()


@pytest.fixture(scope="session")
def disc_x4():
    return one_orbifold_disc(4)


@pytest.fixture(scope="session")
def disc_xx():
    return two_orbifold_disc()


@pytest.fixture(scope="session")
def torus_with_involution():
    return two_hole_torus_surface()


@pytest.fixture(scope="session")
def cylinder_covers(cylinders):
    return {v: double_cover(s) for v, s in cylinders.items()}
