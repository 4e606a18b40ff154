from __future__ import annotations

import random

import pytest

from oracles import boundary_circle_count, euler_characteristic, genus_from_counts
from skewgentle import (
    CombinatorialCurve,
    Passage,
    ValidationError,
    boundary_curve,
    double_cover,
    lift_curve,
    one_orbifold_disc,
    quotient,
    random_x_dissection,
    topology,
    surfaces_isomorphic,
    transport_curve,
    two_hole_torus_surface,
    two_orbifold_disc,
    validate_involution,
    winding,
)
from skewgentle.diagnostics import CURVE_THROUGH_BRANCH

EXPECTED_COVER_SHAPE = {1: (0, 4), 2: (0, 4), 3: (1, 2), 4: (1, 2)}


def test_cover_topology_of_cylinder_fixtures(cylinder_covers):
    for variant, cov in cylinder_covers.items():
        top = topology(cov.total)
        assert (top.genus, len(top.boundary)) == EXPECTED_COVER_SHAPE[variant]
        assert top.orbifold_points == ()
        assert top.connected


def test_cover_euler_characteristic_against_oracle(cylinder_covers, disc_x4):
    for cov in list(cylinder_covers.values()) + [double_cover(disc_x4)]:
        chi_base = euler_characteristic(cov.base)
        chi_total = euler_characteristic(cov.total)
        assert chi_total == 2 * chi_base - len(cov.branch_points)
        nb = boundary_circle_count(cov.total)
        assert genus_from_counts(chi_total, nb) == topology(cov.total).genus


def test_cover_of_orbifold_disc_is_a_disc(disc_x4):
    cov = double_cover(disc_x4)
    top = topology(cov.total)
    assert (top.genus, len(top.boundary)) == (0, 1)
    assert cov.branch_points == ("X",)
    # each of the four boundary marked points downstairs has two lifts
    marked_down = sum(len(b.marked) for b in topology(cov.base).boundary)
    marked_up = sum(len(b.marked) for b in top.boundary)
    assert (marked_down, marked_up) == (4, 8)


def test_deck_symmetry_is_a_valid_involution(cylinder_covers):
    for cov in cylinder_covers.values():
        report, fixed = validate_involution(cov.total, cov.deck)
        assert report.ok
        assert fixed == sorted(cov.slit_image.values())
        for pid, img in cov.deck.polygons.items():
            assert cov.deck.polygons[img] == pid
            assert img != pid  # sheet swap moves every polygon


def test_branch_points_of_cylinder_covers(cylinder_covers):
    for cov in cylinder_covers.values():
        assert sorted(cov.branch_points) == ["X1", "X2"]
        # branch points disappear upstairs
        assert all(p not in cov.total.point_by_id for p in cov.branch_points)


def test_quotient_undoes_cover_on_fixtures(cylinders, disc_x4, disc_xx):
    for surface in list(cylinders.values()) + [disc_x4, disc_xx]:
        cov = double_cover(surface)
        back = quotient(cov.total, cov.deck)
        assert surfaces_isomorphic(back.base, surface) is not None


def test_quotient_undoes_cover_on_random_dissections():
    rng = random.Random(424242)
    for _ in range(150):
        surface = random_x_dissection(rng)
        cov = double_cover(surface)
        chi_base = euler_characteristic(surface)
        chi_total = euler_characteristic(cov.total)
        assert chi_total == 2 * chi_base - len(cov.branch_points)
        back = quotient(cov.total, cov.deck)
        assert surfaces_isomorphic(back.base, surface) is not None


def test_twisted_torus_quotient_is_first_cylinder(
    torus_with_involution, cylinders
):
    surface, inv = torus_with_involution
    q = quotient(surface, inv)
    assert sorted(q.base.point_by_id) == ["Pb1", "Pt1", "X_2", "X_3"]
    maps = surfaces_isomorphic(q.base, cylinders[1])
    assert maps is not None
    assert maps["points"]["X_2"] == "X2"
    assert maps["points"]["X_3"] == "X1"


def test_twisted_quotient_differs_from_slit_cover(
    torus_with_involution, cylinder_covers
):
    # the genus-one double cover of the cylinder is not the slit cover
    surface, _ = torus_with_involution
    assert surfaces_isomorphic(surface, cylinder_covers[1].total) is None


def test_boundary_curves_lift_to_two_components(cylinders):
    cov = double_cover(cylinders[1])
    for bseg in ("b_bot", "b_top"):
        base_curve = boundary_curve(cylinders[1], bseg)
        lift = lift_curve(cov, base_curve)
        assert not lift.doubled
        assert lift.curve.closed
        assert len(lift.curve.passages) == len(base_curve.passages)
        assert winding(cov.total, lift.curve) == winding(cylinders[1], base_curve)
        other = transport_curve(cov, lift.curve)
        assert other.passages != lift.curve.passages
        assert winding(cov.total, other) == winding(cov.total, lift.curve)


def test_curve_around_one_branch_point_lifts_doubled(cylinders):
    # encircles X2 only: crossing arcs 1, 3, 4 of the first cylinder
    curve = CombinatorialCurve(
        "around_x2",
        True,
        (
            Passage("lower", 1, 4, "left"),
            Passage("lower", 5, 6, "left"),
            Passage("upper", 2, 1, "right"),
        ),
    )
    cov = double_cover(cylinders[1])
    lift = lift_curve(cov, curve)
    assert lift.doubled
    assert len(lift.curve.passages) == 2 * len(curve.passages)


def test_core_curve_around_both_branch_points_lifts_split(cylinders):
    curve = CombinatorialCurve(
        "core",
        True,
        (Passage("lower", 1, 6, "left"), Passage("upper", 2, 1, "right")),
    )
    cov = double_cover(cylinders[1])
    lift = lift_curve(cov, curve)
    assert not lift.doubled


def test_open_curve_lifts_to_open_curve(cylinders):
    curve = CombinatorialCurve(
        "crossing",
        False,
        (Passage("lower", 0, 1, "right"), Passage("upper", 1, 0, "right")),
    )
    cov = double_cover(cylinders[1])
    lift = lift_curve(cov, curve)
    assert not lift.doubled
    assert not lift.curve.closed
    assert len(lift.curve.passages) == 2


def test_orbifold_loop_cannot_be_lifted(cylinders):
    loop = CombinatorialCurve(
        "x2_loop", True, (Passage("lower", 2, 3, "left"),)
    )
    cov = double_cover(cylinders[1])
    with pytest.raises(ValidationError) as err:
        lift_curve(cov, loop)
    assert any(d.code == CURVE_THROUGH_BRANCH for d in err.value.diagnostics)


def test_boundary_lifts_on_twisted_cover_are_doubled(torus_with_involution):
    surface, inv = torus_with_involution
    q = quotient(surface, inv)
    for bseg in sorted(q.base.bseg_by_id):
        lift = lift_curve(q, boundary_curve(q.base, bseg))
        assert lift.doubled


def test_two_orbifold_disc_cover_shape(disc_xx):
    cov = double_cover(disc_xx)
    top = topology(cov.total)
    assert len(cov.branch_points) == 2
    assert euler_characteristic(cov.total) == 2 * euler_characteristic(disc_xx) - 2
    assert top.orbifold_points == ()


def test_unbranched_cover_of_plain_disc_splits():
    from skewgentle import two_marked_disc

    disc = two_marked_disc()
    cov = double_cover(disc)
    top = topology(cov.total)
    assert cov.branch_points == ()
    assert len(top.components) == 2
    assert not top.connected
    assert all(c.genus == 0 and len(c.boundary) == 1 for c in top.components)
