from __future__ import annotations

import pytest

from oracles import boundary_circle_count, euler_characteristic, genus_from_counts
from skewgentle import (
    BOUNDARY,
    ORBIFOLD,
    PUNCTURE,
    Arc,
    BoundarySegment,
    CombinatorialCurve,
    MarkedPoint,
    Passage,
    Polygon,
    arc_side,
    boundary_components,
    bseg_side,
    classify_dissection,
    complete_involution,
    curve_crossings,
    make_surface,
    passage_winding,
    reverse_curve,
    surfaces_isomorphic,
    topology,
    validate,
    validate_curve,
    validate_involution,
)
from skewgentle.surface import chord_bseg_side


def _two_gon():
    points = [MarkedPoint("P1", BOUNDARY), MarkedPoint("P2", BOUNDARY)]
    bsegs = [BoundarySegment("b1", "P1", "P2"), BoundarySegment("b2", "P2", "P1")]
    arcs = [Arc("a", "P1", "P2")]
    polygons = [
        Polygon("F1", (bseg_side("b1"), arc_side("a", -1))),
        Polygon("F2", (bseg_side("b2"), arc_side("a", 1))),
    ]
    return points, arcs, bsegs, polygons


def test_make_surface_rotates_bseg_first():
    points, arcs, bsegs, polygons = _two_gon()
    rotated = [Polygon("F1", (arc_side("a", -1), bseg_side("b1"))), polygons[1]]
    s = make_surface("d", points, arcs, bsegs, rotated)
    assert not s.polygon_by_id["F1"].sides[0].is_arc
    assert s.polygon_by_id["F1"].sides[0].ref == "b1"


def test_validate_accepts_disc(disc):
    assert validate(disc).ok


def test_validate_rejects_single_arc_occurrence():
    points, arcs, bsegs, polygons = _two_gon()
    arcs.append(Arc("stray", "P1", "P2"))
    s = make_surface("bad", points, arcs, bsegs, polygons)
    assert "ARC_OCCURRENCE" in validate(s).codes()


def test_validate_rejects_same_direction_gluing():
    points, arcs, bsegs, polygons = _two_gon()
    polygons[1] = Polygon("F2", (bseg_side("b2"), arc_side("a", -1)))
    s = make_surface("bad", points, arcs, bsegs, polygons)
    codes = validate(s).codes()
    assert "NONORIENTABLE_GLUING" in codes or "CORNER_MISMATCH" in codes


def test_validate_rejects_multiple_bsegs_in_polygon():
    points = [MarkedPoint("P1", BOUNDARY), MarkedPoint("P2", BOUNDARY)]
    bsegs = [BoundarySegment("b1", "P1", "P2"), BoundarySegment("b2", "P2", "P1")]
    polygons = [Polygon("F1", (bseg_side("b1"), bseg_side("b2")))]
    s = make_surface("bad", points, [], bsegs, polygons)
    assert "MULTIPLE_BSEG" in validate(s).codes()


def test_validate_rejects_corner_mismatch():
    points = [
        MarkedPoint("P1", BOUNDARY),
        MarkedPoint("P2", BOUNDARY),
        MarkedPoint("P3", BOUNDARY),
    ]
    bsegs = [
        BoundarySegment("b1", "P1", "P2"),
        BoundarySegment("b2", "P2", "P3"),
        BoundarySegment("b3", "P3", "P1"),
    ]
    arcs = [Arc("a", "P1", "P1")]
    polygons = [
        Polygon("F1", (bseg_side("b1"), arc_side("a", 1))),
        Polygon("F2", (bseg_side("b2"), bseg_side("b3"), arc_side("a", -1))),
    ]
    s = make_surface("bad", points, arcs, bsegs, polygons)
    rep = validate(s)
    assert not rep.ok


def test_cylinder_topology_matches_cell_count_oracle(cylinders):
    for s in cylinders.values():
        top = topology(s)
        assert top.euler_char == euler_characteristic(s)
        assert len(top.boundary) == boundary_circle_count(s)
        assert top.connected
        chi_surface = top.euler_char - len(top.orbifold_points)
        assert top.genus == genus_from_counts(chi_surface + len(top.orbifold_points), len(top.boundary))


def test_cylinder_topology_values(cylinders):
    for s in cylinders.values():
        top = topology(s)
        assert top.genus == 0
        assert len(top.boundary) == 2
        assert len(top.orbifold_points) == 2
        assert len(top.punctures) == 0


def test_torus_topology(torus_with_involution):
    s, _ = torus_with_involution
    top = topology(s)
    assert top.genus == 1
    assert len(top.boundary) == 2
    assert top.euler_char == euler_characteristic(s) == -2


def test_classification_kinds(cylinders, disc, torus_with_involution):
    assert classify_dissection(cylinders[1]).kind == "x"
    assert classify_dissection(disc).kind == "bullet"
    assert classify_dissection(torus_with_involution[0]).kind == "bullet"


def test_boundary_components_order(cylinders):
    comps = boundary_components(cylinders[1])
    assert [c.bsegs for c in comps] == [("b_bot",), ("b_top",)]
    assert comps[0].marked == ("B",)


def test_complete_involution_rejects_odd_point_map(cylinders):
    s = cylinders[1]
    inv, report = complete_involution(
        s, {"B": "T", "T": "B", "X1": "X2", "X2": "X1"}, {"1": "4", "4": "1", "2": "3", "3": "2"}, []
    )
    assert inv is None or not validate_involution(s, inv)[0].ok


def test_torus_involution_valid(torus_with_involution):
    s, inv = torus_with_involution
    report, fixed = validate_involution(s, inv)
    assert report.ok
    assert sorted(fixed) == ["2", "3"]


def test_chord_side_rule():
    assert chord_bseg_side(1, 2) == "left"
    assert chord_bseg_side(1, 5) == "left"
    assert chord_bseg_side(2, 1) == "right"
    assert chord_bseg_side(0, 1) == "right"
    assert chord_bseg_side(5, 0) == "right"
    with pytest.raises(ValueError):
        chord_bseg_side(2, 2)


def test_passage_winding_signs():
    assert passage_winding(Passage("F", 1, 2, "left")) == 1
    assert passage_winding(Passage("F", 2, 1, "right")) == -1


def _staircase():
    return CombinatorialCurve(
        "st",
        False,
        (
            Passage("upper", 0, 1, "right"),
            Passage("lower", 1, 2, "left"),
            Passage("lower", 3, 4, "left"),
            Passage("lower", 5, 0, "right"),
        ),
    )


def test_validate_curve_accepts_staircase(cylinders):
    assert validate_curve(cylinders[1], _staircase()).ok


def test_validate_curve_rejects_wrong_side(cylinders):
    bad = CombinatorialCurve(
        "bad",
        False,
        (
            Passage("upper", 0, 1, "left"),
            Passage("lower", 1, 0, "right"),
        ),
    )
    assert "INVALID_CURVE" in validate_curve(cylinders[1], bad).codes()


def test_validate_curve_rejects_mismatched_consecutive(cylinders):
    bad = CombinatorialCurve(
        "bad",
        False,
        (
            Passage("upper", 0, 1, "right"),
            Passage("lower", 3, 0, "right"),
        ),
    )
    assert not validate_curve(cylinders[1], bad).ok


def test_curve_crossings(cylinders):
    assert curve_crossings(cylinders[1], _staircase()) == ["1", "2", "3"]


def test_reverse_curve_is_involutive(cylinders):
    c = _staircase()
    r = reverse_curve(c)
    assert validate_curve(cylinders[1], r).ok
    rr = reverse_curve(r)
    assert rr.passages == c.passages


def test_reverse_curve_flips_slots():
    c = _staircase()
    r = reverse_curve(c)
    assert r.passages[0].entry == c.passages[-1].exit
    assert r.passages[0].exit == c.passages[-1].entry


def test_surfaces_isomorphic_relabeling(cylinders):
    s = cylinders[1]
    relabeled = make_surface(
        "other",
        [MarkedPoint(f"p.{p.id}", p.kind) for p in s.points],
        [Arc(f"a.{a.id}", f"p.{a.tail}", f"p.{a.head}") for a in s.arcs],
        [BoundarySegment(f"s.{b.id}", f"p.{b.tail}", f"p.{b.head}") for b in s.bsegs],
        [
            Polygon(
                f"f.{poly.id}",
                tuple(
                    bseg_side(f"s.{x.ref}") if not x.is_arc else arc_side(f"a.{x.ref}", x.direction)
                    for x in poly.sides
                ),
            )
            for poly in s.polygons
        ],
    )
    assert surfaces_isomorphic(s, relabeled)


def test_surfaces_isomorphic_distinguishes_variants(cylinders):
    assert surfaces_isomorphic(cylinders[1], cylinders[2]) is None
    assert surfaces_isomorphic(cylinders[1], cylinders[4]) is None


def test_point_kinds_exist():
    assert {BOUNDARY, PUNCTURE, ORBIFOLD} == {"boundary", "puncture", "orbifold"}
