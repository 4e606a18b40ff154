"""Branched double covers of orbifold dissections and their quotients.

Both directions produce the same structure, :class:`CoveringData`,
describing a two-sheeted cover of a base dissection branched over its
orbifold points:

* :func:`double_cover` builds the canonical cover of a dissection: every
  non-orbifold point and every ordinary arc acquires two lifts, each
  orbifold point disappears, and the arc ending there unfolds into a
  single arc joining the two lifts of its other endpoint;
* :func:`quotient` starts from a surface with a half-turn symmetry and
  produces the quotient dissection in which each symmetric arc pair
  becomes one arc and each reversed fixed arc is cut in half, ending at a
  fresh orbifold point.

Each base polygon has two polygon instances upstairs.  ``cuts`` lists the
word positions where a slit pair (the two adjacent occurrences of an arc
at an orbifold point) sits; crossing such a position swaps the sheets.
The slot maps follow one parity rule: the side at base slot ``i`` carrying
sheet ``s`` lives in the instance ``s * (-1)^pieces`` at slot
``i - pieces``, where ``pieces`` counts the cuts before ``i``.
:func:`lift_curve` uses only this rule to lift combinatorial curves.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import (
    CURVE_THROUGH_BRANCH,
    Diagnostic,
    ValidationError,
    raise_on_error,
)
from .surface import (
    ORBIFOLD,
    Arc,
    BoundarySegment,
    CombinatorialCurve,
    DissectedSurface,
    MarkedPoint,
    Passage,
    Polygon,
    Side,
    SurfaceInvolution,
    arc_side,
    bseg_side,
    chord_bseg_side,
    classify_dissection,
    head_ray,
    make_surface,
    validate,
    validate_curve,
    validate_involution,
)

_SIGN = {1: "+", -1: "-"}


@dataclass(frozen=True)
class CoveringData:
    """A two-sheeted branched cover of ``base`` with total space ``total``.

    ``poly_instance[(base_poly, sheet)]`` names the two polygon instances
    upstairs; ``slot_image[(base_poly, slot, sheet)]`` maps word positions
    into them; ``cuts[base_poly]`` lists the first slots of slit pairs.
    ``point_image`` / ``arc_image`` / ``bseg_image`` label the two lifts of
    each non-orbifold cell (for arcs with an orientation flag), and
    ``slit_image`` names the single lift of each arc into a branch point.
    ``deck`` is the sheet-swapping symmetry of ``total``.
    """

    base: DissectedSurface
    total: DissectedSurface
    deck: SurfaceInvolution
    branch_points: tuple[str, ...]
    poly_instance: dict[tuple[str, int], str]
    slot_image: dict[tuple[str, int, int], tuple[str, int]]
    cuts: dict[str, tuple[int, ...]]
    point_image: dict[tuple[str, int], str]
    arc_image: dict[tuple[str, int], tuple[str, int]]
    bseg_image: dict[tuple[str, int], str]
    slit_image: dict[str, str]

    def piece(self, base_poly: str, slot: int) -> int:
        return sum(1 for p in self.cuts[base_poly] if p < slot)

    def side_sheet(self, base_poly: str, slot: int, instance_sheet: int) -> int:
        return instance_sheet * (-1) ** self.piece(base_poly, slot)


def _polygon_cuts(surface: DissectedSurface, poly: Polygon) -> list[int]:
    """First slots of the slit pairs: corners sitting at orbifold points."""
    cuts = []
    n = len(poly.sides)
    for i in range(n):
        s_in = poly.sides[i]
        point = surface.ray_point(head_ray(s_in))
        if surface.point_by_id[point].kind == ORBIFOLD:
            assert 1 <= i <= n - 2, "slit corner touches the boundary segment"
            nxt = poly.sides[i + 1]
            assert (
                s_in.is_arc
                and nxt.is_arc
                and s_in.ref == nxt.ref
                and s_in.direction == -nxt.direction
            ), "orbifold corner is not a slit pair"
            cuts.append(i)
    return cuts


def double_cover(surface: DissectedSurface) -> CoveringData:
    """The canonical double cover branched over the orbifold points."""
    raise_on_error(validate(surface))
    cls = classify_dissection(surface)
    raise_on_error(cls.report)

    orbifold = {p.id for p in surface.points if p.kind == ORBIFOLD}
    slit_arcs = {}
    for a in surface.arcs:
        ends_in_x = [e in orbifold for e in (a.tail, a.head)]
        assert not all(ends_in_x), "arc joins two orbifold points"
        if any(ends_in_x):
            slit_arcs[a.id] = a.head if a.tail in orbifold else a.tail

    points = []
    point_image: dict[tuple[str, int], str] = {}
    for p in surface.points:
        if p.kind == ORBIFOLD:
            continue
        for eps in (1, -1):
            pid = f"{p.id}{_SIGN[eps]}"
            points.append(MarkedPoint(pid, p.kind))
            point_image[(p.id, eps)] = pid

    arcs = []
    arc_image: dict[tuple[str, int], tuple[str, int]] = {}
    slit_image: dict[str, str] = {}
    arc_deck: dict[str, str] = {}
    reversed_arcs = set()
    for a in surface.arcs:
        if a.id in slit_arcs:
            m = slit_arcs[a.id]
            arcs.append(Arc(a.id, f"{m}+", f"{m}-"))
            slit_image[a.id] = a.id
            arc_deck[a.id] = a.id
            reversed_arcs.add(a.id)
        else:
            for eps in (1, -1):
                aid = f"{a.id}{_SIGN[eps]}"
                arcs.append(Arc(aid, f"{a.tail}{_SIGN[eps]}", f"{a.head}{_SIGN[eps]}"))
                arc_image[(a.id, eps)] = (aid, 1)
            arc_deck[f"{a.id}+"] = f"{a.id}-"
            arc_deck[f"{a.id}-"] = f"{a.id}+"

    bsegs = []
    polygons = []
    bseg_image: dict[tuple[str, int], str] = {}
    poly_instance: dict[tuple[str, int], str] = {}
    slot_image: dict[tuple[str, int, int], tuple[str, int]] = {}
    cuts_by_poly: dict[str, tuple[int, ...]] = {}
    bseg_deck: dict[str, str] = {}
    poly_deck: dict[str, str] = {}
    point_deck = {
        point_image[(p.id, eps)]: point_image[(p.id, -eps)]
        for p in surface.points
        if p.kind != ORBIFOLD
        for eps in (1, -1)
    }

    for poly in surface.polygons:
        n = len(poly.sides)
        cuts = _polygon_cuts(surface, poly)
        cuts_by_poly[poly.id] = tuple(cuts)
        k = len(cuts)
        b = surface.bseg_by_id[poly.sides[0].ref]

        def piece(i: int) -> int:
            return sum(1 for p in cuts if p < i)

        for eps in (1, -1):
            pid = f"{poly.id}{_SIGN[eps]}"
            poly_instance[(poly.id, eps)] = pid
            bid = f"{b.id}{_SIGN[eps]}"
            word: list[Side] = [bseg_side(bid)]
            i = 1
            while i < n:
                sheet = eps * (-1) ** piece(i)
                side = poly.sides[i]
                if i in cuts:
                    direction = 1 if sheet == 1 else -1
                    word.append(arc_side(side.ref, direction))
                    i += 2
                    continue
                word.append(arc_side(f"{side.ref}{_SIGN[sheet]}", side.direction))
                i += 1
            polygons.append(Polygon(pid, tuple(word)))
            bsegs.append(
                BoundarySegment(
                    bid,
                    f"{b.tail}{_SIGN[eps * (-1) ** k]}",
                    f"{b.head}{_SIGN[eps]}",
                )
            )
            bseg_image[(b.id, eps)] = bid
            for i in range(n):
                slot_image[(poly.id, i, eps)] = (pid, i - piece(i))
        poly_deck[f"{poly.id}+"] = f"{poly.id}-"
        poly_deck[f"{poly.id}-"] = f"{poly.id}+"
        bseg_deck[f"{b.id}+"] = f"{b.id}-"
        bseg_deck[f"{b.id}-"] = f"{b.id}+"

    total = make_surface(f"{surface.name}.cover", points, arcs, bsegs, polygons)
    rep = validate(total)
    assert rep.ok, f"double cover invalid: {rep.diagnostics}"
    deck = SurfaceInvolution(
        points=point_deck,
        arcs=arc_deck,
        reversed_arcs=frozenset(reversed_arcs),
        bsegs=bseg_deck,
        polygons=poly_deck,
    )
    deck_report, _ = validate_involution(total, deck)
    assert deck_report.ok, f"deck symmetry invalid: {deck_report.diagnostics}"
    return CoveringData(
        base=surface,
        total=total,
        deck=deck,
        branch_points=tuple(sorted(orbifold)),
        poly_instance=poly_instance,
        slot_image=slot_image,
        cuts=cuts_by_poly,
        point_image=point_image,
        arc_image=arc_image,
        bseg_image=bseg_image,
        slit_image=slit_image,
    )


# ---------------------------------------------------------------------------
# Quotient by a half-turn symmetry


def quotient(surface: DissectedSurface, inv: SurfaceInvolution) -> CoveringData:
    """The quotient dissection; reversed fixed arcs end at fresh orbifold
    points.  The result presents ``surface`` as a double cover of the
    quotient with the same bookkeeping as :func:`double_cover`."""
    raise_on_error(validate(surface))
    report, fixed_arcs = validate_involution(surface, inv)
    raise_on_error(report)
    fixed = set(fixed_arcs)

    def rep(mapping, x: str) -> str:
        return min(x, mapping[x])

    prep = lambda p: rep(inv.points, p)
    arep = lambda a: rep(inv.arcs, a)

    points = []
    for p in surface.points:
        if prep(p.id) == p.id:
            points.append(MarkedPoint(p.id, p.kind))
    for j in sorted(fixed):
        points.append(MarkedPoint(f"X_{j}", ORBIFOLD))

    arcs = []
    for a in surface.arcs:
        if a.id in fixed:
            arcs.append(Arc(a.id, prep(a.tail), f"X_{a.id}"))
        elif arep(a.id) == a.id:
            arcs.append(Arc(a.id, prep(a.tail), prep(a.head)))

    bsegs = []
    bseg_rep: dict[str, str] = {}
    for b in surface.bsegs:
        r = rep(inv.bsegs, b.id)
        bseg_rep[b.id] = r
        if r == b.id:
            bsegs.append(BoundarySegment(b.id, prep(b.tail), prep(b.head)))

    def base_side(s: Side) -> Side:
        if not s.is_arc:
            return bseg_side(bseg_rep[s.ref])
        if arep(s.ref) == s.ref:
            return arc_side(s.ref, s.direction)
        return inv.side_image(s)

    polygons = []
    cuts_by_poly: dict[str, tuple[int, ...]] = {}
    for poly in surface.polygons:
        if rep(inv.polygons, poly.id) != poly.id:
            continue
        word: list[Side] = [base_side(poly.sides[0])]
        cuts: list[int] = []
        pos = 1
        for s in poly.sides[1:]:
            if s.is_arc and s.ref in fixed:
                cuts.append(pos)
                word.append(arc_side(s.ref, 1))
                word.append(arc_side(s.ref, -1))
                pos += 2
            else:
                word.append(base_side(s))
                pos += 1
        polygons.append(Polygon(poly.id, tuple(word)))
        cuts_by_poly[poly.id] = tuple(cuts)

    base = make_surface(f"{surface.name}.quotient", points, arcs, bsegs, polygons)
    rep_base = validate(base)
    assert rep_base.ok, f"quotient invalid: {rep_base.diagnostics}"

    # Sheet-coherent polygon instances: breadth-first propagation along the
    # arc adjacencies, following the parity rule of the covering.
    def piece(poly_id: str, slot: int) -> int:
        return sum(1 for p in cuts_by_poly[poly_id] if p < slot)

    base_poly_of_total = {}
    for poly in surface.polygons:
        base_poly_of_total[poly.id] = rep(inv.polygons, poly.id)
    # Map a total slot back to its base slot (excluding slit expansions).
    base_slot: dict[tuple[str, int], int] = {}
    for bp in polygons:
        cuts = set(cuts_by_poly[bp.id])
        for i in range(len(bp.sides)):
            if i in cuts or (i - 1) in cuts:
                continue
            base_slot[(bp.id, i - sum(1 for p in cuts if p < i))] = i

    poly_instance: dict[tuple[str, int], str] = {}
    for bp in polygons:
        if (bp.id, 1) in poly_instance:
            continue
        poly_instance[(bp.id, 1)] = bp.id
        poly_instance[(bp.id, -1)] = inv.polygons[bp.id]
        queue = [bp.id]
        while queue:
            cur = queue.pop()
            n_base = len(base.polygon_by_id[cur].sides)
            for eps in (1, -1):
                total_poly = surface.polygon_by_id[poly_instance[(cur, eps)]]
                cuts = set(cuts_by_poly[cur])
                for i in range(1, n_base):
                    if i in cuts or (i - 1) in cuts:
                        continue
                    u = i - sum(1 for p in cuts if p < i)
                    side = total_poly.sides[u]
                    sheet = eps * (-1) ** piece(cur, i)
                    other_poly, other_slot = surface.occurrences[
                        (side.ref, -side.direction)
                    ]
                    q = base_poly_of_total[other_poly]
                    # Total slots agree between a polygon and its mirror.
                    e = base_slot[(q, other_slot)]
                    eps_q = sheet * (-1) ** piece(q, e)
                    if (q, eps_q) not in poly_instance:
                        poly_instance[(q, eps_q)] = other_poly
                        poly_instance[(q, -eps_q)] = inv.polygons[other_poly]
                        queue.append(q)
                    # A revisited polygon may disagree with the parity rule:
                    # that happens exactly when the covering is twisted
                    # relative to the slit construction (e.g. a torus over a
                    # cylinder).  The spanning-tree labels stand; consumers
                    # that need the true gluing follow the arc occurrences
                    # of the total surface instead of the parity rule.

    slot_image: dict[tuple[str, int, int], tuple[str, int]] = {}
    for bp in polygons:
        cuts = set(cuts_by_poly[bp.id])
        for eps in (1, -1):
            pid = poly_instance[(bp.id, eps)]
            for i in range(len(bp.sides)):
                slot_image[(bp.id, i, eps)] = (
                    pid,
                    i - sum(1 for p in cuts if p < i),
                )

    # Cell lifts, labelled by the coherent sheets.  Locate one base
    # occurrence of every base arc directly from the words.
    arc_image: dict[tuple[str, int], tuple[str, int]] = {}
    slit_image: dict[str, str] = {j: j for j in sorted(fixed)}
    occ_of_base_arc: dict[str, tuple[str, int]] = {}
    for bp in polygons:
        for i, s in enumerate(bp.sides):
            if s.is_arc and s.direction == 1:
                occ_of_base_arc.setdefault(s.ref, (bp.id, i))
    for a in arcs:
        if a.id in fixed:
            continue
        bp_id, i = occ_of_base_arc[a.id]
        for sheet in (1, -1):
            eps = sheet * (-1) ** piece(bp_id, i)
            pid, u = slot_image[(bp_id, i, eps)]
            side = surface.polygon_by_id[pid].sides[u]
            arc_image[(a.id, sheet)] = (side.ref, side.direction)

    bseg_image: dict[tuple[str, int], str] = {}
    for bp in polygons:
        bbar = bp.sides[0].ref
        for eps in (1, -1):
            pid = poly_instance[(bp.id, eps)]
            bseg_image[(bbar, eps)] = surface.polygon_by_id[pid].sides[0].ref

    point_image: dict[tuple[str, int], str] = {}
    for p in points:
        if p.kind == ORBIFOLD:
            continue
        for sheet in (1, -1):
            point_image[(p.id, sheet)] = None  # filled below
    for a in arcs:
        if a.id in fixed:
            continue
        base_arc = base.arc_by_id[a.id]
        for sheet in (1, -1):
            aid, direction = arc_image[(a.id, sheet)]
            total_arc = surface.arc_by_id[aid]
            t, h = (
                (total_arc.tail, total_arc.head)
                if direction == 1
                else (total_arc.head, total_arc.tail)
            )
            point_image[(base_arc.tail, sheet)] = t
            point_image[(base_arc.head, sheet)] = h
    for b in bsegs:
        for sheet in (1, -1):
            tb = surface.bseg_by_id[bseg_image[(b.id, sheet)]]
            if point_image.get((b.head, sheet)) is None:
                point_image[(b.head, sheet)] = tb.head
    for j in sorted(fixed):
        # Fallback for a point carrying nothing but the slit arc: either
        # labelling of its two lifts is coherent, so fix one.
        base_arc = base.arc_by_id[j]
        total_arc = surface.arc_by_id[j]
        if point_image.get((base_arc.tail, 1)) is None:
            point_image[(base_arc.tail, 1)] = total_arc.tail
            point_image[(base_arc.tail, -1)] = total_arc.head
    for key, val in list(point_image.items()):
        assert val is not None, f"point lift {key!r} undetermined"

    return CoveringData(
        base=base,
        total=surface,
        deck=inv,
        branch_points=tuple(f"X_{j}" for j in sorted(fixed)),
        poly_instance=poly_instance,
        slot_image=slot_image,
        cuts=cuts_by_poly,
        point_image=point_image,
        arc_image=arc_image,
        bseg_image=bseg_image,
        slit_image=slit_image,
    )


# ---------------------------------------------------------------------------
# Lifting curves


@dataclass(frozen=True)
class LiftedCurve:
    """The lift of a base curve, starting on sheet +1.

    For a closed base curve whose lift closes up after one traversal the
    preimage has two components and ``curve`` is the sheet +1 one
    (``doubled`` False).  Otherwise ``curve`` is the single doubled lift
    obtained by concatenating the traversal with its deck image.
    """

    curve: CombinatorialCurve
    doubled: bool


def lift_curve(cov: CoveringData, curve: CombinatorialCurve) -> LiftedCurve:
    """Lift a curve on the base; raises ``CURVE_THROUGH_BRANCH`` when a
    passage runs straight through a branch point."""
    raise_on_error(validate_curve(cov.base, curve))
    for k, p in enumerate(curve.passages):
        for c in cov.cuts[p.polygon]:
            if (p.entry, p.exit) == (c, c + 1):
                raise ValidationError(
                    [
                        Diagnostic(
                            CURVE_THROUGH_BRANCH,
                            f"passage {k} of curve {curve.id!r} runs through "
                            f"the branch point at polygon {p.polygon!r}",
                            (curve.id, k),
                        )
                    ]
                )
    ps = curve.passages
    inst0 = (-1) ** cov.piece(ps[0].polygon, ps[0].entry)
    inst = inst0
    lifted: list[Passage] = []
    for k, p in enumerate(ps):
        pid, te = cov.slot_image[(p.polygon, p.entry, inst)]
        _, tx = cov.slot_image[(p.polygon, p.exit, inst)]
        side = p.bseg_side if te == tx else chord_bseg_side(te, tx)
        lifted.append(Passage(pid, te, tx, side))
        if not curve.closed and k + 1 == len(ps):
            break
        # Follow the actual gluing of the total surface rather than the
        # parity rule, so that twisted coverings lift correctly too.
        nxt = ps[(k + 1) % len(ps)]
        exit_side = cov.total.polygon_by_id[pid].sides[tx]
        npid, nslot = cov.total.occurrences[(exit_side.ref, -exit_side.direction)]
        if cov.poly_instance[(nxt.polygon, 1)] == npid:
            inst = 1
        else:
            assert cov.poly_instance[(nxt.polygon, -1)] == npid
            inst = -1
        assert cov.slot_image[(nxt.polygon, nxt.entry, inst)] == (npid, nslot)
    if not curve.closed:
        out = CombinatorialCurve(f"{curve.id}.lift", False, tuple(lifted))
        rep = validate_curve(cov.total, out)
        assert rep.ok, f"lift invalid: {rep.diagnostics}"
        return LiftedCurve(out, doubled=False)
    if inst == inst0:
        out = CombinatorialCurve(f"{curve.id}.lift", True, tuple(lifted))
        rep = validate_curve(cov.total, out)
        assert rep.ok, f"lift invalid: {rep.diagnostics}"
        return LiftedCurve(out, doubled=False)
    mirrored = [
        Passage(cov.deck.polygons[q.polygon], q.entry, q.exit, q.bseg_side)
        for q in lifted
    ]
    out = CombinatorialCurve(
        f"{curve.id}.lift", True, tuple(lifted) + tuple(mirrored)
    )
    rep = validate_curve(cov.total, out)
    assert rep.ok, f"doubled lift invalid: {rep.diagnostics}"
    return LiftedCurve(out, doubled=True)


def transport_curve(cov: CoveringData, curve: CombinatorialCurve) -> CombinatorialCurve:
    """The deck image of a curve on the total surface (same slots and sides)."""
    moved = tuple(
        Passage(cov.deck.polygons[p.polygon], p.entry, p.exit, p.bseg_side)
        for p in curve.passages
    )
    return CombinatorialCurve(f"{curve.id}.deck", curve.closed, moved)
