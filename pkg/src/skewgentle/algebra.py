"""Exact arithmetic for finite-dimensional path-algebra quotients.

Everything is computed over the rationals with :class:`fractions.Fraction`;
no floating point is used anywhere.  Elements are sparse vectors over an
explicit basis, algebras carry a full multiplication table, and linear
algebra is done by exact Gaussian elimination.

Two quotient constructions cover the package's needs:

* :func:`graded_path_algebra` -- quadratic homogeneous relations (single
  paths or two-term sums with coefficient one), eliminated degree by
  degree; used for gentle pairs and split presentations.
* :func:`reduced_path_algebra` -- monomial relations plus the rewriting
  rule ``loop * loop -> value * loop`` for designated loops; used for the
  skew-gentle algebra of a triple (value 1) and its one-parameter
  deformations.

Paths are stored in application order; products are written in
composition order, so ``mul(x, y)`` applies ``y`` first.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional

from .diagnostics import (
    BAD_INPUT,
    NOT_IDEMPOTENT,
    NOT_STABILIZED,
    Diagnostic,
    ValidationError,
    raise_on_error,
)
from .presentations import Presentation, check_skew_gentle

Vector = dict[Any, Fraction]

ONE = Fraction(1)
ZERO = Fraction(0)


def default_max_path_length() -> int:
    return int(os.environ.get("SKEWGENTLE_MAX_PATH_LEN", "64"))


# ---------------------------------------------------------------------------
# Sparse vectors


def vec(*pairs: tuple[Any, Fraction]) -> Vector:
    out: Vector = {}
    for k, c in pairs:
        c = Fraction(c)
        if c:
            out[k] = out.get(k, ZERO) + c
            if not out[k]:
                del out[k]
    return out


def vadd(x: Vector, y: Vector) -> Vector:
    out = dict(x)
    for k, c in y.items():
        s = out.get(k, ZERO) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vaxpy(x: Vector, y: Vector, c: Fraction) -> Vector:
    """x + c * y."""
    if not c:
        return dict(x)
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, ZERO) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(x: Vector, c: Fraction) -> Vector:
    c = Fraction(c)
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def vsub(x: Vector, y: Vector) -> Vector:
    return vaxpy(x, y, Fraction(-1))


def veq(x: Vector, y: Vector) -> bool:
    return not vsub(x, y)


# ---------------------------------------------------------------------------
# Exact row reduction


class SpanBasis:
    """An incrementally maintained reduced row basis (exact RREF).

    ``order`` ranks the columns; the smallest rank in a row is its pivot.
    """

    def __init__(self, order: Optional[Callable[[Any], Any]] = None):
        self.order = order if order is not None else (lambda k: k)
        self.rows: dict[Any, Vector] = {}  # pivot key -> reduced row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, row: Vector) -> Vector:
        row = dict(row)
        while row:
            lead = min(row, key=self.order)
            hit = self.rows.get(lead)
            if hit is None:
                return row
            row = vaxpy(row, hit, -row[lead])
        return row

    def add(self, row: Vector) -> bool:
        """Insert a vector; returns True when the rank grew."""
        row = self._reduce(row)
        if not row:
            return False
        lead = min(row, key=self.order)
        row = vscale(row, ONE / row[lead])
        for piv, existing in list(self.rows.items()):
            if lead in existing:
                self.rows[piv] = vaxpy(existing, row, -existing[lead])
        self.rows[lead] = row
        return True

    def contains(self, row: Vector) -> bool:
        return not self._reduce(row)

    def express(self, row: Vector) -> Optional[dict[Any, Fraction]]:
        """Coefficients writing ``row`` over the stored rows, by pivot key."""
        residue = dict(row)
        coeffs: dict[Any, Fraction] = {}
        while residue:
            lead = min(residue, key=self.order)
            hit = self.rows.get(lead)
            if hit is None:
                return None
            coeffs[lead] = residue[lead]
            residue = vaxpy(residue, hit, -residue[lead])
        return coeffs


# ---------------------------------------------------------------------------
# Algebras with explicit product tables


@dataclass
class TableAlgebra:
    """A finite-dimensional unital algebra with a full product table.

    ``table[i][j]`` is the vector of ``basis_i * basis_j`` in composition
    order (``basis_j`` is applied first).  Vectors are keyed by basis
    index.
    """

    labels: tuple[Any, ...]
    table: list[list[Vector]]
    unit: Vector

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def __post_init__(self):
        self.index_of = {lab: i for i, lab in enumerate(self.labels)}

    def element(self, label: Any, coeff: Fraction = ONE) -> Vector:
        return vec((self.index_of[label], Fraction(coeff)))

    def mul(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, ci in x.items():
            row = self.table[i]
            for j, cj in y.items():
                prod = row[j]
                if not prod:
                    continue
                c = ci * cj
                for k, ck in prod.items():
                    s = out.get(k, ZERO) + c * ck
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def describe(self, x: Vector) -> str:
        terms = []
        for i in sorted(x, key=lambda i: repr(self.labels[i])):
            terms.append(f"{x[i]}*{self.labels[i]!r}")
        return " + ".join(terms) if terms else "0"


def algebra_from_products(
    labels: Iterable[Any],
    product: Callable[[Any, Any], Mapping[Any, Fraction]],
    unit: Mapping[Any, Fraction],
) -> TableAlgebra:
    """Build a table algebra from a label-level product function.

    ``product(a, b)`` returns the label-keyed expansion of ``a * b`` in
    composition order (``b`` first).
    """
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    table = [
        [
            {index[k]: Fraction(c) for k, c in product(a, b).items() if c}
            for b in labels
        ]
        for a in labels
    ]
    unit_vec = {index[k]: Fraction(c) for k, c in unit.items() if c}
    return TableAlgebra(labels, table, unit_vec)


def verify_associativity(A: TableAlgebra) -> bool:
    """Exhaustively check associativity and unitality of the table."""
    n = A.dimension
    for i in range(n):
        bi = vec((i, ONE))
        if not veq(A.mul(A.unit, bi), bi) or not veq(A.mul(bi, A.unit), bi):
            return False
    for i in range(n):
        for j in range(n):
            left = A.table[i][j]
            for k in range(n):
                bk = vec((k, ONE))
                lhs = A.mul(left, bk)
                rhs = A.mul(vec((i, ONE)), A.table[j][k])
                if not veq(lhs, rhs):
                    return False
    return True


# ---------------------------------------------------------------------------
# Path-algebra quotients

PathKey = tuple[str, tuple[str, ...]]  # (source vertex, arrows in application order)


def path_target(pres: Presentation, key: PathKey) -> str:
    src, arrows = key
    if not arrows:
        return src
    return pres.arrow_by_id[arrows[-1]].target


@dataclass
class PathAlgebra:
    """A quotient of a path algebra with a chosen monomial basis.

    ``normal_forms`` sends every enumerated path key to its expansion over
    the basis (by index); paths at or beyond ``zero_length`` vanish.
    """

    presentation: Presentation
    algebra: TableAlgebra
    normal_forms: dict[PathKey, Vector]
    zero_length: int
    dims_by_length: tuple[int, ...]

    def vertex(self, v: str) -> Vector:
        return self.algebra.element((v, ()))

    def arrow(self, a: str) -> Vector:
        arr = self.presentation.arrow_by_id[a]
        return self.reduce((arr.source, (a,)))

    def reduce(self, key: PathKey) -> Vector:
        if len(key[1]) >= self.zero_length:
            return {}
        nf = self.normal_forms.get(key)
        if nf is None:
            raise KeyError(f"path {key!r} is not composable in the quiver")
        return dict(nf)

    @property
    def dimension(self) -> int:
        return self.algebra.dimension


def _build_path_table(
    pres: Presentation,
    basis: list[PathKey],
    normal_forms: dict[PathKey, Vector],
    zero_length: int,
) -> TableAlgebra:
    index = {k: i for i, k in enumerate(basis)}
    targets = {k: path_target(pres, k) for k in basis}
    table: list[list[Vector]] = []
    for x in basis:
        row: list[Vector] = []
        for y in basis:
            # x * y in composition order: y is traversed first.
            if targets[y] != x[0]:
                row.append({})
                continue
            concat: PathKey = (y[0], y[1] + x[1])
            if len(concat[1]) >= zero_length:
                row.append({})
            else:
                row.append(dict(normal_forms[concat]))
        table.append(row)
    unit: Vector = {}
    for v in pres.vertices:
        unit[index[(v, ())]] = ONE
    return TableAlgebra(tuple(basis), table, unit)


def graded_path_algebra(
    pres: Presentation, max_len: Optional[int] = None
) -> PathAlgebra:
    """Quotient by homogeneous quadratic relations, degree by degree.

    Relations may be single length-two paths or two-term sums (both with
    coefficient one).  Within each graded piece the lexicographically
    first paths survive as basis vectors.  Raises ``NOT_STABILIZED`` when
    the dimensions have not reached zero by ``max_len``.
    """
    if pres.special:
        raise ValidationError(
            [Diagnostic(BAD_INPUT, "special loops are not allowed here; build the reduced algebra")]
        )
    limit = max_len if max_len is not None else default_max_path_length()
    by_id = pres.arrow_by_id
    out_arrows: dict[str, list[str]] = {v: [] for v in pres.vertices}
    for a in pres.arrows:
        out_arrows[a.source].append(a.id)
    for v in out_arrows:
        out_arrows[v].sort()

    raw: dict[int, list[PathKey]] = {
        0: [(v, ()) for v in pres.vertices],
        1: [(a.source, (a.id,)) for a in sorted(pres.arrows, key=lambda a: a.id)],
    }
    normal_forms: dict[PathKey, Vector] = {}
    basis: list[PathKey] = []
    dims: list[int] = []
    index_of: dict[PathKey, int] = {}

    def admit(key: PathKey) -> None:
        index_of[key] = len(basis)
        basis.append(key)
        normal_forms[key] = {index_of[key]: ONE}

    for key in raw[0]:
        admit(key)
    dims.append(len(raw[0]))
    for key in raw[1]:
        admit(key)
    dims.append(len(raw[1]))

    rel_data = []  # (source vertex, target vertex, tuple of paths)
    for rel in pres.relations:
        first = rel[0]
        rel_data.append(
            (by_id[first[0]].source, by_id[first[1]].target, rel)
        )

    length = 1
    while True:
        if dims[-1] == 0:
            zero_length = length
            break
        length += 1
        if length > limit:
            raise ValidationError(
                [
                    Diagnostic(
                        NOT_STABILIZED,
                        f"graded dimensions did not vanish by length {limit}",
                    )
                ]
            )
        prev = raw[length - 1]
        cur: list[PathKey] = []
        for src, arrows in prev:
            tgt = path_target(pres, (src, arrows))
            for aid in out_arrows[tgt]:
                cur.append((src, arrows + (aid,)))
        raw[length] = cur
        # Group this length by graded piece and eliminate the ideal.
        pieces: dict[tuple[str, str], list[PathKey]] = {}
        for key in cur:
            pieces.setdefault((key[0], path_target(pres, key)), []).append(key)
        total = 0
        for (psrc, ptgt), keys in sorted(pieces.items()):
            keys = sorted(keys)
            rank_of = {k: -i for i, k in enumerate(keys)}  # lex-last leads
            span = SpanBasis(order=lambda k: rank_of[k])
            for rsrc, rtgt, rel in rel_data:
                for p in range(length - 1):
                    q = length - 2 - p
                    for u in raw[p]:
                        if u[0] != psrc or path_target(pres, u) != rsrc:
                            continue
                        for w in raw[q]:
                            if w[0] != rtgt or path_target(pres, w) != ptgt:
                                continue
                            row: Vector = {}
                            for path in rel:
                                key = (psrc, u[1] + tuple(path) + w[1])
                                row[key] = row.get(key, ZERO) + ONE
                            span.add(row)
            pivots = set(span.rows)
            for key in keys:
                if key in pivots:
                    continue
                admit(key)
            total += len(keys) - len(pivots)
            for piv, row in span.rows.items():
                nf: Vector = {}
                for key, c in row.items():
                    if key == piv:
                        continue
                    nf[index_of[key]] = -c
                normal_forms[piv] = nf
        dims.append(total)

    algebra = _build_path_table(pres, basis, normal_forms, zero_length)
    return PathAlgebra(pres, algebra, normal_forms, zero_length, tuple(dims))


def reduced_path_algebra(
    triple: Presentation,
    loop_values: Optional[Mapping[str, Fraction]] = None,
    max_len: Optional[int] = None,
) -> PathAlgebra:
    """Quotient by monomial relations plus ``e*e -> value * e`` loop rules.

    With all values 1 this is the algebra of a skew-gentle triple; other
    values give its deformations.  The basis -- paths avoiding both the
    relations and repeated special loops -- does not depend on the values.
    """
    raise_on_error(check_skew_gentle(triple))
    values = {
        e: (Fraction(loop_values.get(e, 1)) if loop_values is not None else ONE)
        for e in triple.special
    }
    limit = max_len if max_len is not None else default_max_path_length()
    pairs = set(triple.monomial_pairs)
    forbidden = pairs | {(e, e) for e in triple.special}
    by_id = triple.arrow_by_id
    out_arrows: dict[str, list[str]] = {v: [] for v in triple.vertices}
    for a in triple.arrows:
        out_arrows[a.source].append(a.id)
    for v in out_arrows:
        out_arrows[v].sort()

    basis: list[PathKey] = [(v, ()) for v in triple.vertices]
    dims = [len(basis)]
    current = [(a.source, (a.id,)) for a in sorted(triple.arrows, key=lambda a: a.id)]
    length = 1
    while current:
        basis.extend(current)
        dims.append(len(current))
        length += 1
        if length > limit:
            raise ValidationError(
                [
                    Diagnostic(
                        NOT_STABILIZED,
                        f"path lengths did not stabilize by {limit}",
                    )
                ]
            )
        nxt: list[PathKey] = []
        for src, arrows in current:
            tgt = by_id[arrows[-1]].target
            for aid in out_arrows[tgt]:
                if (arrows[-1], aid) in forbidden:
                    continue
                nxt.append((src, arrows + (aid,)))
        current = nxt
    zero_length = length
    dims.append(0)

    index = {k: i for i, k in enumerate(basis)}
    basis_set = set(basis)

    def product(x: PathKey, y: PathKey) -> Vector:
        # x * y, y first.
        if path_target(triple, y) != x[0]:
            return {}
        if not y[1]:
            return {index[x]: ONE}
        if not x[1]:
            return {index[y]: ONE}
        a_last, b_first = y[1][-1], x[1][0]
        if (a_last, b_first) in pairs:
            return {}
        if a_last == b_first and a_last in triple.special:
            merged: PathKey = (y[0], y[1] + x[1][1:])
            assert merged in basis_set
            return {index[merged]: values[a_last]}
        joined: PathKey = (y[0], y[1] + x[1])
        assert joined in basis_set, "product left the reduced basis"
        return {index[joined]: ONE}

    table = [[product(x, y) for y in basis] for x in basis]
    unit = {index[(v, ())]: ONE for v in triple.vertices}
    algebra = TableAlgebra(tuple(basis), table, unit)
    normal_forms = {k: {index[k]: ONE} for k in basis}
    return PathAlgebra(triple, algebra, normal_forms, zero_length, tuple(dims))


# ---------------------------------------------------------------------------
# Corners eAe


@dataclass
class CornerAlgebra:
    """The subalgebra e*A*e for an idempotent e, with its own basis."""

    parent: TableAlgebra
    idempotent: Vector
    algebra: TableAlgebra
    basis_vectors: list[Vector]  # corner basis written in parent coordinates
    _span: SpanBasis
    _pivot_index: dict

    def express(self, x: Vector) -> Optional[Vector]:
        """Corner coordinates of a parent vector, or None if outside."""
        coeffs = self._span.express(x)
        if coeffs is None:
            return None
        out: Vector = {}
        for piv, c in coeffs.items():
            out[self._pivot_index[piv]] = c
        return out

    def embed(self, x: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            out = vaxpy(out, self.basis_vectors[i], c)
        return out


def corner_algebra(A: TableAlgebra, e: Vector) -> CornerAlgebra:
    """Carve out e*A*e; raises ``NOT_IDEMPOTENT`` when e squares wrong."""
    if not veq(A.mul(e, e), e):
        raise ValidationError(
            [Diagnostic(NOT_IDEMPOTENT, "corner element does not square to itself")]
        )
    span = SpanBasis()
    for i in range(A.dimension):
        span.add(A.mul(e, A.mul(vec((i, ONE)), e)))
    pivots = sorted(span.rows)
    basis_vectors = [span.rows[p] for p in pivots]
    pivot_index = {p: i for i, p in enumerate(pivots)}

    def to_corner(x: Vector) -> Vector:
        coeffs = span.express(x)
        assert coeffs is not None, "corner product left the corner span"
        return {pivot_index[p]: c for p, c in coeffs.items()}

    labels = tuple(f"c{i}" for i in range(len(basis_vectors)))
    table = [
        [to_corner(A.mul(x, y)) for y in basis_vectors]
        for x in basis_vectors
    ]
    unit = to_corner(e)
    corner = TableAlgebra(labels, table, unit)
    return CornerAlgebra(A, e, corner, basis_vectors, span, pivot_index)


# ---------------------------------------------------------------------------
# Algebra automorphisms and skew group algebras


@dataclass
class BasisMap:
    """A linear endomorphism given by its images on the basis."""

    images: list[Vector]

    def apply(self, x: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            out = vaxpy(out, self.images[i], c)
        return out


def basis_map_from_permutation(
    A: TableAlgebra,
    label_map: Mapping[Any, Any],
    signs: Optional[Mapping[Any, int]] = None,
) -> BasisMap:
    """The map sending each basis label to (sign) * (image label)."""
    images: list[Vector] = []
    for lab in A.labels:
        img = label_map[lab]
        s = Fraction(signs.get(lab, 1)) if signs else ONE
        images.append(vec((A.index_of[img], s)))
    return BasisMap(images)


def verify_algebra_involution(A: TableAlgebra, act: BasisMap) -> bool:
    """Check: order two, fixes the unit, respects all products."""
    for i in range(A.dimension):
        b = vec((i, ONE))
        if not veq(act.apply(act.apply(b)), b):
            return False
    if not veq(act.apply(A.unit), A.unit):
        return False
    for i in range(A.dimension):
        bi = vec((i, ONE))
        fi = act.apply(bi)
        for j in range(A.dimension):
            bj = vec((j, ONE))
            if not veq(act.apply(A.table[i][j]), A.mul(fi, act.apply(bj))):
                return False
    return True


def skew_group_algebra(A: TableAlgebra, act: BasisMap) -> TableAlgebra:
    """The crossed product of A with the order-two group {1, s}.

    Basis labels are ``(label, g)`` with ``g`` in {0, 1}; the product rule
    is ``(x ⊗ g)(y ⊗ h) = x * g(y) ⊗ g+h``.
    """
    labels = [(lab, g) for g in (0, 1) for lab in A.labels]
    index = {lab: i for i, lab in enumerate(labels)}
    table: list[list[Vector]] = []
    for lab_x, g in labels:
        i = A.index_of[lab_x]
        row: list[Vector] = []
        for lab_y, h in labels:
            y = vec((A.index_of[lab_y], ONE))
            if g == 1:
                y = act.apply(y)
            prod = A.mul(vec((i, ONE)), y)
            row.append(
                {index[(A.labels[k], (g + h) % 2)]: c for k, c in prod.items()}
            )
        table.append(row)
    unit = {index[(A.labels[k], 0)]: c for k, c in A.unit.items()}
    return TableAlgebra(tuple(labels), table, unit)


# ---------------------------------------------------------------------------
# Morphism verification


@dataclass(frozen=True)
class MorphismVerdict:
    is_homomorphism: bool
    is_surjective: bool
    is_isomorphism: bool
    failures: tuple[str, ...]


def verify_morphism(
    domain: Presentation,
    vertex_images: Mapping[str, Vector],
    arrow_images: Mapping[str, Vector],
    target: TableAlgebra,
    expected_dim: int,
    unit_image: Optional[Vector] = None,
    loop_values: Optional[Mapping[str, Fraction]] = None,
) -> MorphismVerdict:
    """Check that generator images define an algebra map, and whether it
    is onto and an isomorphism.

    The domain is the quotient of the path algebra of ``domain`` by its
    relations, with each special loop ``e`` additionally satisfying
    ``e*e = value * e`` (value 1 unless overridden via ``loop_values``).
    ``expected_dim`` must be the independently computed domain dimension;
    the verdict combines homomorphism, surjectivity and the dimension
    count.
    """
    failures: list[str] = []
    unit = unit_image if unit_image is not None else target.unit

    total: Vector = {}
    for v in domain.vertices:
        ev = vertex_images[v]
        if not veq(target.mul(ev, ev), ev):
            failures.append(f"image of vertex {v!r} is not idempotent")
        total = vadd(total, ev)
    if not veq(total, unit):
        failures.append("vertex images do not sum to the unit")
    for u in domain.vertices:
        for v in domain.vertices:
            if u == v:
                continue
            if target.mul(vertex_images[u], vertex_images[v]):
                failures.append(f"images of vertices {u!r}, {v!r} are not orthogonal")

    for a in domain.arrows:
        img = arrow_images[a.id]
        framed = target.mul(
            vertex_images[a.target], target.mul(img, vertex_images[a.source])
        )
        if not veq(framed, img):
            failures.append(f"image of arrow {a.id!r} is not framed by its endpoints")

    for rel in domain.relations:
        acc: Vector = {}
        for a1, a2 in rel:
            acc = vadd(acc, target.mul(arrow_images[a2], arrow_images[a1]))
        if acc:
            failures.append(f"relation {rel!r} does not map to zero")
    for e in sorted(domain.special):
        value = Fraction(loop_values.get(e, 1)) if loop_values else ONE
        img = arrow_images[e]
        if not veq(target.mul(img, img), vscale(img, value)):
            failures.append(f"special loop {e!r} does not satisfy its square rule")

    is_hom = not failures

    gens = [vertex_images[v] for v in domain.vertices]
    gens += [arrow_images[a.id] for a in domain.arrows]
    span = SpanBasis()
    frontier: list[Vector] = []
    for g in gens + [unit]:
        if span.add(g):
            frontier.append(g)
    while frontier:
        new_frontier: list[Vector] = []
        for w in frontier:
            for g in gens:
                prod = target.mul(w, g)
                if prod and span.add(prod):
                    new_frontier.append(prod)
                prod = target.mul(g, w)
                if prod and span.add(prod):
                    new_frontier.append(prod)
        frontier = new_frontier
    is_surj = span.rank == target.dimension
    if not is_surj:
        failures.append(
            f"images generate a subalgebra of dimension {span.rank} < {target.dimension}"
        )
    is_iso = is_hom and is_surj and expected_dim == target.dimension
    if expected_dim != target.dimension:
        failures.append(
            f"domain dimension {expected_dim} differs from target dimension {target.dimension}"
        )
    return MorphismVerdict(is_hom, is_surj, is_iso, tuple(failures))


# ---------------------------------------------------------------------------
# Deformation family of a skew-gentle algebra


@dataclass(frozen=True)
class DeformationVerdict:
    value: Fraction
    verdict: MorphismVerdict


def verify_deformation_map(
    triple: Presentation, value: Fraction
) -> DeformationVerdict:
    """Check the scaling map from the ``value``-deformed algebra.

    The deformed algebra imposes ``e*e = value * e`` on each special loop.
    Sending each loop ``e`` to ``value * e`` and fixing all other
    generators defines a map into the undeformed algebra; it is an
    isomorphism exactly when ``value`` is invertible.
    """
    value = Fraction(value)
    base = reduced_path_algebra(triple)
    deformed_dim = reduced_path_algebra(triple, {e: value for e in triple.special}).dimension
    vertex_images = {v: base.vertex(v) for v in triple.vertices}
    arrow_images: dict[str, Vector] = {}
    for a in triple.arrows:
        img = base.arrow(a.id)
        if a.id in triple.special:
            img = vscale(img, value)
        arrow_images[a.id] = img
    verdict = verify_morphism(
        triple,
        vertex_images,
        arrow_images,
        base.algebra,
        expected_dim=deformed_dim,
        loop_values={e: value for e in triple.special},
    )
    return DeformationVerdict(value, verdict)
