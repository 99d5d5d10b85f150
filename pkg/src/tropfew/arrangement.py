"""Intersections of two tropical curves and the discrete mixed volume bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Literal

from . import polygon as pg
from .field import ExpVec, LaurentPoly
from .tropical import Cell, Edge, RPoint, TropicalCurve, corner_locus, positive_part

Kind = Literal["transversal", "typeI", "typeII", "typeIII"]
CellRef = tuple[Literal["vertex", "edge"], int]

INF = None  # open end of a parameter range


class NonTransversalError(ValueError):
    """The curves meet in a non-transversal cell; the patchworking count does not apply."""


@dataclass(frozen=True)
class IntersectionCell:
    """One cell ``xi = xi1 ∩ xi2`` of the arrangement.

    ``geometry`` is ``point`` (``points[0]``), ``segment`` (two endpoints),
    ``ray`` (start point and ``direction``) or ``line`` (a point and
    ``direction``).
    """

    xi1: CellRef
    xi2: CellRef
    geometry: Literal["point", "segment", "ray", "line"]
    points: tuple[RPoint, ...]
    direction: tuple[int, int] | None
    sigma1: Cell
    sigma2: Cell
    kind: Kind
    positive: bool | None = None
    multiplicity: int | None = None

    @property
    def dimension(self) -> int:
        return 0 if self.geometry == "point" else 1

    @property
    def sigma(self) -> list[ExpVec]:
        """Vertices of the dual polytope ``sigma1 + sigma2``."""
        return pg.minkowski_sum(self.sigma1.vertices, self.sigma2.vertices)

    @property
    def point(self) -> RPoint:
        return self.points[0]

    def sample_point(self) -> RPoint:
        """A point in the relative interior."""
        if self.geometry == "point":
            return self.points[0]
        if self.geometry == "segment":
            (a, b), (c, d) = self.points
            return ((a + c) / 2, (b + d) / 2)
        p = self.points[0]
        return (p[0] + self.direction[0], p[1] + self.direction[1])


# ---- parametrized open pieces ------------------------------------------------

@dataclass(frozen=True)
class _Piece:
    origin: RPoint
    u: tuple[int, int]
    lo: Fraction | None   # None: unbounded
    hi: Fraction | None


def _piece(e: Edge) -> _Piece:
    if e.kind == "segment":
        d = pg.sub(e.end, e.start)
        # d = L * u with u primitive
        length = d[0] / e.direction[0] if e.direction[0] else d[1] / e.direction[1]
        return _Piece(e.start, e.direction, Fraction(0), Fraction(length))
    if e.kind == "ray":
        return _Piece(e.start, e.direction, Fraction(0), None)
    return _Piece(e.start, e.direction, None, None)


def _inside_open(s: Fraction, lo, hi) -> bool:
    return (lo is None or s > lo) and (hi is None or s < hi)


def _param_of(p: _Piece, x: RPoint) -> Fraction | None:
    """Parameter of ``x`` on the line of ``p`` or None when off the line."""
    d = pg.sub(x, p.origin)
    if pg.cross(p.u, d) != 0:
        return None
    return Fraction(d[0], p.u[0]) if p.u[0] else Fraction(d[1], p.u[1])


def _on_open_edge(e: Edge, x: RPoint) -> bool:
    p = _piece(e)
    s = _param_of(p, x)
    return s is not None and _inside_open(s, p.lo, p.hi)


def _edge_edge(e1: Edge, e2: Edge):
    """Intersection of two open edges: None, ('point', x) or ('overlap', lo, hi) on e1's line."""
    p1, p2 = _piece(e1), _piece(e2)
    det = pg.cross(p1.u, p2.u)
    if det != 0:
        d = pg.sub(p2.origin, p1.origin)
        s = Fraction(pg.cross(d, p2.u), det)
        r = Fraction(pg.cross(d, p1.u), det)
        if _inside_open(s, p1.lo, p1.hi) and _inside_open(r, p2.lo, p2.hi):
            return ("point", (p1.origin[0] + s * p1.u[0], p1.origin[1] + s * p1.u[1]))
        return None
    s0 = _param_of(p1, p2.origin)
    if s0 is None:
        return None
    sign = 1 if p2.u == p1.u else -1
    ends = [None if v is None else s0 + sign * v for v in (p2.lo, p2.hi)]
    if sign < 0:
        ends.reverse()
    lo2, hi2 = ends
    lo = p1.lo if lo2 is None else (lo2 if p1.lo is None else max(p1.lo, lo2))
    hi = p1.hi if hi2 is None else (hi2 if p1.hi is None else min(p1.hi, hi2))
    if lo is not None and hi is not None and lo >= hi:
        return None
    return ("overlap", p1, lo, hi)


def _classify(sigma1: Cell, sigma2: Cell, dim1: int, dim2: int) -> Kind:
    d = pg.affine_dimension(list(pg.minkowski_sum(sigma1.vertices, sigma2.vertices)))
    if d == sigma1.dim + sigma2.dim:
        return "transversal"
    if dim1 == 1 and dim2 == 1:
        return "typeI"
    if dim1 == 0 and dim2 == 0:
        return "typeIII"
    return "typeII"


def classify_cell(c: IntersectionCell) -> Kind:
    dim1 = 0 if c.xi1[0] == "vertex" else 1
    dim2 = 0 if c.xi2[0] == "vertex" else 1
    return _classify(c.sigma1, c.sigma2, dim1, dim2)


def _sort_key(c: IntersectionCell):
    return (c.dimension, c.points, c.xi1, c.xi2)


def intersect_curves(T1: TropicalCurve, T2: TropicalCurve) -> list[IntersectionCell]:
    """Decompose ``T1 ∩ T2`` into cells with their unique carrier pair."""
    cells: list[IntersectionCell] = []

    def make(ref1, ref2, geometry, points, direction, s1, s2) -> IntersectionCell:
        dim1 = 0 if ref1[0] == "vertex" else 1
        dim2 = 0 if ref2[0] == "vertex" else 1
        kind = _classify(s1, s2, dim1, dim2)
        mult = None
        if kind == "transversal" and geometry == "point":
            e1, e2 = T1.edges[ref1[1]], T2.edges[ref2[1]]
            mult = e1.weight * e2.weight * abs(pg.cross(e1.direction, e2.direction))
        return IntersectionCell(ref1, ref2, geometry, points, direction, s1, s2, kind, None, mult)

    for (i, v1), (k, v2) in product(enumerate(T1.vertices), enumerate(T2.vertices)):
        if v1.point == v2.point:
            cells.append(make(("vertex", i), ("vertex", k), "point", (v1.point,), None, v1.dual, v2.dual))
    for (i, v1), (k, e2) in product(enumerate(T1.vertices), enumerate(T2.edges)):
        if _on_open_edge(e2, v1.point):
            cells.append(make(("vertex", i), ("edge", k), "point", (v1.point,), None, v1.dual, e2.dual))
    for (i, e1), (k, v2) in product(enumerate(T1.edges), enumerate(T2.vertices)):
        if _on_open_edge(e1, v2.point):
            cells.append(make(("edge", i), ("vertex", k), "point", (v2.point,), None, e1.dual, v2.dual))
    for (i, e1), (k, e2) in product(enumerate(T1.edges), enumerate(T2.edges)):
        hit = _edge_edge(e1, e2)
        if hit is None:
            continue
        if hit[0] == "point":
            cells.append(make(("edge", i), ("edge", k), "point", (hit[1],), None, e1.dual, e2.dual))
            continue
        _, p, lo, hi = hit
        at = lambda s: (p.origin[0] + s * p.u[0], p.origin[1] + s * p.u[1])  # noqa: E731
        if lo is not None and hi is not None:
            a, b = sorted([at(lo), at(hi)])
            cells.append(make(("edge", i), ("edge", k), "segment", (a, b), None, e1.dual, e2.dual))
        elif lo is not None:
            cells.append(make(("edge", i), ("edge", k), "ray", (at(lo),), p.u, e1.dual, e2.dual))
        elif hi is not None:
            cells.append(make(("edge", i), ("edge", k), "ray", (at(hi),), (-p.u[0], -p.u[1]),
                              e1.dual, e2.dual))
        else:
            cells.append(make(("edge", i), ("edge", k), "line", (p.origin,), p.u, e1.dual, e2.dual))
    return sorted(cells, key=_sort_key)


def with_positivity(cells: Iterable[IntersectionCell], T1: TropicalCurve,
                    T2: TropicalCurve) -> list[IntersectionCell]:
    """Set the ``positive`` flag on transversal point cells."""
    pos1, pos2 = positive_part(T1), positive_part(T2)
    out = []
    for c in cells:
        flag = None
        if c.kind == "transversal" and c.geometry == "point":
            flag = c.xi1[1] in pos1 and c.xi2[1] in pos2
        out.append(IntersectionCell(c.xi1, c.xi2, c.geometry, c.points, c.direction,
                                    c.sigma1, c.sigma2, c.kind, flag, c.multiplicity))
    return out


def arrangement(f1: LaurentPoly, f2: LaurentPoly) -> tuple[TropicalCurve, TropicalCurve, list[IntersectionCell]]:
    T1, T2 = corner_locus(f1), corner_locus(f2)
    return T1, T2, with_positivity(intersect_curves(T1, T2), T1, T2)


def positive_transversal_points(f1: LaurentPoly, f2: LaurentPoly) -> list[RPoint]:
    """Positive transversal intersection points (raises if some cell is non-transversal)."""
    _, _, cells = arrangement(f1, f2)
    bad = [c for c in cells if c.kind != "transversal"]
    if bad:
        raise NonTransversalError(
            f"{len(bad)} non-transversal cell(s), first of {bad[0].kind} at {bad[0].points[0]}")
    return [c.point for c in cells if c.positive]


def discrete_mixed_volume(W1: Iterable[ExpVec], W2: Iterable[ExpVec]) -> int:
    W1, W2 = set(W1), set(W2)
    if not W1 or not W2:
        raise ValueError("supports must be nonempty")
    sums = {(a[0] + b[0], a[1] + b[1]) for a in W1 for b in W2}
    return len(sums) - len(W1) - len(W2) + 1


def mixed_volume(P: Iterable[pg.Point], Q: Iterable[pg.Point]) -> Fraction:
    """``area(P + Q) - area(P) - area(Q)`` for convex lattice polytopes of dimension <= 2."""
    P, Q = list(P), list(Q)
    total = pg.area(pg.minkowski_sum(P, Q)) - pg.area(pg.convex_hull(P)) - pg.area(pg.convex_hull(Q))
    return total


@dataclass
class BoundReport:
    transversal_count: int
    transversal_multiplicity: int
    positive_count: int
    non_transversal: int
    dmv: int
    bihan_ok: bool
    lemma_le_6: bool | None
    total_support: int

    def as_dict(self) -> dict:
        return {
            "transversal": self.transversal_count,
            "transversal_multiplicity": self.transversal_multiplicity,
            "positive": self.positive_count,
            "non_transversal": self.non_transversal,
            "dmv": self.dmv,
            "bihan_ok": self.bihan_ok,
            "lemma_le_6": self.lemma_le_6,
            "total_support": self.total_support,
        }


def bound_report(f1: LaurentPoly, f2: LaurentPoly) -> BoundReport:
    _, _, cells = arrangement(f1, f2)
    trans = [c for c in cells if c.kind == "transversal"]
    points = {c.point for c in trans}
    d = discrete_mixed_volume(f1.support, f2.support)
    total = len(f1.support | f2.support)
    return BoundReport(
        transversal_count=len(points),
        transversal_multiplicity=sum(c.multiplicity for c in trans),
        positive_count=sum(1 for c in trans if c.positive),
        non_transversal=len(cells) - len(trans),
        dmv=d,
        bihan_ok=len(points) <= d,
        lemma_le_6=(d <= 6) if total == 5 else None,
        total_support=total,
    )
