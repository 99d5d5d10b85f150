"""Tropical plane curves through their dual regular subdivisions.

The curve of ``f = sum c_w z^w`` is the corner locus of
``x -> max_w <x, w> + val(c_w)``.  It is built from the lower convex hull of
the lifted support ``{(w, ord(c_w))}``: a 2-cell of the subdivision is dual to
a curve vertex, an interior 1-cell to a bounded edge, a boundary 1-cell to a
ray and a 0-cell to a complementary region.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Literal

from . import polygon as pg
from .field import ExpVec, LaurentPoly

RPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TropicalPoly:
    """``max_w <x, w> + pieces[w]``."""

    pieces: dict[ExpVec, Fraction]

    def evaluate(self, x: RPoint) -> Fraction:
        return max(pg.dot(x, w) + c for w, c in self.pieces.items())

    def argmax(self, x: RPoint) -> frozenset[ExpVec]:
        vals = {w: pg.dot(x, w) + c for w, c in self.pieces.items()}
        top = max(vals.values())
        return frozenset(w for w, v in vals.items() if v == top)

    def __str__(self) -> str:
        parts = []
        for (a, b), c in sorted(self.pieces.items()):
            lin = " + ".join(s for s in (_lin(a, "x1"), _lin(b, "x2")) if s)
            if not lin:
                parts.append(str(c))
            elif c == 0:
                parts.append(lin)
            else:
                parts.append(f"{lin} {'+' if c > 0 else '-'} {abs(c)}")
        return "max{" + ", ".join(parts) + "}"


def _lin(a: int, name: str) -> str:
    if a == 0:
        return ""
    if a == 1:
        return name
    return f"{a}{name}"


def tropicalize(f: LaurentPoly) -> TropicalPoly:
    return TropicalPoly({w: Fraction(c.val) for w, c in f.items()})


@dataclass(frozen=True)
class Cell:
    """A cell of the dual subdivision.

    ``vertices`` are the polygon vertices (counterclockwise), segment endpoints
    or the single point; ``points`` are the support points whose lift lies on
    the corresponding lower face.
    """

    vertices: tuple[ExpVec, ...]
    points: frozenset[ExpVec]

    @property
    def dim(self) -> int:
        return min(len(self.vertices) - 1, 2)


@dataclass(frozen=True)
class Subdivision:
    polytope: tuple[ExpVec, ...]
    heights: dict[ExpVec, Fraction]
    cells: tuple[Cell, ...]

    def of_dim(self, d: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == d]

    @property
    def dim(self) -> int:
        return pg.affine_dimension(self.polytope)


def _lower_faces_2d(heights: dict[ExpVec, Fraction]) -> list[tuple[frozenset[ExpVec], RPoint]]:
    """Lower facets of the lifted point set as (attaining points, slope)."""
    pts = list(heights)
    faces: dict[frozenset[ExpVec], RPoint] = {}
    for p, q, r in combinations(pts, 3):
        det = pg.orient(p, q, r)
        if det == 0:
            continue
        # slope g with h(w) = <g, w> + c on p, q, r (Cramer on differences)
        d1, d2 = pg.sub(q, p), pg.sub(r, p)
        h1, h2 = heights[q] - heights[p], heights[r] - heights[p]
        g = (Fraction(h1 * d2[1] - h2 * d1[1], det), Fraction(d1[0] * h2 - d2[0] * h1, det))
        c = heights[p] - pg.dot(g, p)
        on, below = [], False
        for w in pts:
            diff = heights[w] - pg.dot(g, w) - c
            if diff < 0:
                below = True
                break
            if diff == 0:
                on.append(w)
        if not below:
            faces.setdefault(frozenset(on), g)
    return list(faces.items())


def regular_subdivision(f: LaurentPoly | dict[ExpVec, Fraction]) -> Subdivision:
    """Regular subdivision of the Newton polygon induced by the lift ``ord(c_w)``."""
    if isinstance(f, LaurentPoly):
        heights = {w: Fraction(c.ord) for w, c in f.items()}
    else:
        heights = dict(f)
    pts = sorted(heights)
    hull = tuple(pg.convex_hull(pts))
    dim = pg.affine_dimension(pts)
    cells: dict[tuple, Cell] = {}

    def add(vertices: tuple[ExpVec, ...], points) -> None:
        key = tuple(sorted(vertices))
        if key not in cells:
            cells[key] = Cell(vertices, frozenset(points))

    if dim == 0:
        add((pts[0],), pts)
    elif dim == 1:
        d = pg.sub(hull[1], hull[0])
        ordered = sorted(pts, key=lambda w: pg.dot(pg.sub(w, hull[0]), d))
        s = {w: pg.dot(pg.sub(w, hull[0]), d) for w in ordered}
        # lower hull of (s, h) by monotone chain
        chain: list[ExpVec] = []
        for w in ordered:
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                turn = (s[b] - s[a]) * (heights[w] - heights[a]) - (heights[b] - heights[a]) * (s[w] - s[a])
                if turn <= 0:
                    chain.pop()
                else:
                    break
            chain.append(w)
        for a, b in zip(chain, chain[1:]):
            on = [w for w in ordered if s[a] <= s[w] <= s[b]
                  and (heights[w] - heights[a]) * (s[b] - s[a]) == (heights[b] - heights[a]) * (s[w] - s[a])]
            add((a, b), on)
            add((a,), [a])
            add((b,), [b])
    else:
        for on, _g in _lower_faces_2d(heights):
            poly = tuple(pg.convex_hull(on))
            add(poly, on)
            for i in range(len(poly)):
                a, b = poly[i], poly[(i + 1) % len(poly)]
                add((a, b), [w for w in on if pg.on_segment(w, a, b)])
                add((a,), [a])
    return Subdivision(hull, heights, tuple(cells.values()))


@dataclass(frozen=True)
class Vertex:
    point: RPoint
    dual: Cell


@dataclass(frozen=True)
class Edge:
    """A curve edge.

    ``kind`` is ``segment`` (from ``start`` to ``end``), ``ray`` (from ``start``
    along ``direction``) or ``line`` (through ``start`` along ``direction``).
    ``direction`` is primitive; ``vertex_ids`` index the curve vertices at the
    finite ends.
    """

    kind: Literal["segment", "ray", "line"]
    start: RPoint
    end: RPoint | None
    direction: tuple[int, int]
    weight: int
    dual: Cell
    vertex_ids: tuple[int, ...]

    @property
    def bounded(self) -> bool:
        return self.kind == "segment"

    @property
    def separates(self) -> tuple[ExpVec, ExpVec]:
        """The two support points whose regions border this edge."""
        return self.dual.vertices[0], self.dual.vertices[1]


@dataclass(frozen=True)
class Region:
    monomial: ExpVec
    sign: int


@dataclass(frozen=True)
class TropicalCurve:
    poly: TropicalPoly
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    regions: tuple[Region, ...]
    dual: Subdivision
    signs: dict[ExpVec, int] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def region_sign(self, w: ExpVec) -> int:
        return self.signs[w]


def _vertex_of(cell: Cell, tp: TropicalPoly) -> RPoint:
    """Point where all pieces of a 2-cell agree (solves a 2x2 system)."""
    p = cell.vertices[0]
    q, r = cell.vertices[1], cell.vertices[2]
    d1, d2 = pg.sub(q, p), pg.sub(r, p)
    b1 = tp.pieces[p] - tp.pieces[q]
    b2 = tp.pieces[p] - tp.pieces[r]
    det = pg.cross(d1, d2)
    return (Fraction(b1 * d2[1] - b2 * d1[1], det), Fraction(d1[0] * b2 - d2[0] * b1, det))


def corner_locus(f: LaurentPoly) -> TropicalCurve:
    tp = tropicalize(f)
    sub = regular_subdivision(f)
    signs = {w: (1 if c.coef > 0 else -1) for w, c in f.items()}
    regions = tuple(Region(c.vertices[0], signs[c.vertices[0]]) for c in sub.of_dim(0))
    vertices: list[Vertex] = []
    edges: list[Edge] = []
    if sub.dim == 2:
        two_cells = sub.of_dim(2)
        vertices = [Vertex(_vertex_of(c, tp), c) for c in two_cells]
        for seg in sub.of_dim(1):
            a, b = seg.vertices
            owners = []
            for i, c in enumerate(two_cells):
                n = len(c.vertices)
                for j in range(n):
                    if {c.vertices[j], c.vertices[(j + 1) % n]} == {a, b}:
                        owners.append((i, c.vertices[j], c.vertices[(j + 1) % n]))
            weight = pg.lattice_length(a, b)
            if len(owners) == 2:
                (i, _, _), (k, _, _) = owners
                p, q = vertices[i].point, vertices[k].point
                edges.append(Edge("segment", p, q, pg.primitive_rational(pg.sub(q, p)),
                                  weight, seg, (i, k)))
            else:
                i, u, v = owners[0]
                d = pg.sub(v, u)
                outward = pg.primitive((d[1], -d[0]))
                edges.append(Edge("ray", vertices[i].point, None, outward, weight, seg, (i,)))
    elif sub.dim == 1:
        for seg in sub.of_dim(1):
            a, b = seg.vertices
            d = pg.sub(a, b)
            lam = Fraction(tp.pieces[b] - tp.pieces[a], pg.dot(d, d))
            point = (lam * d[0], lam * d[1])
            edges.append(Edge("line", point, None, pg.primitive((-d[1], d[0])),
                              pg.lattice_length(a, b), seg, ()))
    return TropicalCurve(tp, tuple(vertices), tuple(edges), regions, sub, signs)


@dataclass
class BalancingReport:
    sums: dict[int, tuple[int, int]]

    @property
    def violations(self) -> dict[int, tuple[int, int]]:
        return {v: s for v, s in self.sums.items() if s != (0, 0)}

    @property
    def balanced(self) -> bool:
        return not self.violations


def outgoing(curve: TropicalCurve, vid: int) -> list[tuple[tuple[int, int], int, int]]:
    """(primitive outgoing direction, weight, edge index) for edges at a vertex."""
    out = []
    for ei, e in enumerate(curve.edges):
        if vid not in e.vertex_ids:
            continue
        if e.kind == "ray":
            out.append((e.direction, e.weight, ei))
        elif e.vertex_ids[0] == vid:
            out.append((e.direction, e.weight, ei))
        else:
            out.append(((-e.direction[0], -e.direction[1]), e.weight, ei))
    return out


def check_balancing(curve: TropicalCurve) -> BalancingReport:
    sums = {}
    for vid in range(len(curve.vertices)):
        sx = sy = 0
        for (ux, uy), w, _ in outgoing(curve, vid):
            sx += w * ux
            sy += w * uy
        sums[vid] = (sx, sy)
    return BalancingReport(sums)


def check_duality(curve: TropicalCurve) -> list[str]:
    """Dimension, orthogonality and boundedness checks; returns violations."""
    problems = []
    hull = curve.dual.polytope
    for i, v in enumerate(curve.vertices):
        if v.dual.dim != 2:
            problems.append(f"vertex {i}: dual cell has dimension {v.dual.dim}")
    for i, e in enumerate(curve.edges):
        if e.dual.dim != 1:
            problems.append(f"edge {i}: dual cell has dimension {e.dual.dim}")
            continue
        a, b = e.dual.vertices
        if pg.dot(e.direction, pg.sub(b, a)) != 0:
            problems.append(f"edge {i}: not orthogonal to its dual segment")
        if e.weight != pg.lattice_length(a, b) or e.weight < 1:
            problems.append(f"edge {i}: weight {e.weight} differs from lattice length")
        on_face = pg.segment_on_boundary(a, b, hull)
        if on_face == e.bounded:
            problems.append(f"edge {i}: bounded={e.bounded} but dual on boundary={on_face}")
    for r in curve.regions:
        if r.monomial not in curve.dual.heights:
            problems.append(f"region {r.monomial}: not a support point")
    return problems


def positive_part(f: LaurentPoly | TropicalCurve) -> frozenset[int]:
    """Indices of edges separating regions whose coefficients have opposite signs."""
    curve = f if isinstance(f, TropicalCurve) else corner_locus(f)
    out = set()
    for i, e in enumerate(curve.edges):
        a, b = e.separates
        if curve.signs[a] != curve.signs[b]:
            out.add(i)
    return frozenset(out)


def edge_point(e: Edge, s: Fraction) -> RPoint:
    """Point of an edge at parameter ``s`` (``s`` in (0, 1) for segments, ``s > 0`` for rays)."""
    if e.kind == "segment":
        return (e.start[0] + s * (e.end[0] - e.start[0]), e.start[1] + s * (e.end[1] - e.start[1]))
    return (e.start[0] + s * e.direction[0], e.start[1] + s * e.direction[1])
