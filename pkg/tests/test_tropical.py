import random
from fractions import Fraction as F

import pytest

from tropfew import polygon as pg
from tropfew.cli.grammar import parse_polynomial
from tropfew.field import LaurentPoly, PuiseuxScalar
from tropfew.tropical import (check_balancing, check_duality, corner_locus, edge_point, positive_part,
                              regular_subdivision, tropicalize)

CONIC = "-1*t^1 + 1*x^1 - 1*t^1*x^2 - 1*x^1*y^1 + 1*y^1 + 1*t^1*y^2"


@pytest.fixture(scope="module")
def conic():
    return corner_locus(parse_polynomial(CONIC))


def random_poly(rng, n_max=8, box=10, hmax=5):
    n = rng.randint(1, n_max)
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(-box, box), rng.randint(-box, box)))
    return LaurentPoly({w: PuiseuxScalar.monomial(rng.choice([-3, -1, 1, 2]), rng.randint(-hmax, hmax))
                        for w in pts})


def test_conic_pieces(conic):
    assert conic.poly.pieces == {(0, 0): -1, (1, 0): 0, (2, 0): -1, (1, 1): 0, (0, 1): 0, (0, 2): -1}
    expected = {"-1", "x1", "2x1 - 1", "x1 + x2", "x2", "2x2 - 1"}
    text = str(conic.poly)
    assert text.startswith("max{") and set(text[4:-1].split(", ")) == expected


def test_conic_vertices_and_balancing(conic):
    assert len(conic.vertices) == 4
    assert {v.point for v in conic.vertices} == {(-1, -1), (0, 1), (0, 0), (1, 0)}
    assert check_balancing(conic).balanced
    assert check_duality(conic) == []


def test_conic_vertex_at_origin(conic):
    v = next(v for v in conic.vertices if v.point == (0, 0))
    assert set(v.dual.vertices) == {(1, 0), (0, 1), (1, 1)}
    assert conic.poly.argmax((F(0), F(0))) == {(1, 0), (0, 1), (1, 1)}


def test_conic_subdivision(conic):
    # four unit triangles cover conv{(0,0),(2,0),(0,2)}
    tri = conic.dual.of_dim(2)
    assert len(tri) == 4
    assert all(pg.area(c.vertices) == F(1, 2) for c in tri)


def test_conic_positive_part(conic):
    duals = {frozenset(conic.edges[i].dual.vertices) for i in positive_part(conic)}
    assert duals == {frozenset(s) for s in [((0, 0), (1, 0)), ((1, 0), (2, 0)), ((1, 1), (0, 2)),
                                            ((0, 1), (0, 0)), ((1, 0), (1, 1)), ((0, 1), (1, 1))]}


def test_line_through_origin():
    c = corner_locus(parse_polynomial("1 + 1*x^1 + 1*y^1"))
    assert [v.point for v in c.vertices] == [(0, 0)]
    assert sorted(e.direction for e in c.edges) == [(-1, 0), (0, -1), (1, 1)]
    assert all(e.kind == "ray" and e.weight == 1 for e in c.edges)
    assert positive_part(c) == frozenset()


def test_single_monomial_is_empty():
    c = corner_locus(parse_polynomial("3*t^2*x^1*y^4"))
    assert c.is_empty and not c.vertices
    assert [r.monomial for r in c.regions] == [(1, 4)]


def test_collinear_support_gives_lines():
    c = corner_locus(parse_polynomial("1 + 1*t^-1*x^1 + 1*x^2"))
    assert not c.vertices
    assert [e.kind for e in c.edges] == ["line", "line"]
    for e in c.edges:
        assert e.direction == (0, 1) or e.direction == (0, -1)
        assert len(c.poly.argmax(e.start)) == 2


def test_weight_two_edge():
    c = corner_locus(parse_polynomial("1 + 1*x^2 + 1*y^1"))
    assert sorted(e.weight for e in c.edges) == [1, 1, 2]
    assert check_balancing(c).balanced


def test_tropicalize_uses_valuation():
    f = parse_polynomial("2*t^3*x^1 + 5*t^-1/2*y^1")
    assert tropicalize(f).pieces == {(1, 0): -3, (0, 1): F(1, 2)}


def _lower_face_ok(heights, cell):
    """A cell is a lower face iff some affine function lies below every height,
    touching exactly on the cell's points."""
    p, q, r = cell.vertices[:3]
    det = pg.orient(p, q, r)
    d1, d2 = pg.sub(q, p), pg.sub(r, p)
    h1, h2 = heights[q] - heights[p], heights[r] - heights[p]
    g = (F(h1 * d2[1] - h2 * d1[1], det), F(d1[0] * h2 - d2[0] * h1, det))
    c = heights[p] - pg.dot(g, p)
    diffs = {w: heights[w] - pg.dot(g, w) - c for w in heights}
    return all(v >= 0 for v in diffs.values()) and {w for w, v in diffs.items() if v == 0} == cell.points


def test_subdivision_against_lower_hull_definition():
    rng = random.Random(11)
    for _ in range(150):
        f = random_poly(rng)
        sub = regular_subdivision(f)
        if sub.dim < 2:
            continue
        two = sub.of_dim(2)
        assert all(_lower_face_ok(sub.heights, c) for c in two)
        assert sum(pg.area(c.vertices) for c in two) == pg.area(sub.polytope)


def test_curve_against_argmax():
    rng = random.Random(12)
    for _ in range(150):
        f = random_poly(rng)
        c = corner_locus(f)
        tp = c.poly
        for v in c.vertices:
            assert tp.argmax(v.point) == v.dual.points
        for e in c.edges:
            mid = edge_point(e, F(1, 2) if e.kind == "segment" else F(1))
            assert tp.argmax(mid) == e.dual.points
            # a small step across the edge leaves it on either side
            n = pg.sub(e.dual.vertices[1], e.dual.vertices[0])
            eps = F(1, 10 ** 6)
            for s in (1, -1):
                off = (mid[0] + s * eps * n[0], mid[1] + s * eps * n[1])
                assert len(tp.argmax(off)) == 1


def test_balancing_and_duality_on_random_curves():
    rng = random.Random(13)
    for _ in range(200):
        c = corner_locus(random_poly(rng))
        assert check_balancing(c).balanced
        assert check_duality(c) == []
        # rays are exactly the edges dual to boundary segments
        for e in c.edges:
            if e.kind != "line":
                assert (e.kind == "ray") == pg.segment_on_boundary(*e.dual.vertices, c.dual.polytope)
