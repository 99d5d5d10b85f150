import random
from fractions import Fraction as F
from itertools import product

import pytest

from tropfew import fixtures
from tropfew import polygon as pg
from tropfew.arrangement import (NonTransversalError, arrangement, bound_report, discrete_mixed_volume,
                                 mixed_volume, positive_transversal_points)
from tropfew.cli.grammar import parse_polynomial
from tropfew.field import LaurentPoly, PuiseuxScalar


def random_poly(rng, n, box, hmax=4, points=None):
    pts = set(points or ())
    while len(pts) < n:
        pts.add((rng.randint(-box, box), rng.randint(-box, box)))
    return LaurentPoly({w: PuiseuxScalar.monomial(rng.choice([-2, -1, 1, 3]), rng.randint(-hmax, hmax))
                        for w in pts})


def all_splits(points):
    """Every (W1, W2) with W1 ∪ W2 = points and both nonempty."""
    for labels in product((1, 2, 3), repeat=len(points)):
        W1 = [p for p, l in zip(points, labels) if l & 1]
        W2 = [p for p, l in zip(points, labels) if l & 2]
        if W1 and W2:
            yield W1, W2


def on_cell(cell, p):
    if cell.geometry == "point":
        return cell.point == p
    if cell.geometry == "segment":
        return pg.on_segment(p, *cell.points)
    d = pg.sub(p, cell.points[0])
    if pg.cross(d, cell.direction) != 0:
        return False
    return cell.geometry == "line" or pg.dot(d, cell.direction) >= 0


# ---- examples ----------------------------------------------------------------------

def test_lines_meet_in_one_point():
    _, _, cells = arrangement(parse_polynomial("1 + 1*x^1 + 1*y^1"),
                              parse_polynomial("1*t^-2 + 1*x^1 + 1*t^-1*y^1"))
    assert len(cells) == 1
    (c,) = cells
    assert c.geometry == "point" and c.point == (1, 1) and c.kind == "transversal"
    assert c.positive is False
    assert c.multiplicity == 1


def test_curve_against_itself():
    f = parse_polynomial("1 + 1*x^1 + 1*y^1")
    _, _, cells = arrangement(f, f)
    assert sorted(c.kind for c in cells) == ["typeI", "typeI", "typeI", "typeIII"]
    vertex = next(c for c in cells if c.kind == "typeIII")
    assert vertex.point == (0, 0)
    assert all(c.geometry == "ray" for c in cells if c.kind == "typeI")
    with pytest.raises(NonTransversalError):
        positive_transversal_points(f, f)


def test_opposite_signs_give_positive_point():
    f1 = parse_polynomial("1 + 1*x^1 - 1*y^1")
    f2 = parse_polynomial("1*t^-2 + 1*x^1 - 1*t^-1*y^1")
    assert positive_transversal_points(f1, f2) == [(1, 1)]


def test_six_points_all_positive():
    f1, f2 = fixtures.sturmfels_six()
    _, _, cells = arrangement(f1, f2)
    assert len(cells) == 6
    assert all(c.geometry == "point" and c.kind == "transversal" and c.positive for c in cells)
    assert len(positive_transversal_points(f1, f2)) == 6


def test_six_bound_report():
    rep = bound_report(*fixtures.sturmfels_six()).as_dict()
    assert rep["transversal"] == 6 and rep["positive"] == 6
    assert rep["dmv"] >= 6 and rep["bihan_ok"] and rep["lemma_le_6"]
    assert rep["total_support"] == 5 and rep["non_transversal"] == 0


def test_discrete_mixed_volume_examples():
    assert discrete_mixed_volume([(0, 0)], [(0, 0)]) == 0
    tri = [(0, 0), (1, 0), (0, 1)]
    assert discrete_mixed_volume(tri, tri) == 1
    f1, f2 = fixtures.sturmfels_six()
    assert discrete_mixed_volume(f1.support, f2.support) == 6
    with pytest.raises(ValueError):
        discrete_mixed_volume([], tri)


def test_four_shared_points_bound():
    W2 = [(0, 0), (1, 0), (0, 1), (3, 5), (7, 2)]
    W1 = W2[:4]
    sums = {pg.add(a, b) for a in W1 for b in W2}
    assert len(sums) <= 14
    assert discrete_mixed_volume(W1, W2) <= 6


def test_mixed_volume_examples():
    assert mixed_volume([(0, 0), (1, 0)], [(0, 0), (0, 1)]) == 1
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert mixed_volume(square, square) == 2
    tri = [(0, 0), (1, 0), (0, 1)]
    assert mixed_volume(tri, tri) == 1


# ---- properties --------------------------------------------------------------------

def _random_polygon(rng, box=4):
    return [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(rng.randint(1, 5))]


def test_mixed_volume_properties():
    rng = random.Random(21)
    for _ in range(300):
        P, P2, Q = _random_polygon(rng), _random_polygon(rng), _random_polygon(rng)
        assert mixed_volume(P, Q) == mixed_volume(Q, P)
        assert mixed_volume(P, Q) >= 0
        assert mixed_volume(P + P2, Q) >= mixed_volume(P, Q)
        PP = pg.minkowski_sum(P, P2)
        assert mixed_volume(PP, Q) == mixed_volume(P, Q) + mixed_volume(P2, Q)
        assert mixed_volume(P, P) == 2 * pg.area(pg.convex_hull(P))


def test_discrete_mixed_volume_at_most_six_on_five_points():
    rng = random.Random(22)
    for _ in range(100):
        pts = set()
        while len(pts) < 5:
            pts.add((rng.randint(-6, 6), rng.randint(-6, 6)))
        for W1, W2 in all_splits(sorted(pts)):
            assert discrete_mixed_volume(W1, W2) <= 6


def test_bihan_bound_on_random_pairs():
    rng = random.Random(23)
    done = 0
    while done < 100:
        f1 = random_poly(rng, rng.randint(3, 5), 4)
        f2 = random_poly(rng, rng.randint(3, 5), 4)
        rep = bound_report(f1, f2)
        if rep.non_transversal:
            continue
        done += 1
        assert rep.bihan_ok
        assert rep.positive_count <= rep.transversal_count <= rep.dmv


def _overlapping_pair(rng):
    f1 = random_poly(rng, rng.randint(2, 6), 5, hmax=3)
    keep = [w for w in f1.support if rng.random() < 0.7]
    f2 = random_poly(rng, max(1, len(keep) + rng.randint(0, 2)), 5, hmax=3, points=keep)
    f2 = LaurentPoly({w: (f1[w] if w in keep else c) for w, c in f2.items()})
    return f1, f2


def test_cells_carry_dual_points():
    rng = random.Random(24)
    for _ in range(150):
        f1, f2 = _overlapping_pair(rng)
        T1, T2, cells = arrangement(f1, f2)
        for c in cells:
            x = c.sample_point()
            assert T1.poly.argmax(x) == c.sigma1.points
            assert T2.poly.argmax(x) == c.sigma2.points


def test_cells_partition_the_intersection():
    rng = random.Random(25)
    for _ in range(150):
        f1, f2 = _overlapping_pair(rng)
        T1, T2, cells = arrangement(f1, f2)
        samples = [v.point for v in T1.vertices]
        for e in T1.edges:
            for s in (F(1, 3), F(1, 2), F(2, 3), F(5)):
                if e.kind == "segment" and s > 1:
                    continue
                p = e.start
                q = e.end if e.kind == "segment" else pg.add(e.start, e.direction)
                samples.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
        for x in samples:
            on_both = len(T2.poly.argmax(x)) >= 2
            owners = [c for c in cells if on_cell(c, x)]
            assert on_both == bool(owners)
            if len(owners) > 1:
                # a point lying on several closed cells is an endpoint of all but one
                assert sum(c.sample_point() == x for c in owners) <= 1


def test_cell_dimension_duality():
    rng = random.Random(26)
    for _ in range(150):
        f1, f2 = _overlapping_pair(rng)
        T1, T2, cells = arrangement(f1, f2)
        hull = pg.minkowski_sum(T1.dual.polytope, T2.dual.polytope)
        for c in cells:
            assert c.dimension + pg.affine_dimension(c.sigma) == 2
            if c.dimension == 1 and pg.affine_dimension(hull) == 2:
                a, b = c.sigma
                proper = pg.segment_on_boundary(a, b, hull)
                assert proper == (c.geometry in ("ray", "line"))
