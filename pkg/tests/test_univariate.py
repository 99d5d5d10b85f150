import math
import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tropfew.realsolve import NotSquarefreeError, UniPoly, isolate_real_roots
from tropfew.realsolve.univariate import (eval_sign, is_squarefree, positive_roots, refine_root,
                                          sign_variations, squarefree_part)

X = sympy.Symbol("x")


def sympy_poly(coeffs):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) if isinstance(c, F) else c
                                     for c in coeffs])), X)


def test_three_integer_roots():
    roots = isolate_real_roots(UniPoly.from_roots([1, 2, 3]), (0, 10))
    assert len(roots) == 3
    for (lo, hi), r in zip(roots, (1, 2, 3)):
        assert lo <= r <= hi


def test_no_real_roots():
    assert isolate_real_roots([1, 0, 1], (-10, 10)) == []


def test_square_root_of_two():
    ((lo, hi),) = isolate_real_roots([-2, 0, 1], (0, 10))
    lo, hi = refine_root([-2, 0, 1], lo, hi, F(1, 10 ** 6))
    assert hi - lo <= F(1, 10 ** 6)
    assert eval_sign([-2, 0, 1], lo) * eval_sign([-2, 0, 1], hi) < 0
    assert lo < math.sqrt(2) < hi


def test_rejects_repeated_roots():
    p = UniPoly.from_roots([1, 1, 2])
    with pytest.raises(NotSquarefreeError):
        isolate_real_roots(p, (0, 5))
    assert not is_squarefree(p.coeffs)
    assert len(isolate_real_roots(squarefree_part(p.coeffs), (0, 5))) == 2


def test_empty_interval():
    with pytest.raises(ValueError):
        isolate_real_roots([-2, 0, 1], (3, 1))


def test_exact_root_at_bisection_point():
    roots = isolate_real_roots(UniPoly.from_roots([F(1, 2), F(3, 4)]), (0, 1))
    assert len(roots) == 2
    assert all(lo <= r <= hi for (lo, hi), r in zip(roots, (F(1, 2), F(3, 4))))


def test_sign_variations():
    assert sign_variations([1, 0, -2, 3, 0, 0, 4]) == 2
    assert sign_variations([]) == 0


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=9).filter(lambda c: c[-1] != 0))
def test_isolation_matches_sturm_count(coeffs):
    sq = [int(c) for c in squarefree_part(coeffs)]
    if len(sq) <= 1:
        return
    roots = isolate_real_roots(sq)
    oracle = sympy_poly(sq)
    assert len(roots) == oracle.count_roots()
    for lo, hi in roots:
        if lo == hi:
            assert oracle.eval(lo) == 0
        else:
            # open interval: discount exact roots sitting on the endpoints
            ends = (oracle.eval(lo) == 0) + (oracle.eval(hi) == 0)
            assert oracle.count_roots(lo, hi) - ends == 1
    for (_, b), (c, _) in zip(roots, roots[1:]):
        assert b <= c


def test_positive_roots_against_sympy():
    rng = random.Random(51)
    for _ in range(200):
        roots = [F(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(rng.randint(1, 6))]
        if len(set(roots)) != len(roots):
            continue
        p = UniPoly.from_roots(roots).coeffs
        got = positive_roots(p)
        want = sorted(r for r in roots if r > 0)
        assert len(got) == len(want)
        for (lo, hi), r in zip(got, want):
            assert lo <= r <= hi
