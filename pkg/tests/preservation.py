"""Random five-monomial systems and positive counts before and after normalization."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from tropfew import polygon as pg
from tropfew.field import LaurentPoly, LaurentSystem, PuiseuxScalar
from tropfew.realsolve import IrrationalSpecializationError, solve_positive, specialize_t
from tropfew.reduction import normalize

T = Fraction(1, 10 ** 4)


def random_admissible(rng: random.Random) -> LaurentSystem:
    """Five monomials, no three collinear; three shared and one private per equation,
    sometimes disguised by adding a multiple of the second equation to the first."""
    while True:
        pts = set()
        while len(pts) < 5:
            pts.add((rng.randint(-3, 3), rng.randint(-3, 3)))
        pts = sorted(pts)
        if all(pg.orient(*c) != 0 for c in combinations(pts, 3)):
            break
    rng.shuffle(pts)
    shared, p3, p4 = pts[:3], pts[3], pts[4]

    def coef():
        return PuiseuxScalar.monomial(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([0, 0, 1, 2]))

    f1 = LaurentPoly({w: coef() for w in shared + [p3]})
    f2 = LaurentPoly({w: coef() for w in shared + [p4]})
    if rng.random() < 0.3:
        f1 = f1 + f2.scale(PuiseuxScalar.const(rng.choice([-1, 2])))
    return LaurentSystem(f1, f2)


def preservation_run(seed: int, wanted: int) -> list[tuple[int, int]]:
    """(count before, count after) for ``wanted`` systems.

    Samples are skipped when the normal form needed a truncated series
    division (the specialized system would not be exact) or when some
    t-power is irrational at t = 1/10000.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < wanted:
        system = random_admissible(rng)
        g = normalize(system).system()
        if any(c.truncation is not None for f in g for c in f.values()):
            continue
        try:
            after = specialize_t(g, T)
        except IrrationalSpecializationError:
            continue
        before = solve_positive(specialize_t(system, T)).count
        out.append((before, solve_positive(after).count))
    return out
