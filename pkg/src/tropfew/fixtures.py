"""Built-in example systems."""

from __future__ import annotations

from fractions import Fraction

from .field import LaurentPoly, LaurentSystem, PuiseuxScalar

# Rational stand-in for (44/31)^(5/6), good to about fifty digits.
DRRS_FRACTION = Fraction(26807502408507435267952730104920543812845885439976,
                         20022295568917288472920446333489413342983920443429)

LEVEL = Fraction(36008, 100000)

# Approximate solutions of the seven-solution system at t = 1/100000, gamma0 = 7, alpha = 1.
SEVEN_REFERENCE = [
    (0.99999, 0.00001), (0.99171, 0.60681), (0.96651, 0.76771), (0.95765, 0.79907),
    (0.95201, 0.81642), (0.88602, 0.95151), (0.53645, 1.61099),
]


def _ps(terms) -> PuiseuxScalar:
    return PuiseuxScalar.from_terms({Fraction(e): Fraction(c) for e, c in terms})


def sturmfels_six() -> LaurentSystem:
    """Two four-term polynomials whose tropical curves meet in six positive points."""
    f1 = LaurentPoly({
        (0, 0): _ps([(0, -1), (12, 1)]),
        (6, 0): _ps([(0, 1)]),
        (3, 6): _ps([(0, 1)]),
        (10, 12): _ps([(1, -1)]),
    })
    f2 = LaurentPoly({
        (0, 0): _ps([(12, -1)]),
        (3, 6): _ps([(5, 1)]),
        (7, 11): _ps([(Fraction(3, 2), -1)]),
        (10, 12): _ps([(1, 1)]),
    })
    return LaurentSystem(f1, f2, "six")


def drrs() -> LaurentSystem:
    """``x^6 + (44/31) y^3 - y = y^6 + (44/31) x^3 - x = 0`` (five positive solutions)."""
    a = Fraction(44, 31)
    f1 = LaurentPoly({(6, 0): 1, (0, 3): a, (0, 1): -1})
    f2 = LaurentPoly({(0, 6): 1, (3, 0): a, (1, 0): -1})
    return LaurentSystem(f1, f2, "drrs")


def seven(gamma0=7, alpha=1, b4=DRRS_FRACTION) -> LaurentSystem:
    """The normalized system with seven positive solutions for small t."""
    gamma0, alpha = Fraction(gamma0), Fraction(alpha)
    f1 = LaurentPoly({
        (0, 0): _ps([(0, -1)]),
        (6, 0): _ps([(0, 1)]),
        (3, 6): _ps([(0, 1)]),
        (-14, 7): _ps([(alpha, -1)]),
    })
    f2 = LaurentPoly({
        (0, 0): _ps([(0, -1), (gamma0, LEVEL)]),
        (6, 0): _ps([(0, 1)]),
        (3, 6): _ps([(0, 1), (alpha, -LEVEL)]),
        (-12, 9): _ps([(alpha, -b4)]),
    })
    return LaurentSystem(f1, f2, "seven")


FIXTURES = {"six": sturmfels_six, "drrs": drrs, "seven": seven}
