"""Exact univariate real root isolation (Descartes' rule with bisection).

Polynomials are coefficient lists, lowest degree first, over ``int`` or
``Fraction``.  Isolation works on integer coefficients via ``gmpy2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import gmpy2
from gmpy2 import mpz


class NotSquarefreeError(ValueError):
    pass


@dataclass(frozen=True)
class UniPoly:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "UniPoly":
        return cls(tuple(Fraction(c) for c in strip(list(coeffs))))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "UniPoly":
        out = [Fraction(1)]
        for r in roots:
            r = Fraction(r)
            out = [Fraction(0)] + out
            for i in range(len(out) - 1):
                out[i] -= r * out[i + 1]
        return cls(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def to_integer(coeffs: Sequence) -> list[mpz]:
    """Primitive integer multiple of a rational coefficient list."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = lcm(den, c.denominator)
    ints = [mpz(c.numerator * (den // c.denominator)) for c in fr]
    g = 0
    for c in ints:
        g = gmpy2.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def derivative(coeffs: Sequence) -> list:
    return [i * coeffs[i] for i in range(1, len(coeffs))]


def sign_variations(seq) -> int:
    count, last = 0, 0
    for c in seq:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def taylor_shift_one(a: list[mpz]) -> list[mpz]:
    """Coefficients of ``p(x + 1)``."""
    a = list(a)
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _descartes_01(a: list[mpz]) -> int:
    """Descartes bound for the number of roots of ``a`` in (0, 1)."""
    return sign_variations(taylor_shift_one(a[::-1]))


def _halve(a: list[mpz]) -> list[mpz]:
    """``2^n a(x/2)``."""
    n = len(a) - 1
    return [c << (n - i) for i, c in enumerate(a)]


def eval_sign(coeffs: Sequence, x: Fraction) -> int:
    x = Fraction(x)
    ints = to_integer(coeffs)
    n = len(ints) - 1
    acc = ints[n]
    dpow = mpz(1)
    for i in range(n - 1, -1, -1):
        dpow *= x.denominator
        acc = acc * x.numerator + ints[i] * dpow
    return (acc > 0) - (acc < 0)


def _poly_mod(a: list[int], p: int) -> list[int]:
    return strip([int(c) % p for c in a])


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_mod(a, p), _poly_mod(b, p)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - f * c) % p
            strip(a)
            if not a:
                break
        a, b = b, a
    return a


def is_squarefree(coeffs: Sequence, attempts: int = 3) -> bool:
    """Modular certificate: gcd(p, p') = 1 modulo a good prime implies squarefree over Q.

    Falls back to an exact rational gcd when every tried prime is inconclusive.
    """
    ints = [int(c) for c in to_integer(coeffs)]
    if len(ints) <= 2:
        return True
    d = derivative(ints)
    rng = random.Random(len(ints))
    for _ in range(attempts):
        p = int(gmpy2.next_prime(rng.getrandbits(61) | (1 << 60)))
        if ints[-1] % p == 0:
            continue
        if len(_gcd_mod(ints, d, p)) == 1:
            return True
    return _exact_gcd_degree(ints, d) == 0


def _exact_gcd_degree(a: list[int], b: list[int]) -> int:
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd

    g = dup_gcd([ZZ(c) for c in reversed(a)], [ZZ(c) for c in reversed(b)], ZZ)
    return len(g) - 1


def squarefree_part(coeffs: Sequence) -> list[mpz]:
    from sympy.polys.domains import ZZ
    from sympy.polys.sqfreetools import dup_sqf_part

    ints = to_integer(coeffs)
    part = dup_sqf_part([ZZ(int(c)) for c in reversed(ints)], ZZ)
    return [mpz(int(c)) for c in reversed(part)]


def positive_root_bound(a: Sequence) -> int:
    """An exponent ``k`` with every positive root below ``2**k``."""
    ints = to_integer(a)
    n = len(ints) - 1
    lead = abs(ints[n])
    k = 0
    for i in range(1, n + 1):
        c = ints[n - i]
        if c == 0 or (c > 0) == (ints[n] > 0):
            continue
        # |c / lead|^(1/i) <= 2^ceil((bits(c) - bits(lead) + 1) / i)
        num = int(gmpy2.bit_length(abs(c))) - int(gmpy2.bit_length(lead)) + 1
        k = max(k, -(-num // i))
    return k + 1


def _compose_affine(coeffs: Sequence, lo: Fraction, width: Fraction) -> list[mpz]:
    """Integer coefficients proportional to ``p(lo + width * y)``."""
    fr = [Fraction(c) for c in coeffs]
    n = len(fr) - 1
    if lo != 0:
        # Horner-style Taylor shift by a rational
        fr = list(fr)
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                fr[j] += lo * fr[j + 1]
    fr = [c * width ** i for i, c in enumerate(fr)]
    return to_integer(fr)


def _isolate_01(a: list[mpz], lo: Fraction, width: Fraction, out: list):
    stack = [(a, lo, width)]
    while stack:
        a, lo, w = stack.pop()
        while len(a) > 1 and a[0] == 0:
            a = a[1:]
        v = _descartes_01(a)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, lo + w))
            continue
        half = _halve(a)
        g = 0
        for c in half:
            g = gmpy2.gcd(g, c)
        if g > 1:
            half = [c // g for c in half]
        right = taylor_shift_one(half)
        mid = lo + w / 2
        if right[0] == 0:
            out.append((mid, mid))
        stack.append((right, mid, w / 2))
        stack.append((half, lo, w / 2))


def isolate_real_roots(p: Sequence | UniPoly, interval: tuple | None = None,
                       check_squarefree: bool = True) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the real roots of ``p`` in the open ``interval``.

    An exact rational root is returned as a degenerate interval ``(r, r)``.
    Without ``interval`` all real roots are isolated.
    """
    coeffs = list(p.coeffs) if isinstance(p, UniPoly) else strip(list(p))
    if len(coeffs) <= 1:
        return []
    if check_squarefree and not is_squarefree(coeffs):
        raise NotSquarefreeError("polynomial is not squarefree; take its squarefree part first")
    if interval is None:
        k = max(positive_root_bound(coeffs),
                positive_root_bound([c * (-1) ** i for i, c in enumerate(coeffs)]))
        bound = Fraction(2) ** k
        interval = (-bound, bound)
        return isolate_real_roots(coeffs, interval, check_squarefree=False)
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo >= hi:
        raise ValueError("empty interval")
    a = _compose_affine(coeffs, lo, hi - lo)
    out: list = []
    _isolate_01(a, lo, hi - lo, out)
    return sorted(set(out))


def positive_roots(p: Sequence, check_squarefree: bool = True) -> list[tuple[Fraction, Fraction]]:
    ints = to_integer(p)
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) <= 1:
        return []
    if sign_variations(ints) == 0:
        return []
    k = positive_root_bound(ints)
    if check_squarefree and not is_squarefree(ints):
        raise NotSquarefreeError("polynomial is not squarefree; take its squarefree part first")
    bound = Fraction(2) ** k
    out: list = []
    _isolate_01(_compose_affine(ints, Fraction(0), bound), Fraction(0), bound, out)
    return sorted(set(out))


def refine_root(p: Sequence, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a simple root down to ``width``."""
    if lo == hi:
        return lo, hi
    s_lo = eval_sign(p, lo)
    if s_lo == 0:
        return lo, lo
    ints = to_integer(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = eval_sign(ints, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi
