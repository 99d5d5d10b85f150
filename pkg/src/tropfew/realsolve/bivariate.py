"""Positive solutions of rational bivariate systems, certified by Krawczyk's test.

Pipeline: clear denominators and negative exponents, eliminate y with a
Sylvester resultant, isolate the positive x-roots, back-substitute each
into one equation to get y-candidates, throw away candidates where the
other equation provably does not vanish, and certify the rest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

import gmpy2
from mpmath import MPContext

from ..field import ExpVec, LaurentSystem
from . import intervals as iv
from .resultant import resultant_y
from .univariate import (
    is_squarefree,
    positive_roots,
    refine_root,
    squarefree_part,
    strip,
)

RealPoly = Mapping[ExpVec, Fraction]


class IrrationalSpecializationError(ValueError):
    pass


class ZeroResultantError(ValueError):
    """The system has a curve of common zeros, or a shared factor."""


@dataclass(frozen=True)
class RealSystem:
    """Two real Laurent polynomials with exact rational coefficients.

    ``multipliers[i]`` is the monomial that was multiplied into equation i to
    make its smallest exponents zero (only when built by :func:`specialize_t`).
    """

    f1: dict
    f2: dict
    multipliers: tuple[ExpVec, ExpVec] = ((0, 0), (0, 0))
    t: Fraction | None = None
    name: str | None = None

    def __iter__(self):
        return iter((self.f1, self.f2))


# ---- specialization ---------------------------------------------------------

def exact_power(t: Fraction, r: Fraction) -> Fraction:
    """``t**r`` as a rational; raises when it is irrational."""
    t, r = Fraction(t), Fraction(r)
    if t <= 0:
        raise ValueError("t must be positive")
    q = r.denominator
    roots = []
    for part in (t.numerator, t.denominator):
        root, exact = gmpy2.iroot(gmpy2.mpz(part), q)
        if not exact:
            raise IrrationalSpecializationError(
                f"t-exponent {r} gives an irrational value at t = {t}")
        roots.append(int(root))
    return Fraction(roots[0], roots[1]) ** r.numerator


def clear_monomial(f: RealPoly) -> tuple[dict, ExpVec]:
    """Multiply ``f`` by the monomial that makes its smallest exponents zero.

    Returns the new poly and the multiplier; this does not change zeros in
    the open positive orthant.
    """
    shift = (-min(w[0] for w in f), -min(w[1] for w in f))
    return {(w[0] + shift[0], w[1] + shift[1]): c for w, c in f.items()}, shift


def specialize_t(system: LaurentSystem, t) -> RealSystem:
    """Evaluate every Puiseux coefficient at the rational ``t``."""
    t = Fraction(t)
    out = []
    for f in system:
        g = {}
        for w, s in f.items():
            val = sum((c * exact_power(t, e) for e, c in s.terms), Fraction(0))
            if val != 0:
                g[w] = val
        if not g:
            raise ValueError(f"an equation vanishes identically at t = {t}")
        out.append(clear_monomial(g))
    (g1, m1), (g2, m2) = out
    return RealSystem(g1, g2, (m1, m2), t, system.name)


# ---- certified boxes ----------------------------------------------------------

@dataclass(frozen=True)
class CertifiedBox:
    x: tuple[Fraction, Fraction]
    y: tuple[Fraction, Fraction]
    multiplicity: int = 1

    @property
    def midpoint(self) -> tuple[Fraction, Fraction]:
        return ((self.x[0] + self.x[1]) / 2, (self.y[0] + self.y[1]) / 2)

    def disjoint(self, other: "CertifiedBox") -> bool:
        return (self.x[1] < other.x[0] or other.x[1] < self.x[0]
                or self.y[1] < other.y[0] or other.y[1] < self.y[0])

    def as_dict(self, digits: int = 12) -> dict:
        mx, my = self.midpoint
        return {
            "x": [str(self.x[0]), str(self.x[1])],
            "y": [str(self.y[0]), str(self.y[1])],
            "midpoint": [_decimal(mx, digits), _decimal(my, digits)],
            "multiplicity": self.multiplicity,
        }


def _decimal(q: Fraction, digits: int) -> str:
    return f"{float(q):.{digits}g}" if digits <= 17 else _long_decimal(q, digits)


def _long_decimal(q: Fraction, digits: int) -> str:
    from decimal import Context, Decimal

    ctx = Context(prec=digits)
    return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))


@dataclass
class SolveReport:
    boxes: list[CertifiedBox]
    residuals: list[float]
    degenerate: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    resultant_degree: int = 0
    precision_bits: int = 0
    system: RealSystem | None = None

    @property
    def count(self) -> int:
        return len(self.boxes)

    @property
    def midpoints(self) -> list[tuple[Fraction, Fraction]]:
        return [b.midpoint for b in self.boxes]

    def as_dict(self, digits: int = 12) -> dict:
        return {
            "count": self.count,
            "boxes": [b.as_dict(digits) for b in self.boxes],
            "residual_bounds": [float(r) for r in self.residuals],
            "degenerate": [[float(a), float(b)] for a, b in self.degenerate],
            "resultant_degree": self.resultant_degree,
            "precision_bits": self.precision_bits,
        }


# ---- polynomial helpers -----------------------------------------------------

def _to_int(f: RealPoly) -> tuple[dict[ExpVec, int], int]:
    """Integer multiple of ``f`` and the multiplier used."""
    d = 1
    for c in f.values():
        d = lcm(d, Fraction(c).denominator)
    return {w: int(Fraction(c) * d) for w, c in f.items() if c != 0}, d


def _in_y(f: Mapping[ExpVec, int], x: Fraction) -> list[Fraction]:
    """Coefficients (in y) of ``f(x, y)`` for exact rational x."""
    dy = max(j for _, j in f)
    out = [Fraction(0)] * (dy + 1)
    for (i, j), c in f.items():
        out[j] += c * x ** i
    return strip(out)


def _ydeg(f) -> int:
    return max(j for _, j in f)


class _Evaluator:
    """Interval evaluation of a polynomial and its two partial derivatives."""

    def __init__(self, f: Mapping[ExpVec, int]):
        self.terms = [(i, j, c) for (i, j), c in f.items()]

    def all(self, ctx, X, Y):
        top_i = max(i for i, _, _ in self.terms)
        top_j = max(j for _, j, _ in self.terms)
        xp = [ctx.mpf(1)]
        for _ in range(top_i):
            xp.append(xp[-1] * X)
        yp = [ctx.mpf(1)]
        for _ in range(top_j):
            yp.append(yp[-1] * Y)
        v = dx = dy = ctx.mpf(0)
        for i, j, c in self.terms:
            v += c * xp[i] * yp[j]
            if i:
                dx += (c * i) * xp[i - 1] * yp[j]
            if j:
                dy += (c * j) * xp[i] * yp[j - 1]
        return v, dx, dy


def _inside(inner, outer) -> bool:
    a, b = iv.endpoints(inner)
    c, d = iv.endpoints(outer)
    return c < a and b < d


def krawczyk(ctx, E1: _Evaluator, E2: _Evaluator, xm: Fraction, ym: Fraction,
             rx: Fraction, ry: Fraction) -> str:
    """``'unique'``, ``'excluded'`` (some equation has no zero in the box),
    ``'singular'`` (the Jacobian at the centre is singular to working precision)
    or ``'unknown'`` (try a smaller box at higher precision)."""
    X = iv.enclose(ctx, (xm - rx, xm + rx))
    Y = iv.enclose(ctx, (ym - ry, ym + ry))
    mx, my = iv.enclose(ctx, xm), iv.enclose(ctx, ym)
    f1B, a, b = E1.all(ctx, X, Y)
    f2B, c, d = E2.all(ctx, X, Y)
    if not iv.contains_zero(f1B) or not iv.contains_zero(f2B):
        return "excluded"
    f1m, am, bm = E1.all(ctx, mx, my)
    f2m, cm, dm = E2.all(ctx, mx, my)
    am, bm, cm, dm = (ctx.mpf(v.mid) for v in (am, bm, cm, dm))
    detm = am * dm - bm * cm
    if iv.contains_zero(detm):
        return "singular"
    # approximate inverse of J(m)
    C00, C01, C10, C11 = dm / detm, -bm / detm, -cm / detm, am / detm
    C00, C01, C10, C11 = (ctx.mpf(v.mid) for v in (C00, C01, C10, C11))
    dX, dY = X - mx, Y - my
    Kx = mx - (C00 * f1m + C01 * f2m) + (1 - (C00 * a + C01 * c)) * dX - (C00 * b + C01 * d) * dY
    Ky = my - (C10 * f1m + C11 * f2m) - (C10 * a + C11 * c) * dX + (1 - (C10 * b + C11 * d)) * dY
    if _inside(Kx, X) and _inside(Ky, Y):
        return "unique"
    return "unknown"


def _residual(ctx, E1, E2, box: CertifiedBox, scales=(1, 1)) -> float:
    """Bound on both equations over the box, in the units of the caller's coefficients."""
    X = iv.enclose(ctx, box.x)
    Y = iv.enclose(ctx, box.y)
    r = Fraction(0)
    for E, d in zip((E1, E2), scales):
        v, _, _ = E.all(ctx, X, Y)
        lo, hi = iv.endpoints(v)
        if not lo <= 0 <= hi:
            raise AssertionError("certified box fails the residual check")
        r = max(r, -lo / d, hi / d)
    return float(r)


# ---- the solver ---------------------------------------------------------------

def _positive_x_roots(R: list) -> list[tuple[Fraction, Fraction]]:
    while R and R[0] == 0:
        R = R[1:]
    if len(R) <= 1:
        return [], R
    if not is_squarefree(R):
        R = squarefree_part(R)
    return positive_roots(R, check_squarefree=False), R


def _rel(q: Fraction, bits: int) -> Fraction:
    """``|q| * 2**-bits`` rounded to a power of two (at least a tiny absolute floor)."""
    if q == 0:
        return Fraction(1, 1 << bits)
    e = abs(q).numerator.bit_length() - abs(q).denominator.bit_length()
    return Fraction(2) ** (e - bits)


def _dyadic_mid(lo: Fraction, hi: Fraction, bits: int) -> Fraction:
    """A short dyadic number in ``[lo, hi]``."""
    if lo == hi:
        return lo
    m = (lo + hi) / 2
    k = max(1, (hi - lo).denominator.bit_length() - (hi - lo).numerator.bit_length() + 4)
    return Fraction(round(m * (1 << k)), 1 << k)


def _refine_relative(p, lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a positive root to relative width ``2**-bits``."""
    while lo != hi and (lo <= 0 or hi - lo > lo / (1 << bits)):
        lo, hi = refine_root(p, lo, hi, (hi - lo) / (1 << 24))
    return lo, hi


def _polish(F1, F2, xm: Fraction, ym: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """A few Newton steps in ``bits``-bit floating point (no certificate, just accuracy)."""
    ctx = MPContext()
    ctx.prec = bits + 16
    terms = [[(i, j, ctx.mpf(c)) for (i, j), c in F.items()] for F in (F1, F2)]

    def ev(T, x, y):
        v = dx = dy = ctx.zero
        for i, j, c in T:
            v += c * x ** i * y ** j
            if i:
                dx += c * i * x ** (i - 1) * y ** j
            if j:
                dy += c * j * x ** i * y ** (j - 1)
        return v, dx, dy

    x = ctx.mpf(xm.numerator) / xm.denominator
    y = ctx.mpf(ym.numerator) / ym.denominator
    for _ in range(2 * bits.bit_length()):
        f, a, b = ev(terms[0], x, y)
        g, c, d = ev(terms[1], x, y)
        det = a * d - b * c
        if det == 0:
            break
        sx = (d * f - b * g) / det
        sy = (a * g - c * f) / det
        nx, ny = x - sx, y - sy
        if nx <= 0 or ny <= 0:
            break
        x, y = nx, ny
        if abs(sx) <= abs(x) * ctx.ldexp(1, -bits) and abs(sy) <= abs(y) * ctx.ldexp(1, -bits):
            break
    return _mpf_to_fraction(x), _mpf_to_fraction(y)


def _mpf_to_fraction(v) -> Fraction:
    man, exp = v.man, v.exp
    return Fraction(int(man) * (1 << exp)) if exp >= 0 else Fraction(int(man), 1 << -exp)


def _candidates(F1, F2, lo: Fraction, hi: Fraction, R, bits: int):
    """Candidate boxes ``(xm, ym, rx, ry)`` above one x-root.

    y-roots are taken from both equations: near a root where the leading
    y-coefficient of one equation almost vanishes, its y-roots at a nearby
    rational x can be far off while the other equation's are fine.
    """
    lo, hi = _refine_relative(R, lo, hi, bits // 2)
    xm = _dyadic_mid(lo, hi, bits)
    out: list = []
    for G in (F1, F2):
        if _ydeg(G) == 0:
            continue
        coeffs = _in_y(G, xm)
        if len(coeffs) <= 1:
            continue
        if not is_squarefree(coeffs):
            coeffs = list(squarefree_part(coeffs))
        for ylo, yhi in positive_roots(coeffs, check_squarefree=False):
            ylo, yhi = _refine_relative(coeffs, ylo, yhi, bits // 2)
            x, y = _polish(F1, F2, xm, _dyadic_mid(ylo, yhi, bits), bits)
            rx, ry = _rel(x, bits // 4), _rel(y, bits // 4)
            if not any(abs(x - a) <= rx and abs(y - b) <= ry for a, b, _, _ in out):
                out.append((x, y, rx, ry))
    return out


def _merge_duplicates(boxes: list[CertifiedBox], E1, E2, bits: int) -> list[CertifiedBox]:
    """Two candidates can polish to the same solution; keep one box when the hull
    of two overlapping boxes still has a unique solution."""
    out: list[CertifiedBox] = []
    ctx = iv.context(bits)
    for b in boxes:
        for k, a in enumerate(out):
            if a.disjoint(b):
                continue
            hx = (min(a.x[0], b.x[0]), max(a.x[1], b.x[1]))
            hy = (min(a.y[0], b.y[0]), max(a.y[1], b.y[1]))
            mx, my = (hx[0] + hx[1]) / 2, (hy[0] + hy[1]) / 2
            rx, ry = (hx[1] - hx[0]) / 2 * Fraction(9, 8), (hy[1] - hy[0]) / 2 * Fraction(9, 8)
            if krawczyk(ctx, E1, E2, mx, my, rx, ry) == "unique":
                out[k] = a
                break
        else:
            out.append(b)
    return out


def _common_positive_root(a: list[int], b: list[int]) -> bool:
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd

    g = dup_gcd([ZZ(c) for c in reversed(a)], [ZZ(c) for c in reversed(b)], ZZ)
    g = [int(c) for c in reversed(g)]
    return len(g) > 1 and bool(positive_roots(g, check_squarefree=False)) if len(g) > 1 else False


def solve_positive(system: RealSystem | tuple[RealPoly, RealPoly],
                   precision: int | None = None) -> SolveReport:
    """Certified positive solutions of a rational bivariate system."""
    f1, f2 = system
    if not f1 or not f2:
        raise ValueError("both equations must be nonzero")
    F1, d1 = _to_int(clear_monomial(f1)[0])
    F2, d2 = _to_int(clear_monomial(f2)[0])
    bits = precision or iv.precision_from_env()
    if _ydeg(F1) == 0 and _ydeg(F2) == 0:
        a = [0] * (max(i for i, _ in F1) + 1)
        b = [0] * (max(i for i, _ in F2) + 1)
        for (i, _), c in F1.items():
            a[i] = c
        for (i, _), c in F2.items():
            b[i] = c
        if _common_positive_root(a, b):
            raise ZeroResultantError("the equations share a factor in x alone")
        return SolveReport([], [], [], 0, bits, system if isinstance(system, RealSystem) else None)
    R = [int(c) for c in resultant_y(F1, F2)]
    if not any(R):
        raise ZeroResultantError("resultant vanishes identically: infinitely many solutions "
                                 "or a common factor")
    xroots, Rsf = _positive_x_roots(R)
    E1, E2 = _Evaluator(F1), _Evaluator(F2)

    boxes: list[CertifiedBox] = []
    degenerate: list = []
    for lo, hi in xroots:
        p = bits
        while True:
            ctx = iv.context(p)
            found, unresolved, sing = [], [], []
            for xm, ym, rx, ry in _candidates(F1, F2, lo, hi, Rsf, p):
                verdict = krawczyk(ctx, E1, E2, xm, ym, rx, ry)
                if verdict == "unique":
                    found.append(CertifiedBox((xm - rx, xm + rx), (ym - ry, ym + ry)))
                elif verdict == "singular":
                    sing.append((xm, ym))
                elif verdict == "unknown":
                    unresolved.append((xm, ym))
            if not unresolved or p >= iv.MAX_PRECISION_BITS:
                break
            p = min(2 * p, iv.MAX_PRECISION_BITS)
        boxes.extend(found)
        degenerate.extend(sing + unresolved)

    boxes = _merge_duplicates(boxes, E1, E2, bits)
    boxes.sort(key=lambda b: b.midpoint)
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].disjoint(boxes[j]):
                if bits >= iv.MAX_PRECISION_BITS:
                    raise RuntimeError("certified boxes overlap at the precision cap")
                return solve_positive(system, min(2 * bits, iv.MAX_PRECISION_BITS))
    ctx = iv.context(bits)
    residuals = [_residual(ctx, E1, E2, b, (d1, d2)) for b in boxes]
    return SolveReport(boxes, residuals, degenerate, len(Rsf) - 1, bits,
                       system if isinstance(system, RealSystem) else None)
