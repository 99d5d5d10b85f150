"""Counting solutions of ``sum q_i x^k_i (1-x)^l_i = c`` on (0, 1).

Functions of this shape have rational exponents, so they are handled with
interval enclosures rather than polynomial algebra.  The count is done two
ways: through the critical points (monotone pieces between them, sign tests
at their ends) and by isolating the zeros directly.  The two must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from . import intervals as iv


class IndeterminateError(RuntimeError):
    """The answer could not be certified below the precision cap."""


@dataclass(frozen=True)
class PowerConstant:
    """The real number ``factor * base**exponent`` (base > 0), kept exact."""

    base: Fraction
    exponent: Fraction
    factor: Fraction = Fraction(1)

    def __post_init__(self):
        if self.base <= 0:
            raise ValueError("base must be positive")

    def enclose(self, ctx):
        if self.factor == 0:
            return ctx.mpf(0)
        e = iv.rpow(ctx, self.base, self.base, self.exponent)
        return iv.enclose(ctx, self.factor) * e

    def __float__(self) -> float:
        return float(self.factor) * float(self.base) ** float(self.exponent)

    def __neg__(self) -> "PowerConstant":
        return PowerConstant(self.base, self.exponent, -self.factor)

    def __mul__(self, r) -> "PowerConstant":
        return PowerConstant(self.base, self.exponent, self.factor * Fraction(r))

    __rmul__ = __mul__

    def sign(self) -> int:
        return (self.factor > 0) - (self.factor < 0)

    def __str__(self) -> str:
        core = f"({self.base})^({self.exponent})"
        if self.factor == 1:
            return core
        if self.factor == -1:
            return "-" + core
        return f"{self.factor}*{core}"


Coefficient = Union[Fraction, PowerConstant]


def _coef(q) -> Coefficient:
    return q if isinstance(q, PowerConstant) else Fraction(q)


def _sign_of(q: Coefficient) -> int:
    if isinstance(q, PowerConstant):
        return q.sign()
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class GenPowerCurve:
    """``x -> sum q * x**k * (1 - x)**l`` on (0, 1)."""

    terms: tuple[tuple[Coefficient, Fraction, Fraction], ...]

    @classmethod
    def of(cls, terms: Iterable[tuple]) -> "GenPowerCurve":
        merged: dict[tuple[Fraction, Fraction], list] = {}
        for q, k, l in terms:
            merged.setdefault((Fraction(k), Fraction(l)), []).append(_coef(q))
        out = []
        for (k, l), qs in sorted(merged.items()):
            exact = sum((q for q in qs if not isinstance(q, PowerConstant)), Fraction(0))
            symbolic = [q for q in qs if isinstance(q, PowerConstant)]
            if exact != 0:
                out.append((exact, k, l))
            out.extend((q, k, l) for q in symbolic if q.factor != 0)
        return cls(tuple(out))

    def __call__(self, x: float) -> float:
        return sum(float(q) * x ** float(k) * (1 - x) ** float(l) for q, k, l in self.terms)

    def minus(self, c) -> "GenPowerCurve":
        c = _coef(c)
        return GenPowerCurve.of(list(self.terms) + [(-c, 0, 0)])

    def derivative(self) -> "GenPowerCurve":
        out = []
        for q, k, l in self.terms:
            if k != 0:
                out.append((q * k, k - 1, l))
            if l != 0:
                out.append((q * (-l), k, l - 1))
        return GenPowerCurve.of(out)

    def normalized(self) -> tuple["GenPowerCurve", Fraction, Fraction]:
        """Divide out ``x^kmin (1-x)^lmin``; the result is continuous on [0, 1]."""
        if not self.terms:
            return self, Fraction(0), Fraction(0)
        kmin = min(k for _, k, _ in self.terms)
        lmin = min(l for _, _, l in self.terms)
        return GenPowerCurve.of((q, k - kmin, l - lmin) for q, k, l in self.terms), kmin, lmin

    def enclose(self, ctx, lo: Fraction, hi: Fraction):
        """Enclosure over ``[lo, hi]`` (``lo == hi`` gives a point value)."""
        total = ctx.mpf(0)
        for q, k, l in self.terms:
            xs = iv.rpow(ctx, lo, hi, k)
            ys = iv.rpow(ctx, 1 - hi, 1 - lo, l)
            total += iv.enclose(ctx, q) * xs * ys
        return total

    def endpoint_value(self, ctx, at: int):
        """Value at 0 or 1 of a normalized curve (the terms that do not vanish there)."""
        pick = [q for q, k, l in self.terms if (k if at == 0 else l) == 0]
        total = ctx.mpf(0)
        for q in pick:
            total += iv.enclose(ctx, q)
        exact = all(not isinstance(q, PowerConstant) for q in pick)
        return total, exact and sum(pick, Fraction(0)) == 0

    def __str__(self) -> str:
        parts = []
        for q, k, l in self.terms:
            parts.append(f"{q}*x^({k})*(1-x)^({l})")
        return " + ".join(parts) if parts else "0"


# ---- zero isolation for continuous generalized power sums on [0, 1] ---------------

def _sign_over(ctx, F: GenPowerCurve, dF: GenPowerCurve, lo, hi) -> int:
    """Sign of ``F`` on ``[lo, hi]`` if constant, else 0 (direct and mean-value forms)."""
    s = iv.sign(F.enclose(ctx, lo, hi))
    if s or lo == 0 or hi == 1 or lo == hi:
        return s
    m = (lo + hi) / 2
    try:
        mv = F.enclose(ctx, m, m) + dF.enclose(ctx, lo, hi) * iv.enclose(ctx, (lo - m, hi - m))
    except ZeroDivisionError:
        return 0
    return iv.sign(mv)


def _point_sign(ctx, F: GenPowerCurve, x: Fraction) -> int:
    if x == 0 or x == 1:
        v, cancel = F.endpoint_value(ctx, int(x))
        if cancel:
            raise IndeterminateError(f"leading terms cancel at the endpoint {x}")
        return iv.sign(v)
    return iv.sign(F.enclose(ctx, x, x))


def isolate_zeros(F: GenPowerCurve, bits: int | None = None,
                  min_width_bits: int | None = None) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the zeros in (0, 1) of a normalized curve.

    Each interval is certified by strict monotonicity (derivative enclosure
    excludes zero) and opposite signs at its ends.
    """
    bits = bits or iv.precision_from_env()
    ctx = iv.context(bits)
    dF = F.derivative()
    floor = Fraction(1, 1 << (min_width_bits or max(40, bits // 3)))
    out = []
    stack = [(Fraction(0), Fraction(1))]
    while stack:
        lo, hi = stack.pop()
        if _sign_over(ctx, F, dF, lo, hi) != 0:
            continue
        mono = 0
        if lo > 0 and hi < 1:
            mono = iv.sign(dF.enclose(ctx, lo, hi))
        if mono:
            s_lo, s_hi = _point_sign(ctx, F, lo), _point_sign(ctx, F, hi)
            if s_lo and s_hi:
                if s_lo != s_hi:
                    out.append((lo, hi))
                continue
        if hi - lo < floor:
            raise IndeterminateError(f"cannot separate zeros near {float(lo):.6g}")
        # split slightly off centre so a rational zero is unlikely to land on a split point
        mid = lo + (hi - lo) * Fraction(511, 1024)
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def refine_zero(F: GenPowerCurve, lo: Fraction, hi: Fraction, width: Fraction,
                bits: int | None = None) -> tuple[Fraction, Fraction]:
    ctx = iv.context(bits)
    s_lo = _point_sign(ctx, F, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _point_sign(ctx, F, mid)
        if s == 0:
            break
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---- counting ---------------------------------------------------------------

@dataclass
class GenPowCount:
    count: int
    roots: list[tuple[Fraction, Fraction]]
    critical_points: list[tuple[Fraction, Fraction]]
    critical_values: list[float]
    piece_signs: list[int] = field(default_factory=list)
    precision_bits: int = 0

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "roots": [[float(a), float(b)] for a, b in self.roots],
            "critical_points": [[float(a), float(b)] for a, b in self.critical_points],
            "critical_values": self.critical_values,
            "precision_bits": self.precision_bits,
        }


def _sign_at_critical(ctx, g, dg_norm, h_norm, lo, hi, bits) -> tuple[int, float, tuple]:
    """Sign of ``g - c`` at a critical point isolated in ``[lo, hi]``."""
    width = hi - lo
    while True:
        s = _sign_over(ctx, h_norm, h_norm.derivative(), lo, hi)
        if s:
            mid = (lo + hi) / 2
            return s, float(g(float(mid))), (lo, hi)
        if width < Fraction(1, 1 << (bits - 8)):
            raise IndeterminateError("a critical value coincides with the target level")
        width /= 1 << 16
        lo, hi = refine_zero(dg_norm, lo, hi, width, bits)


def _count(g: GenPowerCurve, c, bits: int) -> GenPowCount:
    ctx = iv.context(bits)
    h_norm, _, _ = g.minus(c).normalized()
    dg_norm, _, _ = g.derivative().normalized()

    # direct route
    roots = isolate_zeros(h_norm, bits)

    # critical-point route
    crit = isolate_zeros(dg_norm, bits) if dg_norm.terms else []
    signs = [_point_sign(ctx, h_norm, Fraction(0))]
    values = []
    refined = []
    for lo, hi in crit:
        s, v, box = _sign_at_critical(ctx, g, dg_norm, h_norm, lo, hi, bits)
        signs.append(s)
        values.append(v)
        refined.append(box)
    signs.append(_point_sign(ctx, h_norm, Fraction(1)))
    if 0 in signs:
        raise IndeterminateError("g - c vanishes at an endpoint limit")
    rolle = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    if rolle != len(roots):
        raise IndeterminateError(f"critical-point count {rolle} disagrees with direct count {len(roots)}")
    return GenPowCount(rolle, roots, refined, values, signs, bits)


def count_genpow_solutions(g: GenPowerCurve, c, bits: int | None = None) -> GenPowCount:
    """Number of solutions of ``g(x) = c`` in (0, 1), with certificates.

    Precision doubles on failure up to the cap; past it the error is raised.
    """
    bits = bits or iv.precision_from_env()
    while True:
        try:
            return _count(g, c, bits)
        except IndeterminateError:
            if bits >= min(iv.MAX_PRECISION_BITS, 4096):
                raise
            bits *= 2


# ---- the critical-point function for two-term curves ---------------------------------

def _rho(k: Fraction, l: Fraction) -> list[tuple[Fraction, int, int]]:
    """``k - (k + l) x = k (1 - x) - l x`` as (coefficient, dx, d(1-x))."""
    return [(k, 0, 1), (-l, 1, 0)]


@dataclass(frozen=True)
class PhiFunction:
    """``phi(x) = -b4 * x^(k4-k3) (1-x)^(l4-l3) * rho4(x) / rho3(x)``.

    For ``f = x^k3 (1-x)^l3 + b4 x^k4 (1-x)^l4`` one has f'(x) = 0 iff
    phi(x) = 1, away from the zero of rho3.
    """

    b4: Coefficient
    k3: Fraction
    l3: Fraction
    k4: Fraction
    l4: Fraction

    def __post_init__(self):
        if self.k3 == 0 and self.l3 == 0:
            raise ValueError("rho3 vanishes identically")

    @property
    def coefficient(self) -> Coefficient:
        return -self.b4

    def rho(self, which: int, x: float) -> float:
        k, l = (self.k3, self.l3) if which == 3 else (self.k4, self.l4)
        return float(k) - float(k + l) * x

    def __call__(self, x: float) -> float:
        return (float(self.coefficient) * x ** float(self.k4 - self.k3)
                * (1 - x) ** float(self.l4 - self.l3) * self.rho(4, x) / self.rho(3, x))

    def pole(self) -> Fraction | None:
        s = self.k3 + self.l3
        return None if s == 0 else self.k3 / s

    def numerator_curve(self) -> GenPowerCurve:
        """``rho3 * (phi - 1)``: its zeros in (0, 1) are the solutions of phi = 1."""
        dk, dl = self.k4 - self.k3, self.l4 - self.l3
        terms = [(self.coefficient * q, dk + a, dl + b) for q, a, b in _rho(self.k4, self.l4)]
        terms += [(-q, a, b) for q, a, b in _rho(self.k3, self.l3)]
        return GenPowerCurve.of(t for t in terms if not (isinstance(t[0], Fraction) and t[0] == 0))

    def count_one(self, bits: int | None = None) -> int:
        return len(self.solutions_of_one(bits))

    def solutions_of_one(self, bits: int | None = None) -> list[tuple[Fraction, Fraction]]:
        N, _, _ = self.numerator_curve().normalized()
        return isolate_zeros(N, bits)


def phi_of(g: GenPowerCurve) -> PhiFunction:
    """The phi of a curve with exactly two non-constant terms, the first with coefficient 1."""
    terms = [t for t in g.terms if not (t[1] == 0 and t[2] == 0)]
    if len(terms) != 2:
        raise ValueError("phi needs exactly two non-constant terms")
    unit = [t for t in terms if not isinstance(t[0], PowerConstant) and t[0] == 1]
    if not unit:
        raise ValueError("one term must have coefficient 1")
    (_, k3, l3) = unit[0]
    other = terms[1] if terms[0] is unit[0] else terms[0]
    return PhiFunction(other[0], k3, l3, other[1], other[2])


def float_sign_changes(fn, n: int = 20000) -> int:
    """Sampled sign changes of ``fn`` on (0, 1); used only as a smoke test."""
    xs = [(i + 0.5) / n for i in range(n)]
    vals = [fn(x) for x in xs]
    return sum(1 for a, b in zip(vals, vals[1:]) if math.copysign(1, a) != math.copysign(1, b))
