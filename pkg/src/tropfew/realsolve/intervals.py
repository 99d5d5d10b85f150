"""Outward-rounded interval arithmetic on top of mpmath's interval context."""

from __future__ import annotations

import os
from fractions import Fraction

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

DEFAULT_PRECISION_BITS = 256
MAX_PRECISION_BITS = 16384


def precision_from_env() -> int:
    raw = os.environ.get("TROP_PRECISION_BITS")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if not 16 <= bits <= MAX_PRECISION_BITS:
        raise ValueError(f"TROP_PRECISION_BITS must be in [16, {MAX_PRECISION_BITS}], got {bits}")
    return bits


def context(bits: int | None = None) -> MPIntervalContext:
    """A fresh interval context (contexts carry their own precision)."""
    ctx = MPIntervalContext()
    ctx.prec = min(bits or precision_from_env(), MAX_PRECISION_BITS)
    return ctx


def enclose(ctx, x) -> object:
    """Interval enclosing an int, Fraction, or (lo, hi) pair of those."""
    if isinstance(x, tuple):
        lo, hi = enclose(ctx, x[0]), enclose(ctx, x[1])
        return ctx.mpf([lo.a, hi.b])
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return ctx.mpf(x.numerator)
        return ctx.mpf(x.numerator) / x.denominator
    if hasattr(x, "enclose"):
        return x.enclose(ctx)
    return ctx.mpf(x)


def endpoints(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


def contains_zero(x) -> bool:
    lo, hi = endpoints(x)
    return lo <= 0 <= hi


def sign(x) -> int:
    """+1 / -1 when the interval excludes zero, 0 when undecided."""
    lo, hi = endpoints(x)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def rpow(ctx, lo: Fraction, hi: Fraction, e: Fraction):
    """Enclosure of ``{x**e : lo <= x <= hi}`` for ``0 <= lo <= hi`` and rational ``e``."""
    if lo < 0:
        raise ValueError("rpow needs a nonnegative base")
    if e == 0:
        return ctx.mpf(1)

    def point(x: Fraction):
        if x == 0:
            return ctx.mpf(0)
        if e.denominator == 1:
            return enclose(ctx, x) ** int(e)
        return ctx.exp(enclose(ctx, Fraction(e)) * ctx.log(enclose(ctx, x)))

    if lo == 0 and e < 0:
        raise ZeroDivisionError("negative power of an interval touching zero")
    a, b = point(lo), point(hi)
    return ctx.mpf([min(a.a, b.a), max(a.b, b.b)])
