"""Truncated real Puiseux series and Laurent polynomials over them.

A :class:`PuiseuxScalar` is a finite sum ``sum c_r t^r`` with rational exponents
and rational coefficients, known exactly below ``truncation`` (``None`` means
the sum is exact).  ``val`` is minus the smallest exponent, ``ord = -val`` and
``coef`` is the coefficient of the lowest-order term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

ExpVec = tuple[int, int]

# t-exponent span kept beyond the leading order when dividing exact series
# by non-monomial series (the quotient is an infinite series).
DEFAULT_DIVISION_PRECISION = Fraction(24)

MINUS_INFINITY = -math.inf


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or string")
    return Fraction(x)


def _min_trunc(*ts: Fraction | None) -> Fraction | None:
    known = [t for t in ts if t is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class PuiseuxScalar:
    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    truncation: Fraction | None = None

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if not isinstance(e, Fraction) or not isinstance(c, Fraction):
                raise TypeError("exponents and coefficients must be Fractions")
            if c == 0:
                raise ValueError("zero coefficient stored in PuiseuxScalar")
            if prev is not None and e <= prev:
                raise ValueError("exponents must be strictly increasing")
            if self.truncation is not None and e >= self.truncation:
                raise ValueError("term at or beyond the truncation order")
            prev = e

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[object, object]] | Mapping,
                   truncation: object | None = None) -> "PuiseuxScalar":
        """Build from (exponent, coefficient) pairs; equal exponents are merged."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        trunc = None if truncation is None else _frac(truncation)
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e, c = _frac(e), _frac(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        kept = tuple(sorted((e, c) for e, c in acc.items()
                            if c != 0 and (trunc is None or e < trunc)))
        return cls(kept, trunc)

    @classmethod
    def const(cls, c) -> "PuiseuxScalar":
        return cls.from_terms([(0, c)])

    @classmethod
    def monomial(cls, c, e) -> "PuiseuxScalar":
        return cls.from_terms([(e, c)])

    @classmethod
    def zero(cls) -> "PuiseuxScalar":
        return cls()

    # -- valuation data ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    @property
    def val(self) -> Fraction | float:
        return -self.terms[0][0] if self.terms else MINUS_INFINITY

    @property
    def ord(self) -> Fraction | float:
        return self.terms[0][0] if self.terms else math.inf

    @property
    def coef(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    def leading(self) -> tuple[Fraction | float, Fraction]:
        return self.val, self.coef

    def is_positive(self) -> bool:
        return self.coef > 0

    def unit(self) -> "PuiseuxScalar":
        """The series divided by ``t^ord``, so that its order is zero."""
        return self.shift(-self.ord) if self.terms else self

    # -- arithmetic -------------------------------------------------------

    def _known_from(self) -> Fraction | float:
        # lowest exponent that can carry information (for error propagation)
        if self.terms:
            return self.terms[0][0]
        return self.truncation if self.truncation is not None else math.inf

    def shift(self, e) -> "PuiseuxScalar":
        """Multiply by ``t^e``."""
        e = _frac(e)
        trunc = None if self.truncation is None else self.truncation + e
        return PuiseuxScalar(tuple((x + e, c) for x, c in self.terms), trunc)

    def scale(self, c) -> "PuiseuxScalar":
        c = _frac(c)
        if c == 0:
            return PuiseuxScalar()
        return PuiseuxScalar(tuple((e, x * c) for e, x in self.terms), self.truncation)

    def __neg__(self) -> "PuiseuxScalar":
        return self.scale(-1)

    def __add__(self, other) -> "PuiseuxScalar":
        other = as_scalar(other)
        trunc = _min_trunc(self.truncation, other.truncation)
        return PuiseuxScalar.from_terms(list(self.terms) + list(other.terms), trunc)

    __radd__ = __add__

    def __sub__(self, other) -> "PuiseuxScalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "PuiseuxScalar":
        return as_scalar(other) - self

    def __mul__(self, other) -> "PuiseuxScalar":
        other = as_scalar(other)
        if (self.is_zero and self.is_exact) or (other.is_zero and other.is_exact):
            return PuiseuxScalar()
        cands = []
        if self.truncation is not None:
            cands.append(self.truncation + other._known_from())
        if other.truncation is not None:
            cands.append(other.truncation + self._known_from())
        trunc = min(cands) if cands else None
        if trunc is not None and math.isinf(trunc):
            trunc = None
        prod = [(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms]
        return PuiseuxScalar.from_terms(prod, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PuiseuxScalar":
        other = as_scalar(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero Puiseux scalar")
        ob = other.ord
        if len(other.terms) == 1 and other.is_exact:
            e0, c0 = other.terms[0]
            return self.shift(-e0).scale(1 / c0)
        cands = []
        if self.truncation is not None:
            cands.append(self.truncation - ob)
        if other.truncation is not None:
            cands.append(other.truncation + self._known_from() - 2 * ob)
        if not cands:
            start = self._known_from()
            if math.isinf(start):
                return PuiseuxScalar()
            cands.append(start - ob + DEFAULT_DIVISION_PRECISION)
        target = min(cands)
        # long division: peel off leading terms of the remainder
        lead_e, lead_c = other.terms[0]
        rem = dict(self.terms)
        quotient: dict[Fraction, Fraction] = {}
        while rem:
            e = min(rem)
            qe = e - lead_e
            if qe >= target:
                break
            qc = rem[e] / lead_c
            quotient[qe] = qc
            for oe, oc in other.terms:
                key = qe + oe
                v = rem.get(key, Fraction(0)) - qc * oc
                if v == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = v
            # terms of the remainder that can no longer influence the quotient
            rem = {k: v for k, v in rem.items() if k - lead_e < target}
        return PuiseuxScalar.from_terms(quotient.items(), target)

    def __rtruediv__(self, other) -> "PuiseuxScalar":
        return as_scalar(other) / self

    def __pow__(self, n: int) -> "PuiseuxScalar":
        if n < 0:
            return PuiseuxScalar.const(1) / self ** (-n)
        out = PuiseuxScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, order) -> "PuiseuxScalar":
        order = _frac(order)
        trunc = order if self.truncation is None else min(order, self.truncation)
        return PuiseuxScalar.from_terms(self.terms, trunc)

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{c}*t^{e}" for e, c in self.terms)
        if self.truncation is not None:
            body += f" + O(t^{self.truncation})"
        return body


def as_scalar(x) -> PuiseuxScalar:
    if isinstance(x, PuiseuxScalar):
        return x
    return PuiseuxScalar.const(_frac(x))


def ps_leading(s: PuiseuxScalar) -> tuple[Fraction | float, Fraction]:
    """``(val(s), coef(s))``; the zero scalar gives ``(-inf, 0)``."""
    return s.leading()


def ps_arith(a: PuiseuxScalar, op: str, b: PuiseuxScalar) -> PuiseuxScalar:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def is_positive(s: PuiseuxScalar) -> bool:
    return s.is_positive()


class LaurentPoly(Mapping[ExpVec, PuiseuxScalar]):
    """Bivariate Laurent polynomial with Puiseux-series coefficients.

    Behaves as a read-only mapping from exponent vectors to nonzero
    coefficients.  Zero coefficients are dropped on construction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ExpVec, object] | Iterable[tuple[ExpVec, object]],
                 allow_empty: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExpVec, PuiseuxScalar] = {}
        for w, c in items:
            w = (int(w[0]), int(w[1]))
            c = as_scalar(c)
            acc[w] = acc[w] + c if w in acc else c
        clean = {w: c for w, c in sorted(acc.items()) if not c.is_zero}
        if not clean and not allow_empty:
            raise ValueError("Laurent polynomial has empty support")
        self._terms = MappingProxyType(clean)

    def __getitem__(self, w: ExpVec) -> PuiseuxScalar:
        return self._terms[w]

    def __iter__(self) -> Iterator[ExpVec]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return dict(self._terms) == dict(other._terms)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self._terms)!r})"

    @property
    def support(self) -> frozenset[ExpVec]:
        return frozenset(self._terms)

    def val(self, w: ExpVec) -> Fraction:
        return self._terms[w].val

    def coef(self, w: ExpVec) -> Fraction:
        return self._terms[w].coef

    def scale(self, c) -> "LaurentPoly":
        c = as_scalar(c)
        return LaurentPoly({w: v * c for w, v in self.items()}, allow_empty=True)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self.items()) + list(other.items()), allow_empty=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self.items()) + [(w, -c) for w, c in other.items()],
                           allow_empty=True)

    def shift_monomial(self, v: ExpVec) -> "LaurentPoly":
        """Multiply by ``z^v``."""
        return LaurentPoly({(w[0] + v[0], w[1] + v[1]): c for w, c in self.items()})

    def torus_substitute(self, k, l) -> "LaurentPoly":
        """Replace ``(z1, z2)`` by ``(t^k z1, t^l z2)``."""
        k, l = _frac(k), _frac(l)
        return LaurentPoly({w: c.shift(k * w[0] + l * w[1]) for w, c in self.items()})

    def monomial_change(self, matrix: tuple[tuple[int, int], tuple[int, int]]) -> "LaurentPoly":
        """Re-express exponents as ``matrix @ w`` (an integer linear map)."""
        (a, b), (c, d) = matrix
        return LaurentPoly({(a * w[0] + b * w[1], c * w[0] + d * w[1]): v for w, v in self.items()})


@dataclass(frozen=True)
class LaurentSystem:
    f1: LaurentPoly
    f2: LaurentPoly
    name: str | None = None

    @property
    def supports(self) -> tuple[frozenset[ExpVec], frozenset[ExpVec]]:
        return self.f1.support, self.f2.support

    @property
    def total_support(self) -> frozenset[ExpVec]:
        return self.f1.support | self.f2.support

    def __iter__(self):
        return iter((self.f1, self.f2))
