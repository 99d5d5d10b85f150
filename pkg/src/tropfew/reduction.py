"""Reduced systems at intersection cells, normalization of five-monomial systems,
the fan of the normalized triangle, and the univariate reduction of two trinomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Union

from . import polygon as pg
from .arrangement import IntersectionCell
from .field import ExpVec, LaurentPoly, LaurentSystem, PuiseuxScalar
from .realsolve.genpow import GenPowerCurve, PhiFunction, PowerConstant, phi_of
from .tropical import Cell, Edge, Vertex, tropicalize

RealPoly = dict  # ExpVec -> Fraction (or PowerConstant)

Where = Union[Cell, Vertex, Edge, tuple]


class DegenerateSupportError(ValueError):
    pass


# ---- reduced polynomials ---------------------------------------------------------

def _dual_points(f: LaurentPoly, xi: Where) -> frozenset[ExpVec]:
    if isinstance(xi, Cell):
        return xi.points
    if isinstance(xi, (Vertex, Edge)):
        return xi.dual.points
    # a point of R^2: the monomials attaining the tropical maximum there
    x = (Fraction(xi[0]), Fraction(xi[1]))
    return tropicalize(f).argmax(x)


def reduced_polynomial(f: LaurentPoly, xi: Where) -> RealPoly:
    """Leading coefficients of the monomials dual to ``xi``.

    ``xi`` may be a dual cell, a vertex or edge of the curve, or a point of
    the plane (then the monomials attaining the maximum there are used).
    """
    return {w: f.coef(w) for w in sorted(_dual_points(f, xi))}


def reduced_system(f1: LaurentPoly, f2: LaurentPoly, cell: IntersectionCell) -> tuple[RealPoly, RealPoly]:
    return reduced_polynomial(f1, cell.sigma1), reduced_polynomial(f2, cell.sigma2)


# ---- normalization ---------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedSystem:
    """``a0 + y1^m1 + a2 y^w2 + a3 t^alpha y^w3 = b0 + y1^m1 + b2 y^w2 + b4 t^beta y^w4 = 0``."""

    m1: int
    w2: ExpVec
    w3: ExpVec
    w4: ExpVec
    a0: PuiseuxScalar
    a2: PuiseuxScalar
    a3: PuiseuxScalar
    b0: PuiseuxScalar
    b2: PuiseuxScalar
    b4: PuiseuxScalar
    alpha: Fraction
    beta: Fraction
    log: tuple[dict, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.m1 <= 0 or self.w2[1] <= 0:
            raise ValueError("need m1 > 0 and n2 > 0")
        for name in ("a0", "a2", "a3", "b0", "b2", "b4"):
            if getattr(self, name).ord != 0:
                raise ValueError(f"{name} must have ord 0")
        pts = {(0, 0), (self.m1, 0), self.w2, self.w3, self.w4}
        if len(pts) != 5:
            raise DegenerateSupportError("support must have five distinct points")

    @property
    def m2(self) -> int:
        return self.w2[0]

    @property
    def n2(self) -> int:
        return self.w2[1]

    @property
    def c0(self) -> PuiseuxScalar:
        """``b0 - a0`` (its ord is gamma0)."""
        return self.b0 - self.a0

    @property
    def c2(self) -> PuiseuxScalar:
        return self.b2 - self.a2

    @property
    def gamma0(self):
        return self.c0.ord

    @property
    def gamma2(self):
        return self.c2.ord

    def system(self, name: str | None = None) -> LaurentSystem:
        one = PuiseuxScalar.const(1)
        w1 = (self.m1, 0)
        f1 = LaurentPoly({(0, 0): self.a0, w1: one, self.w2: self.a2,
                          self.w3: self.a3.shift(self.alpha)})
        f2 = LaurentPoly({(0, 0): self.b0, w1: one, self.w2: self.b2,
                          self.w4: self.b4.shift(self.beta)})
        return LaurentSystem(f1, f2, name)

    def difference_system(self) -> LaurentSystem:
        """The first equation and (second minus first); same positive solutions."""
        f1, f2 = self.system()
        return LaurentSystem(f1, f2 - f1, "difference")

    def as_dict(self) -> dict:
        return {
            "m1": self.m1,
            "m2n2": list(self.w2),
            "m3n3": list(self.w3),
            "m4n4": list(self.w4),
            "a0": str(self.a0), "a2": str(self.a2), "a3": str(self.a3),
            "b0": str(self.b0), "b2": str(self.b2), "b4": str(self.b4),
            "alpha": str(self.alpha), "beta": str(self.beta),
            "log": list(self.log),
        }


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def monomial_basis(w1: ExpVec, w2: ExpVec) -> tuple[tuple[tuple[int, int], tuple[int, int]], int, ExpVec]:
    """Unimodular ``M`` with ``M w1 = (m1, 0)`` and ``M w2 = (m2, n2)``, ``n2 > 0``.

    Among the valid choices the one with the smallest ``|m2|`` is taken,
    ties going to ``m2 >= 0``.
    """
    m1 = pg.lattice_length((0, 0), w1)
    u = (w1[0] // m1, w1[1] // m1)
    cu = pg.cross(u, w2)
    if cu == 0:
        raise DegenerateSupportError("w1 and w2 are parallel")
    eps = 1 if cu > 0 else -1
    _, p, q = _ext_gcd(u[0], u[1])  # u0 p + u1 q = 1
    g = (-q * eps, p * eps)
    n2 = cu * eps
    m2 = pg.cross(w2, g) * eps
    # g -> g + s u shifts m2 by -s n2
    s = m2 // n2
    best = min((m2 - s * n2, m2 - (s + 1) * n2), key=lambda v: (abs(v), v < 0))
    s = (m2 - best) // n2
    g = (g[0] + s * u[0], g[1] + s * u[1])
    # columns (u, g) map to e1, e2; det = eps
    M = ((g[1] * eps, -g[0] * eps), (-u[1] * eps, u[0] * eps))
    return M, m1, (best, n2)


def _apply(M, w: ExpVec) -> ExpVec:
    return (M[0][0] * w[0] + M[0][1] * w[1], M[1][0] * w[0] + M[1][1] * w[1])


def _private_split(f1: LaurentPoly, f2: LaurentPoly, log: list) -> tuple[LaurentPoly, LaurentPoly]:
    """Row-reduce so each equation has four monomials, three of them shared."""
    support = sorted(f1.support | f2.support)
    if len(support) != 5:
        raise DegenerateSupportError(f"the system needs five monomials, found {len(support)}")
    shared = f1.support & f2.support
    if len(f1) == 4 and len(f2) == 4 and len(shared) == 3:
        if pg.affine_dimension(sorted(shared)) == 2:
            return f1, f2
    zero = PuiseuxScalar.zero()
    for p3, p4 in permutations(support, 2):
        rest = [w for w in support if w not in (p3, p4)]
        if pg.affine_dimension(rest) != 2:
            continue
        c3, c4 = f1.get(p3, zero), f1.get(p4, zero)
        d3, d4 = f2.get(p3, zero), f2.get(p4, zero)
        if (c3 * d4 - c4 * d3).is_zero:
            continue
        g1 = f1.scale(d4) - f2.scale(c4) if not c4.is_zero else f1
        g2 = f2.scale(c3) - f1.scale(d3) if not d3.is_zero else f2
        if g1.support == frozenset(rest + [p3]) and g2.support == frozenset(rest + [p4]):
            log.append({"step": "row_reduce", "private": [list(p3), list(p4)]})
            return LaurentPoly(g1), LaurentPoly(g2)
    raise DegenerateSupportError("no row reduction gives three shared non-collinear monomials")


def _match_shared(f1: LaurentPoly, f2: LaurentPoly, log: list) -> tuple[LaurentPoly, LaurentPoly]:
    """Make ``ord_1(w) - ord_2(w)`` the same for the three shared monomials."""
    shared = sorted(f1.support & f2.support)
    delta = {w: f1[w].ord - f2[w].ord for w in shared}
    values = sorted(set(delta.values()))
    if len(values) == 1:
        return f1, f2
    top = [w for w in shared if delta[w] == values[-1]]
    if len(top) == 1:
        p = top[0]
        new = LaurentPoly(f1.scale(f2[p]) - f2.scale(f1[p]))
        log.append({"step": "combine", "pivot": list(p), "kept": 1,
                    "delta": {str(w): str(d) for w, d in delta.items()}})
        f1, f2 = f1, new
    else:
        p = [w for w in shared if delta[w] == values[0]][0]
        new = LaurentPoly(f1.scale(f2[p]) - f2.scale(f1[p]))
        log.append({"step": "combine", "pivot": list(p), "kept": 2,
                    "delta": {str(w): str(d) for w, d in delta.items()}})
        f1, f2 = new, f2
    shared = sorted(f1.support & f2.support)
    if len(shared) != 3 or pg.affine_dimension(shared) != 2:
        raise DegenerateSupportError("the shared monomials became collinear after elimination")
    d = {f1[w].ord - f2[w].ord for w in shared}
    assert len(d) == 1, "elimination did not match the shared orders"
    return f1, f2


def _label(shared: list[ExpVec]) -> tuple[ExpVec, ExpVec, ExpVec]:
    def score(order):
        w0, w1, _ = order
        return (w0 != (0, 0), not (w1[1] == 0 and w1[0] > 0), order)

    return min(permutations(shared, 3), key=score)


def normalize(f1: LaurentPoly | LaurentSystem, f2: LaurentPoly | None = None) -> NormalizedSystem:
    """Bring a five-monomial system to the normalized two-equation form.

    Every step multiplies an equation by a nonzero constant or monomial,
    replaces it by a combination with the other equation, rescales the
    variables by powers of t, or applies a unimodular monomial change; none
    of these alters the number of non-degenerate positive solutions.  The
    steps are recorded in ``log``.
    """
    if f2 is None:
        f1, f2 = f1
    log: list[dict] = []
    f1, f2 = _private_split(f1, f2, log)
    f1, f2 = _match_shared(f1, f2, log)
    shared = sorted(f1.support & f2.support)
    w0, w1, w2 = _label(shared)
    w3 = next(iter(f1.support - f2.support))
    w4 = next(iter(f2.support - f1.support))

    if w0 != (0, 0):
        neg = (-w0[0], -w0[1])
        f1, f2 = f1.shift_monomial(neg), f2.shift_monomial(neg)
        w1, w2, w3, w4 = (pg.sub(w, w0) for w in (w1, w2, w3, w4))
        log.append({"step": "translate", "by": list(neg)})
        w0 = (0, 0)

    o1, o2 = f1[w0].ord, f2[w0].ord
    if o1 != 0 or o2 != 0:
        f1 = LaurentPoly({w: c.shift(-o1) for w, c in f1.items()})
        f2 = LaurentPoly({w: c.shift(-o2) for w, c in f2.items()})
        log.append({"step": "divide_by_t_power", "exponents": [str(o1), str(o2)]})

    e1, e2 = f1[w1].ord, f1[w2].ord
    if e1 != 0 or e2 != 0:
        det = pg.cross(w1, w2)
        k = Fraction(-e1 * w2[1] + e2 * w1[1], det)
        l = Fraction(-e2 * w1[0] + e1 * w2[0], det)
        f1, f2 = f1.torus_substitute(k, l), f2.torus_substitute(k, l)
        log.append({"step": "torus_substitute", "k": str(k), "l": str(l)})

    for i, f in enumerate((f1, f2)):
        lead = f[w1]
        if lead != PuiseuxScalar.const(1):
            g = LaurentPoly({w: c / lead for w, c in f.items()})
            log.append({"step": "divide", "equation": i + 1, "by": str(lead)})
            if i == 0:
                f1 = g
            else:
                f2 = g

    M, m1, (m2, n2) = monomial_basis(w1, w2)
    if M != ((1, 0), (0, 1)):
        f1, f2 = f1.monomial_change(M), f2.monomial_change(M)
        w3, w4 = _apply(M, w3), _apply(M, w4)
        log.append({"step": "monomial_change", "matrix": [list(M[0]), list(M[1])]})
    w1, w2 = (m1, 0), (m2, n2)

    alpha, beta = f1[w3].ord, f2[w4].ord
    return NormalizedSystem(
        m1=m1, w2=w2, w3=w3, w4=w4,
        a0=f1[(0, 0)], a2=f1[w2], a3=f1[w3].shift(-alpha),
        b0=f2[(0, 0)], b2=f2[w2], b4=f2[w4].shift(-beta),
        alpha=Fraction(alpha), beta=Fraction(beta), log=tuple(log),
    )


# ---- the fan of the triangle (0,0), (m1,0), (m2,n2) -----------------------------

@dataclass(frozen=True)
class FanE:
    L0: tuple[int, int]
    L1: tuple[int, int]
    L2: tuple[int, int]

    @property
    def rays(self) -> dict[str, tuple[int, int]]:
        return {"L0": self.L0, "L1": self.L1, "L2": self.L2}

    @property
    def cones(self) -> dict[str, tuple[tuple[int, int], tuple[int, int]]]:
        return {"C0": (self.L0, self.L2), "C1": (self.L0, self.L1), "C2": (self.L1, self.L2)}

    def locate(self, p) -> str:
        """``'origin'``, ``'L0'``..``'L2'`` (open rays) or ``'C0'``..``'C2'`` (open cones)."""
        p = (Fraction(p[0]), Fraction(p[1]))
        if p == (0, 0):
            return "origin"
        for name, r in self.rays.items():
            if pg.cross(r, p) == 0 and pg.dot(r, p) > 0:
                return name
        for name, (u, v) in self.cones.items():
            d = pg.cross(u, v)
            a = pg.cross(p, v) / d
            b = pg.cross(u, p) / d
            if a > 0 and b > 0:
                return name
        raise AssertionError("fan does not cover the point")


def build_fan(ns: NormalizedSystem | tuple[int, int, int]) -> FanE:
    m1, m2, n2 = (ns.m1, ns.m2, ns.n2) if isinstance(ns, NormalizedSystem) else ns
    return FanE(pg.primitive((0, -m1)), pg.primitive((n2, m1 - m2)), pg.primitive((-n2, m2)))


def cone_positivity(ns: NormalizedSystem, i: int, point) -> bool:
    """Sign test for a transversal point in the open cone ``C_i``."""
    where = build_fan(ns).locate(point)
    if where != f"C{i}":
        raise ValueError(f"point {point} lies in {where}, not in the open cone C{i}")
    a = {0: ns.a0.coef, 1: Fraction(1), 2: ns.a2.coef}[i]
    b = {0: ns.b0.coef, 1: Fraction(1), 2: ns.b2.coef}[i]
    return a * ns.a3.coef < 0 and b * ns.b4.coef < 0


# ---- univariate reduction of two trinomials -----------------------------------

@dataclass(frozen=True)
class UnivariateReduction:
    """Positive solutions of the trinomial system <-> solutions of ``curve(x) = target`` in (0, 1)."""

    curve: GenPowerCurve
    target: object
    k: Fraction
    l: Fraction
    m1: int
    w2: ExpVec
    w3: ExpVec
    w4: ExpVec
    k3: Fraction
    l3: Fraction
    k4: Fraction
    l4: Fraction

    def lift(self, x: float) -> tuple[float, float]:
        """``(y1, y2)`` for ``x`` in (0, 1)."""
        return x ** (1 / self.m1), x ** float(self.k) * (1 - x) ** float(self.l)


def _exponents(m1, m2, n2, m, n) -> tuple[Fraction, Fraction]:
    return Fraction(m * n2 - m2 * n, m1 * n2), Fraction(n - n2, n2)


def trinomial_to_univariate(rs: tuple[RealPoly, RealPoly], w3: ExpVec | None = None) -> UnivariateReduction:
    """``-1 + y1^m1 + y1^m2 y2^n2 = 0`` and a trinomial through ``(m2, n2)``.

    Substituting ``x = y1^m1`` and ``y2 = x^k (1-x)^l`` turns the second
    equation, divided by its ``y^w2`` and ``y^w3`` coefficients, into
    ``x^k3 (1-x)^l3 + b x^k4 (1-x)^l4 = target``.
    """
    e1, e2 = (dict(p) for p in rs)
    if e1.get((0, 0)) is not None and e1[(0, 0)] != -1:
        s = -Fraction(e1[(0, 0)])
        e1 = {w: Fraction(c) / s for w, c in e1.items()}
    try:
        (wx,) = [w for w in e1 if w[1] == 0 and w[0] > 0]
        (wy,) = [w for w in e1 if w[1] != 0]
    except ValueError:
        raise ValueError("first equation must be -1 + y1^m1 + y1^m2 y2^n2") from None
    m1, (m2, n2) = wx[0], wy
    if set(e1) != {(0, 0), wx, wy} or e1[(0, 0)] != -1 or e1[wx] != 1 or e1[wy] != 1:
        raise ValueError("first equation must be -1 + y1^m1 + y1^m2 y2^n2 (other sign patterns are not handled)")
    if m1 == 0 or n2 == 0:
        raise ValueError("need m1 != 0 and n2 != 0")
    if n2 < 0:
        raise ValueError("need n2 > 0")
    if wy not in e2 or len(e2) != 3:
        raise ValueError("second equation must be a trinomial through (m2, n2)")
    others = sorted(w for w in e2 if w != wy)
    if w3 is None:
        unit = [w for w in others if not isinstance(e2[w], PowerConstant) and abs(e2[w]) == 1]
        w3 = unit[0] if unit else others[0]
    (w4,) = [w for w in others if w != w3]
    A = Fraction(e2[w3])
    k3, l3 = _exponents(m1, m2, n2, *w3)
    k4, l4 = _exponents(m1, m2, n2, *w4)
    b4 = e2[w4] * (1 / A) if isinstance(e2[w4], PowerConstant) else Fraction(e2[w4]) / A
    target = -Fraction(e2[wy]) / A
    curve = GenPowerCurve.of([(1, k3, l3), (b4, k4, l4)])
    return UnivariateReduction(curve, target, Fraction(-m2, m1 * n2), Fraction(1, n2),
                               m1, wy, w3, w4, k3, l3, k4, l4)


def phi(g: GenPowerCurve | UnivariateReduction) -> PhiFunction:
    """The function whose level set ``phi = 1`` holds the critical points of g."""
    return phi_of(g.curve if isinstance(g, UnivariateReduction) else g)


def univariate_from_normalized(ns: NormalizedSystem, b4: object | None = None) -> UnivariateReduction:
    """Univariate reduction of the reduced system of the difference system at the origin.

    ``b4`` replaces ``coef(b4)`` (e.g. by an exact :class:`PowerConstant`).
    """
    f1, f2 = ns.difference_system()
    r1 = reduced_polynomial(f1, (0, 0))
    r2 = reduced_polynomial(f2, (0, 0))
    if b4 is not None:
        r2 = {w: (b4 if w == ns.w4 else c) for w, c in r2.items()}
    return trinomial_to_univariate((r1, r2), w3=ns.w3)


# ---- construction analysis ---------------------------------------------------

DRRS_CONSTANT = PowerConstant(Fraction(44, 31), Fraction(5, 6), Fraction(-1))


def construction_check(ns: NormalizedSystem, count: bool = False) -> dict:
    """Constraint-by-constraint report for a seven-solution candidate."""
    m1, m2, n2 = ns.m1, ns.m2, ns.n2
    (m3, n3), (m4, n4) = ns.w3, ns.w4
    checks: dict[str, bool] = {}
    for i, (m, n) in ((3, ns.w3), (4, ns.w4)):
        checks[f"B1_w{i}"] = (0 < n2 < n and m * n2 - n * m2 < 0
                              and (m - m1) * n2 - n * (m2 - m1) < 0)
    checks["B11"] = n4 > n3 and (m4 - m3) * n2 - (n4 - n3) * m2 > 0
    d3, d4 = m3 * n2 - n3 * m2, m4 * n2 - n4 * m2
    v1 = (ns.alpha / d3 * n2, ns.alpha / d3 * -m2) if d3 else None
    v2 = (ns.alpha / d4 * n2, ns.alpha / d4 * -m2) if d4 else None
    checks["ordering_d3_lt_d4_lt_0"] = d3 < d4 < 0
    checks["v2_left_of_v1"] = v1 is not None and v2 is not None and v2[0] < v1[0]
    checks["coef_a0_eq_b0"] = ns.a0.coef == ns.b0.coef
    checks["coef_a2_eq_b2"] = ns.a2.coef == ns.b2.coef
    checks["alpha_eq_beta"] = ns.alpha == ns.beta
    checks["alpha_eq_gamma2"] = ns.alpha == ns.gamma2
    checks["gamma2_lt_gamma0"] = ns.gamma2 < ns.gamma0
    checks["gamma0_gt_alpha"] = ns.gamma0 > ns.alpha
    checks["alpha_positive"] = ns.alpha > 0

    k3, l3 = _exponents(m1, m2, n2, m3, n3)
    k4, l4 = _exponents(m1, m2, n2, m4, n4)
    checks["k4_minus_k3"] = k4 - k3 == Fraction(1, 6)
    checks["l4_minus_l3"] = l4 - l3 == Fraction(1, 3)
    checks["k3_k4_values"] = (k3, k4) == (Fraction(-35, 12), Fraction(-11, 4))
    checks["coef_b4_drrs"] = abs(float(ns.b4.coef) - float(DRRS_CONSTANT)) < 1e-12

    c0, c2 = ns.c0.coef, ns.c2.coef
    report = {
        "checks": checks,
        "passed": all(checks.values()),
        "v1": [str(c) for c in v1] if v1 else None,
        "v2": [str(c) for c in v2] if v2 else None,
        "k3": str(k3), "l3": str(l3), "k4": str(k4), "l4": str(l4),
        "gamma0": str(ns.gamma0), "gamma2": str(ns.gamma2),
        "sign_conventions": {
            "coef_c0_from_b0_minus_a0": str(c0),
            "coef_c0_as_stated": "-0.36008",
            "coef_c2": str(c2),
            "target_minus_coef_c2": str(-c2),
            "target_as_stated": "-0.36008",
        },
    }
    if count:
        from .realsolve.genpow import count_genpow_solutions

        red = univariate_from_normalized(ns, DRRS_CONSTANT if checks["coef_b4_drrs"] else None)
        report["sign_conventions"]["count_at_minus_coef_c2"] = count_genpow_solutions(red.curve, red.target).count
        report["sign_conventions"]["count_at_opposite_sign"] = count_genpow_solutions(red.curve, -red.target).count
        report["phi_equals_one"] = phi(red).count_one()
    return report
