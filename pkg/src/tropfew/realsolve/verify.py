"""End-to-end checks on the built-in systems."""

from __future__ import annotations

from fractions import Fraction

from .. import fixtures
from ..arrangement import NonTransversalError, bound_report, positive_transversal_points
from .bivariate import RealSystem, solve_positive, specialize_t

STABILIZATION_KS = range(3, 21)


def _match(midpoints, reference, tol: float) -> tuple[bool, float]:
    """Greedy nearest matching; returns (all within tol, worst distance)."""
    left = [(float(x), float(y)) for x, y in midpoints]
    worst = 0.0
    ok = len(left) == len(reference)
    for rx, ry in reference:
        if not left:
            return False, float("inf")
        j = min(range(len(left)), key=lambda i: max(abs(left[i][0] - rx), abs(left[i][1] - ry)))
        d = max(abs(left[j][0] - rx), abs(left[j][1] - ry))
        worst = max(worst, d)
        left.pop(j)
    return ok and worst <= tol, worst


def stabilized_count(system, ks=STABILIZATION_KS, precision: int | None = None) -> dict:
    """Solve at ``t = 4^-k`` for increasing k until two consecutive counts agree.

    This is a heuristic: it does not prove the count for all smaller t.
    """
    history = []
    for k in ks:
        t = Fraction(1, 4 ** k)
        report = solve_positive(specialize_t(system, t), precision)
        history.append({"k": k, "t": str(t), "count": report.count})
        if len(history) >= 2 and history[-1]["count"] == history[-2]["count"]:
            return {"stabilized": True, "k": k, "count": report.count, "history": history,
                    "report": report}
    return {"stabilized": False, "k": None, "count": history[-1]["count"] if history else None,
            "history": history, "report": None}


def verify_six(t=None, precision=None) -> dict:
    system = fixtures.sturmfels_six()
    bounds = bound_report(*system).as_dict()
    try:
        tropical = len(positive_transversal_points(*system))
    except NonTransversalError:
        tropical = None
    out = {"name": "six", "tropical_positive_points": tropical, "bounds": bounds,
           "heuristic": "count stabilization over t = 4^-k"}
    if t is not None:
        report = solve_positive(specialize_t(system, Fraction(t)), precision)
        out.update(t=str(Fraction(t)), count=report.count, solve=report.as_dict())
    else:
        stab = stabilized_count(system, precision=precision)
        out.update(stabilization=stab["history"], stabilized=stab["stabilized"], k=stab["k"],
                   count=stab["count"])
        if stab["report"] is not None:
            out["t"] = str(Fraction(1, 4 ** stab["k"]))
            out["solve"] = stab["report"].as_dict()
    out["pass"] = tropical == 6 and out["count"] == 6 and bounds["bihan_ok"]
    return out


def verify_seven(t=None, precision=None) -> dict:
    t = Fraction(1, 100000) if t is None else Fraction(t)
    system = fixtures.seven()
    report = solve_positive(specialize_t(system, t), precision)
    ok, worst = _match(report.midpoints, fixtures.SEVEN_REFERENCE, 1e-4)
    out = {
        "name": "seven",
        "t": str(t),
        "gamma0": 7,
        "alpha": 1,
        "substitution": f"(44/31)^(5/6) replaced by {fixtures.DRRS_FRACTION}",
        "count": report.count,
        "midpoints_match_reference": ok,
        "worst_deviation": worst,
        "solve": report.as_dict(),
    }
    out["pass"] = report.count == 7 and (ok or t != Fraction(1, 100000))
    return out


def verify_drrs(t=None, precision=None) -> dict:
    system = fixtures.drrs()
    real = RealSystem({w: c.coef for w, c in system.f1.items()},
                      {w: c.coef for w, c in system.f2.items()}, name="drrs")
    report = solve_positive(real, precision)
    return {"name": "drrs", "count": report.count, "solve": report.as_dict(),
            "pass": report.count == 5}


VERIFIERS = {"six": verify_six, "seven": verify_seven, "drrs": verify_drrs}


def verify_paper(name: str, t=None, precision: int | None = None) -> dict:
    """Run the full pipeline on a built-in system; failures are report entries."""
    if name not in VERIFIERS:
        raise ValueError(f"unknown system {name!r}; expected one of {sorted(VERIFIERS)}")
    try:
        return VERIFIERS[name](t, precision)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return {"name": name, "pass": False, "error": f"{type(exc).__name__}: {exc}"}
