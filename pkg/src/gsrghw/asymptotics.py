"""Asymptotic bound curves for code sequences from the Garcia-Stichtenoth tower.

All rates are normalised by the code length.  Real arithmetic is plain double
precision; domain violations raise :class:`~gsrghw.errors.DomainError` naming
the inequality that failed, and curve rows outside a domain are emitted as
nulls instead of being clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InvalidParameter
from .values import FLOAT_TOL, BoundValue

CSV_HEADER = "rho,delta_coro_ag_eq1,delta_coro_ag_eq2,delta_cormu,branch"


def sqrt_q(q: int) -> int:
    if isinstance(q, bool) or not isinstance(q, int):
        raise InvalidParameter(f"q must be an integer, got {q!r}")
    r = math.isqrt(q) if q >= 0 else 0
    if q < 4 or r * r != q:
        raise InvalidParameter(f"q must be a perfect square >= 4, got {q}")
    return r


def _require(cond: bool, text: str) -> None:
    if not cond:
        raise DomainError(f"domain violated: {text}")


@dataclass(frozen=True)
class CoroAgDelta:
    delta1: float
    delta2: float


def coro_ag_delta(q: int, R: float, R_tilde: float, rho: float) -> CoroAgDelta:
    """Relative GHW lower bounds ``1 - R + 2 rho - 1/(sqrt q - 1)`` and ``1 - R~ + 2 rho``."""
    s = sqrt_q(q)
    inv = 1 / (s - 1)
    _require(0 <= R <= 1 - inv + FLOAT_TOL, f"0 <= R={R} <= 1 - 1/(sqrt(q)-1)={1 - inv}")
    _require(0 <= R_tilde < 1, f"0 <= R_tilde={R_tilde} < 1")
    _require(
        0 <= rho <= min(R, inv) + FLOAT_TOL,
        f"0 <= rho={rho} <= min(R, 1/(sqrt(q)-1))={min(R, inv)}",
    )
    return CoroAgDelta(1 - R + 2 * rho - inv, 1 - R_tilde + 2 * rho)


@dataclass(frozen=True)
class CormuValue:
    value: float
    branch: str
    beta: float
    beta_uses: str


def cormu_beta(q: int, rate: float) -> float:
    s = sqrt_q(q)
    return min(0.25 * q**-2.5 * (s - 1) ** -3, 2 * q**-0.25 * (rate * s - rate) ** 1.5)


def _cormu_small(q: int, rho: float) -> float:
    return (2 * rho**2 / q) ** (1 / 3) + (1 / math.sqrt(q)) * (rho / 2) ** (2 / 3)


def _cormu_large(q: int, rho: float, R_tilde: float) -> float:
    s = math.sqrt(q)
    cands = [
        rho * (w * (q - s)) ** -0.5 + (w / q) * (q - s) for w in (rho, R_tilde) if w > 0
    ]
    return min(cands)


def cormu_g(
    q: int,
    rho: float,
    R_tilde: float,
    *,
    beta_uses: str = "R_tilde",
    R: float | None = None,
) -> CormuValue:
    """The printed asymptotic gain ``g(rho)`` with its case split on ``beta``.

    ``beta`` is evaluated with ``R_tilde`` unless ``beta_uses="R"``, in which
    case the rate ``R`` must be given.
    """
    s = sqrt_q(q)
    _require(0 <= R_tilde < 1 / (s - 1), f"0 <= R_tilde={R_tilde} < 1/(sqrt(q)-1)={1 / (s - 1)}")
    _require(0 <= rho <= 1, f"0 <= rho={rho} <= 1")
    if beta_uses == "R_tilde":
        rate = R_tilde
    elif beta_uses == "R":
        if R is None:
            raise InvalidParameter("beta_uses='R' needs the rate R")
        _require(0 <= R <= 1, f"0 <= R={R} <= 1")
        rate = R
    else:
        raise InvalidParameter(f"beta_uses must be 'R_tilde' or 'R', got {beta_uses!r}")
    beta = cormu_beta(q, rate)
    if rho == 0:
        return CormuValue(0.0, "rho=0", beta, beta_uses)
    if rho <= beta:
        return CormuValue(_cormu_small(q, rho), "rho<=beta", beta, beta_uses)
    return CormuValue(_cormu_large(q, rho, R_tilde), "rho>beta", beta, beta_uses)


def cormu_bound(
    q: int, rho: float, R_tilde1: float, R_tilde2: float = 0.0, **kwargs
) -> BoundValue:
    """``1 - R~1 + g(rho)`` for the normalised ``M_m``."""
    _require(0 <= R_tilde2 <= R_tilde1 < 1, f"0 <= R_tilde2={R_tilde2} <= R_tilde1={R_tilde1} < 1")
    g = cormu_g(q, rho, R_tilde1 - R_tilde2, **kwargs)
    return BoundValue(
        value=1 - R_tilde1 + g.value,
        kind="lower",
        method="cormu",
        assumptions=(
            "R_tilde = R_tilde1 - R_tilde2 < 1/(sqrt(q)-1)",
            f"beta evaluated with {g.beta_uses}",
        ),
        details={"g": g.value, "branch": g.branch, "beta": g.beta, "beta_uses": g.beta_uses},
    )


def cormu_limit(q: int, rho: float, R_tilde: float) -> float:
    """Limit of the normalised finite small-codimension bound.

    With ``m ~ rho n``, ``mu ~ R~ n`` and ``n = q^((nu-1)/2)(q - sqrt q)`` the
    convex minimisation becomes ``min rho T^(-1/2) + T/q`` over
    ``T in [rho (1 - q^(-1/2)), R~ (sqrt q - 1)]``.  Diagnostic only; it is
    what the finite values converge to.
    """
    s = sqrt_q(q)
    if rho == 0:
        return 0.0
    lo, hi = rho * (1 - 1 / s), R_tilde * (s - 1)
    _require(lo <= hi, f"rho (1 - q^-1/2)={lo} <= R_tilde (sqrt q - 1)={hi}")
    t = min(max((rho * q / 2) ** (2 / 3), lo), hi)
    return rho * t**-0.5 + t / q


def _cormu2_sum(q: int, upper: int) -> float:
    return sum(q ** (1 - i / 2) - q ** (-i / 2) for i in range(1, upper + 1))


def cormu2_M(q: int, R1: float, R2: float, *, hypotheses_asserted: bool = True) -> BoundValue:
    """Normalised bound on the highest RGHW for code rates ``R2 < R1``.

    For ``R = R1 - R2 >= 1/(q - sqrt q)`` the value is ``1 - R2`` (Singleton
    attained, exact when the caller asserts the tower hypotheses).  Below that
    threshold, with ``x = log_q(R (1 - q^(-1/2)))`` and ``u = -ceil(x)``, the
    lower bound is

        1 - R2 - [ (sum_{i=1}^{u-1} (q^(1-i/2) - q^(-i/2)) + q^(1-u/2)) / (q - sqrt q) - R q^(u/2) ]

    which is continuous at the threshold.  The printed variant (``floor(x)``
    indexing and ``+ R q^(-floor(x)/2)``) is reported alongside.
    """
    s = sqrt_q(q)
    _require(0 <= R2 < R1 < 1, f"0 <= R2={R2} < R1={R1} < 1")
    R = R1 - R2
    inv = 1 / (s - 1)
    hyp = 2 * inv <= R2 + inv <= R1 + inv < 1
    assumptions = [
        "R_j = R_tilde_j - 1/(sqrt(q)-1) (abundant regime)",
        f"2/(sqrt(q)-1) <= R_tilde2 <= R_tilde1 < 1: {'holds' if hyp else 'fails'} for the given rates",
        "hypotheses asserted by caller" if hypotheses_asserted else "hypotheses not asserted",
    ]
    threshold = 1 / (q - s)
    if R >= threshold:
        kind = "exact" if hypotheses_asserted else "upper"
        return BoundValue(1 - R2, kind, "cormu2", tuple(assumptions), details={"branch": "R>=threshold"})
    x = math.log(R * (1 - 1 / s), q)
    nearest = round(x)
    is_int = abs(x - nearest) < FLOAT_TOL
    if is_int:
        x = float(nearest)
    L = math.floor(x)
    u = -math.ceil(x)
    derived = 1 - R2 - ((_cormu2_sum(q, u - 1) + q ** (1 - u / 2)) / (q - s) - R * q ** (u / 2))
    printed = 1 - R2 - ((_cormu2_sum(q, -L - 1) + q ** (1 + L / 2)) / (q - s) + R * q ** (-L / 2))
    details = {
        "branch": "R<threshold",
        "log_term": x,
        "printed_value": printed,
    }
    if is_int:
        details["simplified_value"] = 1 - R2 - _cormu2_sum(q, -int(x) - 1) / (q - s)
    note = None
    if abs(printed - derived) > FLOAT_TOL:
        note = f"printed general form gives {printed!r}, continuous form gives {derived!r}"
    return BoundValue(derived, "lower", "cormu2", tuple(assumptions), note, details)


@dataclass(frozen=True)
class CurveRow:
    rho: float
    delta_coro_ag_eq1: float | None
    delta_coro_ag_eq2: float | None
    delta_cormu: float | None
    branch: str


def parse_grid(text: str) -> list[float]:
    """``start:step:stop`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidParameter(f"grid must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise InvalidParameter(f"grid step must be positive, got {step}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(max(count, 0))]
    return [float(p) for p in text.split(",") if p.strip()]


def sample_curves(
    q: int,
    rho_grid: Iterable[float],
    *,
    R: float,
    R_tilde: float,
    R_tilde2: float = 0.0,
    beta_uses: str = "R_tilde",
) -> list[CurveRow]:
    """Both curves of the comparison figure on a grid of ``rho`` values."""
    grid = sorted(set(float(r) for r in rho_grid))
    if not grid:
        raise InvalidParameter("empty rho grid")
    rows = []
    for rho in grid:
        reasons = []
        d1 = d2 = cm = None
        branch = ""
        try:
            d = coro_ag_delta(q, R, R_tilde, rho)
            d1, d2 = d.delta1, d.delta2
        except DomainError as exc:
            reasons.append("coro_ag " + str(exc))
        try:
            b = cormu_bound(q, rho, R_tilde, R_tilde2, beta_uses=beta_uses, R=R)
            cm, branch = float(b.value), b.details["branch"]
        except DomainError as exc:
            reasons.append("cormu " + str(exc))
        if reasons:
            branch = "; ".join([branch] + reasons if branch else reasons)
        rows.append(CurveRow(rho, d1, d2, cm, branch.replace(",", ";")))
    return rows


def _fmt(x: float | None) -> str:
    return "" if x is None else format(x, ".12g")


def curves_csv(rows: Sequence[CurveRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmt(r.rho),
                    _fmt(r.delta_coro_ag_eq1),
                    _fmt(r.delta_coro_ag_eq2),
                    _fmt(r.delta_cormu),
                    r.branch,
                ]
            )
        )
    return "\n".join(lines) + "\n"
