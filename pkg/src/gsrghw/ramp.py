"""Ramp secret-sharing thresholds from relative generalized Hamming weights.

For a ramp scheme built on ``C_2 < C_1`` with codimension ``l``:

* ``r_m = n - M_{l-m+1}(C_1, C_2) + 1`` shares always recover ``m`` q-bits,
* ``t_m = M_m(C_2^perp, C_1^perp) - 1`` shares never reveal ``m`` q-bits.

A lower bound on ``M`` therefore gives an upper bound on ``r`` and a lower
bound on ``t``.  Dual parameters are never derived here; they must come from
the caller, either as a bound vector or as a one-point pair the caller vouches
for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .bounds import highest_rghw
from .errors import InvalidParameter, InvariantViolation
from .rghw import CodePairSpec, rghw_lower_exact
from .semigroup import SemigroupTable


def _check_vector(values: Sequence[int], n: int | None, name: str) -> list[int]:
    out = [int(v) for v in values]
    if not out:
        raise InvalidParameter(f"{name} must not be empty")
    for i, v in enumerate(out, start=1):
        if v < 1 or (n is not None and v > n):
            hi = "n" if n is None else str(n)
            raise InvalidParameter(f"{name}[{i}]={v} outside [1, {hi}]")
    for i in range(1, len(out)):
        if out[i] < out[i - 1]:
            raise InvalidParameter(
                f"{name} must be nondecreasing, but entry {i + 1} ({out[i]}) < entry {i} ({out[i - 1]})"
            )
    return out


def reconstruction_bounds(n: int, ell_cd: int, M_primal_lower: Sequence[int]) -> list[int]:
    """``r_m = n - M_{l-m+1} + 1`` for ``m = 1..l``."""
    M = _check_vector(M_primal_lower, n, "M_primal_lower")
    if len(M) != ell_cd:
        raise InvalidParameter(f"expected {ell_cd} primal weights, got {len(M)}")
    return [n - M[ell_cd - m] + 1 for m in range(1, ell_cd + 1)]


def invert_reconstruction(n: int, r_upper: Sequence[int]) -> list[int]:
    """Recover the primal weight vector from reconstruction thresholds."""
    r = list(r_upper)
    ell_cd = len(r)
    return [n + 1 - r[ell_cd - m] for m in range(1, ell_cd + 1)]


def privacy_bounds(M_dual_lower: Sequence[int]) -> list[int]:
    """``t_m = M_m(C_2^perp, C_1^perp) - 1``."""
    return [v - 1 for v in _check_vector(M_dual_lower, None, "M_dual_lower")]


@dataclass(frozen=True)
class WeightEntry:
    value: int
    method: str


WeightSource = Union[CodePairSpec, Sequence[int]]


def primal_weights(pair: CodePairSpec, table: SemigroupTable, **z_kwargs) -> list[WeightEntry]:
    """Lower bounds on ``M_1..M_l`` for a one-point pair.

    Entries below the codimension use the exact Z minimisation; the last one
    uses :func:`highest_rghw`.  Since ``M_m`` increases with ``m`` the running
    maximum is taken and marked in the method tag.
    """
    ell_cd = pair.ell_cd
    if ell_cd < 1:
        raise InvalidParameter(f"codimension must be >= 1, got {ell_cd}")
    out: list[WeightEntry] = []
    for m in range(1, ell_cd + 1):
        if m == ell_cd:
            bv = highest_rghw(pair, table, **z_kwargs)[0]
        else:
            bv = rghw_lower_exact(pair, table, m, **z_kwargs)
        value, method = int(bv.value), bv.method
        if out and out[-1].value > value:
            value, method = out[-1].value, f"{out[-1].method}+running-max"
        out.append(WeightEntry(value, method))
    return out


def _entries(source: WeightSource, table: SemigroupTable | None, side: str, **z_kwargs):
    if isinstance(source, CodePairSpec):
        if table is None:
            raise InvalidParameter(f"{side} pair given without a semigroup table")
        entries = primal_weights(source, table, **z_kwargs)
        if side == "dual":
            entries = [WeightEntry(e.value, f"{e.method} (user-asserted dual pair)") for e in entries]
        return entries
    return [WeightEntry(int(v), "user-supplied") for v in source]


@dataclass(frozen=True)
class RampReport:
    n: int
    ell_cd: int
    r_upper: tuple[int, ...]
    t_lower: tuple[int | None, ...]
    assumptions: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell_cd,
            "r_upper": list(self.r_upper),
            "t_lower": list(self.t_lower),
            "assumptions": list(self.assumptions),
        }


def scheme_report(
    n: int,
    primal: WeightSource,
    dual: WeightSource | None = None,
    table: SemigroupTable | None = None,
    **z_kwargs,
) -> RampReport:
    """Assemble reconstruction and privacy thresholds with their provenance.

    ``dual`` may be omitted, in which case no privacy threshold is claimed
    and ``t_lower`` holds ``None``.
    """
    if n < 1:
        raise InvalidParameter(f"code length must be positive, got n={n}")
    if isinstance(primal, CodePairSpec) and primal.n != n:
        raise InvalidParameter(f"primal pair has length {primal.n}, report length is {n}")
    p_entries = _entries(primal, table, "primal", **z_kwargs)
    ell_cd = len(p_entries)
    r = reconstruction_bounds(n, ell_cd, [e.value for e in p_entries])
    assumptions = [
        f"M_{m}(C1,C2) >= {e.value} via {e.method}" for m, e in enumerate(p_entries, start=1)
    ]
    if dual is None:
        t: list[int | None] = [None] * ell_cd
        assumptions.append("no dual bound supplied; privacy thresholds not claimed")
    else:
        if isinstance(dual, CodePairSpec) and dual.n != n:
            raise InvalidParameter(f"dual pair has length {dual.n}, report length is {n}")
        d_entries = _entries(dual, table, "dual", **z_kwargs)
        if len(d_entries) != ell_cd:
            raise InvalidParameter(
                f"dual vector has {len(d_entries)} entries, primal codimension is {ell_cd}"
            )
        for e in d_entries:
            if e.value > n:
                raise InvalidParameter(f"dual weight {e.value} exceeds n={n}")
        t = list(privacy_bounds([e.value for e in d_entries]))
        assumptions.extend(
            f"M_{m}(C2^perp,C1^perp) >= {e.value} via {e.method}"
            for m, e in enumerate(d_entries, start=1)
        )
        for m in range(1, ell_cd + 1):
            if t[m - 1] >= r[m - 1]:
                raise InvariantViolation(
                    f"privacy bound t_{m}={t[m - 1]} is not below reconstruction bound r_{m}={r[m - 1]}",
                    index=m,
                )
    return RampReport(n, ell_cd, tuple(r), tuple(t), tuple(assumptions))
