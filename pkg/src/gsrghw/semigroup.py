"""Weierstrass semigroups H(Q_nu) along the Garcia-Stichtenoth second tower.

Two independent constructions are provided:

* :func:`build_recursive` unrolls ``H_1 = N_0`` and
  ``H_nu = ell * H_{nu-1}  U  [c_nu, oo)``.
* :func:`build_explicit` lists the blocks ``S^0, ..., S^{nu/2}`` of the
  closed description (even ``nu`` only) and reassembles the same set.

A :class:`SemigroupTable` stores only the elements below the conductor; every
integer at or above the conductor is a member.  The number of gaps is taken
as the genus everywhere downstream.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import InvalidParameter, ParameterTooLarge, UndefinedConstruction

INT_BITS_GUARD = 127
# Largest conductor for which a membership table is materialised (bytes).
MAX_TABLE_CONDUCTOR = 1 << 26


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


@dataclass(frozen=True)
class TowerParams:
    """Field size ``q = ell**2`` and tower level ``nu``."""

    ell: int
    nu: int

    def __post_init__(self):
        for name in ("ell", "nu"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidParameter(f"{name} must be an integer, got {v!r}")
        if self.ell < 2:
            raise InvalidParameter(f"ell must be >= 2, got {self.ell}")
        if self.nu < 1:
            raise InvalidParameter(f"nu must be >= 1, got {self.nu}")

    @property
    def q(self) -> int:
        return self.ell * self.ell

    @property
    def warnings(self) -> tuple[str, ...]:
        if is_prime_power(self.ell):
            return ()
        return (
            f"ell={self.ell} is not a prime power, so q={self.q} is not the "
            "size of a finite field; the semigroup is combinatorial only",
        )


def _check_width(params: TowerParams) -> None:
    if (params.ell ** params.nu).bit_length() > INT_BITS_GUARD:
        raise ParameterTooLarge(
            f"parameter too large: ell**nu = {params.ell}**{params.nu} exceeds "
            f"the {INT_BITS_GUARD}-bit guard"
        )


def conductor(params: TowerParams) -> int:
    """``ell**nu - ell**floor((nu+1)/2)``."""
    _check_width(params)
    return params.ell ** params.nu - params.ell ** ((params.nu + 1) // 2)


def gap_law_genus(params: TowerParams) -> int:
    """Closed form matching the gap count: ``(ell^ceil(nu/2)-1)(ell^floor(nu/2)-1)``."""
    ell, nu = params.ell, params.nu
    return (ell ** (-(-nu // 2)) - 1) * (ell ** (nu // 2) - 1)


def stated_genus(params: TowerParams) -> int:
    """The genus formula as printed for the tower, kept as a diagnostic.

    ``(ell^floor((nu+1)/2) - 1)(ell^ceil((nu+1)/2) - 1)``; it coincides with
    the gap count one level up.
    """
    ell, nu = params.ell, params.nu
    return (ell ** ((nu + 1) // 2) - 1) * (ell ** (-(-(nu + 1) // 2)) - 1)


def _check_table_size(params: TowerParams, c: int) -> None:
    if c > MAX_TABLE_CONDUCTOR:
        raise ParameterTooLarge(
            f"parameter too large: conductor {c} of (ell={params.ell}, nu={params.nu}) "
            f"exceeds the table limit {MAX_TABLE_CONDUCTOR}"
        )


@dataclass(frozen=True)
class SemigroupTable:
    params: TowerParams
    conductor: int
    small_elements: tuple[int, ...]
    gaps: int
    membership: bytes = field(repr=False, compare=False)

    @classmethod
    def from_small_elements(
        cls, params: TowerParams, conductor: int, small: Iterable[int]
    ) -> "SemigroupTable":
        small = tuple(small)
        if conductor < 0:
            raise InvalidParameter("conductor must be nonnegative")
        if conductor > 0 and (not small or small[0] != 0):
            raise InvalidParameter("0 must be the first small element")
        if any(b <= a for a, b in zip(small, small[1:])):
            raise InvalidParameter("small_elements must be strictly increasing")
        if small and (small[0] < 0 or small[-1] >= conductor):
            raise InvalidParameter("small_elements must lie in [0, conductor)")
        member = bytearray(conductor)
        for x in small:
            member[x] = 1
        return cls(params, conductor, small, conductor - len(small), bytes(member))

    # -- queries ---------------------------------------------------------

    def contains(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self.conductor:
            return True
        return bool(self.membership[x])

    __contains__ = contains

    def count_upto(self, x: int) -> int:
        """``#(H n (0, x])``."""
        if x <= 0:
            return 0
        c = self.conductor
        if x < c:
            return bisect_right(self.small_elements, x) - 1
        below = len(self.small_elements) - 1 if c > 0 else 0
        return below + x - max(c, 1) + 1

    def dimension(self, mu: int, n: int) -> int:
        """Dimension of the one-point code ``C_L(D, mu Q)`` of length ``n``."""
        if mu < -1:
            raise InvalidParameter(f"mu must be >= -1, got {mu}")
        if n < 1:
            raise InvalidParameter(f"code length must be positive, got {n}")
        if mu >= n:
            raise InvalidParameter(f"length constraint violated: mu={mu} >= n={n}")
        return self.count_upto(mu) + (1 if mu >= 0 else 0)

    def members_below(self, bound: int) -> list[int]:
        """Sorted members in ``[0, bound)``."""
        out = [x for x in self.small_elements if x < bound]
        out.extend(range(self.conductor, bound))
        return out

    # -- diagnostics / serialisation ------------------------------------

    def diagnostics(self) -> dict[str, Any]:
        stated = stated_genus(self.params)
        return {
            "gap_count": self.gaps,
            "gap_law_genus": gap_law_genus(self.params),
            "stated_genus": stated,
            "stated_genus_matches": stated == self.gaps,
            "warnings": list(self.params.warnings),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "ell": self.params.ell,
            "nu": self.params.nu,
            "conductor": self.conductor,
            "small_elements": list(self.small_elements),
            "gaps": self.gaps,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "SemigroupTable":
        params = TowerParams(doc["ell"], doc["nu"])
        table = cls.from_small_elements(params, doc["conductor"], doc["small_elements"])
        if table.gaps != doc["gaps"]:
            raise InvalidParameter(
                f"gap count {doc['gaps']} inconsistent with small_elements ({table.gaps})"
            )
        return table


def contains(table: SemigroupTable, x: int) -> bool:
    return table.contains(x)


def count_upto(table: SemigroupTable, x: int) -> int:
    return table.count_upto(x)


def dimension(table: SemigroupTable, mu: int, n: int) -> int:
    return table.dimension(mu, n)


def build_recursive(params: TowerParams) -> SemigroupTable:
    """Unroll the level recursion from ``H(Q_1) = N_0``."""
    c_final = conductor(params)
    _check_table_size(params, c_final)
    ell = params.ell
    small: list[int] = []
    c_prev = 0
    for level in range(2, params.nu + 1):
        c = conductor(TowerParams(ell, level))
        scaled = [ell * x for x in small]
        # ell * [c_prev, oo) contributes multiples of ell from ell*c_prev upward
        scaled.extend(range(ell * c_prev, c, ell))
        small = [x for x in scaled if x < c]
        c_prev = c
    return SemigroupTable.from_small_elements(params, c_final, small)


@dataclass(frozen=True)
class SSetDecomposition:
    """Blocks ``S^0 .. S^{j_half}`` of H(Q_nu); ``[s_infinity_start, oo)`` completes it."""

    params: TowerParams
    j_half: int
    sets: tuple[tuple[int, ...], ...]
    s_infinity_start: int

    @property
    def conductor(self) -> int:
        return self.s_infinity_start - 1

    def flatten(self) -> list[int]:
        return sorted(x for s in self.sets for x in s)

    def to_table(self) -> SemigroupTable:
        c = self.conductor
        return SemigroupTable.from_small_elements(
            self.params, c, [x for x in self.flatten() if x < c]
        )

    def lemma_violations(self) -> list[str]:
        """Check disjointness, block sizes and the spacing properties.

        Returns human-readable descriptions of every failed property; an empty
        list means all five hold.
        """
        ell, nu = self.params.ell, self.params.nu
        out: list[str] = []
        seen: set[int] = set()
        for i, s in enumerate(self.sets):
            if seen.intersection(s):
                out.append(f"S^{i} meets an earlier block")
            seen.update(s)
            if any(x >= self.s_infinity_start for x in s):
                out.append(f"S^{i} meets S^infinity")
        if self.sets[0] != (0,):
            out.append("S^0 != {0}")
        for i in range(1, self.j_half + 1):
            s = self.sets[i]
            if len(s) != ell ** i - ell ** (i - 1):
                out.append(f"#S^{i} = {len(s)}, expected {ell ** i - ell ** (i - 1)}")
            union = sum(len(self.sets[r]) for r in range(i + 1))
            if union != ell ** i:
                out.append(f"#(S^0..S^{i}) = {union}, expected {ell ** i}")
            step = ell ** (nu - 2 * i + 1)
            if any(b - a != step for a, b in zip(s, s[1:])):
                out.append(f"consecutive elements of S^{i} not spaced by {step}")
            if s and self.sets[i - 1] and s[0] - self.sets[i - 1][-1] != step:
                out.append(f"first of S^{i} minus last of S^{i - 1} != {step}")
            prefix = sorted(x for r in range(i + 1) for x in self.sets[r])
            if any(b - a < step for a, b in zip(prefix, prefix[1:])):
                out.append(f"two elements of S^0..S^{i} closer than {step}")
        return out


def build_explicit(params: TowerParams) -> SSetDecomposition:
    """Closed description of H(Q_nu) by blocks; defined for even ``nu`` only."""
    if params.nu % 2:
        raise UndefinedConstruction(
            f"construction undefined for odd level nu={params.nu}; use the recursion"
        )
    c = conductor(params)
    _check_table_size(params, c)
    ell, nu = params.ell, params.nu
    j_half = nu // 2
    top = ell ** (2 * j_half)
    sets: list[tuple[int, ...]] = [(0,)]
    for i in range(1, j_half + 1):
        base = top - ell ** (nu - i + 1)
        step = ell ** (nu - 2 * i + 1)
        sets.append(tuple(base + k * step for k in range(1, ell ** i - ell ** (i - 1) + 1)))
    return SSetDecomposition(params, j_half, tuple(sets), c + 1)


def member_set_upto(table: SemigroupTable, bound: int) -> set[int]:
    """Members in ``[0, bound]`` as a set (comparison helper)."""
    return set(table.members_below(bound + 1))
