"""Pure-Python kernels (fallback when the compiled extension is unavailable).

Window convention shared with ``_ckernels``: for a maximal shift magnitude
``mu - 1`` the scan window is ``alpha in [-(mu-1), c)`` and bit ``i`` stands
for ``alpha = i - (mu-1)``.  Shift index ``j`` (``0 <= j < mu-1``) is the
shift ``-(mu-1) + j``, so increasing indices enumerate shift tuples in
lexicographic order.
"""

from __future__ import annotations

NAME = "python"


def _bits(flags) -> int:
    return int("".join("1" if f else "0" for f in reversed(list(flags))) or "0", 2)


class Prepared:
    __slots__ = ("masks", "width", "nshift")

    def __init__(self, masks: list[int], width: int):
        self.masks = masks
        self.width = width
        self.nshift = len(masks)


def prepare(membership: bytes, c: int, mu: int) -> Prepared:
    span = mu - 1
    width = c + span

    def member(a: int) -> bool:
        return a >= c or (a >= 0 and membership[a] != 0)

    nonmember = _bits(not member(i - span) for i in range(width))
    # extended past the window so that alpha + d stays addressable
    ext = _bits(member(i - span) for i in range(width + span))
    full = (1 << width) - 1
    masks = []
    for j in range(span):
        d = span - j
        masks.append(nonmember & (ext >> d) & full)
    return Prepared(masks, width)


def count_union(prep: Prepared, indices) -> int:
    acc = 0
    for j in indices:
        acc |= prep.masks[j]
    return acc.bit_count()


def search(prep: Prepared, k: int, first_lo: int, first_hi: int):
    """Lexicographic branch-and-bound over ``k``-subsets of shift indices.

    Only subsets whose smallest index lies in ``[first_lo, first_hi)`` are
    visited.  Returns ``(best, indices)``; ties keep the first subset found.
    ``(-1, None)`` if the range admits no subset.
    """
    masks = prep.masks
    n = prep.nshift
    best = prep.width + 1
    best_idx = None
    idx = [0] * k
    acc = [0] * (k + 1)
    d = 0
    idx[0] = first_lo - 1
    while d >= 0:
        idx[d] += 1
        lim = n - (k - d)
        if d == 0 and first_hi - 1 < lim:
            lim = first_hi - 1
        if idx[d] > lim:
            d -= 1
            continue
        v = acc[d] | masks[idx[d]]
        cnt = v.bit_count()
        if cnt >= best:
            continue
        if d == k - 1:
            best = cnt
            best_idx = tuple(idx)
            continue
        acc[d + 1] = v
        d += 1
        idx[d] = idx[d - 1]
    if best_idx is None:
        return -1, None
    return best, best_idx


def full_count(membership: bytes, c: int, mu: int) -> int:
    """Count non-members alpha >= -(mu-1) whose next member is within mu-1."""
    nxt = c
    cnt = 0
    for a in range(c - 1, -mu, -1):
        if a >= 0 and membership[a]:
            nxt = a
        elif nxt - a <= mu - 1:
            cnt += 1
    return cnt
