"""Ferrers shapes (French orientation) and their transversals.

A shape is a weakly decreasing tuple of positive row lengths, listed bottom
row first; rows and columns are 1-based.  Cell (r, c) belongs to the shape
when c <= parts[r-1].

A transversal of a shape with n rows places one point per row and column,
every point on a cell of the shape.  We write a transversal as the word w
with w[c-1] = the row of the point in column c; column count equals row
count, so w is a permutation of 1..n.  A shape has a transversal iff row r
(counted from the bottom) reaches at least n+1-r cells.

A transversal w contains the pattern sigma when some subsequence of w is
order-isomorphic to sigma *and* the bounding cell of that copy -- row of its
largest letter, column of its last letter -- lies in the shape.  Rows weakly
shorten upward, so that single corner condition puts every cell of the k x k
bounding grid of the copy inside the shape.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .perms import Perm, check_perm, window_plan

Shape = tuple[int, ...]


def check_shape(parts: Sequence[int]) -> Shape:
    """Validate a weakly decreasing tuple of positive row lengths.

    >>> check_shape([5, 5, 5, 3, 2])
    (5, 5, 5, 3, 2)
    """
    t = tuple(parts)
    for i, part in enumerate(t):
        if part < 1:
            raise ValueError(f"row lengths must be positive: {t!r}")
        if i and part > t[i - 1]:
            raise ValueError(f"row lengths must weakly decrease: {t!r}")
    return t


def square_shape(n: int) -> Shape:
    """The n x n board."""
    return (n,) * n


def staircase_shape(n: int) -> Shape:
    """Rows n, n-1, ..., 1: the smallest shape with an n-point transversal."""
    return tuple(range(n, 0, -1))


def admits_transversal(parts: Shape) -> bool:
    """True iff the shape has any transversal at all.

    >>> admits_transversal((5, 5, 5, 3, 2))
    True
    >>> admits_transversal((3, 1, 1))
    False
    """
    n = len(parts)
    return all(parts[i] >= n - i for i in range(n))


def is_transversal(parts: Shape, w: Perm) -> bool:
    """True iff w is a permutation whose points all lie on the shape."""
    n = len(parts)
    if len(w) != n or not _is_perm_quick(w):
        return False
    # point in column c sits at row w[c-1]; need c <= parts[row-1]
    return all(c <= parts[r - 1] for c, r in enumerate(w, start=1))


def _is_perm_quick(w: Sequence[int]) -> bool:
    n = len(w)
    seen = 0
    for v in w:
        if not 1 <= v <= n:
            return False
        bit = 1 << v
        if seen & bit:
            return False
        seen |= bit
    return seen == (1 << (n + 1)) - 2 if n else True


def transversals(parts: Shape) -> Iterator[Perm]:
    """All transversals of the shape, in lexicographic word order.

    Columns are filled left to right; a Hall-style deadline check prunes
    branches whose leftover rows cannot all reach their remaining columns.
    """
    n = len(check_shape(parts)) if parts else 0
    if n == 0:
        yield ()
        return
    word = [0] * n

    def feasible(used: int, col: int) -> bool:
        # unused rows, deadlines sorted: i-th tightest must reach col+i
        deadlines = sorted(parts[r - 1] for r in range(1, n + 1) if not used & (1 << r))
        return all(d >= col + i for i, d in enumerate(deadlines))

    def fill(col: int, used: int) -> Iterator[Perm]:
        if col > n:
            yield tuple(word)
            return
        for r in range(1, n + 1):
            if used & (1 << r) or parts[r - 1] < col:
                continue
            if not feasible(used | (1 << r), col + 1):
                continue
            word[col - 1] = r
            yield from fill(col + 1, used | (1 << r))

    yield from fill(1, 0)


def transversal_contains(
    parts: Shape,
    w: Perm,
    sigma: Perm,
    min_row: int = 0,
    min_col: int = 0,
) -> bool:
    """True iff w contains sigma as a shape-aware pattern copy.

    With ``min_row``/``min_col`` set, only copies using letters > min_row and
    columns > min_col count (the subboard strictly above and to the right).

    >>> transversal_contains((3, 3, 2), (3, 2, 1), (2, 1))
    True
    >>> transversal_contains((3, 3, 2), (3, 2, 1), (3, 2, 1))
    False
    """
    k, n = len(sigma), len(w)
    if k == 0:
        return True
    if k > n:
        return False
    lo_src, hi_src = window_plan(sigma)
    chosen = [0] * k
    cols = [0] * k
    last = k - 1

    def extend(s: int, start: int, maxval: int) -> bool:
        ls, hs = lo_src[s], hi_src[s]
        lo = chosen[ls] if ls >= 0 else min_row
        hi = chosen[hs] if hs >= 0 else n + 1
        for pos in range(start, n - (last - s)):
            u = w[pos]
            if not lo < u < hi:
                continue
            col = pos + 1
            # every letter of the copy must reach the copy's last column;
            # rows weakly shorten upward, so the current max letter decides
            top = u if u > maxval else maxval
            if parts[top - 1] < col:
                continue
            if s == last:
                return True
            chosen[s] = u
            cols[s] = col
            if extend(s + 1, pos + 1, top):
                return True
        return False

    return extend(0, min_col, 0)


def shapes_in_box(n: int) -> Iterator[Shape]:
    """All n-row shapes inside the n x n box that admit a transversal.

    Row r must reach n+1-r cells, and row 1 must reach n, so the first part
    is always n.  Yields in lexicographic order.

    >>> [s for s in shapes_in_box(3)]
    [(3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2), (3, 3, 3)]
    """
    if n == 0:
        yield ()
        return

    def extend(prefix: list[int]) -> Iterator[Shape]:
        i = len(prefix)
        if i == n:
            yield tuple(prefix)
            return
        high = prefix[-1] if prefix else n
        for part in range(n - i, high + 1):
            prefix.append(part)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def parse_shape(text: str) -> Shape:
    """Parse a comma-separated row list such as "5,5,5,3,2"."""
    t = text.strip()
    if not t:
        raise ValueError("empty shape text")
    parts = []
    for w in t.split(","):
        w = w.strip()
        try:
            parts.append(int(w))
        except ValueError:
            raise ValueError(f"bad shape token {w!r} in {text!r}") from None
    return check_shape(parts)


def format_shape(parts: Shape) -> str:
    return ",".join(str(p) for p in parts)
