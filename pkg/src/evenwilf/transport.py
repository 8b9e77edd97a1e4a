"""Carrying a shape bijection across a direct sum.

If two patterns alpha and beta have equally many avoiding transversals on
every shape, the same holds for alpha + sigma and beta + sigma (direct sums):
given a transversal avoiding alpha + sigma, the cells whose strict-northeast
subboard still holds a copy of sigma form a sub-shape on which the word must
avoid alpha, and applying the alpha-to-beta bijection there -- leaving the
rest of the board untouched -- gives the transported word.

Concretely the cell coloring runs in two steps: first a cell is white when
the part of the word strictly above and to its right contains sigma
(shape-aware), gray otherwise; second, any point landing on a gray cell kills
its whole row and column.  One pass suffices for step two because each point
is alone in its row and column, so later kills never flip a point's own cell.
The surviving white cells, read in compacted coordinates, are again a shape
(white widths only shrink upward) and the word's points on them form a
transversal of it.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable

from .perms import Perm, check_perm, inverse
from .shapes import Shape, check_shape, is_transversal, transversal_contains


class InnerMapContractError(RuntimeError):
    """The inner map handed back something that is not a transversal."""


@dataclass(frozen=True)
class Coloring:
    """White/gray split of a shape relative to one word and one pattern.

    white_rows / white_cols are original 1-based row and column numbers, in
    increasing order; white_shape and white_sub are the compacted sub-shape
    and sub-word living on them.  gray_mask[r-1][c-1] is True when cell (r, c)
    of the host shape ended up gray.
    """

    white_shape: Shape
    white_sub: Perm
    white_rows: tuple[int, ...]
    white_cols: tuple[int, ...]
    gray_mask: tuple[tuple[bool, ...], ...]


def color_cells(parts: Shape, word: Perm, sigma: Perm) -> Coloring:
    """Run the two-step coloring for the given host word and sum tail sigma."""
    parts = check_shape(parts)
    word = check_perm(word)
    sigma = check_perm(sigma)
    if not is_transversal(parts, word):
        raise ValueError(f"{word!r} is not a transversal of {parts!r}")
    n = len(parts)

    # step 1: white prefix width of each row (white cells form row prefixes,
    # since moving left only grows the strict-northeast subboard)
    widths = []
    for r in range(1, n + 1):
        width = 0
        for c in range(1, parts[r - 1] + 1):
            if transversal_contains(parts, word, sigma, min_row=r, min_col=c):
                width = c
            else:
                break
        widths.append(width)
    assert all(widths[i] >= widths[i + 1] for i in range(n - 1))

    # step 2: a point on a gray cell kills its row and column
    pos = inverse(word)  # pos[v-1] = column of the point in row v
    white_rows = tuple(v for v in range(1, n + 1) if pos[v - 1] <= widths[v - 1])
    white_cols = tuple(sorted(pos[v - 1] for v in white_rows))
    row_alive = set(white_rows)
    col_alive = set(white_cols)

    white_shape = tuple(
        bisect_right(white_cols, widths[v - 1]) for v in white_rows
    )
    row_rank = {v: i + 1 for i, v in enumerate(white_rows)}
    white_sub = tuple(row_rank[word[c - 1]] for c in white_cols)

    gray_mask = tuple(
        tuple(
            c > widths[r - 1] or r not in row_alive or c not in col_alive
            for c in range(1, parts[r - 1] + 1)
        )
        for r in range(1, n + 1)
    )
    return Coloring(
        white_shape=white_shape,
        white_sub=white_sub,
        white_rows=white_rows,
        white_cols=white_cols,
        gray_mask=gray_mask,
    )


def transport(
    inner: Callable[[Shape, Perm], Perm],
    parts: Shape,
    word: Perm,
    sigma: Perm,
) -> Perm:
    """Apply ``inner`` on the white sub-board and reassemble the host word.

    ``inner(white_shape, white_sub)`` must return a transversal of the same
    sub-shape; anything else raises InnerMapContractError.  With an empty
    white region the word comes back unchanged and ``inner`` is never called.

    >>> transport(lambda shape, sub: sub, (3, 3, 3), (1, 2, 3), (1,))
    (1, 2, 3)
    >>> transport(lambda shape, sub: (2, 1), (3, 3, 3), (1, 2, 3), (1,))
    (2, 1, 3)
    """
    coloring = color_cells(parts, word, sigma)
    if not coloring.white_rows:
        return word
    mapped = inner(coloring.white_shape, coloring.white_sub)
    try:
        mapped = check_perm(mapped)
    except (ValueError, TypeError) as e:
        raise InnerMapContractError(str(e)) from None
    if len(mapped) != len(coloring.white_sub) or not is_transversal(
        coloring.white_shape, mapped
    ):
        raise InnerMapContractError(
            f"inner map returned {mapped!r}, not a transversal of {coloring.white_shape!r}"
        )
    out = list(word)
    for j, c in enumerate(coloring.white_cols):
        out[c - 1] = coloring.white_rows[mapped[j] - 1]
    return tuple(out)
