"""Rotation maps between avoiders of the decreasing and max-last patterns.

The two pattern families of interest have length t: "decreasing" is
t (t-1) ... 2 1, and "max-last" is (t-1) ... 2 1 t (decreasing with the
maximum moved to the end).  On any fixed shape the two families have equally
many avoiding transversals, witnessed by an explicit bijection:

* the forward map repeatedly selects a canonical decreasing copy and rotates
  its letters one step left (first letter travels to the last position), which
  turns that copy into a max-last copy; iteration stops when no decreasing
  copy remains;
* the backward map undoes this, selecting a canonical max-last copy and
  rotating right.

Each rotation multiplies the word by a t-cycle, so for odd t every step --
and hence the whole map -- preserves inversion parity, while for even t a
single step always flips it.

Canonical selection (forward): the copy whose first letter is the smallest
letter starting any copy, then positions chosen leftmost, slot by slot.
Canonical selection (backward): the copy whose last letter is the largest
letter ending any copy, then letters chosen largest, slot by slot from the
right.  All copies are shape-aware: a copy must fit the shape in the sense of
shapes.transversal_contains.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .perms import Perm, check_perm, decreasing, decreasing_max_last, is_even, window_plan
from .shapes import Shape, check_shape, is_transversal


class IterationCapError(RuntimeError):
    """A rotation map failed to terminate within its iteration bound."""


@dataclass(frozen=True)
class TraceStep:
    """One rotation: the selected columns (1-based) and the word after."""

    selection: tuple[int, ...]
    word: Perm


@dataclass(frozen=True)
class Trace:
    """Full log of an iterated rotation map."""

    start: Perm
    steps: tuple[TraceStep, ...]

    @property
    def result(self) -> Perm:
        return self.steps[-1].word if self.steps else self.start

    @property
    def applications(self) -> int:
        return len(self.steps)

    @property
    def sign_flips(self) -> int:
        flips = 0
        prev = is_even(self.start)
        for step in self.steps:
            cur = is_even(step.word)
            flips += prev != cur
            prev = cur
        return flips

    def as_dict(self) -> dict:
        from .perms import format_perm

        return {
            "start": format_perm(self.start),
            "result": format_perm(self.result),
            "applications": self.applications,
            "sign_flips": self.sign_flips,
            "steps": [
                {"selection": list(s.selection), "word": format_perm(s.word)}
                for s in self.steps
            ],
        }


def occurrences(parts: Shape, word: Perm, sigma: Perm) -> list[tuple[int, ...]]:
    """All shape-aware copies of sigma in word, as ascending column tuples.

    >>> occurrences((3, 3, 3), (3, 2, 1), (2, 1))
    [(1, 2), (1, 3), (2, 3)]
    """
    k, n = len(sigma), len(word)
    if len(parts) != n:
        raise ValueError(f"shape has {len(parts)} rows but word has length {n}")
    if k == 0 or k > n:
        return []
    lo_src, hi_src = window_plan(sigma)
    chosen = [0] * k
    cols = [0] * k
    out: list[tuple[int, ...]] = []

    def extend(s: int, start: int, maxval: int) -> None:
        ls, hs = lo_src[s], hi_src[s]
        lo = chosen[ls] if ls >= 0 else 0
        hi = chosen[hs] if hs >= 0 else n + 1
        for pos in range(start, n - (k - 1 - s)):
            u = word[pos]
            if not lo < u < hi:
                continue
            col = pos + 1
            top = u if u > maxval else maxval
            if parts[top - 1] < col:
                continue
            cols[s] = col
            if s == k - 1:
                out.append(tuple(cols))
            else:
                chosen[s] = u
                extend(s + 1, pos + 1, top)

    extend(0, 0, 0)
    return out


def canonical_decreasing_copy(parts: Shape, word: Perm, t: int) -> tuple[int, ...] | None:
    """Forward-direction selection, or None if no decreasing copy exists.

    First slot: the smallest letter that starts a copy.  Later slots: the
    leftmost column that still extends to a full copy.
    """
    occs = occurrences(parts, word, decreasing(t))
    if not occs:
        return None
    c1 = min({o[0] for o in occs}, key=lambda c: word[c - 1])
    occs = [o for o in occs if o[0] == c1]
    for j in range(1, t):
        cj = min(o[j] for o in occs)
        occs = [o for o in occs if o[j] == cj]
    return occs[0]


def canonical_max_last_copy(parts: Shape, word: Perm, t: int) -> tuple[int, ...] | None:
    """Backward-direction selection, or None if no max-last copy exists.

    Last slot: the largest letter that ends a copy.  Earlier slots, right to
    left: the largest letter that still completes a copy.
    """
    occs = occurrences(parts, word, decreasing_max_last(t))
    if not occs:
        return None
    for j in range(t - 1, -1, -1):
        cj = max((o[j] for o in occs), key=lambda c: word[c - 1])
        occs = [o for o in occs if o[j] == cj]
    return occs[0]


def rotate_left(word: Perm, selection: tuple[int, ...]) -> Perm:
    """Move the first selected letter to the last selected column, shifting
    the others one selected column left.  Multiplies by a len(selection)-cycle.

    >>> rotate_left((4, 3, 2, 1), (2, 3, 4))
    (4, 2, 1, 3)
    """
    _check_selection(word, selection)
    letters = [word[c - 1] for c in selection]
    if letters != sorted(letters, reverse=True):
        raise ValueError(f"selection {selection!r} is not a decreasing copy in {word!r}")
    w = list(word)
    for j in range(len(selection) - 1):
        w[selection[j] - 1] = letters[j + 1]
    w[selection[-1] - 1] = letters[0]
    return tuple(w)


def rotate_right(word: Perm, selection: tuple[int, ...]) -> Perm:
    """Inverse of rotate_left: the last selected letter moves to the first
    selected column.

    >>> rotate_right((4, 2, 1, 3), (2, 3, 4))
    (4, 3, 2, 1)
    """
    _check_selection(word, selection)
    letters = [word[c - 1] for c in selection]
    if letters[:-1] != sorted(letters[:-1], reverse=True) or letters[-1] != max(letters):
        raise ValueError(f"selection {selection!r} is not a max-last copy in {word!r}")
    w = list(word)
    for j in range(1, len(selection)):
        w[selection[j] - 1] = letters[j - 1]
    w[selection[0] - 1] = letters[-1]
    return tuple(w)


def _check_selection(word: Perm, selection: tuple[int, ...]) -> None:
    if len(selection) < 2:
        raise ValueError("selection must have at least two columns")
    if list(selection) != sorted(set(selection)):
        raise ValueError(f"selection columns must be strictly increasing: {selection!r}")
    if selection[0] < 1 or selection[-1] > len(word):
        raise ValueError(f"selection {selection!r} out of range for length {len(word)}")


def forward(parts: Shape, word: Perm, t: int) -> tuple[Perm, Trace]:
    """Iterate left rotations until no decreasing-t copy remains.

    Restricted to transversals avoiding the max-last pattern, this is a
    bijection onto the transversals avoiding the decreasing pattern; it
    preserves inversion parity for odd t.
    """
    return _iterate(parts, word, t, canonical_decreasing_copy, rotate_left)


def backward(parts: Shape, word: Perm, t: int) -> tuple[Perm, Trace]:
    """Iterate right rotations until no max-last-t copy remains (inverse of
    forward on its bijection domain)."""
    return _iterate(parts, word, t, canonical_max_last_copy, rotate_right)


def _iterate(parts, word, t, select, rotate) -> tuple[Perm, Trace]:
    parts = check_shape(parts)
    word = check_perm(word)
    if t < 2:
        raise ValueError(f"rotation length must be at least 2: {t}")
    if not is_transversal(parts, word):
        raise ValueError(f"{word!r} is not a transversal of {parts!r}")
    cap = comb(len(word), t) + 1
    steps: list[TraceStep] = []
    cur = word
    for _ in range(cap):
        sel = select(parts, cur, t)
        if sel is None:
            return cur, Trace(start=word, steps=tuple(steps))
        cur = rotate(cur, sel)
        if not is_transversal(parts, cur):
            raise IterationCapError(
                f"rotation left the shape: {cur!r} not a transversal of {parts!r}"
            )
        steps.append(TraceStep(selection=sel, word=cur))
    raise IterationCapError(
        f"rotation did not terminate within {cap} steps on {word!r} (t={t})"
    )
