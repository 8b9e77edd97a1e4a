"""Permutations in one-line notation on {1, ..., n}.

A permutation is a tuple of distinct integers covering 1..n; the empty tuple
is the length-0 permutation and is the identity for the direct sum.  Values
and positions are 1-based throughout, matching the usual convention for
pattern work (the word "45321" has 4 in position 1).

The eight symmetries of the square act on permutation diagrams: reverse flips
positions, complement flips values, inverse transposes the diagram.  Composite
tags read left to right, so "r-inverse" means reverse first, then inverse.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

Perm = tuple[int, ...]

#: the eight diagram symmetries, in a fixed display order
SYMMETRIES: tuple[str, ...] = (
    "identity",
    "reverse",
    "complement",
    "rc",
    "inverse",
    "r-inverse",
    "c-inverse",
    "rc-inverse",
)


def is_perm(word: Sequence[int]) -> bool:
    """True iff ``word`` is a permutation of 1..len(word)."""
    return sorted(word) == list(range(1, len(word) + 1))


def check_perm(word: Sequence[int]) -> Perm:
    """Validate one-line notation and return it as a tuple.

    >>> check_perm([2, 1])
    (2, 1)
    >>> check_perm((1, 3))
    Traceback (most recent call last):
        ...
    ValueError: not a permutation of 1..2: (1, 3)
    """
    w = tuple(word)
    if not is_perm(w):
        raise ValueError(f"not a permutation of 1..{len(w)}: {w!r}")
    return w


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of 1..n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


# ---------------------------------------------------------------------------
# parity

def inversions(p: Perm) -> int:
    """Number of pairs i < j with p[i] > p[j].

    >>> inversions((4, 5, 3, 2, 1))
    9
    >>> inversions(())
    0
    """
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def is_even(p: Perm) -> bool:
    """True iff p has an even number of inversions."""
    return inversions(p) % 2 == 0


def sign(p: Perm) -> int:
    """+1 for even permutations, -1 for odd ones.

    >>> sign((2, 1))
    -1
    """
    return 1 if is_even(p) else -1


# ---------------------------------------------------------------------------
# the eight diagram symmetries

def reverse(p: Perm) -> Perm:
    return p[::-1]


def complement(p: Perm) -> Perm:
    n = len(p)
    return tuple(n + 1 - v for v in p)


def inverse(p: Perm) -> Perm:
    """Group inverse; transposes the permutation diagram.

    >>> inverse((4, 5, 3, 2, 1))
    (5, 4, 3, 1, 2)
    """
    n = len(p)
    inv = [0] * n
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


_SYMMETRY_STEPS: dict[str, tuple[str, ...]] = {
    "identity": (),
    "reverse": ("r",),
    "complement": ("c",),
    "rc": ("r", "c"),
    "inverse": ("i",),
    "r-inverse": ("r", "i"),
    "c-inverse": ("c", "i"),
    "rc-inverse": ("r", "c", "i"),
}

_STEP_FUNCS = {"r": reverse, "c": complement, "i": inverse}


def apply_symmetry(p: Perm, tag: str) -> Perm:
    """Apply one of the eight diagram symmetries, named by tag.

    >>> apply_symmetry((1, 3, 4, 2), "rc")
    (3, 1, 2, 4)
    >>> apply_symmetry((1, 3, 4, 2), "r-inverse")
    (4, 1, 3, 2)
    """
    try:
        steps = _SYMMETRY_STEPS[tag]
    except KeyError:
        raise ValueError(f"unknown symmetry {tag!r}; expected one of {SYMMETRIES}")
    for step in steps:
        p = _STEP_FUNCS[step](p)
    return p


@lru_cache(maxsize=1)
def _symmetry_table() -> dict[tuple[str, str], str]:
    # 1342 has a free orbit (8 distinct images), so composites can be named
    # by where they send it.
    ref = (1, 3, 4, 2)
    names = {apply_symmetry(ref, s): s for s in SYMMETRIES}
    assert len(names) == 8
    return {
        (s, t): names[apply_symmetry(apply_symmetry(ref, s), t)]
        for s in SYMMETRIES
        for t in SYMMETRIES
    }


def symmetry_product(first: str, then: str) -> str:
    """Tag of the composite symmetry "apply ``first``, then ``then``".

    >>> symmetry_product("reverse", "complement")
    'rc'
    >>> symmetry_product("inverse", "inverse")
    'identity'
    """
    if first not in _SYMMETRY_STEPS:
        raise ValueError(f"unknown symmetry {first!r}")
    if then not in _SYMMETRY_STEPS:
        raise ValueError(f"unknown symmetry {then!r}")
    return _symmetry_table()[first, then]


# ---------------------------------------------------------------------------
# building patterns

def direct_sum(*parts: Perm) -> Perm:
    """Direct sum: each block sits above and to the right of the previous.

    >>> direct_sum((3, 1, 2), (2, 4, 1, 3))
    (3, 1, 2, 5, 7, 4, 6)
    """
    out: list[int] = []
    shift = 0
    for part in parts:
        out.extend(v + shift for v in part)
        shift += len(part)
    return tuple(out)


def increasing(t: int) -> Perm:
    """The pattern 1 2 ... t."""
    return tuple(range(1, t + 1))


def decreasing(t: int) -> Perm:
    """The pattern t ... 2 1."""
    return tuple(range(t, 0, -1))


def decreasing_max_last(t: int) -> Perm:
    """The pattern (t-1) ... 2 1 t: decreasing except the maximum moved last.

    >>> decreasing_max_last(4)
    (3, 2, 1, 4)
    """
    if t < 1:
        raise ValueError("pattern length must be positive")
    return tuple(range(t - 1, 0, -1)) + (t,)


PATTERN_FAMILIES = ("decreasing", "increasing", "max-last")


def family_pattern(kind: str, t: int) -> Perm:
    """Concrete pattern of length t from a named one-parameter family."""
    if kind == "decreasing":
        return decreasing(t)
    if kind == "increasing":
        return increasing(t)
    if kind == "max-last":
        return decreasing_max_last(t)
    raise ValueError(f"unknown pattern family {kind!r}; expected one of {PATTERN_FAMILIES}")


# ---------------------------------------------------------------------------
# containment

@lru_cache(maxsize=None)
def window_plan(sigma: Perm) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-slot value-window sources for left-to-right pattern matching.

    Chosen letters are order-isomorphic to a prefix of ``sigma``, so the
    tightest lower (upper) bound on the slot-s letter comes from the single
    earlier slot whose pattern value is the largest below (smallest above)
    sigma[s].  Entries are earlier slot indices, or -1 for "unbounded".
    """
    lo, hi = [], []
    for s, v in enumerate(sigma):
        below = [j for j in range(s) if sigma[j] < v]
        above = [j for j in range(s) if sigma[j] > v]
        lo.append(max(below, key=lambda j: sigma[j]) if below else -1)
        hi.append(min(above, key=lambda j: sigma[j]) if above else -1)
    return tuple(lo), tuple(hi)


def contains(p: Perm, sigma: Perm) -> bool:
    """True iff some subsequence of p is order-isomorphic to sigma.

    >>> contains((4, 5, 3, 2, 1), (2, 3, 1))
    True
    >>> contains((4, 5, 3, 2, 1), (1, 2, 3))
    False
    """
    k, n = len(sigma), len(p)
    if k == 0:
        return True
    if k > n:
        return False
    lo_src, hi_src = window_plan(sigma)
    chosen = [0] * k
    last = k - 1

    def extend(s: int, start: int) -> bool:
        ls, hs = lo_src[s], hi_src[s]
        lo = chosen[ls] if ls >= 0 else 0
        hi = chosen[hs] if hs >= 0 else n + 1
        for pos in range(start, n - (last - s)):
            u = p[pos]
            if lo < u < hi:
                if s == last:
                    return True
                chosen[s] = u
                if extend(s + 1, pos + 1):
                    return True
        return False

    return extend(0, 0)


def avoids(p: Perm, sigma: Perm) -> bool:
    """True iff no subsequence of p is order-isomorphic to sigma."""
    return not contains(p, sigma)


# ---------------------------------------------------------------------------
# text round-trip

def parse_perm(text: str) -> Perm:
    """Parse one-line notation: a digit string, or space-separated values.

    >>> parse_perm("45321")
    (4, 5, 3, 2, 1)
    >>> parse_perm("10 2 3 4 5 6 7 8 9 1")[:2]
    (10, 2)
    """
    t = text.strip()
    if not t:
        raise ValueError("empty permutation text")
    if any(ch.isspace() for ch in t):
        words = t.split()
    else:
        words = list(t)
    values = []
    for w in words:
        try:
            values.append(int(w))
        except ValueError:
            raise ValueError(f"bad permutation token {w!r} in {text!r}") from None
    return check_perm(values)


def format_perm(p: Perm) -> str:
    """Inverse of parse_perm: digit string for n <= 9, else space-separated."""
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return " ".join(str(v) for v in p)
