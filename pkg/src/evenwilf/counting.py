"""Exhaustive avoider counts split by parity.

The counters walk the tree of pattern-avoiding words directly: positions are
filled left to right, and a branch dies the moment the newest letter
completes a copy of the pattern, so only avoiding prefixes are ever visited.
Inversion parity is carried incrementally (appending v adds one inversion per
used letter above v).  No generating functions, no symmetry shortcuts: each
pattern is counted on its own, which is what makes cross-pattern comparisons
evidence rather than assumption.

The "completes a copy ending here" test reuses the window-plan idea from
perms.contains, with the new letter available as a bound source: letters
already chosen for pattern slots are order-isomorphic to the pattern, so each
slot needs at most one lower and one upper comparison.

Budgets are deliberate: these searches are factorial, and the default caps
(n <= 12 plain, 8 rows for shapes) mark the point past which a laptop stops
being the right tool.  Callers can raise them explicitly.
"""
from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perms import Perm, avoids, check_perm
from .shapes import Shape, check_shape

DEFAULT_MAX_N = 12
DEFAULT_MAX_BOX = 8


class BudgetError(Exception):
    """A request exceeded the configured search budget."""


@dataclass(frozen=True)
class CountTriple:
    """Avoider count split by inversion parity (total = even + odd)."""

    total: int
    even: int
    odd: int

    def __post_init__(self) -> None:
        if self.even < 0 or self.odd < 0 or self.even + self.odd != self.total:
            raise ValueError(f"inconsistent count triple {self!r}")

    def __add__(self, other: "CountTriple") -> "CountTriple":
        return CountTriple(
            self.total + other.total, self.even + other.even, self.odd + other.odd
        )


@dataclass(frozen=True)
class AvoidanceVector:
    """Counts for one pattern at every length 0..horizon."""

    pattern: Perm
    entries: tuple[CountTriple, ...]

    @property
    def horizon(self) -> int:
        return len(self.entries) - 1

    def totals(self) -> tuple[int, ...]:
        return tuple(e.total for e in self.entries)

    def evens(self) -> tuple[int, ...]:
        return tuple(e.even for e in self.entries)

    def odds(self) -> tuple[int, ...]:
        return tuple(e.odd for e in self.entries)


@lru_cache(maxsize=None)
def _ending_plan(sigma: Perm) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Window sources for "new letter completes a copy" tests.

    Slots cover sigma minus its final position; the letter being placed fills
    that final slot and is encoded as source -1.  -2 means unbounded.
    """
    k = len(sigma)
    last = sigma[-1]
    lo, hi = [], []
    for s in range(k - 1):
        v = sigma[s]
        below = [(sigma[j], j) for j in range(s) if sigma[j] < v]
        above = [(sigma[j], j) for j in range(s) if sigma[j] > v]
        if last < v:
            below.append((last, -1))
        else:
            above.append((last, -1))
        lo.append(max(below)[1] if below else -2)
        hi.append(min(above)[1] if above else -2)
    return tuple(lo), tuple(hi)


def _count_completions(n: int, sigma: Perm, prefix: Perm) -> tuple[int, int]:
    """(total, even) avoiding words on 1..n extending an avoiding prefix."""
    m0 = len(prefix)
    vals = list(prefix) + [0] * (n - m0)
    used0 = 0
    par0 = 0
    for v in prefix:
        par0 ^= (used0 >> v).bit_count() & 1
        used0 |= 1 << v
    full = (1 << (n + 1)) - 2
    lo_src, hi_src = _ending_plan(sigma)
    k1 = len(sigma) - 1
    last_s = k1 - 1
    np1 = n + 1
    chosen = [0] * k1
    counts = [0, 0]

    def completes(m: int, v: int) -> bool:
        # copy of sigma ending exactly at position m, where v fills slot k-1
        def ext(s: int, start: int) -> bool:
            ls = lo_src[s]
            lo = 0 if ls == -2 else v if ls == -1 else chosen[ls]
            hs = hi_src[s]
            hi = np1 if hs == -2 else v if hs == -1 else chosen[hs]
            stop = m - (last_s - s)
            if s == last_s:
                for pos in range(start, stop):
                    if lo < vals[pos] < hi:
                        return True
                return False
            for pos in range(start, stop):
                u = vals[pos]
                if lo < u < hi:
                    chosen[s] = u
                    if ext(s + 1, pos + 1):
                        return True
            return False

        return ext(0, 0)

    def dfs(m: int, used: int, par: int) -> None:
        if m == n:
            counts[0] += 1
            counts[1] += 1 - par
            return
        avail = full & ~used
        while avail:
            b = avail & -avail
            avail -= b
            v = b.bit_length() - 1
            if not completes(m, v):
                vals[m] = v
                dfs(m + 1, used | b, par ^ ((used >> v).bit_count() & 1))

    dfs(m0, used0, par0)
    return counts[0], counts[1]


def _avoiding_prefixes(n: int, sigma: Perm, depth: int) -> list[Perm]:
    values = range(1, n + 1)
    return [
        p for p in itertools.permutations(values, depth) if avoids(p, sigma)
    ]


def count_avoiders(
    n: int,
    sigma: Perm,
    *,
    jobs: int = 1,
    max_n: int = DEFAULT_MAX_N,
    cache=None,
) -> CountTriple:
    """Count sigma-avoiding permutations of 1..n, split by parity.

    >>> count_avoiders(3, (1, 2, 3))
    CountTriple(total=5, even=2, odd=3)
    """
    sigma = check_perm(sigma)
    if not sigma:
        raise ValueError("pattern must be nonempty")
    if n < 0:
        raise ValueError(f"length must be nonnegative: {n}")
    if n > max_n:
        raise BudgetError(
            f"n={n} exceeds the search budget max_n={max_n}; pass a larger max_n to override"
        )
    if cache is not None:
        hit = cache.get_perm(sigma, n)
        if hit is not None:
            return hit
    if len(sigma) == 1:
        out = CountTriple(1, 1, 0) if n == 0 else CountTriple(0, 0, 0)
    elif jobs <= 1 or n <= 3:
        total, even = _count_completions(n, sigma, ())
        out = CountTriple(total, even, total - even)
    else:
        depth = 1 if n <= 7 else 2
        shards = _avoiding_prefixes(n, sigma, depth)
        out = _pooled(shards, [(n, sigma, p) for p in shards], jobs, _count_completions)
    if cache is not None:
        cache.put_perm(sigma, n, out)
    return out


def _pooled(shards, argss, jobs, worker) -> CountTriple:
    if not shards:
        return CountTriple(0, 0, 0)
    with multiprocessing.Pool(jobs) as pool:
        parts = pool.starmap(worker, argss, chunksize=1)
    total = sum(p[0] for p in parts)
    even = sum(p[1] for p in parts)
    return CountTriple(total, even, total - even)


def _count_shape_completions(
    parts: Shape, sigma: Perm, prefix: Perm
) -> tuple[int, int]:
    """(total, even) avoiding transversals of the shape extending a prefix."""
    n = len(parts)
    m0 = len(prefix)
    vals = list(prefix) + [0] * (n - m0)
    used0 = 0
    par0 = 0
    for v in prefix:
        par0 ^= (used0 >> v).bit_count() & 1
        used0 |= 1 << v
    full = (1 << (n + 1)) - 2
    lo_src, hi_src = _ending_plan(sigma)
    k1 = len(sigma) - 1
    last_s = k1 - 1
    np1 = n + 1
    chosen = [0] * k1
    counts = [0, 0]

    def completes(m: int, v: int) -> bool:
        # the copy's largest letter decides the corner condition, and smaller
        # letters sit on longer rows, so testing every candidate is exact
        cnew = m + 1

        def ext(s: int, start: int) -> bool:
            ls = lo_src[s]
            lo = 0 if ls == -2 else v if ls == -1 else chosen[ls]
            hs = hi_src[s]
            hi = np1 if hs == -2 else v if hs == -1 else chosen[hs]
            stop = m - (last_s - s)
            for pos in range(start, stop):
                u = vals[pos]
                if lo < u < hi and parts[u - 1] >= cnew:
                    if s == last_s:
                        return True
                    chosen[s] = u
                    if ext(s + 1, pos + 1):
                        return True
            return False

        return ext(0, 0)

    def feasible(m: int, used: int) -> bool:
        # Hall check: unused rows sorted by deadline must reach columns m+1..n
        deadlines = sorted(parts[r - 1] for r in range(1, n + 1) if not used & (1 << r))
        return all(d >= m + 1 + i for i, d in enumerate(deadlines))

    def dfs(m: int, used: int, par: int) -> None:
        if m == n:
            counts[0] += 1
            counts[1] += 1 - par
            return
        if not feasible(m, used):
            return
        col = m + 1
        avail = full & ~used
        while avail:
            b = avail & -avail
            avail -= b
            v = b.bit_length() - 1
            if parts[v - 1] >= col and not completes(m, v):
                vals[m] = v
                dfs(m + 1, used | b, par ^ ((used >> v).bit_count() & 1))

    dfs(m0, used0, par0)
    return counts[0], counts[1]


def count_avoiders_shape(
    parts: Shape,
    sigma: Perm,
    *,
    jobs: int = 1,
    max_box: int = DEFAULT_MAX_BOX,
    cache=None,
) -> CountTriple:
    """Count sigma-avoiding transversals of a shape, split by parity.

    >>> count_avoiders_shape((3, 3, 3), (2, 1))
    CountTriple(total=1, even=1, odd=0)
    """
    parts = check_shape(parts)
    sigma = check_perm(sigma)
    if not sigma:
        raise ValueError("pattern must be nonempty")
    n = len(parts)
    if n > max_box:
        raise BudgetError(
            f"{n} rows exceeds the search budget max_box={max_box}; pass a larger max_box to override"
        )
    if cache is not None:
        hit = cache.get_shape(sigma, parts)
        if hit is not None:
            return hit
    if len(sigma) == 1:
        out = CountTriple(1, 1, 0) if n == 0 else CountTriple(0, 0, 0)
    elif jobs <= 1 or n <= 3:
        total, even = _count_shape_completions(parts, sigma, ())
        out = CountTriple(total, even, total - even)
    else:
        shards = [(v,) for v in range(1, n + 1)]
        out = _pooled(shards, [(parts, sigma, p) for p in shards], jobs, _count_shape_completions)
    if cache is not None:
        cache.put_shape(sigma, parts, out)
    return out


def avoidance_vector(
    sigma: Perm,
    horizon: int,
    *,
    jobs: int = 1,
    max_n: int = DEFAULT_MAX_N,
    cache=None,
) -> AvoidanceVector:
    """Counts for every length 0..horizon at once."""
    sigma = check_perm(sigma)
    entries = tuple(
        count_avoiders(n, sigma, jobs=jobs, max_n=max_n, cache=cache)
        for n in range(horizon + 1)
    )
    return AvoidanceVector(pattern=sigma, entries=entries)
