"""Grouping patterns by avoider counts: plain and parity-refined.

Two notions of sameness for patterns of one length k:

* classical (Wilf): equal total avoider counts at every length;
* parity-refined (even-Wilf): equal even-avoider counts at every length.

Empirical partitions group patterns by exact equality of their count vectors
up to a stated horizon N; they are upper-bound refinements (classes can only
split as N grows), so the horizon is carried in the result.  Proven
partitions use no counting at all: they close over

* symmetry: a pattern shares even counts with its group inverse and with its
  reverse-complement, so each {p, p^-1, p^rc, (p^-1)^rc} orbit collapses;
* the rotation-map theorem: decreasing(t) + tail and max-last(t) + tail share
  even counts for every odd t and every tail pattern;
* transport of equivalences through reverse and complement: if two patterns
  are provably matched (they are also classically equivalent, so the carrier
  bijection exists), their reverses are matched, and likewise complements.

The classical class counts for k <= 6 are long-settled; they are embedded
here as reference constants rather than recomputed at impossible horizons.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .counting import AvoidanceVector, avoidance_vector
from .perms import (
    Perm,
    all_perms,
    apply_symmetry,
    check_perm,
    complement,
    decreasing,
    decreasing_max_last,
    direct_sum,
    reverse,
)

#: classical Wilf class counts for k = 1..6 (reference values)
WILF_CLASS_COUNTS = {1: 1, 2: 1, 3: 1, 4: 3, 5: 16, 6: 91}

#: parity-refined class counts known exactly for k <= 4 (12 and 21 split:
#: the lone 12-avoider is the decreasing permutation, even only when
#: n = 0, 1 mod 4, while the lone 21-avoider is always even)
EVEN_WILF_CLASS_COUNTS = {1: 1, 2: 2, 3: 2, 4: 11}

DEFAULT_MAX_K = 6


@dataclass(frozen=True)
class ClassPartition:
    """A partition of the length-k patterns, with how it was obtained.

    mode is "wilf" or "even-wilf"; basis is "empirical" (vector equality up
    to ``horizon``) or "proven" (symmetry + theorem closure, horizon None).
    Blocks and their members are sorted, so equality is structural.
    """

    k: int
    mode: str
    basis: str
    horizon: int | None
    blocks: tuple[tuple[Perm, ...], ...]
    vectors: dict[Perm, AvoidanceVector] | None = None

    def block_of(self, p: Perm) -> tuple[Perm, ...]:
        p = check_perm(p)
        for block in self.blocks:
            if p in block:
                return block
        raise KeyError(f"{p!r} is not a length-{self.k} pattern")

    def together(self, a: Perm, b: Perm) -> bool:
        return b in self.block_of(a)


def _sorted_blocks(groups) -> tuple[tuple[Perm, ...], ...]:
    blocks = [tuple(sorted(g)) for g in groups]
    return tuple(sorted(blocks))


def trivial_even_orbits(sigma: Perm) -> tuple[frozenset[Perm], frozenset[Perm]]:
    """The two symmetry orbits tied to sigma: its own {p, p^-1, p^rc,
    (p^-1)^rc} orbit, and the matching orbit of its reverse.

    Members of one orbit always share even-avoider counts; the two orbits
    agree with each other only length by length (even lengths 2, 3 mod 4
    swap the parity split).
    """
    sigma = check_perm(sigma)
    own = frozenset(
        apply_symmetry(sigma, tag) for tag in ("identity", "inverse", "rc", "rc-inverse")
    )
    mirrored = frozenset(
        apply_symmetry(reverse(sigma), tag)
        for tag in ("identity", "inverse", "rc", "rc-inverse")
    )
    return own, mirrored


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def groups(self):
        out: dict[Perm, list[Perm]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out.values()


def theorem_edges(k: int) -> list[tuple[Perm, Perm]]:
    """Pattern pairs matched by the odd-rotation theorem: decreasing(t) + tail
    versus max-last(t) + tail, for odd t >= 3 and every tail of length k - t."""
    edges = []
    for t in range(3, k + 1, 2):
        for tail in itertools.permutations(range(1, k - t + 1)):
            edges.append(
                (direct_sum(decreasing(t), tail), direct_sum(decreasing_max_last(t), tail))
            )
    return edges


def symmetry_classes(k: int) -> ClassPartition:
    """Partition by the sign-preserving symmetry orbits alone."""
    uf = _UnionFind(list(all_perms(k)))
    for p in list(uf.parent):
        own, _ = trivial_even_orbits(p)
        for q in own:
            uf.union(p, q)
    return ClassPartition(
        k=k, mode="even-wilf", basis="symmetry", horizon=None,
        blocks=_sorted_blocks(uf.groups()),
    )


def proven_classes(k: int) -> ClassPartition:
    """Lower-bound partition: patterns co-blocked only when provably matched."""
    uf = _UnionFind(list(all_perms(k)))
    for p in list(uf.parent):
        own, _ = trivial_even_orbits(p)
        for q in own:
            uf.union(p, q)
    for a, b in theorem_edges(k):
        uf.union(a, b)
    # everything co-blocked so far is also classically equivalent, so matched
    # pairs transport through reverse and complement; iterate to a fixpoint
    changed = True
    while changed:
        changed = False
        for group in list(uf.groups()):
            for image in (reverse, complement):
                imgs = [image(p) for p in group]
                first = imgs[0]
                for q in imgs[1:]:
                    if uf.union(first, q):
                        changed = True
    return ClassPartition(
        k=k, mode="even-wilf", basis="proven", horizon=None,
        blocks=_sorted_blocks(uf.groups()),
    )


def empirical_classes(
    k: int,
    horizon: int,
    mode: str = "even-wilf",
    *,
    jobs: int = 1,
    max_k: int = DEFAULT_MAX_K,
    max_n: int | None = None,
    cache=None,
) -> ClassPartition:
    """Group length-k patterns by count-vector equality for n <= horizon.

    An upper-bound refinement: classes can only split at larger horizons,
    never merge back.
    """
    if mode not in ("wilf", "even-wilf"):
        raise ValueError(f"unknown mode {mode!r}; expected 'wilf' or 'even-wilf'")
    if k < 1:
        raise ValueError(f"pattern length must be positive: {k}")
    if k > max_k:
        raise ValueError(
            f"k={k} exceeds max_k={max_k} ({len(list(all_perms(k)))} patterns); "
            "pass a larger max_k to override"
        )
    kwargs = {} if max_n is None else {"max_n": max_n}
    vectors = {
        p: avoidance_vector(p, horizon, jobs=jobs, cache=cache, **kwargs)
        for p in all_perms(k)
    }
    keyfn = (lambda v: v.totals()) if mode == "wilf" else (lambda v: v.evens())
    groups: dict[tuple[int, ...], list[Perm]] = {}
    for p, vec in vectors.items():
        groups.setdefault(keyfn(vec), []).append(p)
    return ClassPartition(
        k=k, mode=mode, basis="empirical", horizon=horizon,
        blocks=_sorted_blocks(groups.values()), vectors=vectors,
    )


def is_refinement(finer: ClassPartition, coarser: ClassPartition) -> bool:
    """True iff every block of ``finer`` sits inside one block of ``coarser``."""
    if finer.k != coarser.k:
        raise ValueError("partitions cover different pattern lengths")
    return all(
        set(block) <= set(coarser.block_of(block[0])) for block in finer.blocks
    )


def pair_provenance(
    a: Perm,
    b: Perm,
    *,
    proven: ClassPartition,
    symmetry: ClassPartition,
    horizon: int | None = None,
) -> str:
    """Why two co-blocked patterns are considered matched."""
    if symmetry.together(a, b):
        return "symmetry"
    if proven.together(a, b):
        return "theorem"
    return f"empirical(N={horizon})" if horizon is not None else "empirical"


def class_count_table(
    max_len: int,
    horizon: int,
    *,
    jobs: int = 1,
    cache=None,
    max_n: int | None = None,
) -> list[dict]:
    """Observed class counts per pattern length, next to the reference ones.

    Each row reports the empirical Wilf and even-Wilf class counts at the
    horizon, the settled classical count, and the exact parity-refined count
    where known (k <= 4).
    """
    rows = []
    for k in range(1, max_len + 1):
        wilf = empirical_classes(k, horizon, "wilf", jobs=jobs, cache=cache, max_n=max_n)
        even = empirical_classes(k, horizon, "even-wilf", jobs=jobs, cache=cache, max_n=max_n)
        rows.append(
            {
                "k": k,
                "horizon": horizon,
                "wilf_classes": len(wilf.blocks),
                "even_wilf_classes": len(even.blocks),
                "wilf_reference": WILF_CLASS_COUNTS.get(k),
                "even_wilf_reference": EVEN_WILF_CLASS_COUNTS.get(k),
            }
        )
    return rows
