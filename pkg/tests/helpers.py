"""Brute-force oracles the tests trust.

Everything here is written the obvious slow way on purpose and stays frozen:
the package's pruned implementations are checked against these, never the
other way around.
"""
import itertools


def pattern_of(values):
    """Rank-compress a sequence of distinct numbers to a pattern tuple."""
    ranks = sorted(values)
    return tuple(ranks.index(v) + 1 for v in values)


def naive_contains(word, sigma):
    """Scan every subsequence of the right length."""
    k = len(sigma)
    return any(
        pattern_of(sub) == tuple(sigma)
        for sub in itertools.combinations(word, k)
    )


def naive_inversions(word):
    n = len(word)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j]
    )


def oracle_count(n, sigma):
    """(total, even) avoiders of sigma among all n! permutations."""
    total = even = 0
    for w in itertools.permutations(range(1, n + 1)):
        if naive_contains(w, sigma):
            continue
        total += 1
        even += 1 - naive_inversions(w) % 2
    return total, even


def in_shape(parts, row, col):
    return 1 <= row <= len(parts) and 1 <= col <= parts[row - 1]


def brute_transversals(parts):
    """Permutation words whose points all land inside the shape."""
    n = len(parts)
    return [
        w
        for w in itertools.permutations(range(1, n + 1))
        if all(in_shape(parts, w[c], c + 1) for c in range(n))
    ]


def naive_shape_contains(parts, word, sigma):
    """A copy counts when its top-right bounding corner is inside the shape
    (for weakly decreasing rows that pins every cell of the bounding box)."""
    k = len(sigma)
    n = len(word)
    for cols in itertools.combinations(range(1, n + 1), k):
        rows = [word[c - 1] for c in cols]
        if pattern_of(rows) != tuple(sigma):
            continue
        if in_shape(parts, max(rows), cols[-1]):
            return True
    return False


def naive_shape_occurrences(parts, word, sigma):
    """Column tuples of every shape-aware copy (same rule as above)."""
    k = len(sigma)
    n = len(word)
    out = []
    for cols in itertools.combinations(range(1, n + 1), k):
        rows = [word[c - 1] for c in cols]
        if pattern_of(rows) == tuple(sigma) and in_shape(parts, max(rows), cols[-1]):
            out.append(cols)
    return out


def oracle_count_shape(parts, sigma):
    """(total, even) avoiding transversals of the shape."""
    total = even = 0
    for w in brute_transversals(parts):
        if naive_shape_contains(parts, w, sigma):
            continue
        total += 1
        even += 1 - naive_inversions(w) % 2
    return total, even


def shapes_within_box(n):
    """Every nonempty weakly decreasing shape fitting in an n-by-n box."""
    out = []

    def grow(prefix, limit):
        for part in range(limit, 0, -1):
            cur = prefix + [part]
            out.append(tuple(cur))
            if len(cur) < n:
                grow(cur, part)

    grow([], n)
    return out
