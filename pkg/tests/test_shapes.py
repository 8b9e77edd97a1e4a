import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evenwilf.shapes import (
    admits_transversal,
    check_shape,
    format_shape,
    is_transversal,
    parse_shape,
    shapes_in_box,
    square_shape,
    staircase_shape,
    transversal_contains,
    transversals,
)
from helpers import (
    brute_transversals,
    naive_shape_contains,
    naive_shape_occurrences,
    shapes_within_box,
)

patterns_upto = lambda k: st.integers(1, k).flatmap(
    lambda m: st.permutations(list(range(1, m + 1))).map(tuple)
)


def test_check_shape():
    assert check_shape([5, 5, 3]) == (5, 5, 3)
    for bad in [(3, 4), (2, 0), (-1,), (1, 2, 1)]:
        with pytest.raises(ValueError):
            check_shape(bad)
    assert check_shape(()) == ()


def test_builders():
    assert square_shape(3) == (3, 3, 3)
    assert square_shape(0) == ()
    assert staircase_shape(4) == (4, 3, 2, 1)


def test_admits_transversal_matches_bruteforce():
    for parts in shapes_within_box(5):
        assert admits_transversal(parts) == bool(brute_transversals(parts)), parts


def test_transversals_match_bruteforce():
    for parts in shapes_within_box(5):
        got = sorted(transversals(parts))
        want = sorted(brute_transversals(parts))
        assert got == want, parts


def test_is_transversal():
    assert is_transversal((3, 3, 3), (3, 2, 1))
    assert is_transversal((3, 2, 1), (3, 2, 1))
    assert not is_transversal((3, 2, 1), (1, 2, 3))
    assert not is_transversal((3, 3, 3), (1, 2, 2))
    assert not is_transversal((3, 3, 3), (2, 1))  # wrong length


def test_transversal_counts_on_squares():
    import math

    for n in range(1, 6):
        assert len(list(transversals(square_shape(n)))) == math.factorial(n)


def test_shapes_in_box_small():
    assert list(shapes_in_box(1)) == [(1,)]
    assert list(shapes_in_box(3)) == [
        (3, 2, 1),
        (3, 2, 2),
        (3, 3, 1),
        (3, 3, 2),
        (3, 3, 3),
    ]
    for parts in shapes_in_box(4):
        assert admits_transversal(parts)
        assert len(parts) == 4 and parts[0] == 4


def test_shape_containment_corner_rule():
    # 21 sits inside (3,3,2) as columns (1,2), corner (3,2) is in the shape
    assert transversal_contains((3, 3, 2), (3, 2, 1), (2, 1))
    # 321's corner would be (3,3) which the shape lacks
    assert not transversal_contains((3, 3, 2), (3, 2, 1), (3, 2, 1))
    assert transversal_contains((3, 3, 3), (3, 2, 1), (3, 2, 1))


def test_shape_containment_matches_naive_exhaustive():
    for parts in shapes_within_box(4):
        if not admits_transversal(parts):
            continue
        for w in transversals(parts):
            for k in (1, 2, 3):
                for sigma in itertools.permutations(range(1, k + 1)):
                    assert transversal_contains(parts, w, sigma) == naive_shape_contains(
                        parts, w, sigma
                    ), (parts, w, sigma)


@given(st.sampled_from(list(shapes_in_box(5))), patterns_upto(4), st.randoms())
@settings(max_examples=150, deadline=None)
def test_shape_containment_matches_naive_sampled(parts, sigma, rng):
    words = list(transversals(parts))
    w = rng.choice(words)
    assert transversal_contains(parts, w, sigma) == naive_shape_contains(parts, w, sigma)


def test_min_row_col_windows():
    # min_row / min_col are strict bounds: only letters above min_row in
    # columns beyond min_col count
    parts = (5, 5, 5, 3, 2)
    w = (2, 5, 4, 3, 1)
    for sigma in [(2, 1), (1, 2), (3, 2, 1), (1, 2, 3), (2, 1, 3)]:
        occs = naive_shape_occurrences(parts, w, sigma)
        for r in range(6):
            for c in range(6):
                expect = any(
                    min(w[col - 1] for col in cols) > r and cols[0] > c
                    for cols in occs
                )
                assert (
                    transversal_contains(parts, w, sigma, min_row=r, min_col=c)
                    == expect
                ), (sigma, r, c)


def test_parse_and_format():
    assert parse_shape("5,5,5,3,2") == (5, 5, 5, 3, 2)
    assert parse_shape(" 3, 3 ,1 ") == (3, 3, 1)
    assert format_shape((4, 2, 1)) == "4,2,1"
    for bad in ["", "3,4", "a,b", "3,,2"]:
        with pytest.raises(ValueError):
            parse_shape(bad)
