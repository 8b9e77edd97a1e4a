import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evenwilf.perms import (
    PATTERN_FAMILIES,
    SYMMETRIES,
    all_perms,
    apply_symmetry,
    avoids,
    check_perm,
    complement,
    contains,
    decreasing,
    decreasing_max_last,
    direct_sum,
    family_pattern,
    format_perm,
    increasing,
    inverse,
    inversions,
    is_even,
    parse_perm,
    reverse,
    sign,
    symmetry_product,
)
from helpers import naive_contains, naive_inversions

perms_upto = lambda n: st.integers(1, n).flatmap(
    lambda m: st.permutations(list(range(1, m + 1))).map(tuple)
)


def test_inversion_values():
    assert inversions((1, 2, 3)) == 0
    assert inversions((3, 2, 1)) == 3
    assert inversions((4, 5, 3, 2, 1)) == 9
    assert inversions(()) == 0
    assert sign((2, 1)) == -1
    assert sign((2, 1, 4, 3)) == 1
    assert is_even((1,))
    assert not is_even((1, 3, 2))


@given(perms_upto(8))
def test_inversions_match_bruteforce(w):
    assert inversions(w) == naive_inversions(w)


def test_check_perm_rejects_junk():
    for bad in [(0, 1), (1, 1), (2, 3), (1, 2, 4)]:
        with pytest.raises(ValueError):
            check_perm(bad)
    assert check_perm([2, 1]) == (2, 1)  # lists are normalized to tuples


def test_basic_symmetries():
    assert reverse((1, 3, 2)) == (2, 3, 1)
    assert complement((1, 3, 2)) == (3, 1, 2)
    assert inverse((4, 5, 3, 2, 1)) == (5, 4, 3, 1, 2)
    assert inverse((3, 1, 2)) == (2, 3, 1)


@given(perms_upto(7))
def test_symmetries_are_involutions(w):
    assert reverse(reverse(w)) == w
    assert complement(complement(w)) == w
    assert inverse(inverse(w)) == w


@given(perms_upto(7))
def test_reverse_complement_inversion_count(w):
    pairs = len(w) * (len(w) - 1) // 2
    assert inversions(reverse(w)) == pairs - inversions(w)
    assert inversions(complement(w)) == pairs - inversions(w)
    assert inversions(inverse(w)) == inversions(w)


@given(perms_upto(6), st.sampled_from(SYMMETRIES), st.sampled_from(SYMMETRIES))
def test_symmetry_product_matches_composition(w, a, b):
    assert apply_symmetry(apply_symmetry(w, a), b) == apply_symmetry(
        w, symmetry_product(a, b)
    )


def test_symmetry_product_is_a_group_table():
    for a in SYMMETRIES:
        assert symmetry_product(a, "identity") == a
        assert symmetry_product("identity", a) == a
    # every element has an inverse in the table
    for a in SYMMETRIES:
        assert any(symmetry_product(a, b) == "identity" for b in SYMMETRIES)


def test_apply_symmetry_known_values():
    assert apply_symmetry((1, 3, 4, 2), "reverse") == (2, 4, 3, 1)
    assert apply_symmetry((1, 3, 4, 2), "complement") == (4, 2, 1, 3)
    assert apply_symmetry((1, 3, 4, 2), "rc") == (3, 1, 2, 4)
    assert apply_symmetry((1, 3, 4, 2), "rc-inverse") == (2, 3, 1, 4)
    with pytest.raises(ValueError):
        apply_symmetry((1,), "transpose")


def test_direct_sum():
    assert direct_sum((3, 1, 2), (2, 4, 1, 3)) == (3, 1, 2, 5, 7, 4, 6)
    assert direct_sum((1,), (1,), (1,)) == (1, 2, 3)
    assert direct_sum() == ()
    assert direct_sum((2, 1)) == (2, 1)


@given(perms_upto(5), perms_upto(5))
def test_direct_sum_block_structure(a, b):
    s = direct_sum(a, b)
    assert s[: len(a)] == a
    assert all(v > len(a) for v in s[len(a) :])
    assert inversions(s) == inversions(a) + inversions(b)


def test_families():
    assert decreasing(4) == (4, 3, 2, 1)
    assert increasing(3) == (1, 2, 3)
    assert decreasing_max_last(4) == (3, 2, 1, 4)
    assert decreasing_max_last(1) == (1,)
    assert set(PATTERN_FAMILIES) == {"decreasing", "increasing", "max-last"}
    assert family_pattern("max-last", 3) == (2, 1, 3)
    with pytest.raises(ValueError):
        family_pattern("zigzag", 3)


def test_contains_small_cases():
    assert contains((4, 2, 1, 3), (3, 1, 2))
    assert not contains((4, 2, 1, 3), (1, 2, 3))
    assert avoids((4, 2, 1, 3), (1, 2, 3))
    assert contains((1, 2), ())
    assert not contains((1, 2), (1, 2, 3))


@given(perms_upto(7), perms_upto(4))
@settings(max_examples=300)
def test_contains_matches_naive(w, sigma):
    assert contains(w, sigma) == naive_contains(w, sigma)


def test_contains_exhaustive_tiny():
    for w in all_perms(5):
        for k in (2, 3):
            for sigma in all_perms(k):
                assert contains(w, sigma) == naive_contains(w, sigma)


def test_all_perms_counts():
    assert len(list(all_perms(0))) == 1
    assert len(list(all_perms(4))) == 24


def test_parse_and_format():
    assert parse_perm("45321") == (4, 5, 3, 2, 1)
    assert parse_perm("4 5 3 2 1") == (4, 5, 3, 2, 1)
    assert parse_perm("10 2 3 4 5 6 7 8 9 1")[0] == 10
    assert format_perm((4, 5, 3, 2, 1)) == "45321"
    assert format_perm(tuple(range(1, 11))) == "1 2 3 4 5 6 7 8 9 10"
    for bad in ["", "4512", "1 2 x", "0"]:
        with pytest.raises(ValueError):
            parse_perm(bad)


@given(perms_upto(12))
def test_parse_format_roundtrip(w):
    assert parse_perm(format_perm(w)) == w
