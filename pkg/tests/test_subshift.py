from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denjoy import context, hausdorff_resolution, in_B, itinerary, language, rotate
from denjoy.circleset import measure
from denjoy.subshift import (block_period, block_set, canonical_rotation, is_prime, max_return_gap,
                             occurrences, prime_root)

from helpers import GOLDEN, U_, opensets, points, qa

A = GOLDEN.value
STURM = U_((0, A))
HALF = U_((0, F(1, 2)))


def test_block_set():
    assert block_set(context(HALF, F(1, 4)), "11") == U_((0, F(1, 4)))
    ctx = context(STURM, A)
    assert block_set(ctx, "1") == STURM
    assert block_set(ctx, "00") is None
    with pytest.raises(ValueError):
        block_set(ctx, "")


def test_language_examples():
    assert language(context(STURM, A), 2).blocks == ("01", "10", "11")
    assert set(language(context(HALF, F(1, 3)), 3)) == {"110", "101", "011", "100", "010", "001"}
    assert language(context(HALF, A), 1).blocks == ("0", "1")
    assert language(context(HALF, F(1, 3)), 2).blocks == ("00", "01", "10", "11")


def test_language_json():
    table = language(context(STURM, A), 2)
    assert table.to_json() == '{"n": 2, "blocks": ["01", "10", "11"]}'
    assert "11" in table and "00" not in table and len(table) == 3


def test_sturmian_complexity():
    ctx = context(STURM, A)
    for n in range(1, 13):
        assert len(language(ctx, n)) == n + 1


def test_hausdorff_resolution():
    ctx = context(STURM, A)
    assert hausdorff_resolution(ctx, ctx, 8) == 8
    assert hausdorff_resolution(ctx, context(HALF, A), 8) == 1
    assert hausdorff_resolution(context(HALF, A), context(rotate(HALF, qa(F(1, 7))), A), 8) == 8


def test_periods():
    assert (block_period("110110"), is_prime("110110")) == (3, False)
    assert (block_period("110"), is_prime("110")) == (3, True)
    assert (block_period("0"), is_prime("0")) == (1, True)
    assert prime_root("101010") == "10"
    assert canonical_rotation("011") == "110"


def test_occurrences_and_returns():
    assert occurrences("10101", "101") == [0, 2]
    assert max_return_gap("0010010", "1") == 3
    assert max_return_gap("000", "1") == 3


@settings(max_examples=30)
@given(opensets(max_arcs=2), points(), st.integers(1, 6))
def test_language_extension_consistency(U, r, n):
    ctx = context(U, r)
    longer = language(ctx, n + 1)
    shorter = set(language(ctx, n))
    assert {b[:-1] for b in longer} == shorter
    assert {b[1:] for b in longer} == shorter


@settings(max_examples=30)
@given(opensets(max_arcs=2), points(), st.integers(1, 6))
def test_block_sets_partition_the_circle(U, r, n):
    ctx = context(U, r)
    assert sum((measure(block_set(ctx, b)) for b in language(ctx, n)), qa(0)) == 1


@settings(max_examples=25)
@given(opensets(max_arcs=2), points(), points())
def test_itinerary_blocks_are_admissible(U, r, x):
    ctx = context(U, r)
    if in_B(x, ctx):
        word = itinerary(x, ctx, 20)
        lang = set(language(ctx, 5))
        assert all(word[i:i + 5] in lang for i in range(16))


@settings(max_examples=25)
@given(opensets(max_arcs=2), points(), st.integers(1, 7))
def test_rotation_invariance_of_language(U, eta, n):
    assert language(context(U, A), n) == language(context(rotate(U, eta), A), n)


@given(st.text("01", min_size=1, max_size=12))
def test_block_period_properties(b):
    p = block_period(b)
    assert len(b) % p == 0
    assert prime_root(b) * (len(b) // p) == b
    assert is_prime(prime_root(b))
    assert canonical_rotation(b) >= b
