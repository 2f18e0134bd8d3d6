from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvop.errors import InputError
from curvop.multiindex import (
    MultiIndex,
    alpha,
    complement,
    enumerate_indices,
    epsilon,
    insert_sign,
    position,
    sgn_complement,
)


def mi(*entries, n):
    return MultiIndex.of(entries, n)


def inversion_sign(seq):
    """Parity of a sequence by brute-force pair counting."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@st.composite
def multi_indices(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    entries = draw(st.sets(st.integers(1, n), max_size=n))
    return MultiIndex.of(sorted(entries), n)


# --- examples ----------------------------------------------------------------


def test_epsilon_examples():
    I = mi(1, 3, 5, n=5)
    assert epsilon(3, I) == -1
    assert epsilon(2, I) == 0
    assert epsilon(5, I) == 1
    assert epsilon(1, I) == 1


def test_epsilon_out_of_range():
    with pytest.raises(InputError):
        epsilon(6, mi(1, 3, 5, n=5))
    with pytest.raises(InputError):
        epsilon(0, mi(1, n=2))


def test_complement_examples():
    assert complement(mi(1, 3, n=4)).entries == (2, 4)
    assert complement(mi(n=3)).entries == (1, 2, 3)
    assert complement(mi(1, 2, 3, n=3)).entries == ()


@pytest.mark.parametrize("n", range(1, 6))
def test_sgn_of_initial_segment_is_one(n):
    for p in range(n + 1):
        assert sgn_complement(MultiIndex.of(range(1, p + 1), n)) == 1


def test_sgn_examples():
    assert sgn_complement(mi(2, n=3)) == -1
    assert sgn_complement(mi(2, 3, n=3)) == 1


def test_alpha_examples():
    assert alpha(mi(n=2)) == 1
    assert alpha(mi(1, n=1)) == -1
    assert alpha(mi(1, 3, n=4)) == -1


def test_enumerate_examples():
    assert [I.entries for I in enumerate_indices(3, 2)] == [(1, 2), (1, 3), (2, 3)]
    assert [I.entries for I in enumerate_indices(3, 0)] == [()]
    assert len(enumerate_indices(4, 2)) == 6
    with pytest.raises(InputError):
        enumerate_indices(3, 4)


def test_invalid_multi_index():
    with pytest.raises(InputError):
        MultiIndex((2, 1), 3)
    with pytest.raises(InputError):
        MultiIndex((1, 4), 3)
    with pytest.raises(InputError):
        MultiIndex((1, 1), 3)


def test_str():
    assert str(mi(1, 3, n=4)) == "{1,3}"
    assert str(mi(n=4)) == "{}"


# --- properties --------------------------------------------------------------


@given(multi_indices())
def test_epsilon_squared_is_membership(I):
    for s in range(1, I.n + 1):
        assert epsilon(s, I) ** 2 == (1 if s in I else 0)


@given(multi_indices())
def test_epsilon_matches_moving_to_front(I):
    # eps(s, I) is the sign of reordering (s, I minus s) into I
    for s in I:
        seq = (s,) + I.without(s).entries
        assert epsilon(s, I) == inversion_sign(seq)


@given(multi_indices())
def test_sgn_complement_matches_inversion_count(I):
    seq = I.entries + complement(I).entries
    assert sgn_complement(I) * inversion_sign(seq) == 1


@given(multi_indices())
def test_complement_partition(I):
    C = complement(I)
    assert set(I) | set(C) == set(range(1, I.n + 1))
    assert not set(I) & set(C)
    assert list(C.entries) == sorted(C.entries)


@given(multi_indices())
def test_alpha_definition(I):
    assert alpha(I) == sgn_complement(I) * (-1) ** I.degree


@given(multi_indices())
def test_insert_sign(I):
    for s in range(1, I.n + 1):
        sign, I2 = insert_sign(s, I)
        if s in I:
            assert sign == 0
        else:
            assert sign == inversion_sign((s,) + I.entries)
            assert I2.without(s) == I


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_complete_sorted_positions(n):
    for d in range(n + 1):
        got = enumerate_indices(n, d)
        assert [I.entries for I in got] == list(combinations(range(1, n + 1), d))
        assert len(got) == comb(n, d)
        assert [position(I) for I in got] == list(range(len(got)))
