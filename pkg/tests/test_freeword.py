import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gknormal.errors import InvalidWordError, RankMismatchError
from gknormal.freeword import (
    FreeProduct,
    count_words,
    enumerate_words,
    format_word,
    inverse,
    length,
    letter_count,
    letter_count_matrix,
    multiply,
    parse_word,
    reduce,
)


def W(letters, k=3):
    return reduce(letters, k)


@pytest.mark.parametrize(
    "raw, expected",
    [([1, 2, 2, 3], (1, 3)), ([1, 1], ()), ([2, 1, 1, 2, 3], (3,))],
)
def test_reduce_examples(raw, expected):
    assert reduce(raw, 2).letters == expected


def test_reduce_rejects_out_of_range():
    with pytest.raises(InvalidWordError):
        reduce([1, 4], 2)
    with pytest.raises(InvalidWordError):
        reduce([0], 2)


@pytest.mark.parametrize(
    "x, y, expected",
    [([1, 2], [2, 1], ()), ([1], [2], (1, 2)), ([1, 2, 3], [3, 2], (1,))],
)
def test_multiply_examples(x, y, expected):
    assert multiply(W(x), W(y)).letters == expected


def test_multiply_rank_mismatch():
    with pytest.raises(RankMismatchError):
        multiply(reduce([1], 1), reduce([1], 2))


def test_inverse_examples():
    assert inverse(W([1, 2, 3])).letters == (3, 2, 1)
    assert inverse(W([])).letters == ()
    assert inverse(W([1])).letters == (1,)


def test_length_and_letter_count():
    assert length(W([1, 2, 1])) == 3
    assert length(W([])) == 0
    assert length(reduce([1, 1, 2], 2)) == 1
    assert letter_count(W([1, 2, 1]), 1) == 2
    assert letter_count(W([]), 2) == 0
    assert letter_count(W([1, 2, 3]), 4) == 0


def _brute_reduced(k, max_len):
    """All raw sequences with no adjacent repeat, generated without the enumerator."""
    out = []
    for n in range(max_len + 1):
        for seq in itertools.product(range(1, k + 2), repeat=n):
            if all(a != b for a, b in zip(seq, seq[1:])):
                out.append(seq)
    return out


@pytest.mark.parametrize("k, max_len, expected", [(1, 2, 5), (2, 1, 4), (2, 3, 22)])
def test_enumerate_words_counts(k, max_len, expected):
    words = list(enumerate_words(k, max_len))
    assert len(words) == expected == count_words(k, max_len)


def test_enumerate_words_k1_order():
    assert [w.letters for w in enumerate_words(1, 2)] == [(), (1,), (2,), (1, 2), (2, 1)]


@pytest.mark.parametrize("k, max_len", [(1, 6), (2, 5), (3, 4)])
def test_enumerate_words_matches_brute_force(k, max_len):
    words = [w.letters for w in enumerate_words(k, max_len)]
    assert len(set(words)) == len(words)
    assert sorted(words) == sorted(_brute_reduced(k, max_len))
    # length-then-lex order
    assert words == sorted(words, key=lambda w: (len(w), w))


def test_text_format_roundtrip():
    x = parse_word("1 2 1 3", 2)
    assert x.letters == (1, 2, 1, 3)
    assert format_word(x) == "1 2 1 3"
    assert parse_word("", 2).letters == ()
    assert parse_word("  2 2 ", 2).letters == ()
    with pytest.raises(InvalidWordError):
        parse_word("1 x", 2)


def test_letter_count_matrix():
    words = list(enumerate_words(2, 4))
    mat = letter_count_matrix(words, 2)
    for w, row in zip(words, mat):
        assert list(row) == [letter_count(w, i) for i in (1, 2, 3)]


def test_random_word_is_reduced():
    import random

    G = FreeProduct(3)
    rng = random.Random(1)
    for _ in range(200):
        w = G.random_word(rng, 10)
        assert reduce(w.letters, 3) == w


raw_words = st.lists(st.integers(1, 4), max_size=20)


@given(raw_words)
def test_reduce_idempotent(raw):
    w = reduce(raw, 3)
    assert reduce(w.letters, 3) == w
    assert all(a != b for a, b in zip(w.letters, w.letters[1:]))


@given(raw_words, raw_words, raw_words)
def test_multiply_associative_with_identity(a, b, c):
    x, y, z = W(a), W(b), W(c)
    e = FreeProduct(3).identity()
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(e, x) == x == multiply(x, e)
    assert multiply(x, inverse(x)) == e


@given(raw_words, raw_words)
def test_multiply_is_reduced_concat(a, b):
    x, y = W(a), W(b)
    assert multiply(x, y) == reduce(x.letters + y.letters, 3)


@given(raw_words, raw_words)
def test_length_subadditive(a, b):
    x, y = W(a), W(b)
    n = length(multiply(x, y))
    assert n <= length(x) + length(y)
    junction_differs = not x.letters or not y.letters or x.letters[-1] != y.letters[0]
    assert (n == length(x) + length(y)) == junction_differs
