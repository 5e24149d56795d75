"""Reduced words in G_k, the free product of k+1 copies of Z/2.

Generators are 1-based: a_1, ..., a_{k+1}. Every generator is an involution,
so a word is reduced exactly when no two adjacent letters coincide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidWordError, RankMismatchError


@dataclass(frozen=True)
class FreeProduct:
    """The ambient group G_k; words carry a reference to it."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"rank k must be >= 1, got {self.k}")

    @property
    def ngens(self) -> int:
        return self.k + 1

    def identity(self) -> Word:
        return Word(self, ())

    def gens(self) -> list[Word]:
        return [Word(self, (i,)) for i in range(1, self.k + 2)]

    def word(self, raw: Iterable[int] | str) -> Word:
        if isinstance(raw, str):
            return parse_word(raw, self.k)
        return reduce(raw, self.k)

    def random_word(self, rng: random.Random, max_len: int) -> Word:
        n = rng.randint(0, max_len)
        letters: list[int] = []
        for _ in range(n):
            choices = [i for i in range(1, self.k + 2) if not letters or i != letters[-1]]
            letters.append(rng.choice(choices))
        return Word(self, tuple(letters))


@dataclass(frozen=True)
class Word:
    """A reduced word. Build through :func:`reduce` unless already reduced."""

    group: FreeProduct
    letters: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.group.k

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return inverse(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word(k={self.k}, [{' '.join(map(str, self.letters))}])"


def _check_letters(raw: Iterable[int], k: int) -> list[int]:
    out = []
    for i in raw:
        i = int(i)
        if not 1 <= i <= k + 1:
            raise InvalidWordError(f"generator index {i} out of range 1..{k + 1}")
        out.append(i)
    return out


def reduce(raw: Sequence[int] | Iterable[int], k: int) -> Word:
    """Cancel adjacent equal letters until none remain (stack discipline)."""
    stack: list[int] = []
    for i in _check_letters(raw, k):
        if stack and stack[-1] == i:
            stack.pop()
        else:
            stack.append(i)
    return Word(FreeProduct(k), tuple(stack))


def multiply(x: Word, y: Word) -> Word:
    if x.k != y.k:
        raise RankMismatchError(f"cannot multiply words of rank {x.k} and {y.k}")
    a, b = x.letters, y.letters
    # only the junction can cancel, and it cancels as far as the words mirror
    n = 0
    while n < len(a) and n < len(b) and a[len(a) - 1 - n] == b[n]:
        n += 1
    return Word(x.group, a[: len(a) - n] + b[n:])


def inverse(x: Word) -> Word:
    return Word(x.group, x.letters[::-1])


def length(x: Word) -> int:
    return len(x.letters)


def letter_count(x: Word, i: int) -> int:
    return x.letters.count(i)


def count_words(k: int, max_len: int) -> int:
    """Number of reduced words of length <= max_len."""
    return 1 + sum((k + 1) * k ** (n - 1) for n in range(1, max_len + 1))


def enumerate_words(k: int, max_len: int) -> Iterator[Word]:
    """Yield every reduced word of length <= max_len, length-then-lex order."""
    g = FreeProduct(k)
    layer: list[tuple[int, ...]] = [()]
    yield Word(g, ())
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for i in range(1, k + 2):
                if not w or w[-1] != i:
                    nxt.append(w + (i,))
        for w in nxt:
            yield Word(g, w)
        layer = nxt


def word_matrix(words: Sequence[Word], width: int | None = None) -> np.ndarray:
    """Pack words into an int array padded with 0 (0 is never a generator)."""
    if width is None:
        width = max((len(w) for w in words), default=0)
    mat = np.zeros((len(words), width), dtype=np.int64)
    for r, w in enumerate(words):
        mat[r, : len(w)] = w.letters
    return mat


def letter_count_matrix(words: Sequence[Word], k: int) -> np.ndarray:
    """Row r, column i-1 holds w_x(a_i) for the r-th word."""
    mat = word_matrix(words)
    onehot = np.eye(k + 2, dtype=np.int64)[mat]
    return onehot.sum(axis=1)[:, 1:]


def parse_word(text: str, k: int) -> Word:
    """Parse whitespace-separated 1-based indices; the empty string is e."""
    try:
        raw = [int(t) for t in text.split()]
    except ValueError as exc:
        raise InvalidWordError(f"not a word: {text!r}") from exc
    return reduce(raw, k)


def format_word(x: Word) -> str:
    return " ".join(str(i) for i in x.letters)
