"""Permutations in one-line notation and their reduced words."""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

Permutation = Tuple[int, ...]
ReducedWord = Tuple[int, ...]


def check_permutation(w: Sequence[int]) -> Permutation:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def identity(r: int) -> Permutation:
    return tuple(range(1, r + 1))


def longest(r: int) -> Permutation:
    return tuple(range(r, 0, -1))


def compose(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """``(u v)(i) = u(v(i))``."""
    return tuple(u[v[i] - 1] for i in range(len(v)))


def inverse(w: Sequence[int]) -> Permutation:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi - 1] = i + 1
    return tuple(out)


def inversions(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def block_longest(sizes: Sequence[int]) -> Permutation:
    """Longest element of the Young subgroup ``S_{sizes[0]} x S_{sizes[1]} x ...``."""
    out: List[int] = []
    start = 0
    for size in sizes:
        out.extend(range(start + size, start, -1))
        start += size
    return tuple(out)


def word_to_permutation(word: Sequence[int], r: int) -> Permutation:
    w = list(identity(r))
    for i in word:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def reduced_word(w: Sequence[int], rng: Optional[random.Random] = None,
                 rightmost: bool = False) -> ReducedWord:
    """A reduced word ``(i_1, ..., i_l)`` with ``w = s_{i_1} ... s_{i_l}``.

    By default descents are stripped leftmost-first, which makes the word
    deterministic. ``rightmost`` or an ``rng`` choose other descents, giving
    other reduced words for the same permutation.
    """
    w = list(check_permutation(w))
    stripped: List[int] = []
    while True:
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            break
        if rng is not None:
            i = rng.choice(descents)
        elif rightmost:
            i = descents[-1]
        else:
            i = descents[0]
        w[i], w[i + 1] = w[i + 1], w[i]
        stripped.append(i + 1)
    return tuple(reversed(stripped))


def is_reduced(word: Sequence[int], r: int) -> bool:
    return inversions(word_to_permutation(word, r)) == len(word)
