"""
Braid words in the Artin generators.

A word on n strands is a sequence of nonzero integers; letter ``i`` is the
positive crossing σ_i of the strands at positions i-1 and i (0-based), and
``-i`` is its inverse. Words are read left to right: the first letter is the
first crossing a strand meets.

Permutations follow the same left-to-right convention. A permutation ``π`` is
a tuple in one-line form where the strand starting at position ``i`` ends at
position ``π[i]``, and the product ``a * b`` (a first, then b) is
``tuple(b[a[i]] for i in range(n))``.

>>> w = BraidWord.parse(3, "1 2 1")
>>> induced_permutation(w)
(2, 1, 0)
>>> exponent_sum(w.inverse())
-3
"""
from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from ..perm import UnimodalPermutation

Perm = tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, strands: int, text: str) -> BraidWord:
        return cls(strands, tuple(int(tok) for tok in text.split()))

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """a, then b."""
    return tuple(b[x] for x in a)


def invert(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def induced_permutation(w: BraidWord) -> Perm:
    """Where each strand ends up; crossings of either sign act as transpositions."""
    # track[k] is the starting position of the strand currently at k
    track = list(range(w.strands))
    for x in w.letters:
        j = abs(x)
        track[j - 1], track[j] = track[j], track[j - 1]
    return invert(track)


def inversions(perm: Sequence[int]) -> set[tuple[int, int]]:
    """Pairs of starting positions i < j whose strands end in the opposite order."""
    n = len(perm)
    return {(i, j) for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]}


def permutation_word(perm: Sequence[int]) -> tuple[int, ...]:
    """
    Positive letters of the permutation braid of ``perm``, by left-to-right
    bubble sort: each pass carries strands toward their endpoints, crossing
    every inverted pair exactly once.

    >>> permutation_word((1, 0, 2))
    (1,)
    >>> permutation_word((1, 3, 4, 2, 0))
    (3, 4, 2, 3, 2, 1)
    """
    cur = list(perm)
    letters = []
    for end in range(len(cur) - 1, 0, -1):
        for j in range(end):
            if cur[j] > cur[j + 1]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                letters.append(j + 1)
    return tuple(letters)


def unimodal_braid(perm: UnimodalPermutation) -> BraidWord:
    """The positive braid inducing ``perm`` in which each pair of strands crosses at most once."""
    return BraidWord(perm.period, permutation_word(perm.images))


def crossing_pairs(w: BraidWord) -> list[tuple[int, int]]:
    """Starting positions (sorted) of the two strands at each crossing, in order."""
    track = list(range(w.strands))
    pairs = []
    for x in w.letters:
        j = abs(x)
        pairs.append(tuple(sorted((track[j - 1], track[j]))))
        track[j - 1], track[j] = track[j], track[j - 1]
    return pairs


def is_positive(w: BraidWord) -> bool:
    return all(x > 0 for x in w.letters)


def is_direct(w: BraidWord) -> bool:
    """Positive and no pair of strands crosses twice."""
    pairs = crossing_pairs(w)
    return is_positive(w) and len(set(pairs)) == len(pairs)


def concat(strands: int, parts: Iterable[BraidWord]) -> BraidWord:
    letters: list[int] = []
    for part in parts:
        if part.strands != strands:
            raise ValueError("strand counts differ")
        letters.extend(part.letters)
    return BraidWord(strands, tuple(letters))
