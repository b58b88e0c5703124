"""
Left normal form in the braid group.

Every braid is uniquely Δ^k · s_1 ⋯ s_r with each s_i a permutation braid
other than 1 and Δ, and each pair (s_i, s_{i+1}) left-weighted: every
generator that can start s_{i+1} already finishes s_i. Permutation braids are
stored as permutations (see `words` for conventions), so factors are tuples
and all work is O(n) per generator move.

>>> nf = normal_form(BraidWord.parse(3, "1 2 1"))
>>> nf.delta_power, nf.factors
(1, ())
>>> str(normal_form(BraidWord.parse(3, "-1")))
'D^-1 | 2,0,1'
"""
from __future__ import annotations

import dataclasses
from typing import Sequence

from .words import BraidWord, Perm, compose, identity, invert, permutation_word


def delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def tau(perm: Sequence[int]) -> Perm:
    """Conjugation by the half twist: Δ x Δ⁻¹."""
    n = len(perm)
    return tuple(n - 1 - perm[n - 1 - i] for i in range(n))


def starting_set(s: Sequence[int]) -> set[int]:
    """0-based j with σ_{j+1} a left divisor of s."""
    return {j for j in range(len(s) - 1) if s[j] > s[j + 1]}


def finishing_set(s: Sequence[int]) -> set[int]:
    """0-based j with σ_{j+1} a right divisor of s."""
    inv = invert(s)
    return {j for j in range(len(s) - 1) if inv[j] > inv[j + 1]}


def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move generators from the front of b onto the back of a until the pair is left-weighted."""
    a, b = list(a), list(b)
    pos_a = list(invert(a))
    while True:
        moved = False
        for j in range(len(b) - 1):
            # j starts b and does not finish a
            if b[j] > b[j + 1] and pos_a[j] < pos_a[j + 1]:
                # a <- a σ: swap values j, j+1 of a; b <- σ⁻¹ b: swap entries j, j+1 of b
                x, y = pos_a[j], pos_a[j + 1]
                a[x], a[y] = j + 1, j
                pos_a[j], pos_a[j + 1] = y, x
                b[j], b[j + 1] = b[j + 1], b[j]
                moved = True
        if not moved:
            return tuple(a), tuple(b)


@dataclasses.dataclass(frozen=True)
class LeftNormalForm:
    strands: int
    delta_power: int
    factors: tuple[Perm, ...]

    def __str__(self) -> str:
        parts = [f"D^{self.delta_power}"] + [",".join(map(str, f)) for f in self.factors]
        return " | ".join(parts)

    @property
    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    def to_word(self) -> BraidWord:
        n = self.strands
        d = permutation_word(delta(n))
        if self.delta_power >= 0:
            letters = list(d) * self.delta_power
        else:
            letters = [-x for x in reversed(d)] * -self.delta_power
        for f in self.factors:
            letters.extend(permutation_word(f))
        return BraidWord(n, tuple(letters))


def normalize(n: int, delta_power: int, factors: Sequence[Perm]) -> LeftNormalForm:
    """Left normal form of Δ^k · f_1 ⋯ f_r for arbitrary permutation braids f_i."""
    ident, full = identity(n), delta(n)
    out: list[Perm] = []
    for f in factors:
        if f == ident:
            continue
        out.append(f)
        # Sweep the new factor leftwards; stop once a pair is unchanged.
        for i in range(len(out) - 2, -1, -1):
            a, b = _left_weight(out[i], out[i + 1])
            if (a, b) == (out[i], out[i + 1]):
                break
            out[i], out[i + 1] = a, b
        while out and out[-1] == ident:
            out.pop()
        # A Δ can only surface at the front; pull it into the power.
        while out and out[0] == full:
            out.pop(0)
            delta_power += 1
    # The leftward sweep keeps every pair left-weighted only if each earlier
    # pair stays so; confirm and rerun globally if not.
    while True:
        changed = False
        for i in range(len(out) - 1):
            a, b = _left_weight(out[i], out[i + 1])
            if (a, b) != (out[i], out[i + 1]):
                out[i], out[i + 1] = a, b
                changed = True
        while out and out[-1] == ident:
            out.pop()
            changed = True
        while out and out[0] == full:
            out.pop(0)
            delta_power += 1
            changed = True
        if not changed:
            break
    return LeftNormalForm(n, delta_power, tuple(out))


def normal_form(w: BraidWord) -> LeftNormalForm:
    """
    Left normal form of a word. Positive runs become single factors when they
    stay simple; σ_j⁻¹ is rewritten as (σ_j⁻¹Δ)Δ⁻¹ and every Δ⁻¹ is pushed to
    the front, conjugating the factors it passes.
    """
    n = w.strands
    full = delta(n)
    factors: list[Perm] = []
    negatives: list[int] = []  # number of Δ⁻¹ markers immediately after each factor
    current = list(range(n))  # permutation of the open positive run
    pos = list(range(n))      # inverse of current

    def close_run():
        nonlocal current, pos
        if current != list(range(n)):
            factors.append(tuple(current))
            negatives.append(0)
        current, pos = list(range(n)), list(range(n))

    for x in w.letters:
        j = abs(x) - 1
        if x > 0:
            # appending σ keeps the run simple iff the two strands have not crossed yet
            if pos[j] > pos[j + 1]:
                close_run()
            a, b = pos[j], pos[j + 1]
            current[a], current[b] = j + 1, j
            pos[j], pos[j + 1] = b, a
        else:
            close_run()
            s = list(range(n))
            s[j], s[j + 1] = j + 1, j
            factors.append(compose(s, full))
            negatives.append(1)
    close_run()

    # Push Δ⁻¹ markers to the front: x Δ⁻¹ = Δ⁻¹ τ(x).
    total = sum(negatives)
    moved = []
    passing = 0
    for f, neg in zip(reversed(factors), reversed(negatives)):
        passing += neg
        moved.append(tau(f) if passing % 2 else f)
    moved.reverse()
    return normalize(n, -total, moved)


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise ValueError("strand counts differ")
    return normal_form(w1) == normal_form(w2)


def is_trivial(w: BraidWord) -> bool:
    return normal_form(w).is_identity
