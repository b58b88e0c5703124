"""
Dynnikov coordinates: an integer action of B_n on Z^{2n} that is faithful on
the orbit of (0, 1, 0, 1, ...). Two words are equal in B_n exactly when they
send that vector to the same place, which gives a word-problem oracle that
shares no code with the Garside normal form.

>>> dynnikov_equal(BraidWord.parse(3, "1 2"), BraidWord.parse(3, "2 1"))
False
>>> dynnikov_equal(BraidWord.parse(4, "1 3"), BraidWord.parse(4, "3 1"))
True
"""
from __future__ import annotations

import dataclasses

from .words import BraidWord


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def _apply(c: list[int], letter: int) -> None:
    i = 2 * (abs(letter) - 1)
    x0, y0, x1, y1 = c[i], c[i + 1], c[i + 2], c[i + 3]
    if letter > 0:
        z = x0 - _neg(y0) - x1 + _pos(y1)
        c[i] = x0 + _pos(y0) + _pos(_pos(y1) - z)
        c[i + 1] = y1 - _pos(z)
        c[i + 2] = x1 + _neg(y1) + _neg(_neg(y0) + z)
        c[i + 3] = y0 + _pos(z)
    else:
        z = x0 + _neg(y0) - x1 - _pos(y1)
        c[i] = x0 - _pos(y0) - _pos(_pos(y1) + z)
        c[i + 1] = y1 + _neg(z)
        c[i + 2] = x1 - _neg(y1) - _neg(_neg(y0) - z)
        c[i + 3] = y0 - _neg(z)


@dataclasses.dataclass(frozen=True)
class DynnikovState:
    coords: tuple[int, ...]

    @classmethod
    def initial(cls, n: int) -> DynnikovState:
        return cls((0, 1) * n)

    def act(self, w: BraidWord) -> DynnikovState:
        if len(self.coords) != 2 * w.strands:
            raise ValueError("state and word have different strand counts")
        c = list(self.coords)
        for x in w.letters:
            _apply(c, x)
        return DynnikovState(tuple(c))


def dynnikov_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise ValueError(f"strand counts differ: {w1.strands} vs {w2.strands}")
    start = DynnikovState.initial(w1.strands)
    return start.act(w1) == start.act(w2)
