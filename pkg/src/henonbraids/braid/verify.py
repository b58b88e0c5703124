"""
Checking the braid relation asserted for a generated pair.

Both members are drawn as their positive unimodal braids on the same set of
endpoints. γ is the generator crossing the two adjacent positions holding the
folding point and the distinguishing time. With words read left to right, a
conjugate pair satisfies β₊ = γ β₋ γ⁻¹ and a reverse-conjugate pair satisfies
β₊ = γ β₋ γ. Equality is decided in B_n by normal forms, first exactly and
then up to a central factor Δ^{2k} with |k| ≤ 2.
"""
from __future__ import annotations

import dataclasses

from ..cabling import EquivalencePair, Relation
from .garside import LeftNormalForm, normal_form
from .words import BraidWord, exponent_sum, unimodal_braid

MAX_CENTRAL_POWER = 2


class VerificationError(RuntimeError):
    """Neither relation holds, or the one that holds is not the one claimed."""


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    period: int
    relation: Relation
    central_power: int
    conjugator: int
    exponent_sums: tuple[int, int]
    level: int = 0
    head: str = ""

    def __str__(self) -> str:
        twist = f" (times D^{2 * self.central_power})" if self.central_power else ""
        return (f"{self.head or '?'} level {self.level} period {self.period}: "
                f"{self.relation.value} via sigma_{self.conjugator}{twist}")


def conjugator(pair: EquivalencePair) -> BraidWord:
    """The generator swapping the adjacent positions of the folding point and p."""
    p = pair.distinguishing_time
    spots = set()
    for member in (pair.minus, pair.plus):
        spots.add(tuple(sorted((member.position(0), member.position(p)))))
    if len(spots) != 1:
        raise VerificationError("members place 0 and p on different positions")
    (lo, hi), = spots
    if hi != lo + 1:
        raise VerificationError(f"0 and {p} are not adjacent")
    return BraidWord(pair.period, (hi,))


def _central_shift(a: LeftNormalForm, b: LeftNormalForm) -> int | None:
    """k with a = b Δ^{2k}, if one exists."""
    diff = a.delta_power - b.delta_power
    if a.factors != b.factors or diff % 2:
        return None
    return diff // 2


def verify_pair(pair: EquivalencePair) -> VerificationReport:
    if pair.minus.period != pair.plus.period:
        raise VerificationError("members have different periods")
    minus, plus = unimodal_braid(pair.minus), unimodal_braid(pair.plus)
    g = conjugator(pair)
    target = normal_form(plus)
    candidates = (
        (Relation.CONJUGATE, g * minus * g.inverse()),
        (Relation.REVERSE_CONJUGATE, g * minus * g),
    )
    found = []
    for relation, word in candidates:
        k = _central_shift(target, normal_form(word))
        if k is not None and abs(k) <= MAX_CENTRAL_POWER:
            found.append((abs(k), relation, k))
    if not found:
        raise VerificationError(
            f"level {pair.level} period {pair.period}: neither relation holds for "
            f"{pair.minus} / {pair.plus}")
    _, relation, k = min(found, key=lambda t: t[0])
    if relation is not pair.relation:
        raise VerificationError(
            f"level {pair.level} period {pair.period}: braids are {relation.value}, "
            f"pair claims {pair.relation.value}")
    return VerificationReport(
        period=pair.period,
        relation=relation,
        central_power=k,
        conjugator=g.letters[0],
        exponent_sums=(exponent_sum(minus), exponent_sum(plus)),
        level=pair.level,
        head=pair.head,
    )
