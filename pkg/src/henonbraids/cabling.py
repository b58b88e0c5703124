"""
Generating braid-equivalent pairs of unimodal permutations.

`cable_nondyn` breaks the critical orbit of a head permutation at the folding
point and reconnects it inside the interval containing the non-dynamical
preimage, once with the new point left of the folding point (minus) and once
right of it (plus). `cable_second_return` then extends any such pair by
breaking at the dynamical preimage and following the image of the closest
return until it lands in the interval containing the dynamical preimage.
Iterating the second step gives a chain of pairs whose periods grow by a
constant amount.

Both constructions work purely on cyclic notation: new orbit times are placed
at virtual positions next to existing points, and the closed-up permutation is
validated as unimodal.
"""
from __future__ import annotations

import dataclasses
import enum
import json
from typing import Any, Sequence

from .perm import (
    SLOT,
    PermutationError,
    UnimodalPermutation,
    distinguishing_time,
    format_cyclic,
    from_itinerary,
    insert_points,
    is_reconnectable_nondyn,
    left_of_folding,
    pair_properties,
    parse_cyclic,
    slot,
    to_itinerary,
    transit,
)


class Relation(enum.Enum):
    CONJUGATE = "Conjugate"
    REVERSE_CONJUGATE = "ReverseConjugate"


class ConstructionError(RuntimeError):
    """A construction was applied outside its hypotheses or produced an invalid closure."""


@dataclasses.dataclass(frozen=True)
class EquivalencePair:
    minus: UnimodalPermutation
    plus: UnimodalPermutation
    distinguishing_time: int
    relation: Relation
    level: int = 0
    head: str = ""

    @property
    def period(self) -> int:
        return self.minus.period


def _closure(times: Sequence[int]) -> UnimodalPermutation | None:
    """The permutation with this cyclic notation, if it is unimodal with 0 at the fold."""
    try:
        perm = UnimodalPermutation.from_cyclic(times)
    except PermutationError:
        return None
    return perm if perm.time_at(perm.folding) == 0 else None


def cable_nondyn(perm: UnimodalPermutation, use_right_endpoint: bool = False) -> EquivalencePair:
    """
    Cable a reconnectable cyclic unimodal permutation at the non-dynamical
    preimage of its folding point.

    When both endpoints of E satisfy the parity rule the left one is used
    unless `use_right_endpoint` is set.
    """
    if not perm.is_cyclic:
        raise ConstructionError(f"{perm} is not cyclic")
    recon = is_reconnectable_nondyn(perm)
    if not recon:
        raise ConstructionError(f"{perm} is not reconnectable at the non-dynamical preimage")
    endpoint = recon.endpoints[-1] if use_right_endpoint else recon.endpoints[0]
    if endpoint == 0:
        raise ConstructionError("reconnection endpoint is the folding point itself")

    p, q = perm.period, endpoint + 1
    # Companions r_1..r_{q-1}: r_1 sits left of time 1, and each later one
    # switches side after every iterate right of the folding point.
    companions, parity = [], 0
    for i in range(1, q):
        companions.append((p + i, slot(perm, i, 1 if parity else -1)))
        parity ^= perm.side(i) > 0
    E = recon.interval
    last = companions[-1][1]
    if not perm.position(E.left) < last < perm.position(E.right) and \
            not perm.position(E.right) < last < perm.position(E.left):
        raise ConstructionError("final companion does not land inside E")

    members = []
    for side in (-1, 1):
        times = insert_points(perm, [(p, slot(perm, 0, side)), *companions])
        member = _closure(times)
        if member is None:
            raise ConstructionError(f"closure {times} is not unimodal")
        members.append(member)

    relation = Relation.CONJUGATE if left_of_folding(perm, E) else Relation.REVERSE_CONJUGATE
    return EquivalencePair(members[0], members[1], p, relation, level=0, head=to_itinerary(perm))


def _extend(perm: UnimodalPermutation, p: int) -> tuple[UnimodalPermutation, str]:
    """Second-return extension of one member; returns it and the side of C used."""
    N = perm.period
    _, _, visited = transit(perm, p)
    companions = [(N + i, where) for i, (_, where) in enumerate(visited, start=1)]
    # The new second return sits just outside the span of p and the folding point.
    lo, hi = sorted([perm.position(p), perm.folding])
    candidates = (("left", lo - SLOT), ("right", hi + SLOT))
    found = []
    for name, where in candidates:
        member = _closure(insert_points(perm, [(N, where), *companions]))
        if member is not None:
            found.append((member, name))
    if len(found) != 1:
        raise ConstructionError(f"{len(found)} unimodal closures for {perm}; expected exactly one")
    return found[0]


def cable_second_return(pair: EquivalencePair) -> EquivalencePair:
    """Extend an equivalent pair by one level of the second-return cabling process."""
    report = pair_properties(pair.minus, pair.plus)
    p = report.distinguishing_time
    minus, side_m = _extend(pair.minus, p)
    plus, side_p = _extend(pair.plus, p)
    if side_m != side_p:
        raise ConstructionError(f"members close on different sides of C ({side_m} / {side_p})")
    if distinguishing_time(minus, plus) != p:
        raise ConstructionError("extension changed the distinguishing time")
    return dataclasses.replace(pair, minus=minus, plus=plus, level=pair.level + 1)


@dataclasses.dataclass(frozen=True)
class Chain:
    head: UnimodalPermutation
    pairs: tuple[EquivalencePair, ...]


def generate_chain(head: UnimodalPermutation | str, depth: int, use_right_endpoint: bool = False) -> Chain:
    """
    Level 0 from `cable_nondyn`, then `depth` levels of `cable_second_return`.
    `head` may be given as a permutation or as its critical itinerary.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if isinstance(head, str):
        head = from_itinerary(head)
    pairs = [cable_nondyn(head, use_right_endpoint)]
    for _ in range(depth):
        pairs.append(cable_second_return(pairs[-1]))
    for pair in pairs:
        pair_properties(pair.minus, pair.plus)
    return Chain(head, tuple(pairs))


# ---------------------------------------------------------------------------
# Serialisation


def chain_to_dict(chain: Chain) -> dict[str, Any]:
    levels = []
    for pair in chain.pairs:
        report = pair_properties(pair.minus, pair.plus)
        levels.append({
            "level": pair.level,
            "period": pair.period,
            "minus": format_cyclic(pair.minus),
            "plus": format_cyclic(pair.plus),
            "minus_itinerary": to_itinerary(pair.minus),
            "plus_itinerary": to_itinerary(pair.plus),
            "relation": pair.relation.value,
            "distinguishing_time": pair.distinguishing_time,
            "transit_time": report.transit_time,
        })
    return {"head": to_itinerary(chain.head), "head_cyclic": format_cyclic(chain.head), "levels": levels}


def chain_from_dict(data: dict[str, Any]) -> Chain:
    head = parse_cyclic(data["head_cyclic"]) if "head_cyclic" in data else from_itinerary(data["head"])
    head_word = to_itinerary(head)
    pairs = []
    for level in data["levels"]:
        pairs.append(EquivalencePair(
            minus=parse_cyclic(level["minus"]),
            plus=parse_cyclic(level["plus"]),
            distinguishing_time=int(level["distinguishing_time"]),
            relation=Relation(level["relation"]),
            level=int(level.get("level", len(pairs))),
            head=head_word,
        ))
    return Chain(head, tuple(pairs))


def dump_chain(chain: Chain) -> str:
    return json.dumps(chain_to_dict(chain), indent=2) + "\n"


def load_chain(text: str) -> Chain:
    return chain_from_dict(json.loads(text))


def format_table(chains: Sequence[Chain]) -> str:
    """Itinerary and cyclic notation of every member, one per line, chains separated by rules."""
    blocks = []
    for chain in chains:
        lines = []
        for pair in chain.pairs:
            for member in (pair.minus, pair.plus):
                lines.append(f"{to_itinerary(member)} & {format_cyclic(member)}")
        blocks.append("\n".join(lines))
    return ("\n" + "-" * 8 + "\n").join(blocks) + "\n"
