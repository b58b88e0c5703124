from __future__ import annotations

import json

import pytest

from henonbraids.cabling import (
    ConstructionError,
    EquivalencePair,
    Relation,
    cable_nondyn,
    cable_second_return,
    chain_from_dict,
    chain_to_dict,
    dump_chain,
    format_table,
    generate_chain,
    load_chain,
)
from henonbraids.perm import (
    collapse,
    format_cyclic,
    from_itinerary,
    is_reconnectable_nondyn,
    pair_properties,
    parse_cyclic,
    to_itinerary,
    unimodal_permutations,
)

from conftest import HEADS

MISPRINTED = "2,10,3,8,6,0,4,5,7,9,1"


def cyc(pair: EquivalencePair) -> tuple[str, str]:
    return format_cyclic(pair.minus), format_cyclic(pair.plus)


def reconnectable_heads(max_period: int):
    for p in range(4, max_period + 1):
        for u in unimodal_permutations(p):
            if is_reconnectable_nondyn(u):
                yield u


class TestCableNondyn:
    def test_worked_example(self):
        pair = cable_nondyn(parse_cyclic("2,3,0,4,1"))
        assert cyc(pair) == ("2,7,3,5,0,4,6,1", "2,7,3,0,5,4,6,1")
        assert pair.relation is Relation.CONJUGATE
        assert pair.distinguishing_time == 5

    def test_head_10011C(self):
        pair = cable_nondyn(from_itinerary("10011C"))
        assert cyc(pair) == ("2,8,3,6,0,4,5,7,1", "2,8,3,0,6,4,5,7,1")
        assert to_itinerary(pair.minus) == "10011010C"
        assert to_itinerary(pair.plus) == "10011110C"

    def test_head_10011001C(self):
        pair = cable_nondyn(from_itinerary("10011001C"))
        assert pair.period == 16
        assert cyc(pair) == ("2,11,6,15,3,12,7,9,0,4,13,8,14,5,10,1",
                             "2,11,6,15,3,12,7,0,9,4,13,8,14,5,10,1")

    def test_rejects_non_reconnectable(self):
        with pytest.raises(ConstructionError):
            cable_nondyn(parse_cyclic("2,7,3,8,0,5,4,9,6,1"))

    def test_period_arithmetic(self):
        for u in reconnectable_heads(9):
            q = is_reconnectable_nondyn(u).endpoint + 1
            try:
                pair = cable_nondyn(u)
            except ConstructionError:
                continue
            assert pair.period == u.period + q

    def test_collapse_recovers_head(self):
        for u in reconnectable_heads(10):
            try:
                pair = cable_nondyn(u)
            except ConstructionError:
                continue
            assert collapse(pair.minus, u.period) == u.cyclic
            assert collapse(pair.plus, u.period) == u.cyclic

    def test_relation_follows_side_of_E(self):
        from henonbraids.perm import left_of_folding

        for u in reconnectable_heads(9):
            try:
                pair = cable_nondyn(u)
            except ConstructionError:
                continue
            left = left_of_folding(u, is_reconnectable_nondyn(u).interval)
            assert (pair.relation is Relation.CONJUGATE) == left


class TestSecondReturn:
    def test_level_one_and_two(self):
        pair = cable_nondyn(parse_cyclic("2,3,0,4,1"))
        one = cable_second_return(pair)
        assert cyc(one) == ("2,7,10,3,8,5,0,4,9,6,1", "2,7,10,3,8,0,5,4,9,6,1")
        two = cable_second_return(one)
        assert cyc(two) == ("2,7,13,10,3,8,5,0,11,4,9,12,6,1", "2,7,13,10,3,8,0,5,11,4,9,12,6,1")
        assert one.level == 1 and two.level == 2

    def test_head_10011001C_level_one(self):
        one = cable_second_return(cable_nondyn(from_itinerary("10011001C")))
        assert cyc(one) == (
            "2,11,18,6,15,22,3,12,19,7,16,9,0,4,13,20,8,21,14,5,17,10,1",
            "2,11,18,6,15,22,3,12,19,7,16,0,9,4,13,20,8,21,14,5,17,10,1",
        )

    def test_period_arithmetic_and_collapse(self, chains):
        for chain in chains.values():
            for prev, pair in zip(chain.pairs, chain.pairs[1:]):
                t = pair_properties(prev.minus, prev.plus).transit_time
                assert pair.period == prev.period + t + 2
                assert collapse(pair.minus, prev.period) == prev.minus.cyclic
                assert collapse(pair.plus, prev.period) == prev.plus.cyclic
                assert pair.distinguishing_time == prev.distinguishing_time
                assert pair.relation is prev.relation

    def test_deep_chain(self):
        chain = generate_chain("1001C", 6)
        assert [p.period for p in chain.pairs] == [8, 11, 14, 17, 20, 23, 26]

    def test_all_small_heads(self):
        # every reconnectable head that builds a valid level-0 pair extends three more levels
        built = 0
        for u in reconnectable_heads(10):
            try:
                pair = cable_nondyn(u)
                pair_properties(pair.minus, pair.plus)
            except Exception:
                continue
            for _ in range(3):
                nxt = cable_second_return(pair)
                assert collapse(nxt.minus, pair.period) == pair.minus.cyclic
                pair = nxt
            built += 1
        assert built > 50


class TestChains:
    @pytest.mark.parametrize("head, periods", [
        ("1001C", [8, 11, 14, 17]),
        ("1001111C", [11, 14, 17, 20]),
        ("10011001C", [16, 23, 30, 37]),
    ])
    def test_periods(self, head, periods):
        assert [p.period for p in generate_chain(head, 3).pairs] == periods

    def test_depth_zero(self):
        assert len(generate_chain("1001C", 0).pairs) == 1

    def test_negative_depth(self):
        with pytest.raises(ValueError):
            generate_chain("1001C", -1)

    def test_members_differ_in_one_symbol(self, chains):
        for chain in chains.values():
            for pair in chain.pairs:
                a, b = to_itinerary(pair.minus), to_itinerary(pair.plus)
                diff = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
                assert len(diff) == 1
                i = diff[0]
                assert i + 1 == pair.distinguishing_time
                assert (a[i], b[i]) == ("0", "1")

    def test_table1(self, chains, table1):
        emitted = {c for chain in chains.values() for pair in chain.pairs for c in cyc(pair)}
        missing = [r.cyclic for r in table1 if r.cyclic not in emitted]
        assert missing == [MISPRINTED]

    def test_misprinted_cell_is_not_unimodal(self):
        from henonbraids.perm import NotUnimodalError

        with pytest.raises(NotUnimodalError):
            parse_cyclic(MISPRINTED)

    def test_table1_itineraries(self, chains, table1):
        for row in table1:
            if row.cyclic == MISPRINTED:
                continue
            u = parse_cyclic(row.cyclic)
            if row.head == "1001111C" and u.period == 11:
                # misprinted row: its label belongs to the other member
                assert to_itinerary(u) != row.itinerary
                continue
            assert to_itinerary(u) == row.itinerary

    def test_json_round_trip(self, chains):
        for chain in chains.values():
            text = dump_chain(chain)
            again = load_chain(text)
            assert again.pairs == chain.pairs
            assert dump_chain(again) == text
            data = json.loads(text)
            assert {"head", "levels"} <= data.keys()
            assert {"period", "minus", "plus", "relation", "distinguishing_time",
                    "transit_time"} <= data["levels"][0].keys()

    def test_from_dict_by_itinerary(self, chains):
        data = chain_to_dict(chains["1001C"])
        del data["head_cyclic"]
        assert chain_from_dict(data).head == chains["1001C"].head

    def test_format_table(self, chains):
        text = format_table([chains[h] for h in HEADS])
        lines = [line for line in text.splitlines() if "&" in line]
        assert len(lines) == 40
        assert lines[0] == "1001010C & 2,7,3,5,0,4,6,1"
