from __future__ import annotations

import functools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from henonbraids.braid import BraidWord, DynnikovState, braid_equal, dynnikov_equal, normal_form
from henonbraids.henon import HenonParams, henon_step
from henonbraids.perm import (
    UnimodalPermutation,
    compare_itineraries,
    format_cyclic,
    from_itinerary,
    parse_cyclic,
    to_itinerary,
    unimodal_permutations,
)
from henonbraids.quad import kneading


@functools.lru_cache(maxsize=None)
def _perms(p: int) -> tuple[UnimodalPermutation, ...]:
    return tuple(unimodal_permutations(p))


permutations = st.integers(3, 11).flatmap(lambda p: st.sampled_from(_perms(p)))


@st.composite
def words(draw, n=None):
    n = n or draw(st.integers(2, 7))
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=20))
    return BraidWord(n, tuple(letters))


@st.composite
def word_pairs(draw):
    n = draw(st.integers(2, 7))
    return draw(words(n)), draw(words(n))


@given(permutations)
def test_cyclic_round_trip(u):
    assert parse_cyclic(format_cyclic(u)) == u
    assert UnimodalPermutation.from_cyclic(u.cyclic) == u


@given(permutations)
def test_itinerary_round_trip(u):
    assert from_itinerary(to_itinerary(u)) == u


@given(permutations, permutations)
def test_itinerary_order_is_antisymmetric(u, v):
    wu, wv = to_itinerary(u), to_itinerary(v)
    assert compare_itineraries(wu, wv) == -compare_itineraries(wv, wu)


@given(words())
def test_inverse_cancels(w):
    assert braid_equal(w * w.inverse(), BraidWord(w.strands, ()))


@given(word_pairs())
def test_normal_form_is_multiplicative(pair):
    u, v = pair
    product = normal_form(u).to_word() * normal_form(v).to_word()
    assert normal_form(product) == normal_form(u * v)


@given(word_pairs())
def test_oracles_agree(pair):
    u, v = pair
    assert braid_equal(u, v) == dynnikov_equal(u, v)


@given(word_pairs())
def test_dynnikov_action(pair):
    u, v = pair
    start = DynnikovState.initial(u.strands)
    assert start.act(u).act(v) == start.act(u * v)


@settings(deadline=None)
@given(st.floats(1.45, 2.0), st.floats(1.45, 2.0))
def test_kneading_is_monotone(a1, a2):
    a1, a2 = sorted((a1, a2))
    assert compare_itineraries(kneading(a1, 12), kneading(a2, 12)) <= 0


@given(*[st.floats(-3, 3)] * 4)
def test_henon_determinant(a, b, x, y):
    _, jac = henon_step(HenonParams(a, b), x, y)
    assert abs(np.linalg.det(jac) - b) <= 1e-12 * max(1.0, abs(x))
