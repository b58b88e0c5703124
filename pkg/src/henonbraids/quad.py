"""
Superattracting parameters of the quadratic family f_a(x) = a - x².

The parameter whose critical point is periodic with a given itinerary is
bracketed by bisection on the kneading sequence, which is monotone in a for
the unimodal order, and then polished by Newton's method on
g(a) = f_a^p(0) in extended precision. Double precision cannot hold
|g(a)| below 1e-12 once p is large: g'(a) grows like the product of the orbit
derivatives (about 3e8 at p = 37), so the nearest double to the root already
leaves a residual near 1e-8. The polished root is kept alongside its rounded
value.
"""
from __future__ import annotations

import csv
import dataclasses
import io
from typing import Iterable, Sequence

import mpmath

from .perm import InadmissibleError, compare_itineraries, from_itinerary

CRITICAL_TOL = 1e-13
BISECTION_TOL = 1e-13
RESIDUAL_TOL = 1e-12
DEFAULT_BRACKET = (1.401, 2.0)
FULL_BRACKET = (-0.25, 2.0)
NEWTON_STEPS = 2
WORKING_DPS = 40


class UnboundedOrbitError(ArithmeticError):
    """The critical orbit left the invariant interval."""


class BracketError(ValueError):
    """The target itinerary is not between the kneading sequences at the bracket ends."""


def kneading(a, length: int, tol: float = CRITICAL_TOL) -> str:
    """
    Symbols of f_a^i(0) for i = 1..length: '0' left of the critical point,
    '1' right, 'C' within `tol` of it. Works on floats or mpmath numbers.

    >>> kneading(2.0, 4)
    '1000'
    >>> kneading(1.0, 2)
    '1C'
    """
    if isinstance(a, mpmath.mpf) and mpmath.mp.dps < WORKING_DPS:
        with mpmath.workdps(WORKING_DPS):
            return kneading(a, length, tol)
    bound = max(2.0, float(a) + 1.0)
    x = 0 * a
    out = []
    for _ in range(length):
        x = a - x * x
        if abs(x) > bound:
            raise UnboundedOrbitError(f"critical orbit escapes for a={float(a)!r}")
        out.append("C" if abs(x) < tol else ("1" if x > 0 else "0"))
    return "".join(out)


def critical_iterate(a, p: int):
    """f_a^p(0) and its derivative in a."""
    x, dx = 0 * a, 0 * a
    for _ in range(p):
        x, dx = a - x * x, 1 - 2 * x * dx
    return x, dx


@dataclasses.dataclass(frozen=True)
class QuadParam:
    a: float
    period: int
    itinerary: str
    residual: float
    a_exact: mpmath.mpf = dataclasses.field(repr=False, compare=False, default=None)


def _check_admissible(word: str) -> None:
    # Periods 1 and 2 have no unimodal permutation with an interior fold.
    if len(word) <= 2:
        if word not in ("C", "1C"):
            raise InadmissibleError(f"{word!r} is not an admissible periodic itinerary")
        return
    from_itinerary(word)


def _bisect(word: str, lo: float, hi: float) -> float:
    p = len(word)

    def side(a: float) -> int:
        return compare_itineraries(kneading(a, p), word)

    s_lo, s_hi = side(lo), side(hi)
    if s_lo == 0:
        return lo
    if s_hi == 0:
        return hi
    if not (s_lo < 0 < s_hi):
        raise BracketError(f"{word} is not bracketed by [{lo}, {hi}]")
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        s = side(mid)
        if s == 0:
            return mid
        if s < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def superattracting_parameter(word: str, full_bracket: bool = False) -> QuadParam:
    """
    The parameter whose critical orbit has itinerary `word`.

    >>> round(superattracting_parameter("1001010C").a, 11)
    1.85173004941
    >>> superattracting_parameter("1C", full_bracket=True).a
    1.0
    """
    _check_admissible(word)
    p = len(word)
    lo, hi = FULL_BRACKET if full_bracket else DEFAULT_BRACKET
    a0 = _bisect(word, lo, hi)
    with mpmath.workdps(WORKING_DPS):
        a = mpmath.mpf(a0)
        for _ in range(NEWTON_STEPS):
            g, dg = critical_iterate(a, p)
            a -= g / dg
        residual = abs(critical_iterate(a, p)[0])
        if residual >= RESIDUAL_TOL:
            raise ArithmeticError(f"{word}: Newton residual {mpmath.nstr(residual, 3)}")
        if kneading(a, p) != word:
            raise InadmissibleError(f"{word}: Newton converged to a different itinerary")
        return QuadParam(float(a), p, word, float(residual), a_exact=+a)


def parameters_csv(rows: Iterable[tuple[str, QuadParam]]) -> str:
    """CSV with columns head, period, itinerary, a (11 decimals)."""
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["head", "period", "itinerary", "a"])
    for head, q in rows:
        out.writerow([head, q.period, q.itinerary, f"{q.a:.11f}"])
    return buf.getvalue()


def solve_many(words: Sequence[str], full_bracket: bool = False) -> list[QuadParam]:
    return [superattracting_parameter(w, full_bracket) for w in words]
