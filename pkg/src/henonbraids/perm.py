"""
Combinatorics of cyclic unimodal permutations.

A unimodal permutation of {0, ..., p-1} increases on [0, m] and decreases on
[m, p-1]; m is the folding point. For a cyclic one we name orbit points by
their *orbit time*: time 0 is the folding point, time 1 is its image (always
the maximum p-1), and so on. Spatial positions are indices 0..p-1 on the line.

The cyclic notation of a permutation lists, left to right, the orbit time of
each position:

>>> u = parse_cyclic("2,3,0,4,1")
>>> u.images, u.folding
((1, 3, 4, 2, 0), 2)
>>> to_itinerary(u)
'1001C'

Everything here is exact and works on positions; orbit times are converted
with `UnimodalPermutation.position` / `UnimodalPermutation.time_at`. Points
that are not on the orbit (slots next to an orbit point, opposites of orbit
points) are *virtual positions*: rationals strictly between integer positions.
"""
from __future__ import annotations

import dataclasses
import enum
import functools
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class PermutationError(ValueError):
    """Base class for malformed or unsuitable permutations."""


class NotBijectiveError(PermutationError):
    pass


class NotUnimodalError(PermutationError):
    pass


class NotCyclicError(PermutationError):
    pass


class InadmissibleError(PermutationError):
    """No cyclic unimodal permutation realises the given itinerary."""


class PairPropertyError(PermutationError):
    """A pair of permutations violates one of the named pair properties."""

    def __init__(self, prop: str, message: str):
        super().__init__(f"[{prop}] {message}")
        self.prop = prop


# Offset of a slot from the orbit point it sits next to. Any value below 1/2
# keeps two slots in the same gap ordered by their anchors.
SLOT = Fraction(1, 4)


@dataclasses.dataclass(frozen=True)
class UnimodalPermutation:
    """
    A unimodal permutation in one-line form, ``images[i]`` being the image of
    position i. The folding point is derived and validated on construction.
    """
    images: tuple[int, ...]
    folding: int = dataclasses.field(init=False, compare=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        p = len(images)
        if sorted(images) != list(range(p)):
            raise NotBijectiveError(f"{images} is not a permutation of 0..{p - 1}")
        if p < 3:
            raise NotUnimodalError(f"period {p} admits no folding point 0 < m < p-1")
        m = images.index(p - 1)
        if not 0 < m < p - 1:
            raise NotUnimodalError(f"maximum of {images} is attained at an endpoint")
        if any(images[i] >= images[i + 1] for i in range(m)):
            raise NotUnimodalError(f"{images} is not increasing on [0, {m}]")
        if any(images[i] <= images[i + 1] for i in range(m, p - 1)):
            raise NotUnimodalError(f"{images} is not decreasing on [{m}, {p - 1}]")
        object.__setattr__(self, "folding", m)

    @classmethod
    def from_cyclic(cls, times: Sequence[int]) -> UnimodalPermutation:
        """Build from cyclic notation (orbit time of each position)."""
        p = len(times)
        if sorted(times) != list(range(p)):
            raise NotBijectiveError(f"{tuple(times)} is not a permutation of 0..{p - 1}")
        pos = [0] * p
        for k, t in enumerate(times):
            pos[t] = k
        return cls(tuple(pos[(times[k] + 1) % p] for k in range(p)))

    @property
    def period(self) -> int:
        return len(self.images)

    @functools.cached_property
    def is_cyclic(self) -> bool:
        p, k, steps = self.period, self.images[0], 1
        while k != 0:
            k, steps = self.images[k], steps + 1
        return steps == p

    @functools.cached_property
    def cyclic(self) -> tuple[int, ...]:
        """Cyclic notation; raises NotCyclicError for non-cyclic permutations."""
        if not self.is_cyclic:
            raise NotCyclicError(f"{self.images} is not a single cycle")
        times = [0] * self.period
        k = self.folding
        for t in range(self.period):
            times[k] = t
            k = self.images[k]
        return tuple(times)

    @functools.cached_property
    def _positions(self) -> tuple[int, ...]:
        pos = [0] * self.period
        for k, t in enumerate(self.cyclic):
            pos[t] = k
        return tuple(pos)

    def position(self, time: int) -> int:
        """Spatial position of the orbit point with the given orbit time."""
        return self._positions[time % self.period]

    def time_at(self, position: int) -> int:
        return self.cyclic[position]

    def side(self, time: int) -> int:
        """-1, 0 or +1 as the orbit point lies left of, at, or right of the folding point."""
        k = self.position(time)
        return (k > self.folding) - (k < self.folding)

    def __str__(self) -> str:
        return format_cyclic(self) if self.is_cyclic else str(self.images)


class IntervalKind(enum.Enum):
    DYNAMICAL = "DynamicalPreimage"
    NON_DYNAMICAL = "NonDynamicalPreimage"
    STRADDLE = "Straddle"


@dataclasses.dataclass(frozen=True)
class OrbitInterval:
    """A closed interval between two orbit points, named by orbit time."""
    left: int
    right: int
    kind: IntervalKind

    def __str__(self):
        return f"[{self.left},{self.right}]"


# ---------------------------------------------------------------------------
# Parsing and itineraries


def parse_cyclic(text: str) -> UnimodalPermutation:
    """
    Parse comma-separated cyclic notation. Bijectivity, unimodality and
    cyclicity failures raise distinct exceptions.
    """
    try:
        times = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise NotBijectiveError(f"cannot parse {text!r}") from exc
    perm = UnimodalPermutation.from_cyclic(times)
    if not perm.is_cyclic:
        raise NotCyclicError(f"{text!r} does not describe a single cycle")
    if times[perm.folding] != 0:
        raise NotUnimodalError(f"{text!r}: time 0 must sit at the folding point")
    return perm


def format_cyclic(perm: UnimodalPermutation) -> str:
    return ",".join(map(str, perm.cyclic))


def to_itinerary(perm: UnimodalPermutation) -> str:
    """Sides of the critical orbit: symbol i is 0/1 for time i left/right of m; last is C."""
    m = perm.folding
    body = "".join("0" if perm.position(i) < m else "1" for i in range(1, perm.period))
    return body + "C"


_SYMBOL_RANK = {"0": 0, "C": 1, "1": 2}


def compare_itineraries(u: Iterable[str], v: Iterable[str]) -> int:
    """
    Compare two itineraries in the unimodal (parity-lexicographic) order:
    0 < C < 1, with the comparison reversed after an odd number of common 1s.
    Returns -1, 0 or 1. Comparison stops at the first difference or at the
    first common C.
    """
    ones = 0
    for a, b in zip(u, v):
        if a != b:
            sign = 1 if _SYMBOL_RANK[a] > _SYMBOL_RANK[b] else -1
            return -sign if ones % 2 else sign
        if a == "C":
            return 0
        ones += a == "1"
    return 0


def _check_word(word: str) -> None:
    if not word or set(word) - set("01C") or word.count("C") != 1 or not word.endswith("C"):
        raise InadmissibleError(f"{word!r} is not a periodic itinerary ending in a single C")


def from_itinerary(word: str) -> UnimodalPermutation:
    """
    The cyclic unimodal permutation whose critical itinerary is `word`.

    Orbit points are ordered by comparing their itineraries (shifts of the
    periodic word); the result is checked by recomputing its itinerary.
    """
    _check_word(word)
    p = len(word)

    def itinerary_of(time: int) -> str:
        # Two full periods are enough: distinct shifts differ before both hit C.
        return (word[time - 1:] + word)[: 2 * p] if time else ("C" + word)[: 2 * p]

    def cmp(i: int, j: int) -> int:
        return compare_itineraries(itinerary_of(i), itinerary_of(j))

    order = sorted(range(p), key=functools.cmp_to_key(cmp))
    try:
        perm = UnimodalPermutation.from_cyclic(order)
    except PermutationError as exc:
        raise InadmissibleError(f"{word!r}: {exc}") from exc
    if not perm.is_cyclic or to_itinerary(perm) != word:
        raise InadmissibleError(f"{word!r} is not realised by a cyclic unimodal permutation")
    return perm


# ---------------------------------------------------------------------------
# Passages along the orbit


def first_passage(perm: UnimodalPermutation, i: int, j: int) -> int:
    """Smallest k > 0 with perm^k(i) = j, for orbit times i, j (so p when i = j)."""
    p = perm.period
    return (j - i) % p or p


def rho(perm: UnimodalPermutation, i: int, j: int) -> int:
    """
    Number of iterates i, i+1, ... strictly before reaching j that lie right
    of the folding point. Undefined (ValueError) if the passage meets it.
    """
    kappa = first_passage(perm, i, j)
    count = 0
    for step in range(kappa):
        side = perm.side(i + step)
        if side == 0:
            raise ValueError(f"passage from {i} to {j} meets the folding point")
        count += side > 0
    return count


def closest_return_times(perm: UnimodalPermutation) -> list[tuple[int, str]]:
    """
    Closest return times to the folding point, tagged ``"left"``/``"right"``
    (the orbit point is adjacent to m on that side) or ``"image"`` (no orbit
    point lies strictly between the image of the returning point and the
    maximum). Time 0 and the full period are never reported.
    """
    m, p = perm.folding, perm.period
    found = [(perm.time_at(m - 1), "left"), (perm.time_at(m + 1), "right")]
    # Second-largest position holds the image of an "image" closest return.
    q = perm.time_at(p - 2) - 1
    if 0 < q < p:
        found.append((q, "image"))
    return sorted(found)


# ---------------------------------------------------------------------------
# Intervals mapping over the folding point


def image_hull(perm: UnimodalPermutation, lo: int, hi: int) -> tuple[int, int]:
    """Image of the real interval [lo, hi] under the piecewise-linear extension."""
    a, b = perm.images[lo], perm.images[hi]
    bottom, top = min(a, b), max(a, b)
    if lo < perm.folding < hi:
        top = perm.period - 1
    return bottom, top


def maps_strictly_over(perm: UnimodalPermutation, lo: int, hi: int, k: int) -> bool:
    bottom, top = image_hull(perm, lo, hi)
    return bottom < k < top


@functools.lru_cache(maxsize=4096)
def _minimal_intervals(perm: UnimodalPermutation, k: int) -> tuple[tuple[int, int], ...]:
    p = perm.period
    hits = [(lo, hi) for lo in range(p) for hi in range(lo + 1, p) if maps_strictly_over(perm, lo, hi, k)]
    # Any superset of a hit is a hit, so inclusion-minimal means both one-step shrinks fail.
    hitset = set(hits)
    return tuple(
        (lo, hi) for lo, hi in hits
        if (lo + 1, hi) not in hitset and (lo, hi - 1) not in hitset
    )


def preimage_intervals(perm: UnimodalPermutation) -> tuple[OrbitInterval, OrbitInterval | None]:
    """
    The interval D containing the dynamical preimage of the folding point,
    and the interval E containing its non-dynamical preimage (None when no
    such interval exists).
    """
    m = perm.folding
    d = perm.position(perm.period - 1)
    minimal = _minimal_intervals(perm, m)
    with_d = sorted((hi - lo, lo, hi) for lo, hi in minimal if lo <= d <= hi)
    without_d = sorted((hi - lo, lo, hi) for lo, hi in minimal if not lo <= d <= hi)
    if not with_d:
        raise PermutationError(f"{perm}: no interval about time {perm.period - 1} maps over the folding point")
    _, lo, hi = with_d[0]
    dyn = OrbitInterval(perm.time_at(lo), perm.time_at(hi), IntervalKind.DYNAMICAL)
    if not without_d:
        return dyn, None
    _, lo, hi = without_d[0]
    return dyn, OrbitInterval(perm.time_at(lo), perm.time_at(hi), IntervalKind.NON_DYNAMICAL)


@dataclasses.dataclass(frozen=True)
class Reconnection:
    """Outcome of the reconnectability test at the non-dynamical preimage."""
    reconnectable: bool
    interval: OrbitInterval | None
    rho_left: int | None = None
    rho_right: int | None = None
    endpoints: tuple[int, ...] = ()

    @property
    def endpoint(self) -> int | None:
        """Preferred endpoint: the left one when both satisfy the parity rule."""
        return self.endpoints[0] if self.endpoints else None

    def __bool__(self):
        return self.reconnectable


def is_reconnectable_nondyn(perm: UnimodalPermutation) -> Reconnection:
    try:
        _, E = preimage_intervals(perm)
    except PermutationError:
        return Reconnection(False, None)
    if E is None:
        return Reconnection(False, None)
    # An endpoint at time 1 means an empty passage: nothing to count.
    r_left, r_right = (rho(perm, 1, e) if e != 1 else 0 for e in (E.left, E.right))
    endpoints = tuple(
        t for t, ok in ((E.left, r_left % 2 == 1), (E.right, r_right % 2 == 0)) if ok
    )
    return Reconnection(bool(endpoints), E, r_left, r_right, endpoints)


def left_of_folding(perm: UnimodalPermutation, interval: OrbitInterval) -> bool:
    """Whether the interval lies in [0, m]."""
    return max(perm.position(interval.left), perm.position(interval.right)) <= perm.folding


def opposite(perm: UnimodalPermutation, time: int) -> Fraction:
    """
    Virtual position of the opposite of an orbit point: the other preimage,
    under the piecewise-linear extension, of its image. Returned as a
    half-integer gap index; -1/2 and p-1/2 stand for beyond the ends.
    """
    if time % perm.period == 0:
        raise ValueError("the folding point has no opposite")
    m, p, images = perm.folding, perm.period, perm.images
    target = images[perm.position(time)]
    if perm.position(time) > m:
        # Left branch increases: count left positions mapping below the target.
        below = sum(1 for k in range(m + 1) if images[k] < target)
        return Fraction(2 * below - 1, 2)
    # Right branch decreases: count right positions mapping above the target.
    above = sum(1 for k in range(m, p) if images[k] > target)
    return Fraction(2 * (m + above) - 1, 2)


# ---------------------------------------------------------------------------
# Slots and insertion


def slot(perm: UnimodalPermutation, time: int, side: int) -> Fraction:
    """Virtual position immediately left (side -1) or right (+1) of an orbit point."""
    return perm.position(time) + side * SLOT


def insert_points(perm: UnimodalPermutation, new: Sequence[tuple[int, Fraction]]) -> tuple[int, ...]:
    """
    Cyclic notation after adding new orbit times at virtual positions.
    The caller is responsible for the new times completing a single cycle.
    """
    keyed = [(Fraction(k), t) for k, t in enumerate(perm.cyclic)] + [(k, t) for t, k in new]
    keys = [k for k, _ in keyed]
    if len(set(keys)) != len(keys):
        raise ValueError("two points inserted at the same virtual position")
    return tuple(t for _, t in sorted(keyed))


def delete_times(perm: UnimodalPermutation, times: Iterable[int]) -> tuple[int, ...]:
    """Cyclic notation with the given orbit times removed (not renumbered)."""
    drop = set(times)
    return tuple(t for t in perm.cyclic if t not in drop)


def collapse(perm: UnimodalPermutation, period: int) -> tuple[int, ...]:
    """Drop every orbit time >= period; used to check that a construction extends its input."""
    return delete_times(perm, range(period, perm.period))


def _renumber(times: Sequence[int]) -> tuple[int, ...]:
    rank = {t: r for r, t in enumerate(sorted(times))}
    return tuple(rank[t] for t in times)


# ---------------------------------------------------------------------------
# Pairs differing at a single orbit time


def distinguishing_time(minus: UnimodalPermutation, plus: UnimodalPermutation) -> int:
    """
    The unique orbit time whose deletion makes the two cyclic notations
    coincide, with that time on different sides of the folding point.
    """
    if minus.period != plus.period:
        raise PairPropertyError("distinguishing", "periods differ")
    found = [
        t for t in range(1, minus.period)
        if minus.side(t) != plus.side(t)
        and _renumber(delete_times(minus, [t])) == _renumber(delete_times(plus, [t]))
    ]
    if len(found) != 1:
        raise PairPropertyError("distinguishing", f"expected one distinguishing time, found {found}")
    return found[0]


@dataclasses.dataclass(frozen=True)
class PairReport:
    distinguishing_time: int
    q: int
    C: OrbitInterval
    D: OrbitInterval
    D_minus: OrbitInterval
    D_plus: OrbitInterval
    E_minus: OrbitInterval | None
    E_plus: OrbitInterval | None
    transit_time: int
    transit_side: str
    d_left_of_folding: bool


def transit(perm: UnimodalPermutation, p: int) -> tuple[int, str, list[tuple[int, Fraction]]]:
    """
    Follow a companion slot from immediately left of time p+1 along the orbit
    until it lands strictly inside D. Returns the transit time t (the slot
    arrives next to time p+t+1), its handedness, and the visited slots as
    (orbit time, virtual position).
    """
    N = perm.period
    D, _ = preimage_intervals(perm)
    lo, hi = perm.position(D.left), perm.position(D.right)
    parity, visited = 0, []
    for i in range(1, N - p):
        here = slot(perm, p + i, 1 if parity else -1)
        visited.append((p + i, here))
        if lo < here < hi:
            return i - 1, "right" if parity else "left", visited
        parity ^= perm.side(p + i) > 0
    raise PairPropertyError("transit", f"companion of {p + 1} never enters D before closing the orbit")


def _gap_rank(perm: UnimodalPermutation, where: Fraction, skip: int) -> int:
    """Number of orbit points, other than time `skip`, strictly left of a virtual position."""
    return sum(1 for k, t in enumerate(perm.cyclic) if t != skip and k < where)


def pair_properties(minus: UnimodalPermutation, plus: UnimodalPermutation) -> PairReport:
    """Check the pair properties and collect the intervals used to extend the pair."""
    if not (minus.is_cyclic and plus.is_cyclic):
        raise PairPropertyError("cyclic", "both permutations must be cyclic")
    if minus == plus:
        raise PairPropertyError("distinguishing", "identical permutations")
    p = distinguishing_time(minus, plus)
    N = minus.period
    if not (minus.side(p) < 0 < plus.side(p)):
        raise PairPropertyError("1", f"time {p} must lie left of 0 in minus and right of 0 in plus")

    # C: the point p in one member and its opposite in the other must occupy
    # the same slot relative to all remaining points.
    if _gap_rank(minus, opposite(minus, p), p) != _gap_rank(plus, plus.position(p), p) or \
            _gap_rank(plus, opposite(plus, p), p) != _gap_rank(minus, minus.position(p), p):
        raise PairPropertyError("straddle", "opposite of p in one member does not match p in the other")

    (D_m, E_m), (D_p, E_p) = preimage_intervals(minus), preimage_intervals(plus)
    if (D_m.left, D_m.right) != (D_p.left, D_p.right):
        raise PairPropertyError("3", f"D differs between members: {D_m} vs {D_p}")
    if p in (D_m.left, D_m.right):
        raise PairPropertyError("3", f"time {p} is an endpoint of D = {D_m}")

    d = N - 1
    for perm in (minus, plus):
        if perm.side(d) * perm.side(p - 1) != -1:
            raise PairPropertyError("4", f"times {d} and {p - 1} lie on the same side of 0")

    t_m, side_m, visited = transit(minus, p)
    t_p, side_p, _ = transit(plus, p)
    if (t_m, side_m) != (t_p, side_p):
        raise PairPropertyError("transit", "members disagree on the transit time")
    for perm in (minus, plus):
        ends = sorted([Fraction(perm.position(p)), opposite(perm, p)])
        for time, _ in visited:
            if ends[0] <= perm.position(time) <= ends[1]:
                raise PairPropertyError("5", f"transit passes through C at time {time}")

    return PairReport(
        distinguishing_time=p,
        q=N - p,
        C=OrbitInterval(p, p, IntervalKind.STRADDLE),
        D=D_m,
        D_minus=OrbitInterval(D_m.left, d, IntervalKind.DYNAMICAL),
        D_plus=OrbitInterval(d, D_m.right, IntervalKind.DYNAMICAL),
        E_minus=E_m,
        E_plus=E_p,
        transit_time=t_m,
        transit_side=side_m,
        d_left_of_folding=minus.side(d) < 0,
    )


def unimodal_permutations(p: int, cyclic_only: bool = True) -> Iterator[UnimodalPermutation]:
    """
    Enumerate unimodal permutations of period p by choosing which values
    below p-1 are taken on the increasing branch.
    """
    values = range(p - 1)
    for mask in range(1, 1 << (p - 1)):
        left = [v for v in values if mask >> v & 1]
        right = [v for v in values if not mask >> v & 1]
        if not right:
            continue
        if cyclic_only and left[0] == 0:
            continue  # 0 would be fixed
        perm = UnimodalPermutation((*left, p - 1, *reversed(right)))
        if not cyclic_only or perm.is_cyclic:
            yield perm
