"""Suspension polygons over an interval exchange, tested exactly for simplicity.

Each symbol i carries a plane vector ``zeta_i = (a_i, b_i)`` with slope
``kappa_i = b_i / a_i``.  Concatenating the zeta in identity order gives the
top chain; concatenating them in exchanged (sigma-inverse) order gives the
bottom chain.  Both run from the origin to the common endpoint sum(zeta), and
their union is a closed curve.  When that curve is simple it bounds a polygon
whose vertical flow suspends the exchange, and the per-interval return time of
that flow is the profile L = Omega b^T.

Everything here is decided in exact rational arithmetic.  The all-pairs
intersection test first rescales every vertex to a common denominator and runs
the orientation tests in plain integers; a witness, if any, is re-derived on
the original coordinates.  No epsilon appears anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from .errors import DegenerateSegment, DimensionMismatch
from .iet import ScalarLike, _checked_lengths, _partial_sums, as_scalar
from .perm import Permutation, omega

__all__ = [
    "Point",
    "SegmentClass",
    "SegmentRelation",
    "SuspensionDiagram",
    "IntersectionReport",
    "Witness",
    "PositivityClass",
    "build_suspension",
    "return_time_profile",
    "segment_relation",
    "self_intersects",
    "pointwise_positive",
]

Point = tuple[Fraction, Fraction]
_Coord = Union[Fraction, int]
_RawPoint = tuple[_Coord, _Coord]


class SegmentClass(Enum):
    DISJOINT = "Disjoint"
    PROPER_CROSSING = "ProperCrossing"
    ENDPOINT_TOUCH = "EndpointTouch"
    COLLINEAR_OVERLAP = "CollinearOverlap"


@dataclass(frozen=True)
class SegmentRelation:
    """Exact relation of two closed segments.

    ``locus`` is the single contact point for crossings and touches, the pair
    of overlap endpoints for collinear overlaps, and None when disjoint.
    """

    classification: SegmentClass
    locus: _RawPoint | tuple[_RawPoint, _RawPoint] | None


@dataclass(frozen=True)
class Witness:
    """A forbidden contact between two chain segments (indices are 1-based)."""

    chain_a: str
    index_a: int
    chain_b: str
    index_b: int
    relation: SegmentRelation


@dataclass(frozen=True)
class IntersectionReport:
    simple: bool
    witness: Witness | None

    def __post_init__(self) -> None:
        assert self.simple == (self.witness is None)


class PositivityClass(Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"
    MIXED = "Mixed"
    HAS_ZERO = "HasZero"


@dataclass(frozen=True)
class SuspensionDiagram:
    """An exchange together with heights: vectors, slopes, chains, return profile.

    ``top_chain`` lists the d+1 vertices reached by the identity-order
    concatenation, ``bottom_chain`` those of the exchanged-order one; the two
    share their first and last vertices.  ``first_slope_vs_bottom_first`` and
    ``first_slope_vs_bottom_last`` store the signs of kappa_1 minus the slope
    of, respectively, the first and the last bottom-chain segment.  Both
    comparisons are kept because either one may be used to decide which chain
    deserves to be called upper; this module takes no side.
    """

    sigma: Permutation
    lengths: tuple[Fraction, ...]
    heights: tuple[Fraction, ...]
    zeta: tuple[Point, ...]
    slopes: tuple[Fraction, ...]
    top_chain: tuple[Point, ...]
    bottom_chain: tuple[Point, ...]
    return_profile: tuple[Fraction, ...]
    first_slope_vs_bottom_first: int
    first_slope_vs_bottom_last: int

    @property
    def d(self) -> int:
        return self.sigma.d


def _checked_heights(sigma: Permutation, b: Sequence[ScalarLike]) -> tuple[Fraction, ...]:
    if len(b) != sigma.d:
        raise DimensionMismatch(f"{len(b)} heights for {sigma.d} symbols")
    return tuple(as_scalar(v) for v in b)


def return_time_profile(sigma: Permutation, b: Sequence[ScalarLike]) -> tuple[Fraction, ...]:
    """The vector Omega b^T of per-interval return times.

    Computed both from the matrix and as y_i - y'_{sigma(i)} with y, y' the
    partial sums of b in identity and exchanged order; the two must agree.

    >>> from ietkit.perm import validate_permutation
    >>> return_time_profile(validate_permutation([3, 2, 1]), [1, 0, -1])
    (Fraction(1, 1), Fraction(2, 1), Fraction(1, 1))
    """
    heights = _checked_heights(sigma, b)
    d = sigma.d
    om = omega(sigma)
    by_matrix = tuple(
        sum((om.entries[i][j] * heights[j] for j in range(d)), Fraction(0)) for i in range(d)
    )
    y = _partial_sums(heights)
    y_ex = _partial_sums([heights[sigma.inverse[j] - 1] for j in range(d)])
    by_sums = tuple(y[i] - y_ex[sigma(i + 1) - 1] for i in range(d))
    assert by_matrix == by_sums
    return by_matrix


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def build_suspension(
    sigma: Permutation, a: Sequence[ScalarLike], b: Sequence[ScalarLike]
) -> SuspensionDiagram:
    """Assemble the full diagram for (sigma, a, b)."""
    lengths = _checked_lengths(sigma, a)
    heights = _checked_heights(sigma, b)
    d = sigma.d
    zeta = tuple((lengths[i], heights[i]) for i in range(d))
    slopes = tuple(heights[i] / lengths[i] for i in range(d))

    def chain(order: Sequence[int]) -> tuple[Point, ...]:
        pts = [(Fraction(0), Fraction(0))]
        for s in order:
            x, y = pts[-1]
            pts.append((x + zeta[s - 1][0], y + zeta[s - 1][1]))
        return tuple(pts)

    top = chain(range(1, d + 1))
    bottom = chain(sigma.inverse)
    assert top[-1] == bottom[-1]
    return SuspensionDiagram(
        sigma=sigma,
        lengths=lengths,
        heights=heights,
        zeta=zeta,
        slopes=slopes,
        top_chain=top,
        bottom_chain=bottom,
        return_profile=return_time_profile(sigma, heights),
        first_slope_vs_bottom_first=_sign(slopes[0] - slopes[sigma.inverse[0] - 1]),
        first_slope_vs_bottom_last=_sign(slopes[0] - slopes[sigma.inverse[d - 1] - 1]),
    )


def _orient(o: _RawPoint, p: _RawPoint, q: _RawPoint) -> _Coord:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _in_box(s0: _RawPoint, s1: _RawPoint, pt: _RawPoint) -> bool:
    return (
        min(s0[0], s1[0]) <= pt[0] <= max(s0[0], s1[0])
        and min(s0[1], s1[1]) <= pt[1] <= max(s0[1], s1[1])
    )


def segment_relation(
    p0: _RawPoint, p1: _RawPoint, q0: _RawPoint, q1: _RawPoint
) -> SegmentRelation:
    """Classify two closed segments exactly via orientation tests.

    Coordinates may be rationals or integers; the verdict is tolerance-free
    either way.  Crossing points come back as exact rationals.

    >>> segment_relation((0, 0), (1, 1), (0, 1), (1, 0)).classification
    <SegmentClass.PROPER_CROSSING: 'ProperCrossing'>
    >>> segment_relation((0, 0), (2, 0), (1, 0), (3, 0)).locus
    ((1, 0), (2, 0))
    """
    if p0 == p1 or q0 == q1:
        raise DegenerateSegment("segment endpoints coincide")
    o1 = _orient(p0, p1, q0)
    o2 = _orient(p0, p1, q1)
    o3 = _orient(q0, q1, p0)
    o4 = _orient(q0, q1, p1)

    if o1 == 0 and o2 == 0:
        # All four points on one line; compare along the dominant axis of p.
        axis = 0 if abs(p1[0] - p0[0]) >= abs(p1[1] - p0[1]) else 1
        lo = max(min(p0[axis], p1[axis]), min(q0[axis], q1[axis]))
        hi = min(max(p0[axis], p1[axis]), max(q0[axis], q1[axis]))
        if lo > hi:
            return SegmentRelation(SegmentClass.DISJOINT, None)
        corners = (p0, p1, q0, q1)
        at_lo = next(pt for pt in corners if pt[axis] == lo)
        if lo == hi:
            return SegmentRelation(SegmentClass.ENDPOINT_TOUCH, at_lo)
        at_hi = next(pt for pt in corners if pt[axis] == hi)
        return SegmentRelation(SegmentClass.COLLINEAR_OVERLAP, (at_lo, at_hi))

    if o1 and o2 and o3 and o4 and (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0):
        dpx, dpy = p1[0] - p0[0], p1[1] - p0[1]
        dqx, dqy = q1[0] - q0[0], q1[1] - q0[1]
        t = Fraction((q0[0] - p0[0]) * dqy - (q0[1] - p0[1]) * dqx, dpx * dqy - dpy * dqx)
        locus = (p0[0] + t * dpx, p0[1] + t * dpy)
        return SegmentRelation(SegmentClass.PROPER_CROSSING, locus)

    for oz, pt, s0, s1 in ((o1, q0, p0, p1), (o2, q1, p0, p1), (o3, p0, q0, q1), (o4, p1, q0, q1)):
        if oz == 0 and _in_box(s0, s1, pt):
            return SegmentRelation(SegmentClass.ENDPOINT_TOUCH, pt)
    return SegmentRelation(SegmentClass.DISJOINT, None)


def _scaled_chains(diagram: SuspensionDiagram) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    denom = math.lcm(
        *(c.denominator for pt in diagram.top_chain for c in pt),
        *(c.denominator for pt in diagram.bottom_chain for c in pt),
    )
    scale = lambda pts: [(int(x * denom), int(y * denom)) for x, y in pts]  # noqa: E731
    return scale(diagram.top_chain), scale(diagram.bottom_chain)


def self_intersects(diagram: SuspensionDiagram) -> IntersectionReport:
    """Decide whether the union of the two chains is a simple closed curve.

    Permitted contacts, and nothing else: the shared start point between the
    two first segments, the shared end point between the two last segments,
    and the shared vertex between consecutive segments of one chain.  Any
    other touch, any proper crossing, and any collinear overlap defeats
    simplicity; the first offending pair (in top-then-bottom, left-to-right
    order) is reported with its exact locus.
    """
    d = diagram.d
    top, bottom = _scaled_chains(diagram)
    # Segments as (chain name, 1-based index, vertex list) with scaled coords.
    segs = [("top", i, top) for i in range(1, d + 1)] + [
        ("bottom", i, bottom) for i in range(1, d + 1)
    ]
    start = top[0]
    end = top[d]

    def allowed(rel: SegmentRelation, ca: str, ia: int, cb: str, ib: int) -> bool:
        if rel.classification is SegmentClass.DISJOINT:
            return True
        if rel.classification is not SegmentClass.ENDPOINT_TOUCH:
            return False
        if ca == cb and abs(ia - ib) == 1:
            shared = (top if ca == "top" else bottom)[max(ia, ib) - 1]
            return rel.locus == shared
        if ca != cb and ia == 1 and ib == 1:
            return rel.locus == start
        if ca != cb and ia == d and ib == d:
            return rel.locus == end
        return False

    for u in range(len(segs)):
        ca, ia, pts_a = segs[u]
        for v in range(u + 1, len(segs)):
            cb, ib, pts_b = segs[v]
            rel = segment_relation(pts_a[ia - 1], pts_a[ia], pts_b[ib - 1], pts_b[ib])
            if allowed(rel, ca, ia, cb, ib):
                continue
            # Re-derive the witness on the original (unscaled) coordinates.
            exact = segment_relation(
                diagram.top_chain[ia - 1] if ca == "top" else diagram.bottom_chain[ia - 1],
                diagram.top_chain[ia] if ca == "top" else diagram.bottom_chain[ia],
                diagram.top_chain[ib - 1] if cb == "top" else diagram.bottom_chain[ib - 1],
                diagram.top_chain[ib] if cb == "top" else diagram.bottom_chain[ib],
            )
            return IntersectionReport(False, Witness(ca, ia, cb, ib, exact))
    return IntersectionReport(True, None)


def pointwise_positive(diagram: SuspensionDiagram) -> PositivityClass:
    """Sign classification of the return profile; a zero anywhere wins."""
    profile = diagram.return_profile
    if any(v == 0 for v in profile):
        return PositivityClass.HAS_ZERO
    if all(v > 0 for v in profile):
        return PositivityClass.ALL_POSITIVE
    if all(v < 0 for v in profile):
        return PositivityClass.ALL_NEGATIVE
    return PositivityClass.MIXED
