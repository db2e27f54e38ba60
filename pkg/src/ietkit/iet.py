"""The interval exchange transformation itself.

An exchange is specified by a permutation ``sigma`` and a positive length
vector ``a``.  The interval [0, sum(a)) is cut into half-open pieces
I_j = [x_{j-1}, x_j) at the partial sums x_j, and each piece is translated so
that the pieces stack in the order prescribed by sigma.  The translation of
I_j can be read off the exchange matrix (row sums against ``a``) or directly
as x'_{sigma(j)} - x_j from the two families of partial sums; construction
computes both and insists they agree.

All dynamics here is exact: lengths are ``fractions.Fraction`` values and
points are compared by rational equality, never by tolerance.  Long orbits
rescale every quantity to a common denominator once and then iterate in plain
integers, which is the same arithmetic without per-step gcd work.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    InvalidBound,
    NonPositiveLength,
    OutOfDomain,
)
from .perm import Permutation, omega

__all__ = [
    "Scalar",
    "ScalarLike",
    "as_scalar",
    "Iet",
    "Connection",
    "build_iet",
    "apply",
    "apply_inverse",
    "image_partition",
    "orbit_coding",
    "find_connections",
]

# Exact rational scalar used by every predicate; floats are rationalized at the
# boundary (binary floats convert exactly) and never compared by tolerance.
Scalar = Fraction
ScalarLike = Union[Fraction, int, str, float]

# Interval lookup scans linearly up to this many intervals, then bisects.
_LINEAR_SCAN_MAX = 16


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce to an exact rational; binary floats convert without rounding."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise OutOfDomain(f"non-finite scalar {value!r}")
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class Iet:
    """An interval exchange with its precomputed break points and translations.

    ``disc_top`` holds x_1..x_d (right endpoints of the source intervals),
    ``disc_bottom`` holds x'_1..x'_d (right endpoints of the image intervals),
    and ``translations[j-1]`` is added to points of I_j.
    """

    sigma: Permutation
    lengths: tuple[Fraction, ...]
    disc_top: tuple[Fraction, ...]
    disc_bottom: tuple[Fraction, ...]
    translations: tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return self.sigma.d

    @property
    def total(self) -> Fraction:
        return self.disc_top[-1]


@dataclass(frozen=True)
class Connection:
    """A finite orbit segment joining two interior break points: T^m(x_i) = x_j."""

    m: int
    i: int
    j: int


def _checked_lengths(sigma: Permutation, a: Sequence[ScalarLike]) -> tuple[Fraction, ...]:
    if len(a) != sigma.d:
        raise DimensionMismatch(f"{len(a)} lengths for {sigma.d} symbols")
    lengths = tuple(as_scalar(v) for v in a)
    for i, v in enumerate(lengths, start=1):
        if v <= 0:
            raise NonPositiveLength(f"a_{i} = {v} is not positive")
    return lengths


def _partial_sums(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    sums = []
    acc = Fraction(0)
    for v in values:
        acc += v
        sums.append(acc)
    return tuple(sums)


def build_iet(sigma: Permutation, a: Sequence[ScalarLike]) -> Iet:
    """Construct the exchange for (sigma, a), verifying both translation formulas.

    >>> from ietkit.perm import validate_permutation
    >>> t = build_iet(validate_permutation([2, 1]), [1, 2])
    >>> t.translations
    (Fraction(2, 1), Fraction(-1, 1))
    """
    lengths = _checked_lengths(sigma, a)
    d = sigma.d
    disc_top = _partial_sums(lengths)
    disc_bottom = _partial_sums([lengths[sigma.inverse[j] - 1] for j in range(d)])
    om = omega(sigma)
    translations = tuple(
        sum((lengths[i] * om.entries[i][j] for i in range(d)), Fraction(0)) for j in range(d)
    )
    for j in range(d):
        # x + (a Omega)_j and x - x_j + x'_{sigma(j)} must be the same map.
        assert translations[j] == disc_bottom[sigma(j + 1) - 1] - disc_top[j]
    return Iet(sigma, lengths, disc_top, disc_bottom, translations)


def _interval_index(disc: Sequence[Fraction], x: Fraction) -> int:
    """0-based index j with x in [x_j's left endpoint, disc[j])."""
    if len(disc) <= _LINEAR_SCAN_MAX:
        for j, right in enumerate(disc):
            if x < right:
                return j
        raise AssertionError("point past the final break despite domain check")
    return bisect_right(disc, x)


def _check_domain(t: Iet, x: Fraction) -> None:
    if not 0 <= x < t.total:
        raise OutOfDomain(f"{x} outside [0, {t.total})")


def apply(t: Iet, x: ScalarLike) -> Fraction:
    """Evaluate the exchange at x; points on a break belong to the right piece."""
    x = as_scalar(x)
    _check_domain(t, x)
    return x + t.translations[_interval_index(t.disc_top, x)]


def apply_inverse(t: Iet, y: ScalarLike) -> Fraction:
    """The unique x with apply(t, x) == y, found through the image partition."""
    y = as_scalar(y)
    _check_domain(t, y)
    k = _interval_index(t.disc_bottom, y)
    source = t.sigma.inverse[k]
    return y - t.translations[source - 1]


def image_partition(t: Iet) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """The image intervals in left-to-right order, tagged by source index.

    Returns ``[((left, right), j), ...]``: the image of I_j is [left, right).
    The pieces tile [0, total) exactly, which is the bijectivity witness.
    """
    out = []
    left = Fraction(0)
    for k in range(1, t.d + 1):
        right = t.disc_bottom[k - 1]
        out.append(((left, right), t.sigma.inverse[k - 1]))
        left = right
    return out


def _scaled_ints(t: Iet, x0: Fraction) -> tuple[int, int, list[int], list[int]]:
    """Everything over one denominator: (x0, total, breaks, translations) as ints."""
    denom = math.lcm(
        x0.denominator,
        *(v.denominator for v in t.disc_top),
        *(v.denominator for v in t.translations),
    )
    breaks = [int(v * denom) for v in t.disc_top]
    trans = [int(v * denom) for v in t.translations]
    return int(x0 * denom), breaks[-1], breaks, trans


def orbit_coding(t: Iet, x0: ScalarLike, n: int) -> list[int]:
    """Interval indices (1-based) visited by x0 over n steps, computed exactly.

    Entry k is the piece containing the k-th iterate, starting with x0 itself;
    n = 0 gives the empty coding.
    """
    if n < 0:
        raise InvalidBound(f"negative step count {n}")
    x0 = as_scalar(x0)
    _check_domain(t, x0)
    x, _, breaks, trans = _scaled_ints(t, x0)
    bisecting = len(breaks) > _LINEAR_SCAN_MAX
    codes = []
    for _ in range(n):
        if bisecting:
            j = bisect_right(breaks, x)
        else:
            j = 0
            while breaks[j] <= x:
                j += 1
        codes.append(j + 1)
        x += trans[j]
    return codes


def find_connections(t: Iet, max_m: int) -> list[Connection]:
    """All (m, i, j) with T^m(x_i) = x_j, for interior breaks and 1 <= m <= max_m.

    Only the interior break points x_1..x_{d-1} qualify at either end; the
    endpoints 0 and |I| are excluded.  Every hit up to the bound is returned,
    sorted by (m, i, j).
    """
    if max_m < 1:
        raise InvalidBound(f"max_m must be at least 1, got {max_m}")
    found = []
    d = t.d
    if d >= 2:
        _, _, breaks, trans = _scaled_ints(t, Fraction(0))
        bisecting = len(breaks) > _LINEAR_SCAN_MAX
        targets = {breaks[j]: j + 1 for j in range(d - 1)}
        for i in range(1, d):
            x = breaks[i - 1]
            for m in range(1, max_m + 1):
                if bisecting:
                    j = bisect_right(breaks, x)
                else:
                    j = 0
                    while breaks[j] <= x:
                        j += 1
                x += trans[j]
                hit = targets.get(x)
                if hit is not None:
                    found.append(Connection(m, i, hit))
    found.sort(key=lambda c: (c.m, c.i, c.j))
    return found
