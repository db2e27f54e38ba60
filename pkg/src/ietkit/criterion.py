"""The convexity criterion: monotone slopes certify a positive pair.

When the slopes kappa_i = b_i / a_i are strictly decreasing, the top chain is
convex and the closed suspension curve is simple for every irreducible
permutation; the mirrored statement holds for strictly increasing slopes with
the roles of the two chains exchanged.  This module turns that lemma into a
checked verdict: it classifies the slope sequence, runs the exact intersection
test, and refuses to certify anything for ties or non-monotone data.  A
monotone instance whose curve fails the intersection test would falsify the
lemma itself, so it raises ``LemmaViolation`` instead of returning.

The power-curve family a_i(s) = s^i with derivative b_i(s) = i s^(i-1) has
slopes exactly i/s, strictly increasing for every s > 0, which makes the whole
family certifiable at once; ``scan_curve`` sweeps any polynomial curve family
the same way, evaluating the derivative symbolically and rationalizing every
grid point before deciding.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidBound,
    InvalidSize,
    LemmaViolation,
    NonPositiveLength,
    NonPositiveParameter,
    ReduciblePermutation,
)
from .iet import ScalarLike, as_scalar
from .perm import Permutation, is_irreducible
from .suspension import (
    PositivityClass,
    SuspensionDiagram,
    Witness,
    build_suspension,
    pointwise_positive,
    self_intersects,
)

__all__ = [
    "MonotonicityClass",
    "Verdict",
    "CriterionReport",
    "CurveSpec",
    "ScanSummary",
    "slope_monotonicity",
    "convexity_criterion",
    "mahler_curve",
    "curve_spec",
    "curve_point",
    "mahler_spec",
    "scan_curve",
]


class MonotonicityClass(Enum):
    STRICTLY_DECREASING = "StrictlyDecreasing"
    STRICTLY_INCREASING = "StrictlyIncreasing"
    NON_MONOTONE = "NonMonotone"
    HAS_TIES = "HasTies"


class Verdict(Enum):
    POSITIVE_PAIR_BY_LEMMA = "PositivePairByLemma"
    POSITIVE_PAIR_BY_MIRRORED_LEMMA = "PositivePairByMirroredLemma"
    INCONCLUSIVE_NON_MONOTONE = "InconclusiveNonMonotone"
    DEGENERATE_TIES = "DegenerateTies"


_POSITIVE_VERDICTS = frozenset(
    {Verdict.POSITIVE_PAIR_BY_LEMMA, Verdict.POSITIVE_PAIR_BY_MIRRORED_LEMMA}
)


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the criterion with its supporting evidence.

    ``chains_exchanged`` records that the increasing-slope path was taken, in
    which case the exchanged-order chain plays the upper role.  A positive
    verdict certifies simplicity only; whether the pair is connection-free is
    a separate, measure-one hypothesis, so ``connection_check_advised`` asks
    the caller to probe rational samples with ``find_connections``.
    """

    monotonicity: MonotonicityClass
    simple: bool
    positivity: PositivityClass
    verdict: Verdict
    witness: Witness | None
    chains_exchanged: bool
    connection_check_advised: bool

    def __post_init__(self) -> None:
        if self.verdict is Verdict.POSITIVE_PAIR_BY_LEMMA:
            assert self.monotonicity is MonotonicityClass.STRICTLY_DECREASING and self.simple
        if self.verdict is Verdict.POSITIVE_PAIR_BY_MIRRORED_LEMMA:
            assert self.monotonicity is MonotonicityClass.STRICTLY_INCREASING and self.simple


def _classify_slopes(slopes: Sequence[Fraction]) -> MonotonicityClass:
    pairs = list(zip(slopes, slopes[1:]))
    if any(x == y for x, y in pairs):
        return MonotonicityClass.HAS_TIES
    if all(x > y for x, y in pairs):
        return MonotonicityClass.STRICTLY_DECREASING
    if all(x < y for x, y in pairs):
        return MonotonicityClass.STRICTLY_INCREASING
    return MonotonicityClass.NON_MONOTONE


def slope_monotonicity(a: Sequence[ScalarLike], b: Sequence[ScalarLike]) -> MonotonicityClass:
    """Exact classification of the slope sequence b_i / a_i.

    A single slope counts as strictly decreasing (the vacuous case).

    >>> slope_monotonicity([1, 1, 1], [1, 0, -1])
    <MonotonicityClass.STRICTLY_DECREASING: 'StrictlyDecreasing'>
    """
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} lengths vs {len(b)} heights")
    if not a:
        raise NonPositiveLength("empty length vector")
    lengths = [as_scalar(v) for v in a]
    for i, v in enumerate(lengths, start=1):
        if v <= 0:
            raise NonPositiveLength(f"a_{i} = {v} is not positive")
    heights = [as_scalar(v) for v in b]
    return _classify_slopes([h / l for h, l in zip(heights, lengths)])


def convexity_criterion(
    sigma: Permutation, a: Sequence[ScalarLike], b: Sequence[ScalarLike]
) -> CriterionReport:
    """Run the full pipeline: slopes, exact intersection test, sign of the profile.

    Strictly decreasing slopes yield ``PositivePairByLemma``; strictly
    increasing ones yield ``PositivePairByMirroredLemma`` with the chain roles
    exchanged (the union of the chains, hence the intersection test, is the
    same either way; the exchange concerns which chain is regarded as upper).
    Ties are never certified, and non-monotone data gets an inconclusive
    verdict because the criterion is sufficient only.
    """
    if not is_irreducible(sigma):
        raise ReduciblePermutation(f"{sigma} splits at an invariant prefix")
    if sigma.d < 2:
        raise InvalidSize("the criterion needs at least two symbols")
    diagram = build_suspension(sigma, a, b)
    monotonicity = _classify_slopes(diagram.slopes)
    report = self_intersects(diagram)
    positivity = pointwise_positive(diagram)

    if monotonicity is MonotonicityClass.STRICTLY_DECREASING:
        if not report.simple:
            raise LemmaViolation(
                f"decreasing slopes but self-intersecting curve: {sigma}, "
                f"a={diagram.lengths}, b={diagram.heights}, witness={report.witness}"
            )
        verdict = Verdict.POSITIVE_PAIR_BY_LEMMA
    elif monotonicity is MonotonicityClass.STRICTLY_INCREASING:
        if not report.simple:
            raise LemmaViolation(
                f"increasing slopes but self-intersecting curve: {sigma}, "
                f"a={diagram.lengths}, b={diagram.heights}, witness={report.witness}"
            )
        verdict = Verdict.POSITIVE_PAIR_BY_MIRRORED_LEMMA
    elif monotonicity is MonotonicityClass.HAS_TIES:
        verdict = Verdict.DEGENERATE_TIES
    else:
        verdict = Verdict.INCONCLUSIVE_NON_MONOTONE

    return CriterionReport(
        monotonicity=monotonicity,
        simple=report.simple,
        positivity=positivity,
        verdict=verdict,
        witness=report.witness,
        chains_exchanged=monotonicity is MonotonicityClass.STRICTLY_INCREASING,
        connection_check_advised=verdict in _POSITIVE_VERDICTS,
    )


def mahler_curve(d: int, s: ScalarLike) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """The power curve a_i = s^i with derivative b_i = i s^(i-1); slopes i/s.

    >>> mahler_curve(3, 2)
    ((Fraction(2, 1), Fraction(4, 1), Fraction(8, 1)), (Fraction(1, 1), Fraction(4, 1), Fraction(12, 1)))
    """
    if d < 2:
        raise InvalidSize("need at least two symbols")
    s = as_scalar(s)
    if s <= 0:
        raise NonPositiveParameter(f"curve parameter {s} is not positive")
    a = tuple(s**i for i in range(1, d + 1))
    b = tuple(i * s ** (i - 1) for i in range(1, d + 1))
    return a, b


@dataclass(frozen=True)
class CurveSpec:
    """A polynomial curve s -> a(s): row i holds the coefficients of a_i(s),
    constant term first.  Heights come from the exact symbolic derivative."""

    d: int
    coeffs: tuple[tuple[Fraction, ...], ...]


def curve_spec(rows: Sequence[Sequence[ScalarLike]]) -> CurveSpec:
    """Validate and freeze polynomial rows into a CurveSpec."""
    if not rows:
        raise InvalidSize("a curve needs at least one component")
    frozen = tuple(tuple(as_scalar(c) for c in row) for row in rows)
    if any(not row for row in frozen):
        raise InvalidSize("every component needs at least one coefficient")
    return CurveSpec(len(frozen), frozen)


def mahler_spec(d: int) -> CurveSpec:
    """CurveSpec rows for the power curve: row i is s^i."""
    if d < 2:
        raise InvalidSize("need at least two symbols")
    return CurveSpec(d, tuple((Fraction(0),) * i + (Fraction(1),) for i in range(1, d + 1)))


def _poly_eval(coeffs: Sequence[Fraction], s: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def curve_point(
    spec: CurveSpec, s: ScalarLike
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Evaluate (a(s), da/ds(s)) exactly; raises DomainViolation off the domain."""
    s = as_scalar(s)
    a = tuple(_poly_eval(row, s) for row in spec.coeffs)
    for i, v in enumerate(a, start=1):
        if v <= 0:
            raise DomainViolation(f"component {i} is {v} at s = {s}")
    b = tuple(_poly_eval([k * c for k, c in enumerate(row)][1:], s) for row in spec.coeffs)
    return a, b


@dataclass(frozen=True)
class ScanSummary:
    """Per-verdict sample fractions over a grid, with the exceptional samples
    (everything that did not certify) listed as (s, verdict) pairs."""

    samples: int
    verdicts: tuple[Verdict, ...]
    grid: tuple[Fraction, ...]
    exceptional: tuple[tuple[Fraction, Verdict], ...]

    @property
    def verdict_fractions(self) -> dict[Verdict, Fraction]:
        out: dict[Verdict, Fraction] = {}
        for v in self.verdicts:
            out[v] = out.get(v, Fraction(0)) + Fraction(1, self.samples)
        return out


def scan_curve(
    spec: CurveSpec, sigma: Permutation, s_grid: Sequence[ScalarLike]
) -> ScanSummary:
    """Run the criterion at every grid point of a polynomial curve family.

    Grid points (typically floats) are rationalized exactly first, so each
    sample's verdict carries exact-arithmetic certainty at that s.
    """
    if not is_irreducible(sigma):
        raise ReduciblePermutation(f"{sigma} splits at an invariant prefix")
    if spec.d != sigma.d:
        raise DimensionMismatch(f"curve has {spec.d} components for {sigma.d} symbols")
    grid = tuple(as_scalar(s) for s in s_grid)
    if not grid:
        raise InvalidBound("empty sample grid")
    verdicts = []
    for s in grid:
        a, b = curve_point(spec, s)
        verdicts.append(convexity_criterion(sigma, a, b).verdict)
    exceptional = tuple(
        (s, v) for s, v in zip(grid, verdicts) if v not in _POSITIVE_VERDICTS
    )
    return ScanSummary(len(grid), tuple(verdicts), grid, exceptional)
