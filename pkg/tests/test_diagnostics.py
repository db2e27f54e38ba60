from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ietkit import (
    build_iet,
    discrepancy_trend,
    validate_permutation,
    visit_frequencies,
)
from ietkit.errors import InvalidBound, OutOfDomain

from conftest import SEED

F = Fraction


def rotation(a2: F) -> "Iet":
    return build_iet(validate_permutation([2, 1]), [F(1), a2])


def test_period_two_orbit_splits_evenly():
    stats = visit_frequencies(rotation(F(1)), F(1, 4), 1000)
    assert stats.frequencies == (F(1, 2), F(1, 2))
    assert stats.expected == (F(1, 2), F(1, 2))
    assert stats.discrepancy == 0
    assert stats.n_iterations == 1000
    assert stats.refinement_cells == 64


def test_single_point_is_an_indicator():
    stats = visit_frequencies(rotation(F(1)), F(1, 4), 1)
    assert stats.frequencies == (F(1), F(0))
    assert stats.discrepancy == F(1, 2)


def test_frequencies_sum_to_one_on_random_instances():
    rng = random.Random(f"{SEED}/freq-sum")
    for _ in range(30):
        d = rng.randint(2, 6)
        images = list(range(1, d + 1))
        rng.shuffle(images)
        t = build_iet(
            validate_permutation(images),
            [F(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(d)],
        )
        x0 = t.total * F(rng.randint(0, 99), 100)
        stats = visit_frequencies(t, x0, rng.randint(1, 300), cells=rng.randint(1, 20))
        assert sum(stats.frequencies, F(0)) == 1
        assert 0 <= stats.discrepancy <= 1
        assert 0 <= stats.refinement_discrepancy <= 1


def test_refinement_matching_intervals_gives_same_discrepancy():
    # Two unit intervals and two refinement cells describe the same partition.
    stats = visit_frequencies(rotation(F(1)), F(1, 4), 137, cells=2)
    assert stats.refinement_discrepancy == stats.discrepancy


def test_near_golden_rotation_equidistributes():
    stats = visit_frequencies(rotation(F(1597, 987)), F(0), 10_000)
    assert stats.discrepancy < F(1, 1000)
    assert stats.refinement_discrepancy < F(1, 100)


def test_trend_of_periodic_orbit_hits_zero_at_even_times():
    trend = discrepancy_trend(rotation(F(1)), F(1, 4), [1, 2, 3, 4, 50])
    assert [n for n, _ in trend] == [1, 2, 3, 4, 50]
    assert dict(trend)[2] == 0
    assert dict(trend)[4] == 0
    assert dict(trend)[50] == 0
    assert dict(trend)[1] == F(1, 2)


def test_trend_is_prefix_consistent_with_frequencies():
    t = rotation(F(1597, 987))
    trend = discrepancy_trend(t, F(1, 3), [10, 100, 500])
    for n, disc in trend:
        assert disc == visit_frequencies(t, F(1, 3), n).discrepancy


def test_trend_edge_cases():
    t = rotation(F(1))
    assert discrepancy_trend(t, F(1, 4), []) == []
    with pytest.raises(InvalidBound):
        discrepancy_trend(t, F(1, 4), [5, 5])
    with pytest.raises(InvalidBound):
        discrepancy_trend(t, F(1, 4), [0, 3])


def test_diagnostics_validate_inputs():
    t = rotation(F(1))
    with pytest.raises(InvalidBound):
        visit_frequencies(t, F(1, 4), 0)
    with pytest.raises(InvalidBound):
        visit_frequencies(t, F(1, 4), 10, cells=0)
    with pytest.raises(OutOfDomain):
        visit_frequencies(t, F(5), 10)
    with pytest.raises(OutOfDomain):
        discrepancy_trend(t, F(-1), [3])
