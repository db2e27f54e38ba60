"""Shared fixtures: seeded generators and the frozen intersection fixture.

Set the SEED environment variable to rerun every randomized suite on a
different deterministic stream; the default keeps CI byte-stable.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from ietkit import build_suspension, random_irreducible, validate_permutation

SEED = int(os.environ.get("SEED", "57721"))

settings.register_profile("ci", derandomize=True, max_examples=60)
settings.load_profile("ci")

# Non-monotone slopes whose chains properly cross; found by seeded search and
# checked by hand: top segment 3 runs (2,1)->(4,-2), bottom segment 3 runs
# (2,-2)->(3,1), and they cross at (8/3, 0).
FROZEN_CROSSING = {
    "perm": (3, 1, 4, 2),
    "lengths": (1, 1, 2, 1),
    "heights": (3, -2, -3, 0),
    "chain_a": "top",
    "index_a": 3,
    "chain_b": "bottom",
    "index_b": 3,
    "locus": (Fraction(8, 3), Fraction(0)),
}


def frozen_crossing_diagram():
    return build_suspension(
        validate_permutation(list(FROZEN_CROSSING["perm"])),
        FROZEN_CROSSING["lengths"],
        FROZEN_CROSSING["heights"],
    )


def random_length(rng: random.Random) -> Fraction:
    """A rational in (0, 10]."""
    den = rng.randint(1, 12)
    return Fraction(rng.randint(1, 10 * den), den)


def random_height(rng: random.Random) -> Fraction:
    den = rng.randint(1, 12)
    return Fraction(rng.randint(-10 * den, 10 * den), den)


def distinct_slopes(rng: random.Random, d: int, *, decreasing: bool) -> list[Fraction]:
    """d distinct rationals, sorted strictly monotone; signs unrestricted."""
    pool: set[Fraction] = set()
    while len(pool) < d:
        pool.add(Fraction(rng.randint(-60, 60), rng.randint(1, 12)))
    return sorted(pool, reverse=decreasing)


def monotone_instance(rng: random.Random, *, decreasing: bool, d: int | None = None):
    """(sigma, a, b) with random irreducible sigma and strictly monotone slopes."""
    if d is None:
        d = rng.randint(2, 8)
    sigma = random_irreducible(d, rng.getrandbits(32))
    a = [random_length(rng) for _ in range(d)]
    kappa = distinct_slopes(rng, d, decreasing=decreasing)
    b = [k * x for k, x in zip(kappa, a)]
    return sigma, a, b


def _suite(decreasing: bool, count: int = 10_000):
    # String seeds hash deterministically (unlike tuples under PYTHONHASHSEED).
    rng = random.Random(f"{SEED}/monotone-suite/{decreasing}")
    return [monotone_instance(rng, decreasing=decreasing) for _ in range(count)]


@pytest.fixture(scope="session")
def decreasing_suite():
    return _suite(decreasing=True)


@pytest.fixture(scope="session")
def increasing_suite():
    return _suite(decreasing=False)


@pytest.fixture()
def rng():
    return random.Random(SEED)
