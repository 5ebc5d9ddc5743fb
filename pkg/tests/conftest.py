import random
from fractions import Fraction

import pytest


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_interval_set(rng, max_intervals=4, denominator=64):
    """Random canonical interval set with rational endpoints."""
    from returnsets.exactnum import IntervalSet

    cuts = sorted(rng.sample(range(denominator + 1), 2 * rng.randint(1, max_intervals)))
    pairs = []
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if lo < hi:
            pairs.append((Fraction(lo, denominator), Fraction(hi, denominator)))
    if not pairs:
        pairs = [(Fraction(0), Fraction(1, denominator))]
    return IntervalSet.from_pairs(pairs)


def random_fraction(rng, denominator_bound=1000):
    den = rng.randint(1, denominator_bound)
    return Fraction(rng.randrange(den), den)
