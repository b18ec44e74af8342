import random

from bfcalc.generate import (
    MAX_DEPTH, MAX_WIDTH, enclosure_depth, random_bf, random_bf_many, random_pa, width,
)
from bfcalc.syntax import is_pa, variables


def test_bounds_and_groundness():
    rng = random.Random(5)
    for _ in range(300):
        e = random_bf(rng, raw=True)
        assert enclosure_depth(e) <= MAX_DEPTH and width(e) <= MAX_WIDTH
        assert not variables(e)
        p = random_pa(rng)
        assert is_pa(p) and not variables(p)
        assert enclosure_depth(p) <= MAX_DEPTH and width(p) <= MAX_WIDTH


def test_with_names():
    rng = random.Random(6)
    seen = set()
    for _ in range(50):
        seen |= variables(random_pa(rng, names=("A", "B")))
    assert seen == {"A", "B"}


def test_seeded_determinism():
    assert random_bf_many(20, seed=3) == random_bf_many(20, seed=3)
