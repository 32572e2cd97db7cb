import random

import pytest

from hullcert.intervals import IntervalSet
from hullcert.rational import rat
from hullcert.rectangles import Rect, RectSet


def q(text):
    """Shorthand rational constructor for test literals."""
    return rat(str(text)) if "/" in str(text) else rat(text)


def random_interval_set(rng, den=24, max_pieces=4):
    cuts = sorted(rng.sample(range(den + 1), 2 * rng.randint(0, max_pieces)))
    return IntervalSet(
        [(rat(cuts[k], den), rat(cuts[k + 1], den)) for k in range(0, len(cuts), 2)]
    )


def random_rect_set(rng, den=24, max_pieces=3, height_span=3):
    cuts = sorted(rng.sample(range(den + 1), 2 * rng.randint(0, max_pieces)))
    rects = []
    for k in range(0, len(cuts), 2):
        c = 0
        while c == 0:
            c = rng.randint(-height_span, height_span)
        rects.append(Rect(rat(cuts[k], den), rat(cuts[k + 1], den), rat(c)))
    return RectSet("U", rects)


@pytest.fixture
def rng():
    return random.Random(20240817)
