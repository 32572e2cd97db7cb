"""Rectangle algebra: signed measures, profiles, and the overlap functional."""

import pytest
from hypothesis import given, strategies as st

from hullcert.errors import DomainError
from hullcert.intervals import IntervalSet
from hullcert.rational import R0, R1, rat
from hullcert.rectangles import RAY, UNIT, Rect, RectSet, bilinear_overlap, profile

from conftest import random_interval_set, random_rect_set


@st.composite
def rect_sets(draw, den=16, height_span=3):
    k = draw(st.integers(0, 3))
    cuts = sorted(
        draw(
            st.lists(
                st.integers(0, den), min_size=2 * k, max_size=2 * k, unique=True
            )
        )
    )
    heights = draw(
        st.lists(
            st.integers(-height_span, height_span).filter(lambda c: c != 0),
            min_size=k,
            max_size=k,
        )
    )
    return RectSet(
        UNIT,
        [
            Rect(rat(cuts[2 * i], den), rat(cuts[2 * i + 1], den), rat(heights[i]))
            for i in range(k)
        ],
    )


class TestConstruction:
    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            Rect(rat(1, 2), rat(1, 2), 1)
        with pytest.raises(DomainError):
            Rect(0, 1, 0)

    def test_overlap_rejected(self):
        with pytest.raises(DomainError):
            RectSet(UNIT, [(0, rat(1, 2), 1), (rat(1, 4), 1, 2)])

    def test_base_bounds(self):
        with pytest.raises(DomainError):
            RectSet(UNIT, [(0, rat(3, 2), 1)])
        RectSet(RAY, [(0, rat(3, 2), 1)])  # fine over the ray

    def test_adjacent_equal_heights_merge(self):
        s = RectSet(UNIT, [(0, rat(1, 2), 2), (rat(1, 2), 1, 2)])
        assert s.rects == (Rect(0, 1, 2),)


class TestSignedMeasure:
    def test_full_width_block(self):
        assert RectSet(UNIT, [(0, 1, 4)]).signed_measure() == 4

    def test_scaled_simplex_piece(self):
        assert RectSet(UNIT, [(0, rat(1, 4), 4)]).signed_measure() == 1

    def test_signed_cancellation(self):
        s = RectSet(UNIT, [(0, rat(1, 2), -2), (rat(1, 2), 1, 2)])
        assert s.signed_measure() == 0


class TestHeightAt:
    def test_profile_heights(self):
        s = RectSet(UNIT, [(0, rat(1, 4), 4)])
        assert s.height_at(rat(1, 10)) == 4
        assert s.height_at(rat(3, 10)) == 0
        assert s.height_at(rat(1, 4)) == 0  # right-open boundary

    def test_domain(self):
        with pytest.raises(DomainError):
            RectSet(UNIT).height_at(rat(3, 2))


class TestStackUnion:
    def test_pointwise_addition(self):
        got = RectSet(UNIT, [(0, 1, 1)]).stack_union(
            RectSet(UNIT, [(0, rat(3, 10), 1)])
        )
        assert got == RectSet(UNIT, [(0, rat(3, 10), 2), (rat(3, 10), 1, 1)])

    def test_identity(self):
        s = random_rect_set(__import__("random").Random(5))
        assert s.stack_union(RectSet(UNIT)) == s

    def test_cancellation(self):
        s = RectSet(UNIT, [(0, rat(1, 2), 1)])
        assert s.stack_union(s.scale(-1)) == RectSet(UNIT)

    @given(rect_sets(), rect_sets(), rect_sets())
    def test_commutative_associative_via_profiles(self, a, b, c):
        assert a.stack_union(b) == b.stack_union(a)
        assert a.stack_union(b).stack_union(c) == a.stack_union(
            b.stack_union(c)
        )


class TestProfile:
    def test_mccormick_sets(self):
        # height-1 sets for the product linearization at (1/2, 7/10, 1/5)
        sx = RectSet.lift(IntervalSet.of(0, rat(1, 2)))
        sy = RectSet.lift(IntervalSet.of(rat(3, 10), 1))
        sz = RectSet.lift(IntervalSet.of(rat(3, 10), rat(1, 2)))
        prof = profile([sx, sy, sz])
        assert [(c, v) for c, v in prof] == [
            ((R0, rat(3, 10)), (1, 0, 0)),
            ((rat(3, 10), rat(1, 2)), (1, 1, 1)),
            ((rat(1, 2), R1), (0, 1, 0)),
        ]

    def test_empty_family(self):
        assert profile([]) == [((R0, R1), ())]

    def test_interior_point_simplex_sets(self):
        s1 = RectSet(UNIT, [(0, 1, 1)])
        s2 = RectSet(UNIT, [(0, rat(1, 2), 2), (rat(1, 2), 1, 1)])
        s3 = RectSet(UNIT, [(0, rat(3, 10), 1), (rat(1, 2), 1, 1)])
        prof = profile([s1, s2, s3])
        assert [v for _c, v in prof] == [
            (1, 2, 1),
            (1, 2, 0),
            (1, 1, 1),
        ]
        assert [c for c, _v in prof] == [
            (R0, rat(3, 10)),
            (rat(3, 10), rat(1, 2)),
            (rat(1, 2), R1),
        ]

    def test_ray_base_reports_residual_cell(self):
        s = RectSet(RAY, [(0, rat(7, 10), 1)])
        prof = profile([s], base=RAY)
        assert prof[-1] == ((rat(7, 10), None), (R0,))

    def test_mixed_bases_rejected(self):
        with pytest.raises(DomainError):
            profile([RectSet(UNIT), RectSet(RAY)])


class TestBilinearOverlap:
    def test_hand_trace(self):
        s1 = RectSet(UNIT, [(0, rat(1, 2), 2)])
        s2 = RectSet(UNIT, [(rat(1, 4), rat(3, 4), 3)])
        assert bilinear_overlap(s1, s2) == rat(3, 2)

    def test_disjoint_footprints(self):
        s1 = RectSet(UNIT, [(0, rat(1, 4), 5)])
        s2 = RectSet(UNIT, [(rat(1, 2), 1, 7)])
        assert bilinear_overlap(s1, s2) == 0

    def test_height_one_reduces_to_intersection_measure(self, rng):
        for _ in range(100):
            a = random_interval_set(rng)
            b = random_interval_set(rng)
            got = bilinear_overlap(RectSet.lift(a), RectSet.lift(b))
            assert got == a.intersect(b).measure()

    @given(rect_sets(), rect_sets(), rect_sets())
    def test_symmetry_and_bilinearity(self, a, b, c):
        assert bilinear_overlap(a, c) == bilinear_overlap(c, a)
        assert bilinear_overlap(a.stack_union(b), c) == bilinear_overlap(
            a, c
        ) + bilinear_overlap(b, c)


class TestEmbedding:
    def test_lift_preserves_measure_and_indicator(self, rng):
        probes = [rat(k, 53) for k in range(53)]
        for _ in range(60):
            s = random_interval_set(rng)
            lifted = RectSet.lift(s)
            assert lifted.signed_measure() == s.measure()
            for t in probes:
                assert lifted.height_at(t) == s.indicator(t)

    def test_round_trip_footprint(self, rng):
        for _ in range(60):
            s = random_interval_set(rng)
            assert RectSet.lift(s).footprint() == s

    def test_serialization_round_trip(self, rng):
        for _ in range(40):
            s = random_rect_set(rng)
            assert RectSet.from_json(s.to_json(), s.base) == s
