"""Constraint systems, enumeration, and set-characterization checks."""

import pytest

from hullcert.constraints import (
    EQ,
    GE,
    LE,
    ConstraintSystem,
    Linear,
    Product,
    QuadraticBall,
    Sos2,
    characterization_report,
    to_linear_program,
)
from hullcert.errors import DomainError, EnumerationTooLargeError, InputError
from hullcert.extended import ball
from hullcert.intervals import IntervalSet
from hullcert.rational import R0, R1, rat
from hullcert.rectangles import RectSet

from conftest import random_interval_set


def mccormick_feasible():
    return ConstraintSystem(
        variables=["x", "y", "z"],
        integrality={v: "binary" for v in "xyz"},
        constraints=[Product("x", "y", "z")],
    )


class TestEvaluate:
    def test_linear_satisfied_at_vertex(self):
        sys = mccormick_feasible()
        row = Linear((("x", 1), ("y", 1), ("z", -1)), LE, 1)
        assert sys.evaluate(row, (R1, R1, R1)).satisfied

    def test_product_violation_slack(self):
        sys = mccormick_feasible()
        res = sys.evaluate(Product("x", "y", "z"), (R1, R1, R0))
        assert not res.satisfied and res.slack == 1

    def test_ball_within_tolerance(self):
        cert = ball((rat(11, 10), rat(19, 10)))
        sys = cert.system
        point = (cert.convex["x1"].rects[0].c, rat(19, 10))
        constraint = sys.constraints[0]
        assert isinstance(constraint, QuadraticBall)
        assert not sys.evaluate(constraint, point).satisfied  # exact mode
        assert sys.evaluate(constraint, point, tol=rat(1, 10**9)).satisfied

    def test_dimension_mismatch(self):
        sys = mccormick_feasible()
        with pytest.raises(DomainError):
            sys.evaluate(Product("x", "y", "z"), (R1, R1))

    def test_sos2(self):
        sys = ConstraintSystem(
            variables=["a", "b", "c"],
            constraints=[Sos2(("a", "b", "c"))],
        )
        assert sys.evaluate(sys.constraints[0], (R1, R0, R0)).satisfied
        assert sys.evaluate(sys.constraints[0], (rat(1, 2), rat(1, 2), R0)).satisfied
        assert not sys.evaluate(sys.constraints[0], (rat(1, 2), R0, rat(1, 2))).satisfied

    def test_unknown_variable_rejected(self):
        with pytest.raises(InputError):
            ConstraintSystem(
                variables=["x"], constraints=[Linear((("nope", 1),), LE, 1)]
            )


class TestRelaxationMembership:
    def rows(self):
        return [
            Linear((("z", 1),), GE, 0),
            Linear((("z", 1), ("x", -1)), LE, 0),
            Linear((("z", 1), ("y", -1)), LE, 0),
            Linear((("x", 1), ("y", 1), ("z", -1)), LE, 1),
        ]

    def system(self):
        return ConstraintSystem(
            variables=["x", "y", "z"],
            bounds={v: (R0, R1) for v in "xyz"},
            constraints=self.rows(),
        )

    def test_interior_point(self):
        assert self.system().point_in_relaxation((rat(1, 2), rat(7, 10), rat(1, 5)))

    def test_violating_point(self):
        assert not self.system().point_in_relaxation((R0, R1, R1))

    def test_simplex_point(self):
        sys = ConstraintSystem(
            variables=["x1", "x2", "x3"],
            bounds={v: (R0, None) for v in ("x1", "x2", "x3")},
            constraints=[
                Linear((("x1", 1), ("x2", 1), ("x3", 1)), LE, 4)
            ],
        )
        assert sys.point_in_relaxation((R1, rat(3, 2), rat(4, 5)))


class TestEnumerate:
    def test_mccormick_points(self):
        got = mccormick_feasible().enumerate_feasible()
        assert got == [
            (0, 0, 0),
            (0, 1, 0),
            (1, 0, 0),
            (1, 1, 1),
        ]

    def test_unconstrained_square(self):
        sys = ConstraintSystem(
            variables=["a", "b"], integrality={"a": "binary", "b": "binary"}
        )
        assert len(sys.enumerate_feasible()) == 4

    def test_simplex_count(self):
        sys = ConstraintSystem(
            variables=["x1", "x2"],
            integrality={"x1": "integer", "x2": "integer"},
            bounds={"x1": (R0, rat(2)), "x2": (R0, rat(2))},
            constraints=[Linear((("x1", 1), ("x2", 1)), LE, 2)],
        )
        assert len(sys.enumerate_feasible()) == 6

    def test_lex_order(self):
        sys = ConstraintSystem(
            variables=["a", "b"], integrality={"a": "binary", "b": "binary"}
        )
        pts = sys.enumerate_feasible()
        assert pts == sorted(pts)

    def test_cap(self):
        sys = ConstraintSystem(
            variables=[f"x{i}" for i in range(10)],
            integrality={f"x{i}": "integer" for i in range(10)},
            bounds={f"x{i}": (R0, rat(9)) for i in range(10)},
        )
        with pytest.raises(EnumerationTooLargeError):
            sys.enumerate_feasible(cap=10**6)

    def test_missing_range(self):
        sys = ConstraintSystem(variables=["x"], bounds={"x": (R0, None)})
        with pytest.raises(DomainError):
            sys.enumerate_feasible()

    def test_upper_bound_implied_by_row(self):
        sys = ConstraintSystem(
            variables=["x1", "x2"],
            integrality={"x1": "integer", "x2": "integer"},
            bounds={"x1": (R0, None), "x2": (R0, None)},
            constraints=[Linear((("x1", 1), ("x2", 1)), LE, 2)],
        )
        assert sys.implied_upper("x1") == 2
        assert len(sys.enumerate_feasible()) == 6


class TestCharacterizationReport:
    def mccormick_sets(self, widen=False):
        sx = IntervalSet.of(0, rat(1, 2))
        sy = IntervalSet.of(rat(3, 10), 1)
        sz = IntervalSet.of(rat(1, 5) if widen else rat(3, 10), rat(1, 2))
        return [RectSet.lift(s) for s in (sx, sy, sz)]

    def test_product_sets_pass(self):
        rep = characterization_report(mccormick_feasible(), self.mccormick_sets())
        assert rep.ok

    def test_widened_set_fails_on_cell(self):
        rep = characterization_report(
            mccormick_feasible(), self.mccormick_sets(widen=True)
        )
        assert not rep.ok
        assert any(
            f.cell == (rat(1, 5), rat(3, 10)) and "·" in f.reason
            for f in rep.failures
        )

    def test_empty_sets_for_origin(self):
        rep = characterization_report(
            mccormick_feasible(), [RectSet("U") for _ in range(3)]
        )
        assert rep.ok

    def test_integrality_check(self):
        sys = ConstraintSystem(variables=["x"], integrality={"x": "binary"})
        half = RectSet("U", [(0, rat(1, 2), rat(1, 2))])
        rep = characterization_report(sys, [half])
        assert not rep.ok
        assert rep.failures[0].reason == "integrality"

    def test_product_matches_interval_identity(self, rng):
        # Table row x_i·x_j = x_k: the characterization passes at height 1
        # exactly when S_i ∩ S_j = S_k as interval sets.
        sys = mccormick_feasible()
        for _ in range(150):
            a, b, c = (random_interval_set(rng) for _ in range(3))
            rep = characterization_report(sys, [RectSet.lift(s) for s in (a, b, c)])
            assert rep.ok == (a.intersect(b) == c)


class TestSimplifiedCharacterizations:
    """Each simplified set characterization from the combinatorial table is
    an independent oracle for the semantic per-cell check at height 1."""

    def binary_system(self, n, rows):
        names = [f"x{i+1}" for i in range(n)]
        return ConstraintSystem(
            variables=names,
            integrality={v: "binary" for v in names},
            constraints=rows,
        )

    def check(self, system, sets):
        return characterization_report(
            system, [RectSet.lift(s) for s in sets]
        ).ok

    def test_comparison_rows_are_containment(self, rng):
        les = self.binary_system(2, [Linear((("x1", 1), ("x2", -1)), LE, 0)])
        ges = self.binary_system(2, [Linear((("x1", 1), ("x2", -1)), GE, 0)])
        eqs = self.binary_system(2, [Linear((("x1", 1), ("x2", -1)), EQ, 0)])
        for _ in range(120):
            a, b = random_interval_set(rng), random_interval_set(rng)
            assert self.check(les, [a, b]) == a.issubset(b)
            assert self.check(ges, [a, b]) == b.issubset(a)
            assert self.check(eqs, [a, b]) == (a == b)

    def test_choice_rows_are_disjointness_and_cover(self, rng):
        coeffs = tuple((f"x{i+1}", 1) for i in range(3))
        at_most = self.binary_system(3, [Linear(coeffs, LE, 1)])
        at_least = self.binary_system(3, [Linear(coeffs, GE, 1)])
        exactly = self.binary_system(3, [Linear(coeffs, EQ, 1)])
        for _ in range(120):
            sets = [random_interval_set(rng) for _ in range(3)]
            disjoint = all(
                sets[i].intersect(sets[j]).is_empty()
                for i in range(3)
                for j in range(i + 1, 3)
            )
            cover = sets[0].union(sets[1]).union(sets[2]) == IntervalSet.full()
            assert self.check(at_most, sets) == disjoint
            assert self.check(at_least, sets) == cover
            assert self.check(exactly, sets) == (disjoint and cover)

    def test_cardinality_rows_are_pointwise_counts(self, rng):
        coeffs = tuple((f"x{i+1}", 1) for i in range(4))
        under = self.binary_system(4, [Linear(coeffs, LE, 2)])
        over = self.binary_system(4, [Linear(coeffs, GE, 2)])
        exact = self.binary_system(4, [Linear(coeffs, EQ, 2)])
        from hullcert.intervals import cells

        for _ in range(80):
            sets = [random_interval_set(rng) for _ in range(4)]
            counts = [
                sum(s.indicator(a) for s in sets)
                for a, _b in cells(sets).cells()
            ]
            assert self.check(under, sets) == all(c <= 2 for c in counts)
            assert self.check(over, sets) == all(c >= 2 for c in counts)
            assert self.check(exact, sets) == all(c == 2 for c in counts)

    def test_group_comparison_rows_dominate_counts(self, rng):
        rows = [
            Linear(
                (("x1", 1), ("x2", 1), ("x3", -1), ("x4", -1)), LE, 0
            )
        ]
        system = self.binary_system(4, rows)
        from hullcert.intervals import cells

        for _ in range(80):
            sets = [random_interval_set(rng) for _ in range(4)]
            dominated = all(
                sets[0].indicator(a) + sets[1].indicator(a)
                <= sets[2].indicator(a) + sets[3].indicator(a)
                for a, _b in cells(sets).cells()
            )
            assert self.check(system, sets) == dominated


class TestLpConversion:
    def test_rows_and_bounds_carry_over(self):
        sys = ConstraintSystem(
            variables=["x", "y"],
            bounds={"x": (R0, R1), "y": (R0, None)},
            constraints=[Linear((("x", 1), ("y", 2)), LE, 3)],
        )
        lp = to_linear_program(sys)
        assert lp.n == 2
        assert lp.rows[0] == ({0: 1, 1: 2}, LE, 3)
        assert lp.upper[0] == 1 and lp.upper[1] is None

    def test_nonlinear_rejected(self):
        with pytest.raises(DomainError):
            to_linear_program(mccormick_feasible())

    def test_json_round_trip(self):
        sys = ConstraintSystem(
            variables=["x", "y", "z"],
            integrality={"x": "binary", "y": "integer", "z": "continuous"},
            bounds={"x": (R0, R1), "y": (R0, None), "z": (None, None)},
            constraints=[
                Linear((("x", 1), ("y", -2)), GE, rat(-3, 7)),
                Product("x", "y", "z"),
                QuadraticBall((R1, R1, R0), R1, LE),
                Sos2(("x", "y")),
            ],
        )
        again = ConstraintSystem.from_json(sys.to_json())
        assert again.variables == sys.variables
        assert again.integrality == sys.integrality
        assert again.bounds == sys.bounds
        assert again.constraints == sys.constraints
