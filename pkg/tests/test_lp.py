"""Exact LP: solver statuses, Farkas certificates, transportation, and the
membership oracle."""

import random

import pytest

from hullcert.errors import DomainError
from hullcert.lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    Flow,
    LinearProgram,
    TransportInfeasible,
    decompose_in_polytope,
    membership,
    sample_vertex,
    solve,
    transportation_feasible,
)
from hullcert.rational import R0, R1, rat

MCCORMICK_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]


class TestSolve:
    def test_pinned_variable(self):
        lp = LinearProgram(1)
        lp.add_row({0: 1}, "=", 1)
        res = solve(lp)
        assert res.status == OPTIMAL and res.x == [1]

    def test_infeasible_with_verified_multipliers(self):
        lp = LinearProgram(1)
        lp.add_row({0: 1}, "<=", -1)
        res = solve(lp)
        assert res.status == INFEASIBLE
        assert res.farkas.verify(lp)
        assert res.farkas.row_mults[0] == -1
        assert res.farkas.lower_mults[0] == 1

    def test_unbounded_returns_ray(self):
        lp = LinearProgram(1, objective=[-1])
        res = solve(lp)
        assert res.status == UNBOUNDED
        assert res.ray == [1]

    def test_max_sense(self):
        lp = LinearProgram(2, objective=[1, 1], sense="max")
        lp.add_row({0: 1, 1: 2}, "<=", 4)
        lp.set_bounds(0, 0, 3)
        res = solve(lp)
        assert res.status == OPTIMAL and res.value == rat(7, 2)

    def test_free_variables(self):
        lp = LinearProgram(1, objective=[1])
        lp.set_bounds(0, None, None)
        lp.add_row({0: 1}, ">=", -5)
        res = solve(lp)
        assert res.status == OPTIMAL and res.value == -5

    def test_upper_bound_only_variables(self):
        lp = LinearProgram(2, objective=[1, -2], sense="max")
        lp.set_bounds(0, None, 5)
        lp.set_bounds(1, None, 3)
        lp.add_row({0: 1, 1: 1}, ">=", 0)
        res = solve(lp)
        assert res.status == OPTIMAL
        # x0 hits its cap; -2·x1 drives x1 down to the row bound
        assert res.x == [5, -5] and res.value == 15
        free_fall = LinearProgram(1, objective=[1])
        free_fall.set_bounds(0, None, 5)
        res = solve(free_fall)
        assert res.status == UNBOUNDED and res.ray == [-1]

    def test_strong_alternative_on_random_systems(self):
        rng = random.Random(7)
        statuses = set()
        for _ in range(120):
            n = rng.randint(1, 4)
            lp = LinearProgram(n, objective=[rng.randint(-3, 3) for _ in range(n)])
            for _ in range(rng.randint(1, 5)):
                coeffs = {
                    j: rng.randint(-4, 4)
                    for j in range(n)
                    if rng.random() < 0.8
                }
                if not coeffs:
                    coeffs = {0: 1}
                lp.add_row(coeffs, rng.choice(["<=", ">=", "="]), rng.randint(-4, 4))
            for j in range(n):
                if rng.random() < 0.5:
                    lp.set_bounds(j, 0, rng.randint(1, 5))
            res = solve(lp)
            statuses.add(res.status)
            if res.status == INFEASIBLE:
                assert res.farkas.verify(lp)
            elif res.status == OPTIMAL:
                for coeffs, sense, rhs in lp.rows:
                    val = lp.row_value(coeffs, res.x)
                    assert (
                        val <= rhs if sense == "<=" else
                        val >= rhs if sense == ">=" else val == rhs
                    )
        assert {OPTIMAL, INFEASIBLE} <= statuses


class TestTransportation:
    def test_full_support(self):
        res = transportation_feasible(
            [rat(1, 2), rat(1, 2)],
            [rat(1, 2), rat(1, 2)],
            [(0, 0), (0, 1), (1, 0), (1, 1)],
        )
        assert isinstance(res, Flow)
        assert sum(res.cells.values(), R0) == 1

    def test_split_row(self):
        res = transportation_feasible(
            [R1], [rat(2, 5), rat(3, 5)], [(0, 0), (0, 1)]
        )
        assert res.cells == {(0, 0): rat(2, 5), (0, 1): rat(3, 5)}

    def test_diagonal_and_hall_violator(self):
        res = transportation_feasible(
            [rat(1, 2), rat(1, 2)], [rat(1, 2), rat(1, 2)], [(0, 0), (1, 1)]
        )
        assert res.cells == {(0, 0): rat(1, 2), (1, 1): rat(1, 2)}
        bad = transportation_feasible(
            [rat(1, 2), rat(1, 2)], [rat(1, 2), rat(1, 2)], [(0, 0), (1, 0)]
        )
        assert isinstance(bad, TransportInfeasible)
        # rows {0, 1} can only reach column 0: the Hall violator
        assert bad.deficient_rows == [0, 1]
        assert bad.unreached_cols == [1]

    def test_marginal_mismatch(self):
        with pytest.raises(DomainError):
            transportation_feasible([R1], [rat(1, 2)], [(0, 0)])

    def test_agrees_with_lp(self):
        rng = random.Random(13)
        for _ in range(60):
            nr, nc = rng.randint(1, 3), rng.randint(1, 3)
            rows = [rat(rng.randint(0, 6), 6) for _ in range(nr)]
            total = sum(rows, R0)
            cols = []
            left = total
            for j in range(nc - 1):
                num = rng.randint(0, int(left * 6))
                cols.append(rat(num, 6))
                left -= cols[-1]
            cols.append(left)
            allowed = [
                (i, j)
                for i in range(nr)
                for j in range(nc)
                if rng.random() < 0.7
            ]
            res = transportation_feasible(rows, cols, allowed)
            lp = LinearProgram(max(1, len(allowed)))
            for i in range(nr):
                coeffs = {k: 1 for k, (a, _) in enumerate(allowed) if a == i}
                lp.add_row(coeffs if coeffs else {0: 0}, "=", rows[i])
            for j in range(nc):
                coeffs = {k: 1 for k, (_, b) in enumerate(allowed) if b == j}
                lp.add_row(coeffs if coeffs else {0: 0}, "=", cols[j])
            lp_res = solve(lp)
            assert isinstance(res, Flow) == (lp_res.status == OPTIMAL)


class TestMembership:
    def test_interior_point(self):
        res = membership(MCCORMICK_POINTS, [], (rat(1, 2), rat(7, 10), rat(1, 5)))
        assert res.inside

    def test_outside_with_separator(self):
        res = membership(MCCORMICK_POINTS, [], (1, 1, 0))
        assert not res.inside
        sep = res.separator
        assert sep.value((1, 1, 0)) > 0
        for p in MCCORMICK_POINTS:
            assert sep.value(p) <= 0
        # the spec's expected cut: z >= x + y - 1
        assert sep.w == [1, 1, -1] and sep.w0 == -1

    def test_listed_point_weight_one(self):
        res = membership(MCCORMICK_POINTS, [], (1, 1, 1))
        weights = {
            p: w for p, w in zip(MCCORMICK_POINTS, res.weights) if w > 0
        }
        assert weights == {(1, 1, 1): 1}

    def test_empty_point_list(self):
        with pytest.raises(DomainError):
            membership([], [], (1,))

    def test_with_rays(self):
        res = membership([(0, 0)], [(1, 0), (1, 1)], (3, 2))
        assert res.inside
        res = membership([(0, 0)], [(1, 0), (1, 1)], (1, 2))
        assert not res.inside

    def test_column_order_restarts_agree(self):
        rng = random.Random(3)
        pts = MCCORMICK_POINTS
        for _ in range(40):
            h = tuple(rat(rng.randint(0, 12), 12) for _ in range(3))
            base = membership(pts, [], h).inside
            for _ in range(3):
                perm = list(pts)
                rng.shuffle(perm)
                assert membership(perm, [], h).inside == base


class TestAgainstFloatingPointSolver:
    def test_random_lps_match_scipy(self):
        """Independent cross-check of the exact solver against HiGHS on
        random systems (statuses and optimal values within 1e-7)."""
        scipy_opt = pytest.importorskip("scipy.optimize")
        rng = random.Random(2718)
        checked = {"optimal": 0, "infeasible": 0, "unbounded": 0}
        for _ in range(80):
            n = rng.randint(1, 5)
            lp = LinearProgram(n, objective=[rng.randint(-5, 5) for _ in range(n)])
            a_ub, b_ub, a_eq, b_eq = [], [], [], []
            for _ in range(rng.randint(1, 5)):
                row = [rng.randint(-4, 4) for _ in range(n)]
                if all(v == 0 for v in row):
                    row[0] = 1
                sense = rng.choice(["<=", ">=", "="])
                rhs = rng.randint(-5, 5)
                lp.add_row({j: row[j] for j in range(n)}, sense, rhs)
                if sense == "<=":
                    a_ub.append(row)
                    b_ub.append(rhs)
                elif sense == ">=":
                    a_ub.append([-v for v in row])
                    b_ub.append(-rhs)
                else:
                    a_eq.append(row)
                    b_eq.append(rhs)
            bounds = []
            for j in range(n):
                hi = rng.choice([None, rng.randint(1, 6)])
                lp.set_bounds(j, 0, hi)
                bounds.append((0, hi))
            res = solve(lp)
            ref = scipy_opt.linprog(
                [float(c) for c in lp.objective],
                A_ub=a_ub or None,
                b_ub=b_ub or None,
                A_eq=a_eq or None,
                b_eq=b_eq or None,
                bounds=bounds,
                method="highs",
            )
            if res.status == OPTIMAL:
                assert ref.status == 0
                assert abs(float(res.value) - ref.fun) < 1e-7
            elif res.status == INFEASIBLE:
                assert ref.status == 2
            else:
                assert ref.status == 3
            checked[res.status] += 1
        assert checked["optimal"] > 0 and checked["infeasible"] > 0


class TestVertexTools:
    def test_sample_vertex_is_feasible_extreme(self):
        rng = random.Random(4)
        lp = LinearProgram(3)
        lp.add_row({0: 1, 1: 1, 2: 1}, "<=", 4)
        for _ in range(10):
            v = sample_vertex(lp, rng)
            assert sum(v, R0) <= 4 and all(x >= 0 for x in v)
            assert sorted(v) in ([0, 0, 0], [0, 0, 4])

    def test_peeling_reconstructs(self):
        rng = random.Random(9)
        lp = LinearProgram(2)
        lp.set_bounds(0, 0, 1)
        lp.set_bounds(1, 0, 1)
        for num in range(13):
            h = (rat(num, 12), rat((num * 5) % 13, 13))
            parts = decompose_in_polytope(lp, h, rng)
            assert sum((w for w, _ in parts), R0) == 1
            recon = [R0, R0]
            for w, point in parts:
                for d in range(2):
                    recon[d] += w * point[d]
            assert tuple(recon) == h
            for _w, point in parts:
                assert all(x in (R0, R1) for x in point)
