"""Certificate constructions over the rectangle algebra.

Covers simplices (vertex and interior-point variants), the conv+cone split
for unbounded polyhedra, the unit ball (the one construction with
irrational data, run at configurable precision), uncapacitated lot-sizing
in both a literal mode and a repaired mode, total-unimodularity witnesses
for bipartite incidence and interval matrices, and the two mixed-integer
piecewise-linear models.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificate import Certificate
from .constraints import (
    EQ,
    GE,
    LE,
    ConstraintSystem,
    Linear,
    QuadraticBall,
    Sos2,
)
from .errors import DomainError, HullcertError, ModeError, PreconditionError
from .intervals import wrap_place
from .lp import TransportInfeasible, transportation_feasible
from .rational import R0, R1, is_integral, rat, rfloor, rfrac, sqrt_approx
from .rectangles import RAY, UNIT, Rect, RectSet


def _require_in(system, h, what, tol=R0):
    bad = system.violated_constraint(h, tol)
    if bad is not None:
        raise PreconditionError(f"{what}: point violates {bad[0]}", violated=bad[0])


def _block(height, a=R0, b=R1):
    """Full-width (or [a,b)) block of the given height; empty when zero."""
    height = rat(height)
    if height == 0 or a == b:
        return RectSet(UNIT)
    return RectSet(UNIT, [Rect(a, b, height)])


def _floor_frac_chain(values, start=R0):
    """Per value: a full-width block of height floor(v) stacked with a
    height-1 window of width frac(v); windows are chained consecutively
    modulo 1 from `start`.  Returns (sets, end position)."""
    r = start
    sets = []
    for v in values:
        v = rat(v)
        s = _block(rfloor(v))
        f = rfrac(v)
        if f > 0:
            if r == R1:
                r = R0
            window, r = wrap_place(r, f)
            s = s.stack_union(RectSet.lift(window, 1))
        sets.append(s)
    return sets, r


# ---------------------------------------------------------------------------
# Simplex  Σ x_i <= b  over nonnegative integers
# ---------------------------------------------------------------------------

def simplex_system(n, b) -> ConstraintSystem:
    names = [f"x{i+1}" for i in range(n)]
    return ConstraintSystem(
        variables=names,
        integrality={v: "integer" for v in names},
        bounds={v: (R0, None) for v in names},
        constraints=[
            Linear(tuple((v, 1) for v in names), LE, b, label=f"sum <= {b}")
        ],
    )


def simplex_relaxation(n, b) -> ConstraintSystem:
    sys = simplex_system(n, b)
    sys.integrality = {v: "continuous" for v in sys.variables}
    return sys


def _check_simplex_point(h, b, sense, what):
    h = tuple(rat(v) for v in h)
    if any(v < 0 for v in h):
        raise PreconditionError(f"{what}: point violates x >= 0")
    total = sum(h, R0)
    if sense == LE and total > b:
        raise PreconditionError(f"{what}: point violates sum <= {b}")
    if sense == GE and total < b:
        raise PreconditionError(f"{what}: point violates sum >= {b}")
    return h


def simplex_a(h, b) -> Certificate:
    """Height-b rectangles of widths h_i/b placed consecutively; every
    column is a scaled unit vector b·e_i (or the origin)."""
    b = rat(b)
    if not (is_integral(b) and b >= 1):
        raise DomainError("right-hand side must be a positive integer")
    h = _check_simplex_point(h, b, LE, "simplex-a")
    r = R0
    sets = []
    for v in h:
        w = v / b
        sets.append(_block(b, r, r + w))
        r += w
    system = simplex_system(len(h), b)
    return Certificate(
        system=system,
        convex=dict(zip(system.variables, sets)),
        target=h,
        meta={"family": "simplex", "variant": "a", "b": int(b)},
    )


def simplex_b(h, b) -> Certificate:
    """Full-width floor blocks plus consecutively wrapped height-1
    fractional windows; columns are integer points, possibly interior."""
    b = rat(b)
    if not (is_integral(b) and b >= 1):
        raise DomainError("right-hand side must be a positive integer")
    h = _check_simplex_point(h, b, LE, "simplex-b")
    sets, _ = _floor_frac_chain(h)
    system = simplex_system(len(h), b)
    return Certificate(
        system=system,
        convex=dict(zip(system.variables, sets)),
        target=h,
        meta={"family": "simplex", "variant": "b", "b": int(b)},
    )


# ---------------------------------------------------------------------------
# Unbounded simplex  Σ x_i >= b:  convex part plus conic part
# ---------------------------------------------------------------------------

def conv_cone_system(n, b) -> ConstraintSystem:
    names = [f"x{i+1}" for i in range(n)]
    return ConstraintSystem(
        variables=names,
        integrality={v: "integer" for v in names},
        bounds={v: (R0, None) for v in names},
        constraints=[
            Linear(tuple((v, 1) for v in names), GE, b, label=f"sum >= {b}")
        ],
    )


def conv_cone_relaxation(n, b) -> ConstraintSystem:
    sys = conv_cone_system(n, b)
    sys.integrality = {v: "continuous" for v in sys.variables}
    return sys


def conv_cone_simplex(h, b=1) -> Certificate:
    """Split h = g + v with g = b·h/‖h‖₁ on the face Σx = b; g is laid out
    by the floor/fraction chain, v as consecutive height-1 rectangles on
    ℝ₊ whose cells are the unit rays."""
    b = rat(b)
    if not (is_integral(b) and b >= 1):
        raise DomainError("right-hand side must be a positive integer")
    h = _check_simplex_point(h, b, GE, "conv-cone")
    n = len(h)
    norm = sum(h, R0)
    g = [v * b / norm for v in h]
    v = [hv - gv for hv, gv in zip(h, g)]
    convex_sets, _ = _floor_frac_chain(g)
    conic_sets = []
    r = R0
    for width in v:
        if width > 0:
            conic_sets.append(RectSet(RAY, [Rect(r, r + width, 1)]))
            r += width
        else:
            conic_sets.append(RectSet(RAY))
    system = conv_cone_system(n, b)
    unit_rays = [
        tuple(R1 if d == i else R0 for d in range(n)) for i in range(n)
    ]
    return Certificate(
        system=system,
        convex=dict(zip(system.variables, convex_sets)),
        conic=dict(zip(system.variables, conic_sets)),
        rays=unit_rays,
        target=h,
        meta={"family": "conv-cone", "b": int(b)},
    )


# ---------------------------------------------------------------------------
# Unit ball centred at (1, 1)
# ---------------------------------------------------------------------------

BALL_CENTER = (R1, R1)
BALL_RADIUS = R1


def ball_system() -> ConstraintSystem:
    return ConstraintSystem(
        variables=["x1", "x2"],
        integrality={"x1": "continuous", "x2": "continuous"},
        bounds={"x1": (R0, rat(2)), "x2": (R0, rat(2))},
        constraints=[QuadraticBall(BALL_CENTER, BALL_RADIUS, EQ)],
    )


def ball_relaxation() -> ConstraintSystem:
    sys = ball_system()
    sys.constraints = [QuadraticBall(BALL_CENTER, BALL_RADIUS, LE)]
    return sys


def ball(h, digits=40) -> Certificate:
    """Chord of the circle at height h_2: endpoints v¹ <= v², mixed so that
    λ·v¹ + (1-λ)·v² = h_1.  The roots are rational approximations at the
    requested precision; everything else stays exact."""
    h = tuple(rat(v) for v in h)
    hx, hy = h
    disc = R1 - (hy - R1) ** 2
    if disc < 0 or (hx - R1) ** 2 + (hy - R1) ** 2 > R1:
        raise PreconditionError("ball: point outside the unit ball")
    s = sqrt_approx(disc, digits)
    v1, v2 = R1 - s, R1 + s
    if v1 == v2:
        sets = [_block(v1), _block(hy)]
    else:
        lam = (v2 - hx) / (v2 - v1)
        s1 = _block(v1, R0, lam).stack_union(_block(v2, lam, R1))
        sets = [s1, _block(hy)]
    system = ball_system()
    return Certificate(
        system=system,
        convex=dict(zip(system.variables, sets)),
        target=h,
        meta={"family": "ball", "digits": digits},
    )


# ---------------------------------------------------------------------------
# Uncapacitated lot-sizing (production-plan polytope)
# ---------------------------------------------------------------------------

@dataclass
class LotSizingInstance:
    demands: list

    def __post_init__(self):
        self.demands = [rat(d) for d in self.demands]
        if not self.demands or any(d < 0 for d in self.demands):
            raise DomainError("demands must be nonnegative and nonempty")

    @property
    def n(self):
        return len(self.demands)

    def variables(self):
        names = [f"y{u+1}" for u in range(self.n)]
        names += [
            f"w_{u+1}_{j+1}"
            for u in range(self.n)
            for j in range(u, self.n)
        ]
        return names

    def wname(self, u, j):
        return f"w_{u+1}_{j+1}"

    def rows(self):
        rows = []
        for j in range(self.n):
            rows.append(
                Linear(
                    tuple((self.wname(u, j), 1) for u in range(j + 1)),
                    EQ,
                    self.demands[j],
                    label=f"period {j+1} demand",
                )
            )
        for u in range(self.n):
            for j in range(u, self.n):
                rows.append(
                    Linear(
                        ((self.wname(u, j), 1), (f"y{u+1}", -self.demands[j])),
                        LE,
                        0,
                        label=f"w_{u+1}_{j+1} <= d_{j+1}·y_{u+1}",
                    )
                )
        return rows

    def system(self, relaxed=False) -> ConstraintSystem:
        names = self.variables()
        integrality = {v: "continuous" for v in names}
        bounds = {}
        for u in range(self.n):
            if not relaxed:
                integrality[f"y{u+1}"] = "binary"
            bounds[f"y{u+1}"] = (R0, R1)
        for u in range(self.n):
            for j in range(u, self.n):
                bounds[self.wname(u, j)] = (R0, None)
        return ConstraintSystem(
            variables=names,
            integrality=integrality,
            bounds=bounds,
            constraints=self.rows(),
        )


def _plan_point(inst: LotSizingInstance, pattern, servers):
    """Full variable vector of one integral plan: open periods per the
    pattern, each positive demand served entirely by its chosen server."""
    n = inst.n
    names = inst.variables()
    point = {v: R0 for v in names}
    for u in pattern:
        point[f"y{u+1}"] = R1
    for j, u in servers.items():
        point[inst.wname(u, j)] = inst.demands[j]
    return tuple(point[v] for v in names)


@dataclass
class PlanDecomposition:
    """Either an exact convex combination of integral plans or a separating
    functional proving the point lies outside their hull."""

    parts: list = None  # [(weight, plan point)]
    separator: object = None


def decompose_into_plans(inst: LotSizingInstance, h, max_rounds=2000) -> PlanDecomposition:
    """Exact convex decomposition of h into integral production plans by
    column generation.

    The master is a pure feasibility LP over plan weights; its Farkas
    multipliers price new plans, and the pricing problem is solved exactly
    by enumerating open-period patterns and picking the best server per
    demand period.  When pricing proves that no plan column can help, the
    multipliers separate h from the hull of integral plans (the printed
    relaxation is strictly weaker than that hull when zero-demand periods
    are interleaved, so this case is reachable) and they are returned as a
    separating functional."""
    from .lp import OPTIMAL, Separator, _solve_standard

    n = inst.n
    names = inst.variables()
    h = [rat(v) for v in h]
    positive = [j for j in range(n) if inst.demands[j] > 0]
    yind = {u: k for k, u in enumerate(range(n))}
    # seed column: self-serving plan (every period open)
    columns = [
        _plan_point(inst, set(range(n)), {j: j for j in positive})
    ]
    patterns = []
    for mask in range(1 << n):
        pattern = {u for u in range(n) if mask >> u & 1}
        if all(any(u <= j for u in pattern) for j in positive):
            patterns.append(pattern)
    b = h + [R1]
    for _ in range(max_rounds):
        A = [[col[d] for col in columns] for d in range(len(names))]
        A.append([R1] * len(columns))
        status, xs, duals = _solve_standard(A, b, [R0] * len(columns))
        if status == OPTIMAL:
            return PlanDecomposition(
                parts=[(w, columns[k]) for k, w in enumerate(xs) if w > 0]
            )
        vy = duals[: n]
        vw = duals[n: len(names)]
        sigma = duals[len(names)]
        widx = {}
        k = 0
        for u in range(n):
            for j in range(u, n):
                widx[(u, j)] = k
                k += 1
        best_score, best_col = None, None
        for pattern in patterns:
            score = sum((vy[yind[u]] for u in pattern), R0) + sigma
            servers = {}
            for j in positive:
                options = [u for u in pattern if u <= j]
                u_best = max(options, key=lambda u: vw[widx[(u, j)]])
                servers[j] = u_best
                score += inst.demands[j] * vw[widx[(u_best, j)]]
            if best_score is None or score > best_score:
                best_score = score
                best_col = _plan_point(inst, pattern, servers)
        if best_score <= 0:
            # the multipliers separate h from every plan
            return PlanDecomposition(
                separator=Separator(list(duals[: len(names)]), duals[len(names)])
            )
        columns.append(best_col)
    raise HullcertError("internal error: plan column generation did not converge")


def lot_sizing(inst: LotSizingInstance, h, mode="repaired", rng=None) -> Certificate:
    """Production-plan certificate.

    Paper mode transcribes the literal routine: y-sets left-anchored, each
    w-set a single rectangle over the same window.  It does not satisfy the
    per-period demand characterization in general (see the n=2, d=(0,2)
    regression).  Repaired mode decomposes the point into integral
    production plans by exact column generation, lays the plans out as
    consecutive windows (fixing y-windows that cover every demand period),
    then assigns the w-heights per window through one exact transportation
    problem per period.  Points of the printed relaxation that lie outside
    the hull of integral plans (possible when zero-demand periods are
    interleaved) are rejected with the separating multipliers' verdict.
    """
    if mode not in ("paper", "repaired"):
        raise ModeError(f"unknown lot-sizing mode {mode!r}")
    system = inst.system()
    names = inst.variables()
    h = tuple(rat(v) for v in h)
    _require_in(inst.system(relaxed=True), h, "lot-sizing")
    hmap = dict(zip(names, h))
    n = inst.n

    sets = {}
    if mode == "paper":
        for u in range(n):
            hy = hmap[f"y{u+1}"]
            sets[f"y{u+1}"] = _block(1, R0, hy)
            for j in range(u, n):
                hw = hmap[inst.wname(u, j)]
                sets[inst.wname(u, j)] = (
                    _block(hw / hy, R0, hy) if hy > 0 else RectSet(UNIT)
                )
    else:
        decomposition = decompose_into_plans(inst, h)
        if decomposition.parts is None:
            raise PreconditionError(
                "lot-sizing: point satisfies the printed relaxation but lies "
                "outside the hull of integral production plans (the "
                "relaxation is not tight when zero-demand periods are "
                "interleaved), so no certificate exists"
            )
        windows = []  # (a, b, plan point)
        pos = R0
        for lam, point in decomposition.parts:
            windows.append((pos, pos + lam, point))
            pos += lam
        yidx = [system.index(f"y{u+1}") for u in range(n)]
        for u in range(n):
            pieces = [
                Rect(a, b, 1) for a, b, point in windows if point[yidx[u]] == 1
            ]
            sets[f"y{u+1}"] = RectSet(UNIT, pieces)
            for j in range(u, n):
                sets[inst.wname(u, j)] = RectSet(UNIT)
        for j in range(n):
            if inst.demands[j] == 0:
                continue
            d = inst.demands[j]
            cols = list(range(j + 1))
            supplies = [(b - a) * d for a, b, _ in windows]
            demands = [hmap[inst.wname(u, j)] for u in cols]
            allowed = [
                (k, u)
                for k, (_, _, point) in enumerate(windows)
                for u in cols
                if point[yidx[u]] == 1
            ]
            res = transportation_feasible(supplies, demands, allowed)
            if isinstance(res, TransportInfeasible):
                raise HullcertError(
                    "internal error: per-period transportation infeasible "
                    "although the decomposed plans witness a feasible flow"
                )
            for (k, u), amount in res.cells.items():
                a, b, _ = windows[k]
                sets[inst.wname(u, j)] = sets[inst.wname(u, j)].stack_union(
                    RectSet(UNIT, [Rect(a, b, amount / (b - a))])
                )

    ordered = {v: sets[v] for v in names}
    return Certificate(
        system=system,
        convex=ordered,
        target=h,
        meta={"family": "lot-sizing", "mode": mode},
    )


# ---------------------------------------------------------------------------
# Total unimodularity witnesses
# ---------------------------------------------------------------------------

@dataclass
class IncidenceInstance:
    """Bipartite graph with one integer variable per node and one row
    x_u + x_w <= b_uw per edge."""

    left: list
    right: list
    edges: list  # (left node, right node, rhs)

    def __post_init__(self):
        self.edges = [(u, w, rat(b)) for u, w, b in self.edges]
        for u, w, b in self.edges:
            if u not in self.left or w not in self.right:
                raise DomainError(f"edge ({u}, {w}) not across the bipartition")
            if not is_integral(b):
                raise DomainError("edge right-hand sides must be integral")

    def node_names(self):
        return list(self.left) + list(self.right)

    def system(self, relaxed=False) -> ConstraintSystem:
        names = self.node_names()
        rows = [
            Linear(((u, 1), (w, 1)), LE, b, label=f"{u} + {w} <= {b}")
            for u, w, b in self.edges
        ]
        return ConstraintSystem(
            variables=names,
            integrality={
                v: "continuous" if relaxed else "integer" for v in names
            },
            bounds={v: (R0, None) for v in names},
            constraints=rows,
        )


def incidence_tu(inst: IncidenceInstance, h) -> Certificate:
    """Floor blocks everywhere; fractional height-1 windows anchored left on
    one side and right on the other, so opposed windows overlap only when
    the fractional parts force it."""
    names = inst.node_names()
    h = tuple(rat(v) for v in h)
    _require_in(inst.system(relaxed=True), h, "incidence-tu")
    hmap = dict(zip(names, h))
    sets = {}
    for u in inst.left:
        v = hmap[u]
        sets[u] = _block(rfloor(v)).stack_union(_block(1, R0, rfrac(v)))
    for w in inst.right:
        v = hmap[w]
        sets[w] = _block(rfloor(v)).stack_union(_block(1, R1 - rfrac(v), R1))
    return Certificate(
        system=inst.system(),
        convex={v: sets[v] for v in names},
        target=h,
        meta={"family": "incidence-tu"},
    )


@dataclass
class IntervalMatrixInstance:
    """0/1 matrix with consecutive ones per row; rows read A x <= b."""

    matrix: list
    b: list

    def __post_init__(self):
        self.b = [rat(v) for v in self.b]
        if len(self.matrix) != len(self.b):
            raise DomainError("matrix and right-hand side sizes differ")
        width = len(self.matrix[0]) if self.matrix else 0
        for row, rhs in zip(self.matrix, self.b):
            if len(row) != width or any(v not in (0, 1) for v in row):
                raise DomainError("matrix must be rectangular over {0, 1}")
            ones = [i for i, v in enumerate(row) if v == 1]
            if ones and ones[-1] - ones[0] + 1 != len(ones):
                raise ModeError("matrix row has non-consecutive ones")
            if not ones and rhs < 0:
                raise DomainError("all-zero row with negative right-hand side")
        if any(not is_integral(v) for v in self.b):
            raise DomainError("right-hand sides must be integral")

    @property
    def ncols(self):
        return len(self.matrix[0]) if self.matrix else 0

    def system(self, relaxed=False) -> ConstraintSystem:
        names = [f"x{i+1}" for i in range(self.ncols)]
        rows = [
            Linear(
                tuple((names[i], 1) for i, v in enumerate(row) if v == 1),
                LE,
                rhs,
                label=f"row {j+1}",
            )
            for j, (row, rhs) in enumerate(zip(self.matrix, self.b))
            if any(row)
        ]
        return ConstraintSystem(
            variables=names,
            integrality={
                v: "continuous" if relaxed else "integer" for v in names
            },
            bounds={v: (R0, None) for v in names},
            constraints=rows,
        )


def interval_matrix_tu(inst: IntervalMatrixInstance, h) -> Certificate:
    """Floor blocks plus height-1 fractional windows chained consecutively
    across the columns, so each row's windows stay consecutive modulo 1."""
    h = tuple(rat(v) for v in h)
    _require_in(inst.system(relaxed=True), h, "interval-matrix-tu")
    sets, _ = _floor_frac_chain(h)
    system = inst.system()
    return Certificate(
        system=system,
        convex=dict(zip(system.variables, sets)),
        target=h,
        meta={"family": "interval-tu"},
    )


# ---------------------------------------------------------------------------
# Piecewise-linear function models
# ---------------------------------------------------------------------------

@dataclass
class PwlInstance:
    breakpoints: list  # B_0 = 0 < B_1 < ... < B_n
    values: list  # F_i = f(B_i), F_0 = 0

    def __post_init__(self):
        self.breakpoints = [rat(v) for v in self.breakpoints]
        self.values = [rat(v) for v in self.values]
        if len(self.breakpoints) != len(self.values):
            raise DomainError("breakpoints and values differ in length")
        if len(self.breakpoints) < 2:
            raise DomainError("at least two breakpoints required")
        if self.breakpoints[0] != 0 or self.values[0] != 0:
            raise DomainError("breakpoints must start at (0, 0)")
        if any(
            a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])
        ):
            raise DomainError("breakpoints must be strictly increasing")

    @property
    def segments(self):
        return len(self.breakpoints) - 1

    def mcm_variables(self):
        return ["x", "y", "z"] + [f"lam{i}" for i in range(len(self.breakpoints))]

    def mcm_system(self, relaxed=False) -> ConstraintSystem:
        names = self.mcm_variables()
        B, F = self.breakpoints, self.values
        lam = [f"lam{i}" for i in range(len(B))]
        rows = [
            Linear(
                (("x", 1),) + tuple((lam[i], -B[i]) for i in range(len(B)) if B[i] != 0),
                EQ,
                0,
                label="x matches the breakpoint mix",
            ),
            Linear(
                (("y", 1),) + tuple((lam[i], -F[i]) for i in range(len(B)) if F[i] != 0),
                EQ,
                0,
                label="y matches the value mix",
            ),
            Linear(
                (("z", 1),) + tuple((v, -1) for v in lam),
                EQ,
                0,
                label="z totals the weights",
            ),
        ]
        integrality = {v: "continuous" for v in names}
        if not relaxed:
            integrality["z"] = "binary"
            rows.append(Sos2(tuple(lam)))
        bounds = {"x": (None, None), "y": (None, None), "z": (R0, R1)}
        for v in lam:
            bounds[v] = (R0, R1)
        return ConstraintSystem(
            variables=names,
            integrality=integrality,
            bounds=bounds,
            constraints=rows,
        )

    def im_variables(self):
        n = self.segments
        return (
            ["x", "y", "z"]
            + [f"d{i+1}" for i in range(n)]
            + [f"b{i+1}" for i in range(n - 1)]
        )

    def im_system(self, relaxed=False) -> ConstraintSystem:
        n = self.segments
        names = self.im_variables()
        B, F = self.breakpoints, self.values
        rows = [
            Linear(
                (("x", 1),)
                + tuple(
                    (f"d{i+1}", -(B[i + 1] - B[i]))
                    for i in range(n)
                    if B[i + 1] != B[i]
                ),
                EQ,
                0,
                label="x matches the filled widths",
            ),
            Linear(
                (("y", 1),)
                + tuple(
                    (f"d{i+1}", -(F[i + 1] - F[i]))
                    for i in range(n)
                    if F[i + 1] != F[i]
                ),
                EQ,
                0,
                label="y matches the filled heights",
            ),
            Linear((("d1", 1), ("z", -1)), LE, 0, label="d1 <= z"),
        ]
        for i in range(n - 1):
            rows.append(
                Linear(
                    ((f"d{i+2}", 1), (f"b{i+1}", -1)),
                    LE,
                    0,
                    label=f"d{i+2} <= b{i+1}",
                )
            )
            rows.append(
                Linear(
                    ((f"b{i+1}", 1), (f"d{i+1}", -1)),
                    LE,
                    0,
                    label=f"b{i+1} <= d{i+1}",
                )
            )
        integrality = {v: "continuous" for v in names}
        if not relaxed:
            integrality["z"] = "binary"
            for i in range(n - 1):
                integrality[f"b{i+1}"] = "binary"
        bounds = {"x": (None, None), "y": (None, None), "z": (R0, R1)}
        for i in range(n):
            bounds[f"d{i+1}"] = (R0, R1)
        for i in range(n - 1):
            bounds[f"b{i+1}"] = (R0, R1)
        return ConstraintSystem(
            variables=names,
            integrality=integrality,
            bounds=bounds,
            constraints=rows,
        )


def pwl_mcm(inst: PwlInstance, h) -> Certificate:
    """Weight sets consecutive height-1 from 0; x and y stack breakpoint and
    value heights over the same windows; z is a height-1 block of width
    equal to the total weight."""
    system = inst.mcm_system()
    h = tuple(rat(v) for v in h)
    _require_in(inst.mcm_system(relaxed=True), h, "pwl-mcm")
    hmap = dict(zip(system.variables, h))
    B, F = inst.breakpoints, inst.values
    sets = {"x": RectSet(UNIT), "y": RectSet(UNIT)}
    pos = R0
    for i in range(len(B)):
        w = hmap[f"lam{i}"]
        sets[f"lam{i}"] = _block(1, pos, pos + w)
        sets["x"] = sets["x"].stack_union(_block(B[i], pos, pos + w))
        sets["y"] = sets["y"].stack_union(_block(F[i], pos, pos + w))
        pos += w
    sets["z"] = _block(1, R0, hmap["z"])
    return Certificate(
        system=system,
        convex={v: sets[v] for v in system.variables},
        target=h,
        meta={"family": "pwl", "variant": "mcm"},
    )


def pwl_incremental(inst: PwlInstance, h) -> Certificate:
    """Fill sets nested at 0 with height 1; x and y get prefix-sum heights
    B_i and F_i on the bands [h_{d_{i+1}}, h_{d_i})."""
    n = inst.segments
    system = inst.im_system()
    h = tuple(rat(v) for v in h)
    _require_in(inst.im_system(relaxed=True), h, "pwl-incremental")
    hmap = dict(zip(system.variables, h))
    B, F = inst.breakpoints, inst.values
    d = [hmap[f"d{i+1}"] for i in range(n)] + [R0]
    sets = {"x": RectSet(UNIT), "y": RectSet(UNIT)}
    for i in range(n):
        sets[f"d{i+1}"] = _block(1, R0, d[i])
        sets["x"] = sets["x"].stack_union(_block(B[i + 1], d[i + 1], d[i]))
        sets["y"] = sets["y"].stack_union(_block(F[i + 1], d[i + 1], d[i]))
    sets["z"] = _block(1, R0, hmap["z"])
    for i in range(n - 1):
        sets[f"b{i+1}"] = _block(1, R0, hmap[f"b{i+1}"])
    return Certificate(
        system=system,
        convex={v: sets[v] for v in system.variables},
        target=h,
        meta={"family": "pwl", "variant": "incremental"},
    )
