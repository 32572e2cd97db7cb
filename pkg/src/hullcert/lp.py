"""Exact rational linear programming.

A two-phase tableau simplex with Bland's anti-cycling rule over exact
rationals.  Used three ways: transportation feasibility subproblems inside
constructions, the brute-force membership/decomposition oracle, and
envelope bound computations.  Desk-scale sizes make exactness affordable;
infeasibility always comes with verified Farkas multipliers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import DomainError, HullcertError
from .rational import R0, R1, rat

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LinearProgram:
    """min/max objective·x subject to sparse rows and variable bounds.

    Bounds default to x >= 0; use set_bounds(j, None, None) for free
    variables.
    """

    n: int
    objective: list = None
    sense: str = "min"
    rows: list = field(default_factory=list)  # (coeffs dict, sense, rhs)
    lower: list = None
    upper: list = None

    def __post_init__(self):
        if self.objective is None:
            self.objective = [R0] * self.n
        self.objective = [rat(c) for c in self.objective]
        if self.lower is None:
            self.lower = [R0] * self.n
        if self.upper is None:
            self.upper = [None] * self.n

    def add_row(self, coeffs, sense, rhs):
        if sense not in (LE, GE, EQ):
            raise DomainError(f"bad row sense {sense!r}")
        self.rows.append(({j: rat(c) for j, c in coeffs.items()}, sense, rat(rhs)))

    def set_bounds(self, j, lo, hi):
        self.lower[j] = None if lo is None else rat(lo)
        self.upper[j] = None if hi is None else rat(hi)

    def row_value(self, coeffs, x):
        return sum((c * x[j] for j, c in coeffs.items()), R0)


@dataclass
class FarkasCertificate:
    """Multipliers proving infeasibility.

    Signs: row_mults[i] <= 0 for <=-rows, >= 0 for >=-rows, free for =;
    lower_mults[j] >= 0, upper_mults[j] <= 0.  The combination
    Σ row_mults·row + Σ bound_mults·x cancels every variable while its
    right-hand side stays positive.
    """

    row_mults: list
    lower_mults: dict
    upper_mults: dict

    def verify(self, lp: LinearProgram) -> bool:
        combined = [R0] * lp.n
        total = R0
        for y, (coeffs, sense, rhs) in zip(self.row_mults, lp.rows):
            if sense == LE and y > 0:
                return False
            if sense == GE and y < 0:
                return False
            for j, c in coeffs.items():
                combined[j] += y * c
            total += y * rhs
        for j, m in self.lower_mults.items():
            if m < 0 or lp.lower[j] is None:
                return False
            combined[j] += m
            total += m * lp.lower[j]
        for j, m in self.upper_mults.items():
            if m > 0 or lp.upper[j] is None:
                return False
            combined[j] += m
            total += m * lp.upper[j]
        return all(c == 0 for c in combined) and total > 0


@dataclass
class LpResult:
    status: str
    x: list = None
    value: object = None
    farkas: FarkasCertificate = None
    ray: list = None


def _pivot(T, basis, r, j):
    piv = T[r][j]
    inv = R1 / piv
    T[r] = [v * inv for v in T[r]]
    for i in range(len(T)):
        if i != r and T[i][j] != 0:
            f = T[i][j]
            Tr = T[r]
            T[i] = [a - f * b for a, b in zip(T[i], Tr)]
    basis[r] = j


def _reduced_costs(T, basis, c, ncols):
    d = list(c)
    for i, bi in enumerate(basis):
        cb = c[bi]
        if cb != 0:
            for j in range(ncols):
                d[j] -= cb * T[i][j]
    return d


def _run_simplex(T, basis, c, ncols, allowed):
    """Bland-rule simplex on tableau T (last column = rhs).

    Returns None on optimality or the entering column index on
    unboundedness.
    """
    m = len(T)
    while True:
        d = _reduced_costs(T, basis, c, ncols)
        enter = -1
        for j in range(ncols):
            if allowed[j] and d[j] < 0:
                enter = j
                break
        if enter < 0:
            return None
        leave, best = -1, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best, leave = ratio, i
        if leave < 0:
            return enter
        _pivot(T, basis, leave, enter)


def _solve_standard(A, b, c):
    """min c·x s.t. Ax = b, x >= 0, exact.

    Returns (status, x, y) where y are the duals (OPTIMAL) or Farkas
    multipliers with yᵀA <= 0, yᵀb > 0 (INFEASIBLE); for UNBOUNDED returns
    (status, x_feasible, ray).
    """
    m, n = len(A), len(c)
    signs = []
    T = []
    for i in range(m):
        row = list(A[i])
        rhs = b[i]
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            signs.append(-1)
        else:
            signs.append(1)
        T.append(row + [R0] * m + [rhs])
        T[i][n + i] = R1
    ncols = n + m
    basis = [n + i for i in range(m)]

    phase1 = [R0] * n + [R1] * m
    allowed = [True] * ncols
    _run_simplex(T, basis, phase1, ncols, allowed)
    d1 = _reduced_costs(T, basis, phase1, ncols)
    obj1 = sum((phase1[bi] * T[i][-1] for i, bi in enumerate(basis)), R0)
    if obj1 > 0:
        # y_i = 1 - reduced cost of artificial i, flipped back for negated rows
        y = [(R1 - d1[n + i]) * signs[i] for i in range(m)]
        return INFEASIBLE, None, y

    # drive remaining artificials out of the basis; drop redundant rows
    drop = []
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if T[i][j] != 0), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(T, basis, i, piv)
    if drop:
        T = [row for i, row in enumerate(T) if i not in drop]
        basis = [bi for i, bi in enumerate(basis) if i not in drop]

    for j in range(n, ncols):
        allowed[j] = False
    phase2 = list(c) + [R0] * m
    enter = _run_simplex(T, basis, phase2, ncols, allowed)
    x = [R0] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][-1]
    if enter is not None:
        ray = [R0] * n
        ray[enter] = R1
        for i, bi in enumerate(basis):
            if bi < n:
                ray[bi] = -T[i][enter]
        return UNBOUNDED, x, ray
    d2 = _reduced_costs(T, basis, phase2, ncols)
    y = [-d2[n + i] * signs[i] for i in range(len(signs))]
    return OPTIMAL, x, y


class _Encoding:
    """Standard-form encoding of a LinearProgram.

    Finite lower bounds are shifted out, upper bounds become extra rows,
    free variables are split, hi-only variables are mirrored.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        cols = []  # (var j, +1/-1 direction)
        self.var_cols = {}
        for j in range(lp.n):
            lo, hi = lp.lower[j], lp.upper[j]
            if lo is not None:
                self.var_cols[j] = (len(cols), 1, lo)
                cols.append((j, 1))
            elif hi is not None:
                self.var_cols[j] = (len(cols), -1, hi)
                cols.append((j, -1))
            else:
                self.var_cols[j] = (len(cols), 0, R0)
                cols.append((j, 1))
                cols.append((j, -1))
        self.cols = cols

        self.std_rows = []  # (kind, payload): ('row', i) or ('ub', j)
        rows = list(enumerate(lp.rows))
        n_struct = len(cols)
        slack_count = sum(1 for _, (_, s, _) in rows if s != EQ)
        ub_rows = [
            j
            for j in range(lp.n)
            if lp.lower[j] is not None and lp.upper[j] is not None
        ]
        slack_count += len(ub_rows)
        width = n_struct + slack_count
        A, b = [], []
        s_at = n_struct

        def encode_row(coeffs, rhs):
            row = [R0] * width
            const = rhs
            for j, c in coeffs.items():
                k, direction, base = self.var_cols[j]
                if direction == 0:
                    row[k] += c
                    row[k + 1] -= c
                elif direction == 1:
                    row[k] += c
                    const -= c * base
                else:
                    row[k] -= c
                    const -= c * base
            return row, const

        for i, (coeffs, sense, rhs) in rows:
            row, const = encode_row(coeffs, rhs)
            if sense == LE:
                row[s_at] = R1
                s_at += 1
            elif sense == GE:
                row[s_at] = -R1
                s_at += 1
            A.append(row)
            b.append(const)
            self.std_rows.append(("row", i))
        for j in ub_rows:
            row = [R0] * width
            k, _, base = self.var_cols[j]
            row[k] = R1
            row[s_at] = R1
            s_at += 1
            A.append(row)
            b.append(lp.upper[j] - base)
            self.std_rows.append(("ub", j))
        self.A, self.b = A, b
        self.n_struct = n_struct
        self.width = width

    def objective(self):
        c = [R0] * self.width
        sign = -R1 if self.lp.sense == "max" else R1
        for j in range(self.lp.n):
            k, direction, _ = self.var_cols[j]
            cj = sign * self.lp.objective[j]
            if direction == 0:
                c[k] += cj
                c[k + 1] -= cj
            elif direction == 1:
                c[k] += cj
            else:
                c[k] -= cj
        return c

    def decode_point(self, xs):
        x = [R0] * self.lp.n
        for j in range(self.lp.n):
            k, direction, base = self.var_cols[j]
            if direction == 0:
                x[j] = xs[k] - xs[k + 1]
            elif direction == 1:
                x[j] = base + xs[k]
            else:
                x[j] = base - xs[k]
        return x

    def decode_ray(self, rs):
        r = [R0] * self.lp.n
        for j in range(self.lp.n):
            k, direction, _ = self.var_cols[j]
            if direction == 0:
                r[j] = rs[k] - rs[k + 1]
            elif direction == 1:
                r[j] = rs[k]
            else:
                r[j] = -rs[k]
        return r

    def decode_farkas(self, y):
        lp = self.lp
        row_mults = [R0] * len(lp.rows)
        upper_mults = {}
        for yi, (kind, payload) in zip(y, self.std_rows):
            if kind == "row":
                row_mults[payload] = yi
            elif yi != 0:
                upper_mults[payload] = yi
        lower_mults = {}
        for j in range(lp.n):
            if lp.lower[j] is None:
                continue
            g = sum(
                (row_mults[i] * coeffs.get(j, R0) for i, (coeffs, _, _) in enumerate(lp.rows)),
                R0,
            ) + upper_mults.get(j, R0)
            if g != 0:
                lower_mults[j] = -g
        cert = FarkasCertificate(row_mults, lower_mults, upper_mults)
        if not cert.verify(lp):
            raise HullcertError("internal error: Farkas certificate failed verification")
        return cert


def solve(lp: LinearProgram) -> LpResult:
    """Exact optimum, verified Farkas infeasibility proof, or improving ray."""
    enc = _Encoding(lp)
    status, xs, extra = _solve_standard(enc.A, enc.b, enc.objective())
    if status == INFEASIBLE:
        return LpResult(INFEASIBLE, farkas=enc.decode_farkas(extra))
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, x=enc.decode_point(xs), ray=enc.decode_ray(extra))
    x = enc.decode_point(xs)
    value = sum((c * v for c, v in zip(lp.objective, x)), R0)
    return LpResult(OPTIMAL, x=x, value=value)


@dataclass
class Flow:
    cells: dict  # (row, col) -> amount


@dataclass
class TransportInfeasible:
    deficient_rows: list
    unreached_cols: list


def transportation_feasible(row_marginals, col_marginals, allowed):
    """Exact feasible flow with the given marginals supported on the allowed
    cells, by augmenting paths on the bipartite structure.

    Infeasibility returns the Hall violator: rows W and the columns outside
    N(W); those two groups witness Σ_W supply > Σ_N(W) capacity.
    """
    rows = [rat(v) for v in row_marginals]
    cols = [rat(v) for v in col_marginals]
    if any(v < 0 for v in rows + cols):
        raise DomainError("marginals must be nonnegative")
    if sum(rows, R0) != sum(cols, R0):
        raise DomainError("marginal sums differ")
    nr, nc = len(rows), len(cols)
    adj = [[] for _ in range(nr)]
    for i, j in allowed:
        adj[i].append(j)
    flow = {}
    col_used = [R0] * nc
    row_sent = [R0] * nr

    for start in range(nr):
        while row_sent[start] < rows[start]:
            # BFS over residual graph: rows -> allowed cols, cols -> rows
            # with positive flow.
            parent = {}
            seen_r, seen_c = {start}, set()
            queue = deque([("r", start)])
            target = None
            while queue and target is None:
                kind, v = queue.popleft()
                if kind == "r":
                    for j in adj[v]:
                        if j not in seen_c:
                            seen_c.add(j)
                            parent[("c", j)] = ("r", v)
                            if col_used[j] < cols[j]:
                                target = j
                                break
                            queue.append(("c", j))
                else:
                    for (i, j), f in flow.items():
                        if j == v and f > 0 and i not in seen_r:
                            seen_r.add(i)
                            parent[("r", i)] = ("c", v)
                            queue.append(("r", i))
            if target is None:
                w = sorted(seen_r)
                return TransportInfeasible(
                    deficient_rows=w,
                    unreached_cols=[j for j in range(nc) if j not in seen_c],
                )
            # bottleneck along the alternating path
            path = []
            node = ("c", target)
            while node != ("r", start):
                prev = parent[node]
                path.append((prev, node))
                node = prev
            path.reverse()
            bottleneck = rows[start] - row_sent[start]
            bottleneck = min(bottleneck, cols[target] - col_used[target])
            for prev, node in path:
                if prev[0] == "c" and node[0] == "r":
                    bottleneck = min(bottleneck, flow[(node[1], prev[1])])
            for prev, node in path:
                if prev[0] == "r" and node[0] == "c":
                    key = (prev[1], node[1])
                    flow[key] = flow.get(key, R0) + bottleneck
                else:
                    key = (node[1], prev[1])
                    flow[key] = flow[key] - bottleneck
            row_sent[start] += bottleneck
            col_used[target] += bottleneck
    return Flow({k: v for k, v in flow.items() if v != 0})


@dataclass
class Separator:
    """Affine functional w·x + w0 <= 0 valid on the hull, violated by h."""

    w: list
    w0: object

    def value(self, x):
        return sum((wi * xi for wi, xi in zip(self.w, x)), R0) + self.w0


@dataclass
class MembershipResult:
    inside: bool
    weights: list = None  # aligned with points
    ray_weights: list = None  # aligned with rays
    separator: Separator = None


def membership(points, rays, h) -> MembershipResult:
    """Exact decision of h ∈ conv(points) + cone(rays).

    Feasibility LP over the convex/conic multipliers; the no-case returns an
    exact separating functional from the Farkas multipliers.
    """
    points = [list(map(rat, p)) for p in points]
    rays = [list(map(rat, z)) for z in rays]
    h = list(map(rat, h))
    if not points:
        raise DomainError("membership requires at least one point")
    n = len(h)
    ncols = len(points) + len(rays)
    A = []
    for d in range(n):
        A.append([p[d] for p in points] + [z[d] for z in rays])
    A.append([R1] * len(points) + [R0] * len(rays))
    b = h + [R1]
    status, xs, y = _solve_standard(A, b, [R0] * ncols)
    if status == OPTIMAL:
        return MembershipResult(
            True, weights=xs[: len(points)], ray_weights=xs[len(points):]
        )
    w, w0 = y[:n], y[n]
    sep = Separator(w, w0)
    for p in points:
        if sep.value(p) > 0:
            raise HullcertError("internal error: separator fails on a point")
    for z in rays:
        if sum((wi * zi for wi, zi in zip(w, z)), R0) > 0:
            raise HullcertError("internal error: separator fails on a ray")
    if sep.value(h) <= 0:
        raise HullcertError("internal error: separator does not cut h off")
    return MembershipResult(False, separator=sep)


def random_objective(n, rng, span=20):
    return [rat(rng.randint(-span, span)) for _ in range(n)]


def sample_vertex(lp: LinearProgram, rng, tries=25):
    """Vertex of the feasible region via a random exact objective.

    When random signed objectives keep hitting recession directions, fall
    back to positive coefficients on lower-bounded variables (recession
    rays of such regions are nonnegative there, so the LP is bounded)."""
    for attempt in range(tries):
        if attempt < tries // 2:
            lp.objective = random_objective(lp.n, rng)
        else:
            lp.objective = [
                rat(rng.randint(1, 20)) if lp.lower[j] is not None else R0
                for j in range(lp.n)
            ]
        lp.sense = "min"
        res = solve(lp)
        if res.status == OPTIMAL:
            return res.x
        if res.status == INFEASIBLE:
            raise DomainError("cannot sample vertex of an infeasible system")
    raise DomainError("region appears unbounded in all sampled directions")


def decompose_in_polytope(lp: LinearProgram, h, rng, max_iter=None):
    """Exact convex decomposition of h into vertices of the polytope
    described by lp's rows and bounds (the objective is ignored).

    Peels one vertex of the current minimal face per iteration; each step
    adds a tight constraint, so it terminates well within rows + bounds
    iterations.
    """
    h = [rat(v) for v in h]
    g = list(h)
    budget = R1
    parts = []
    limit = max_iter or (len(lp.rows) + 2 * lp.n + 3)
    for _ in range(limit):
        face = LinearProgram(lp.n)
        face.lower = list(lp.lower)
        face.upper = list(lp.upper)
        for coeffs, sense, rhs in lp.rows:
            val = face.row_value(coeffs, g)
            if sense != EQ and val == rhs:
                face.add_row(coeffs, EQ, rhs)
            else:
                face.add_row(coeffs, sense, rhs)
        for j in range(lp.n):
            if lp.lower[j] is not None and g[j] == lp.lower[j]:
                face.upper[j] = lp.lower[j]
            if lp.upper[j] is not None and g[j] == lp.upper[j]:
                face.lower[j] = lp.upper[j]
        xi = sample_vertex(face, rng)
        if xi == g:
            parts.append((budget, tuple(g)))
            return parts
        d = [gv - xv for gv, xv in zip(g, xi)]
        step = None  # largest s with g + s·d feasible
        for coeffs, sense, rhs in lp.rows:
            dv = face.row_value(coeffs, d)
            gv = face.row_value(coeffs, g)
            if sense == LE and dv > 0 or sense == GE and dv < 0:
                s = (rhs - gv) / dv
                step = s if step is None else min(step, s)
        for j in range(lp.n):
            if d[j] > 0 and lp.upper[j] is not None:
                s = (lp.upper[j] - g[j]) / d[j]
                step = s if step is None else min(step, s)
            if d[j] < 0 and lp.lower[j] is not None:
                s = (lp.lower[j] - g[j]) / d[j]
                step = s if step is None else min(step, s)
        if step is None or step < 0:
            raise HullcertError("internal error: unbounded peeling direction")
        lam = step / (R1 + step)  # g = lam·xi + (1-lam)·g'
        parts.append((budget * lam, tuple(xi)))
        g = [gv + step * dv for gv, dv in zip(g, d)]
        budget *= R1 - lam
    raise HullcertError("internal error: vertex peeling did not terminate")
