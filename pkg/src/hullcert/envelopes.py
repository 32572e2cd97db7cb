"""Convex and concave envelopes of Boolean-combination and bilinear
functions over polytopal domains.

The support functional Ω measures where a Boolean combination of set
indicators holds; the overlap functional M (rectangles.bilinear_overlap)
realizes bilinear terms.  Envelope values are computed two independent
ways: an exact LP over the enumerated domain generators (the oracle) and
an exact LP over a candidate polytope's rows; hull equivalence means the
two agree everywhere, with closed-form witness sets attaining the bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainError
from .intervals import IntervalSet, cells, wrap_place
from .lp import OPTIMAL, UNBOUNDED, LinearProgram, solve, _solve_standard
from .rational import R0, R1, rat
from .rectangles import UNIT, Rect, RectSet, bilinear_overlap


@dataclass(frozen=True)
class TruthTable:
    """Boolean function {0,1}^arity -> {0,1} as the set of accepted rows."""

    arity: int
    accepted: frozenset

    def __call__(self, bits):
        if len(bits) != self.arity:
            raise DomainError(
                f"truth table arity {self.arity}, got {len(bits)} arguments"
            )
        return 1 if tuple(int(b) for b in bits) in self.accepted else 0

    @staticmethod
    def from_function(arity, fn, guard=20):
        if arity > guard:
            raise DomainError(f"truth table arity {arity} above guard {guard}")
        rows = [
            bits
            for bits in itertools.product((0, 1), repeat=arity)
            if fn(*bits)
        ]
        return TruthTable(arity, frozenset(rows))

    @staticmethod
    def conjunction(arity=2):
        return TruthTable.from_function(arity, lambda *b: all(b))

    @staticmethod
    def disjunction(arity=2):
        return TruthTable.from_function(arity, lambda *b: any(b))

    @staticmethod
    def exclusive_or(arity=2):
        return TruthTable.from_function(arity, lambda *b: sum(b) % 2 == 1)


def omega(sets, psi: TruthTable):
    """Total width of the cells whose 0/1 indicator profile satisfies psi."""
    sets = list(sets)
    if psi.arity != len(sets):
        raise DomainError("one set per truth-table argument required")
    total = R0
    for a, b in cells(sets).cells():
        profile = tuple(s.indicator(a) for s in sets)
        if psi(profile):
            total += b - a
    return total


@dataclass(frozen=True)
class BooleanTermFunction:
    """f(x) = Σ coeff_i · Ψ_i(x over vars_i) for 0/1 points x."""

    terms: tuple  # ((coeff, TruthTable, var index tuple), ...)

    def value(self, point):
        total = R0
        for coeff, psi, vars_ in self.terms:
            total += rat(coeff) * psi(tuple(point[v] for v in vars_))
        return total

    def omega_value(self, sets):
        total = R0
        for coeff, psi, vars_ in self.terms:
            total += rat(coeff) * omega([sets[v] for v in vars_], psi)
        return total


@dataclass(frozen=True)
class BilinearFunction:
    """f(x) = Σ a_ij · x_i · x_j over index pairs i < j."""

    terms: tuple  # ((i, j, coeff), ...)

    def value(self, point):
        total = R0
        for i, j, a in self.terms:
            total += rat(a) * point[i] * point[j]
        return total

    def overlap_value(self, sets):
        total = R0
        for i, j, a in self.terms:
            total += rat(a) * bilinear_overlap(sets[i], sets[j])
        return total


@dataclass
class GraphHull:
    """Domain generators, function values, and a candidate polytope for the
    hull of the function graph.

    The candidate P lives over (x_1..x_n, y_1..y_k); rows carry separate
    x- and y-coefficient maps.  The objective functional is a·y.
    """

    n: int
    points: list  # generators of T = conv(points)
    fvalues: list  # f at each generator
    k: int = 1
    a: tuple = ((0, rat(1)),)  # sparse objective over y
    rows: list = field(default_factory=list)  # (xcoeffs, ycoeffs, sense, rhs)
    name: str = ""

    def __post_init__(self):
        self.points = [tuple(rat(v) for v in p) for p in self.points]
        self.fvalues = [rat(v) for v in self.fvalues]


def envelope_oracle(hull: GraphHull, x):
    """Exact envelope pair (vex, cav) at x by LP over the enumerated
    generators: optimize Σ λ_ξ f(ξ) with Σ λ_ξ ξ = x, Σ λ_ξ = 1, λ >= 0."""
    x = tuple(rat(v) for v in x)
    m = len(hull.points)
    A = [[p[d] for p in hull.points] for d in range(hull.n)]
    A.append([R1] * m)
    b = list(x) + [R1]
    out = []
    for sign in (R1, -R1):
        status, xs, _ = _solve_standard(A, b, [sign * v for v in hull.fvalues])
        if status != OPTIMAL:
            raise DomainError(f"point {x} outside the domain hull")
        out.append(sum((l * v for l, v in zip(xs, hull.fvalues)), R0))
    return out[0], out[1]


def candidate_bounds(hull: GraphHull, x):
    """Exact (lb, ub) at x by LP over the candidate polytope with the
    x-variables fixed."""
    x = tuple(rat(v) for v in x)
    lp = LinearProgram(hull.k)
    for j in range(hull.k):
        lp.set_bounds(j, None, None)
    for xc, yc, sense, rhs in hull.rows:
        shift = sum((rat(c) * x[i] for i, c in xc.items()), R0)
        if yc:
            lp.add_row({j: rat(c) for j, c in yc.items()}, sense, rat(rhs) - shift)
        else:
            ok = (
                shift <= rhs
                if sense == "<="
                else shift >= rhs
                if sense == ">="
                else shift == rhs
            )
            if not ok:
                raise DomainError(f"candidate polytope empty at {x}")
    objective = [R0] * hull.k
    for j, c in hull.a:
        objective[j] = rat(c)
    out = []
    for sense in ("min", "max"):
        lp.objective = list(objective)
        lp.sense = sense
        res = solve(lp)
        if res.status == UNBOUNDED:
            raise DomainError(f"candidate bound unbounded at {x}")
        if res.status != OPTIMAL:
            raise DomainError(f"candidate polytope empty at {x}")
        out.append(res.value)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Worked hulls and their closed-form witness constructions
# ---------------------------------------------------------------------------

def hull_product_ge1(weakened=False) -> GraphHull:
    """Binary product x1·x2 with the candidate restricted to the covering
    region x1 + x2 >= 1.

    The generator set is the full Boolean square: over the three covering
    points alone the multipliers at any x are uniquely determined and the
    two envelopes collapse, which contradicts the McCormick candidate rows;
    the stated envelope functions are those of the box hull cut by the
    covering inequality, so samples are drawn from that region.  The
    weakened variant drops z >= x1 + x2 - 1, opening a gap at (1, 1)."""
    points = [(0, 0), (0, 1), (1, 0), (1, 1)]
    rows = [
        ({}, {0: 1}, ">=", 0),
        ({0: -1}, {0: 1}, "<=", 0),
        ({1: -1}, {0: 1}, "<=", 0),
        ({0: 1, 1: 1}, {}, ">=", 1),
        ({0: 1}, {}, "<=", 1),
        ({1: 1}, {}, "<=", 1),
    ]
    if not weakened:
        rows.insert(1, ({0: -1, 1: -1}, {0: 1}, ">=", -1))
    return GraphHull(
        n=2,
        points=points,
        fvalues=[p[0] * p[1] for p in points],
        rows=rows,
        name="product over x1+x2>=1" + (" (weakened)" if weakened else ""),
    )


def hull_max(n) -> GraphHull:
    """max(x_1, ..., x_n) over the unit box."""
    points = list(itertools.product((0, 1), repeat=n))
    rows = [({i: -1 for i in range(n)}, {0: 1}, "<=", 0), ({}, {0: 1}, "<=", 1)]
    for i in range(n):
        rows.append(({i: 1}, {0: -1}, "<=", 0))
    for i in range(n):
        rows.append(({i: 1}, {}, "<=", 1))
        rows.append(({i: 1}, {}, ">=", 0))
    return GraphHull(
        n=n,
        points=points,
        fvalues=[max(p) for p in points],
        rows=rows,
        name=f"max of {n} binaries",
    )


def hull_bilinear_box(u1, u2) -> GraphHull:
    """x1·x2 over the box [0, u1] × [0, u2] (scaled McCormick rows)."""
    u1, u2 = rat(u1), rat(u2)
    points = [(R0, R0), (u1, R0), (R0, u2), (u1, u2)]
    rows = [
        ({0: -u2}, {0: 1}, "<=", 0),
        ({1: -u1}, {0: 1}, "<=", 0),
        ({}, {0: 1}, ">=", 0),
        ({0: -u2, 1: -u1}, {0: 1}, ">=", -u1 * u2),
        ({0: 1}, {}, "<=", u1),
        ({0: 1}, {}, ">=", 0),
        ({1: 1}, {}, "<=", u2),
        ({1: 1}, {}, ">=", 0),
    ]
    return GraphHull(
        n=2,
        points=points,
        fvalues=[p[0] * p[1] for p in points],
        rows=rows,
        name=f"bilinear box u=({u1}, {u2})",
    )


def witness_sets_boolean(family, x, side):
    """Closed-form witness interval sets for the worked Boolean hulls.

    family "product-ge1": minimum side anchors the second set at 1 so the
    overlap shrinks to x1 + x2 - 1; maximum side aligns both at 0.
    family "max": minimum side aligns all sets at 0; maximum side chains
    them consecutively modulo 1.
    """
    x = [rat(v) for v in x]
    if side not in ("min", "max"):
        raise DomainError(f"side must be min or max, got {side!r}")
    if family == "product-ge1":
        if len(x) != 2:
            raise DomainError("product witness takes two coordinates")
        if side == "max":
            return [IntervalSet.of(R0, x[0]), IntervalSet.of(R0, x[1])]
        return [IntervalSet.of(R0, x[0]), IntervalSet.of(R1 - x[1], R1)]
    if family == "max":
        if side == "min":
            return [IntervalSet.of(R0, v) for v in x]
        sets = []
        r = R0
        for v in x:
            if v == R1:
                sets.append(IntervalSet.full())
                continue
            window, r = wrap_place(r if r < R1 else R0, v)
            sets.append(window)
        return sets
    raise DomainError(f"no boolean witness family {family!r}")


def witness_sets_bilinear(u1, u2, x, side):
    """Closed-form witness rectangle sets for x1·x2 over [0,u1] × [0,u2]:
    aligned height-u_i rectangles for the maximum side, the second one
    right-anchored for the minimum side."""
    u1, u2 = rat(u1), rat(u2)
    x1, x2 = rat(x[0]), rat(x[1])
    if not (R0 <= x1 <= u1 and R0 <= x2 <= u2):
        raise DomainError("witness point outside the box")
    w1, w2 = x1 / u1, x2 / u2
    s1 = RectSet(UNIT, [Rect(R0, w1, u1)]) if w1 > 0 else RectSet(UNIT)
    if side == "max":
        s2 = RectSet(UNIT, [Rect(R0, w2, u2)]) if w2 > 0 else RectSet(UNIT)
    elif side == "min":
        s2 = RectSet(UNIT, [Rect(R1 - w2, R1, u2)]) if w2 > 0 else RectSet(UNIT)
    else:
        raise DomainError(f"side must be min or max, got {side!r}")
    return s1, s2


def product_witness_value(x, side):
    return omega(
        witness_sets_boolean("product-ge1", x, side), TruthTable.conjunction(2)
    )


def max_witness_value(n):
    psi = TruthTable.disjunction(n)
    return lambda x, side: omega(witness_sets_boolean("max", x, side), psi)


def bilinear_witness_value(u1, u2):
    return lambda x, side: bilinear_overlap(
        *witness_sets_bilinear(u1, u2, x, side)
    )


@dataclass
class HullSample:
    x: tuple
    vex: object
    cav: object
    lb: object
    ub: object
    witness_min: object = None
    witness_max: object = None

    @property
    def ok(self):
        if self.vex != self.lb or self.cav != self.ub:
            return False
        if self.witness_min is not None and self.witness_min != self.vex:
            return False
        if self.witness_max is not None and self.witness_max != self.cav:
            return False
        return True


@dataclass
class HullReport:
    hull: str
    samples: list
    gaps: list  # (x, description)

    @property
    def ok(self):
        return not self.gaps and all(s.ok for s in self.samples)


def hull_equivalence_check(hull: GraphHull, xs, witness=None) -> HullReport:
    """Compare the envelope oracle against the candidate bounds at every
    sample, and check witness attainment when a witness evaluator is given.

    witness: callable (x, side) -> scalar value of the witness construction.
    """
    samples = []
    gaps = []
    for x in xs:
        x = tuple(rat(v) for v in x)
        vex, cav = envelope_oracle(hull, x)
        try:
            lb, ub = candidate_bounds(hull, x)
        except DomainError as exc:
            gaps.append((x, str(exc)))
            continue
        wmin = wmax = None
        if witness is not None:
            wmin = witness(x, "min")
            wmax = witness(x, "max")
        sample = HullSample(x, vex, cav, lb, ub, wmin, wmax)
        samples.append(sample)
        if not sample.ok:
            gaps.append(
                (
                    x,
                    f"vex={vex} lb={lb} cav={cav} ub={ub}"
                    + (f" wmin={wmin} wmax={wmax}" if witness else ""),
                )
            )
    return HullReport(hull.name, samples, gaps)


def grid(n, step, scales=None):
    """Rational grid over [0, scale_i]^n with the given step fraction."""
    step = rat(step)
    count = int(R1 / step)
    axes = []
    for i in range(n):
        scale = rat(scales[i]) if scales else R1
        axes.append([scale * step * k for k in range(count + 1)])
    return list(itertools.product(*axes))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def hull_to_json(hull: GraphHull):
    from .rational import fmt_rat

    return {
        "n": hull.n,
        "k": hull.k,
        "name": hull.name,
        "points": [[fmt_rat(v) for v in p] for p in hull.points],
        "fvalues": [fmt_rat(v) for v in hull.fvalues],
        "objective": {str(j): fmt_rat(c) for j, c in hull.a},
        "rows": [
            {
                "x": {str(i): fmt_rat(rat(c)) for i, c in xc.items()},
                "y": {str(j): fmt_rat(rat(c)) for j, c in yc.items()},
                "sense": sense,
                "rhs": fmt_rat(rat(rhs)),
            }
            for xc, yc, sense, rhs in hull.rows
        ],
    }


def hull_from_json(data) -> GraphHull:
    from .rational import parse_rat

    return GraphHull(
        n=int(data["n"]),
        k=int(data.get("k", 1)),
        name=data.get("name", ""),
        points=[tuple(parse_rat(v) for v in p) for p in data["points"]],
        fvalues=[parse_rat(v) for v in data["fvalues"]],
        a=tuple(
            (int(j), parse_rat(c)) for j, c in data.get("objective", {"0": "1"}).items()
        ),
        rows=[
            (
                {int(i): parse_rat(c) for i, c in row.get("x", {}).items()},
                {int(j): parse_rat(c) for j, c in row.get("y", {}).items()},
                row["sense"],
                parse_rat(row["rhs"]),
            )
            for row in data["rows"]
        ],
    )


def report_to_json(report: HullReport):
    from .rational import fmt_rat

    return {
        "hull": report.hull,
        "ok": report.ok,
        "samples": [
            {
                "x": [fmt_rat(v) for v in s.x],
                "vex": fmt_rat(s.vex),
                "cav": fmt_rat(s.cav),
                "lb": fmt_rat(s.lb),
                "ub": fmt_rat(s.ub),
                **(
                    {
                        "witness_min": fmt_rat(s.witness_min),
                        "witness_max": fmt_rat(s.witness_max),
                    }
                    if s.witness_min is not None
                    else {}
                ),
                "ok": s.ok,
            }
            for s in report.samples
        ],
        "gaps": [
            {"x": [fmt_rat(v) for v in x], "detail": detail}
            for x, detail in report.gaps
        ],
    }
