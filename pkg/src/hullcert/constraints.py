"""Declarative constraint systems describing integer feasible sets.

A ConstraintSystem holds the variables, their integrality and bounds, and a
list of constraints (linear rows, exact products x_i·x_j = x_k, quadratic
balls, and SOS2 adjacency conditions).  Evaluating the constraints at the
height vector of a profile cell realizes set characterizations
operationally: a family of rectangle sets characterizes the feasible set
exactly when every cell's height vector is feasible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainError, EnumerationTooLargeError, InputError
from .rational import R0, fmt_rat, is_integral, parse_rat, rat
from .rectangles import profile

LE, GE, EQ = "<=", ">=", "="


@dataclass(frozen=True)
class Linear:
    """Sparse linear row  Σ coeffs[v]·x_v  sense  rhs."""

    coeffs: tuple  # tuple of (var, coefficient)
    sense: str
    rhs: object
    label: str = ""

    def __post_init__(self):
        if self.sense not in (LE, GE, EQ):
            raise InputError(f"bad sense {self.sense!r}")
        if not self.coeffs:
            raise InputError("empty linear row")
        object.__setattr__(
            self, "coeffs", tuple((v, rat(c)) for v, c in self.coeffs)
        )
        object.__setattr__(self, "rhs", rat(self.rhs))

    def describe(self):
        if self.label:
            return self.label
        lhs = " + ".join(f"{fmt_rat(c)}·{v}" for v, c in self.coeffs)
        return f"{lhs} {self.sense} {fmt_rat(self.rhs)}"


@dataclass(frozen=True)
class Product:
    """Exact product constraint x_i · x_j = x_k."""

    i: str
    j: str
    k: str

    def describe(self):
        return f"{self.i}·{self.j} = {self.k}"


@dataclass(frozen=True)
class QuadraticBall:
    """Σ (x_v - center_v)²  sense  radius², over all system variables."""

    center: tuple
    radius: object
    sense: str

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(rat(c) for c in self.center))
        object.__setattr__(self, "radius", rat(self.radius))
        if self.sense not in (LE, EQ):
            raise InputError(f"ball sense must be {LE} or {EQ}")

    def describe(self):
        return f"ball(center={tuple(map(fmt_rat, self.center))}, r={fmt_rat(self.radius)}, {self.sense})"


@dataclass(frozen=True)
class Sos2:
    """At most two of the listed variables positive, and adjacent in order."""

    vars: tuple

    def describe(self):
        return f"sos2({', '.join(self.vars)})"


@dataclass(frozen=True)
class EvalResult:
    satisfied: bool
    slack: object = None  # signed violation; None when satisfied


@dataclass
class ConstraintSystem:
    variables: list
    integrality: dict = field(default_factory=dict)  # var -> binary|integer|continuous
    bounds: dict = field(default_factory=dict)  # var -> (lo, hi); None = unbounded
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        self.variables = list(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}
        for v in self.variables:
            self.integrality.setdefault(v, "continuous")
            kind = self.integrality[v]
            if kind == "binary":
                self.bounds.setdefault(v, (R0, rat(1)))
            else:
                self.bounds.setdefault(v, (None, None))
        for c in self.constraints:
            for v in _referenced(c):
                if v not in self._index:
                    raise InputError(f"constraint references unknown variable {v}")

    def index(self, var):
        return self._index[var]

    def coordinate(self, point, var):
        return point[self._index[var]]

    # -- evaluation --------------------------------------------------------

    def evaluate(self, constraint, point, tol=R0) -> EvalResult:
        """Exact satisfaction check of one constraint at a point; a
        violation reports its signed slack."""
        if len(point) != len(self.variables):
            raise DomainError(
                f"point dimension {len(point)} != system dimension {len(self.variables)}"
            )
        if isinstance(constraint, Linear):
            lhs = R0
            for v, c in constraint.coeffs:
                lhs += c * self.coordinate(point, v)
            return _compare(lhs, constraint.sense, constraint.rhs, tol)
        if isinstance(constraint, Product):
            lhs = self.coordinate(point, constraint.i) * self.coordinate(
                point, constraint.j
            )
            return _compare(lhs, EQ, self.coordinate(point, constraint.k), tol)
        if isinstance(constraint, QuadraticBall):
            lhs = R0
            for v, c in zip(self.variables, constraint.center):
                d = self.coordinate(point, v) - c
                lhs += d * d
            return _compare(lhs, constraint.sense, constraint.radius**2, tol)
        if isinstance(constraint, Sos2):
            vals = [self.coordinate(point, v) for v in constraint.vars]
            pos = [i for i, x in enumerate(vals) if x > tol]
            ok = len(pos) <= 1 or (len(pos) == 2 and pos[1] - pos[0] == 1)
            return EvalResult(ok, None if ok else rat(len(pos)))
        raise InputError(f"unknown constraint kind {constraint!r}")

    def check_bounds(self, point, tol=R0):
        if len(point) != len(self.variables):
            raise DomainError(
                f"point dimension {len(point)} != system dimension {len(self.variables)}"
            )
        for v in self.variables:
            lo, hi = self.bounds[v]
            x = self.coordinate(point, v)
            if lo is not None and x < lo - tol:
                return EvalResult(False, lo - x)
            if hi is not None and x > hi + tol:
                return EvalResult(False, x - hi)
        return EvalResult(True)

    def check_integrality(self, point, tol=R0):
        """Integral variables must take integer values (binary: 0/1)."""
        for v in self.variables:
            if self.integrality[v] == "continuous":
                continue
            x = self.coordinate(point, v)
            if tol > R0:
                near = rat(round(float(x)))
                if abs(x - near) > tol:
                    return EvalResult(False, x - near)
            elif not is_integral(x):
                return EvalResult(False, x)
        return EvalResult(True)

    def point_in_relaxation(self, h, tol=R0) -> bool:
        """Membership in H: all constraints and bounds, integrality relaxed."""
        if not self.check_bounds(h, tol).satisfied:
            return False
        return all(self.evaluate(c, h, tol).satisfied for c in self.constraints)

    def point_feasible(self, h, tol=R0) -> bool:
        """Membership in the integer feasible set (constraints, bounds, and
        integrality)."""
        return (
            self.check_integrality(h, tol).satisfied
            and self.check_bounds(h, tol).satisfied
            and all(self.evaluate(c, h, tol).satisfied for c in self.constraints)
        )

    def violated_constraint(self, h, tol=R0):
        """First violated bound or constraint at h, or None."""
        r = self.check_bounds(h, tol)
        if not r.satisfied:
            return "variable bounds", r
        for c in self.constraints:
            r = self.evaluate(c, h, tol)
            if not r.satisfied:
                return c.describe(), r
        return None

    # -- enumeration -------------------------------------------------------

    def implied_upper(self, var):
        """Upper bound on var implied by a <=-row with nonnegative
        coefficients over lower-bounded variables, or None."""
        best = None
        for c in self.constraints:
            if not isinstance(c, Linear) or c.sense != LE:
                continue
            coeffs = dict(c.coeffs)
            if coeffs.get(var, R0) <= 0:
                continue
            slack = c.rhs
            usable = True
            for w, q in coeffs.items():
                if w == var:
                    continue
                lo, _hi = self.bounds[w]
                if q < 0 or lo is None:
                    usable = False
                    break
                slack -= q * lo
            if usable:
                bound = slack / coeffs[var]
                best = bound if best is None else min(best, bound)
        return best

    def enumerate_feasible(self, box=None, cap=10**7):
        """All integer points of the box satisfying every constraint, in
        lexicographic order.  The box defaults to the finite variable
        bounds, falling back to upper bounds implied by <=-rows."""
        ranges = []
        for v in self.variables:
            if box is not None and v in box:
                lo, hi = box[v]
            else:
                lo, hi = self.bounds[v]
                if hi is None:
                    hi = self.implied_upper(v)
                if lo is None or hi is None:
                    raise DomainError(
                        f"variable {v} needs a finite enumeration range"
                    )
            ranges.append(range(int(lo), int(hi) + 1))
        size = 1
        for r in ranges:
            size *= len(r)
            if size > cap:
                raise EnumerationTooLargeError(
                    f"enumeration box exceeds cap {cap}"
                )
        out = []
        for xs in itertools.product(*ranges):
            point = tuple(rat(x) for x in xs)
            if all(self.evaluate(c, point).satisfied for c in self.constraints):
                if self.check_bounds(point).satisfied:
                    out.append(point)
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self):
        cons = []
        for c in self.constraints:
            if isinstance(c, Linear):
                cons.append(
                    {
                        "kind": "linear",
                        "coeffs": {v: fmt_rat(q) for v, q in c.coeffs},
                        "sense": c.sense,
                        "rhs": fmt_rat(c.rhs),
                    }
                )
            elif isinstance(c, Product):
                cons.append({"kind": "product", "i": c.i, "j": c.j, "k": c.k})
            elif isinstance(c, QuadraticBall):
                cons.append(
                    {
                        "kind": "ball",
                        "center": [fmt_rat(x) for x in c.center],
                        "radius": fmt_rat(c.radius),
                        "sense": c.sense,
                    }
                )
            elif isinstance(c, Sos2):
                cons.append({"kind": "sos2", "vars": list(c.vars)})
        return {
            "variables": list(self.variables),
            "integrality": dict(self.integrality),
            "bounds": {
                v: [None if x is None else fmt_rat(x) for x in self.bounds[v]]
                for v in self.variables
            },
            "constraints": cons,
        }

    @staticmethod
    def from_json(data):
        cons = []
        for c in data.get("constraints", []):
            kind = c["kind"]
            if kind == "linear":
                cons.append(
                    Linear(
                        tuple((v, parse_rat(q)) for v, q in c["coeffs"].items()),
                        c["sense"],
                        parse_rat(c["rhs"]),
                    )
                )
            elif kind == "product":
                cons.append(Product(c["i"], c["j"], c["k"]))
            elif kind == "ball":
                cons.append(
                    QuadraticBall(
                        tuple(parse_rat(x) for x in c["center"]),
                        parse_rat(c["radius"]),
                        c["sense"],
                    )
                )
            elif kind == "sos2":
                cons.append(Sos2(tuple(c["vars"])))
            else:
                raise InputError(f"unknown constraint kind {kind!r}")
        bounds = {
            v: tuple(None if x is None else parse_rat(x) for x in b)
            for v, b in data.get("bounds", {}).items()
        }
        return ConstraintSystem(
            variables=list(data["variables"]),
            integrality=dict(data.get("integrality", {})),
            bounds=bounds,
            constraints=cons,
        )


def to_linear_program(system: ConstraintSystem):
    """LinearProgram over the system's rows and bounds (integrality
    relaxed).  Only linear constraints are representable."""
    from .lp import LinearProgram

    lp = LinearProgram(len(system.variables))
    for j, v in enumerate(system.variables):
        lo, hi = system.bounds[v]
        lp.set_bounds(j, lo, hi)
    for c in system.constraints:
        if not isinstance(c, Linear):
            raise DomainError(f"non-linear constraint {c.describe()} in LP conversion")
        lp.add_row({system.index(v): q for v, q in c.coeffs}, c.sense, c.rhs)
    return lp


def _compare(lhs, sense, rhs, tol):
    if sense == LE:
        ok = lhs <= rhs + tol
    elif sense == GE:
        ok = lhs >= rhs - tol
    else:
        ok = abs(lhs - rhs) <= tol
    return EvalResult(ok, None if ok else lhs - rhs)


def _referenced(constraint):
    if isinstance(constraint, Linear):
        return [v for v, _ in constraint.coeffs]
    if isinstance(constraint, Product):
        return [constraint.i, constraint.j, constraint.k]
    if isinstance(constraint, QuadraticBall):
        return []
    if isinstance(constraint, Sos2):
        return list(constraint.vars)
    raise InputError(f"unknown constraint kind {constraint!r}")


@dataclass(frozen=True)
class CellFailure:
    cell: tuple  # (a, b) with b possibly None
    reason: str
    slack: object = None


@dataclass
class CharacterizationReport:
    """Per-cell, per-constraint outcome of a set characterization check."""

    cells: list  # [((a, b), height vector)]
    failures: list  # [CellFailure]

    @property
    def ok(self):
        return not self.failures


def characterization_report(system, sets, tol=R0) -> CharacterizationReport:
    """Evaluate every constraint, the integrality of integral variables, and
    the variable bounds on every profile cell of one RectSet per variable."""
    if len(sets) != len(system.variables):
        raise DomainError("one rectangle set per variable required")
    prof = profile(sets)
    failures = []
    for cell, vec in prof:
        r = system.check_integrality(vec, tol)
        if not r.satisfied:
            failures.append(CellFailure(cell, "integrality", r.slack))
        r = system.check_bounds(vec, tol)
        if not r.satisfied:
            failures.append(CellFailure(cell, "variable bounds", r.slack))
        for c in system.constraints:
            r = system.evaluate(c, vec, tol)
            if not r.satisfied:
                failures.append(CellFailure(cell, c.describe(), r.slack))
    return CharacterizationReport(cells=prof, failures=failures)
