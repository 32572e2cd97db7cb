"""Independent membership oracle for construction families.

A point is screened against the family's relaxation first: any violated
linear row (or variable bound) is itself an exact separating functional,
since every feasible point satisfies it; a violated ball constraint yields
a rational tangent separator.  Points inside the relaxation are then
decided by the exact membership LP over the enumerated generators when the
family is enumerable."""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import GE, Linear, QuadraticBall
from .errors import DomainError
from .lp import Separator, membership
from .rational import R0, rat, sqrt_bounds


@dataclass
class OracleAnswer:
    inside: object  # True / False / None (relaxation passed, not enumerable)
    method: str
    weights: list = None
    ray_weights: list = None
    separator: Separator = None


def _row_separator(system, constraint, h):
    n = len(system.variables)
    if isinstance(constraint, Linear):
        w = [R0] * n
        for v, c in constraint.coeffs:
            w[system.index(v)] = c
        value = sum((wi * hi for wi, hi in zip(w, h)), R0)
        if constraint.sense == GE or (constraint.sense == "=" and value < constraint.rhs):
            w = [-wi for wi in w]
            return Separator(w, constraint.rhs)
        return Separator(w, -constraint.rhs)
    if isinstance(constraint, QuadraticBall):
        # rational tangent-like cut: a·x <= a·c + r·|a| is valid on the
        # ball; pick a rational bound strictly between that and a·h
        a = [hi - ci for hi, ci in zip(h, constraint.center)]
        norm_sq = sum((ai * ai for ai in a), R0)
        shift = sum((ai * ci for ai, ci in zip(a, constraint.center)), R0)
        for digits in (40, 120, 400):
            _, hi_bound = sqrt_bounds(norm_sq, digits=digits)
            beta = shift + constraint.radius * hi_bound
            sep = Separator(a, -beta)
            if sep.value(h) > 0:
                return sep
        raise DomainError("point too close to the ball boundary to separate")
    raise DomainError(f"no separator rule for {constraint.describe()}")


def _bound_separator(system, h):
    for j, v in enumerate(system.variables):
        lo, hi = system.bounds[v]
        n = len(system.variables)
        if lo is not None and h[j] < lo:
            w = [R0] * n
            w[j] = rat(-1)
            return Separator(w, lo)
        if hi is not None and h[j] > hi:
            w = [R0] * n
            w[j] = rat(1)
            return Separator(w, -hi)
    return None


def oracle_check(fam, inst, h, mode=None) -> OracleAnswer:
    """Decide membership of h in the hull of the family's feasible set."""
    relaxation = fam.relaxation(inst, mode)
    h = tuple(rat(v) for v in h)
    sep = _bound_separator(relaxation, h)
    if sep is not None:
        return OracleAnswer(False, "violated variable bound", separator=sep)
    for c in relaxation.constraints:
        if not relaxation.evaluate(c, h).satisfied:
            return OracleAnswer(
                False,
                f"violated row: {c.describe()}",
                separator=_row_separator(relaxation, c, h),
            )
    gens = fam.generators(inst, mode)
    if gens is None:
        decided = fam.decide_membership(inst, h, mode)
        if decided is None:
            return OracleAnswer(None, "relaxation satisfied; family not enumerable")
        inside, separator = decided
        if inside:
            return OracleAnswer(True, "family decision procedure")
        if separator is not None and separator.value(h) <= 0:
            raise DomainError("family separator does not cut the point off")
        return OracleAnswer(
            False, "family decision procedure", separator=separator
        )
    points, rays = gens
    res = membership(points, rays, h)
    if res.inside:
        return OracleAnswer(
            True, "membership LP", weights=res.weights, ray_weights=res.ray_weights
        )
    return OracleAnswer(False, "membership LP (Farkas)", separator=res.separator)
