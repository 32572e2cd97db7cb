"""Convex-hull certificates and their verification and decomposition.

A certificate names one rectangle set over U per variable (the convex
part), optionally one rectangle set over ℝ₊ per variable plus generating
rays (the conic part of polyhedral certificates), and a target point.  It
is valid when every coordinate's total signed measure equals the target
coordinate, every convex profile cell is feasible, and every conic profile
cell lies in the cone of the declared rays.  Valid certificates decompose
into explicit convex (and conic) combinations by grouping cells with equal
height vectors.

Verification is mandatory before extraction; constructions never
self-certify.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constraints import CellFailure, characterization_report
from .errors import CertificateError, DomainError, InputError
from .lp import OPTIMAL, _solve_standard, membership
from .rational import R0, R1, fmt_rat, parse_rat, rat
from .rectangles import RAY, UNIT, RectSet, profile


@dataclass
class Certificate:
    system: object  # ConstraintSystem defining the integer feasible set
    convex: dict  # var -> RectSet over base U
    target: tuple
    conic: dict = None  # var -> RectSet over base R+, polyhedral mode only
    rays: tuple = None  # generating rays of the recession cone
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.target = tuple(rat(v) for v in self.target)
        names = self.system.variables
        if set(self.convex) != set(names):
            raise InputError("convex part must name every system variable")
        if any(s.base != UNIT for s in self.convex.values()):
            raise InputError("convex sets must live over base U")
        if self.conic is not None:
            if set(self.conic) != set(names):
                raise InputError("conic part must name every system variable")
            if any(s.base != RAY for s in self.conic.values()):
                raise InputError("conic sets must live over base R+")
            if not self.rays:
                raise InputError("polyhedral certificates must declare rays")
            self.rays = tuple(tuple(rat(v) for v in z) for z in self.rays)

    def convex_sets(self):
        return [self.convex[v] for v in self.system.variables]

    def conic_sets(self):
        return [self.conic[v] for v in self.system.variables]

    def to_json(self):
        out = {
            "target": [fmt_rat(v) for v in self.target],
            "convex": {v: self.convex[v].to_json() for v in self.system.variables},
        }
        if self.conic is not None:
            out["conic"] = {v: self.conic[v].to_json() for v in self.system.variables}
            out["rays"] = [[fmt_rat(x) for x in z] for z in self.rays]
        if self.meta:
            out["meta"] = self.meta
        return out

    @staticmethod
    def from_json(data, system):
        missing = [v for v in system.variables if v not in data.get("convex", {})]
        if missing:
            raise InputError(
                f"certificate lacks convex sets for {', '.join(missing)}"
            )
        convex = {
            v: RectSet.from_json(data["convex"][v], UNIT) for v in system.variables
        }
        conic = None
        rays = None
        if "conic" in data:
            missing = [v for v in system.variables if v not in data["conic"]]
            if missing:
                raise InputError(
                    f"certificate lacks conic sets for {', '.join(missing)}"
                )
            conic = {
                v: RectSet.from_json(data["conic"][v], RAY) for v in system.variables
            }
            rays = [tuple(parse_rat(x) for x in z) for z in data.get("rays", [])]
        return Certificate(
            system=system,
            convex=convex,
            target=tuple(parse_rat(v) for v in data["target"]),
            conic=conic,
            rays=rays,
            meta=data.get("meta", {}),
        )


@dataclass
class VerificationReport:
    measure_failures: list  # (var, target, measured)
    cell_failures: list  # CellFailure from the characterization check
    conic_failures: list  # ((a, b|None), height vector)
    mode: str = "strict"

    @property
    def ok(self):
        return not (
            self.measure_failures or self.cell_failures or self.conic_failures
        )

    def lines(self):
        if self.ok:
            yield "verification: pass"
            return
        yield "verification: FAIL"
        for var, want, got in self.measure_failures:
            yield f"  measure[{var}]: expected {fmt_rat(want)}, got {fmt_rat(got)}"
        for f in self.cell_failures:
            a, b = f.cell
            cell = f"[{fmt_rat(a)}, {fmt_rat(b) if b is not None else '∞'})"
            yield f"  cell {cell}: violates {f.reason}"
        for cell, vec in self.conic_failures:
            a, b = cell
            span = f"[{fmt_rat(a)}, {fmt_rat(b) if b is not None else '∞'})"
            yield f"  conic cell {span}: {tuple(map(fmt_rat, vec))} outside cone of rays"


def verify(cert: Certificate, tol=R0, membership_mode="strict", hull_points=None,
           hull_rays=None) -> VerificationReport:
    """Check measures, per-cell feasibility, and conic cone membership.

    In strict mode a convex cell passes when its height vector satisfies the
    constraint system with integrality; in conv mode membership in the hull
    of the supplied points (plus rays) is decided by exact LP instead.
    """
    system = cert.system
    measure_failures = []
    for i, var in enumerate(system.variables):
        total = cert.convex[var].signed_measure()
        if cert.conic is not None:
            total += cert.conic[var].signed_measure()
        want = cert.target[i]
        if abs(total - want) > tol:
            measure_failures.append((var, want, total))

    if membership_mode == "strict":
        cell_failures = list(
            characterization_report(system, cert.convex_sets(), tol).failures
        )
    elif membership_mode == "conv":
        if hull_points is None:
            raise DomainError("conv mode requires the hull points")
        cell_failures = []
        for cell, vec in profile(cert.convex_sets()):
            res = membership(hull_points, hull_rays or [], vec)
            if not res.inside:
                cell_failures.append(CellFailure(cell, "conv(F) membership"))
    else:
        raise DomainError(f"unknown membership mode {membership_mode!r}")

    conic_failures = []
    if cert.conic is not None:
        for cell, vec in profile(cert.conic_sets(), base=RAY):
            if all(v == 0 for v in vec):
                continue
            if not _in_cone(vec, cert.rays):
                conic_failures.append((cell, vec))
    return VerificationReport(
        measure_failures, cell_failures, conic_failures, membership_mode
    )


def _in_cone(vec, rays):
    """Exact feasibility of Σ η_ζ ζ = vec with η >= 0."""
    n = len(vec)
    A = [[z[d] for z in rays] for d in range(n)]
    status, _, _ = _solve_standard(A, list(vec), [R0] * len(rays))
    return status == OPTIMAL


@dataclass
class ConvexCombination:
    """Explicit combination Σ λ_ξ ξ (+ Σ η_ζ ζ) with positive weights and
    Σ λ_ξ = 1."""

    support: list  # [(point tuple, weight)]
    rays: list = field(default_factory=list)  # [(ray tuple, weight)]

    def __post_init__(self):
        total = R0
        for point, lam in self.support:
            if lam <= 0:
                raise InputError("support weights must be positive")
            total += lam
        if self.support and total != R1:
            raise InputError(f"support weights sum to {total}, expected 1")
        for _, eta in self.rays:
            if eta <= 0:
                raise InputError("ray weights must be positive")

    def to_json(self):
        return {
            "support": [
                {"point": [fmt_rat(x) for x in p], "weight": fmt_rat(w)}
                for p, w in self.support
            ],
            "rays": [
                {"ray": [fmt_rat(x) for x in z], "weight": fmt_rat(w)}
                for z, w in self.rays
            ],
        }

    @staticmethod
    def from_json(data):
        return ConvexCombination(
            support=[
                (tuple(parse_rat(x) for x in e["point"]), parse_rat(e["weight"]))
                for e in data["support"]
            ],
            rays=[
                (tuple(parse_rat(x) for x in e["ray"]), parse_rat(e["weight"]))
                for e in data.get("rays", [])
            ],
        )


def extract(cert: Certificate, tol=R0, report=None, **verify_kwargs) -> ConvexCombination:
    """Explicit convex (and conic) combination of a verified certificate.

    Cells with identical height vectors are grouped; each group's weight is
    its total width.  Raises CertificateError when verification fails.
    """
    if report is None:
        report = verify(cert, tol, **verify_kwargs)
    if not report.ok:
        raise CertificateError(
            "cannot extract from a failing certificate:\n"
            + "\n".join(report.lines())
        )
    support = _group(profile(cert.convex_sets()))
    rays = []
    if cert.conic is not None:
        rays = _group(profile(cert.conic_sets(), base=RAY), skip_zero=True)
    return ConvexCombination(support=support, rays=rays)


def _group(prof, skip_zero=False):
    order = []
    weights = {}
    for (a, b), vec in prof:
        if b is None:
            continue  # unbounded residual cell carries no weight
        if skip_zero and all(v == 0 for v in vec):
            continue
        if vec not in weights:
            order.append(vec)
            weights[vec] = R0
        weights[vec] += b - a
    return [(vec, weights[vec]) for vec in order if weights[vec] > 0]


def reconstruct(comb: ConvexCombination):
    """Σ λ_ξ ξ + Σ η_ζ ζ, exact."""
    dims = len(comb.support[0][0]) if comb.support else len(comb.rays[0][0])
    out = [R0] * dims
    for point, lam in comb.support:
        for d, x in enumerate(point):
            out[d] += lam * x
    for ray, eta in comb.rays:
        for d, x in enumerate(ray):
            out[d] += eta * x
    return tuple(out)


def height_one_certificate(system, interval_sets, target, meta=None):
    """Certificate whose sets are height-1 lifts of interval sets (the 0/1
    special case)."""
    convex = {
        v: RectSet.lift(s, 1) for v, s in zip(system.variables, interval_sets)
    }
    return Certificate(
        system=system, convex=convex, target=tuple(target), meta=meta or {}
    )
