"""Signed-height rectangle algebra over a base Q ∈ {[0,1), ℝ₊}.

A Rect is an axis-parallel rectangle with half-open footprint [a, b) and
nonzero signed height c; its signed area is (b - a)·c.  A RectSet is a
finite union of rectangles with pairwise disjoint footprints, kept in
canonical form (sorted, adjacent equal-height rectangles merged).  The
height-1 restriction recovers the interval algebra exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .intervals import IntervalSet
from .rational import R0, R1, fmt_rat, parse_rat, rat

UNIT = "U"
RAY = "R+"


@dataclass(frozen=True)
class Rect:
    a: object
    b: object
    c: object

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "c", rat(self.c))
        if not self.a < self.b:
            raise DomainError(f"degenerate rectangle [{self.a}, {self.b})")
        if self.c == 0:
            raise DomainError("zero-height rectangle")

    def area(self):
        return (self.b - self.a) * self.c


class RectSet:
    """Finite union of non-overlapping signed-height rectangles."""

    __slots__ = ("base", "rects")

    def __init__(self, base, rects=()):
        if base not in (UNIT, RAY):
            raise DomainError(f"unknown base {base!r}")
        rs = sorted(
            (r if isinstance(r, Rect) else Rect(*r) for r in rects),
            key=lambda r: r.a,
        )
        norm = []
        for r in rs:
            if r.a < R0 or (base == UNIT and r.b > R1):
                raise DomainError(f"rectangle [{r.a}, {r.b}) outside base {base}")
            if norm and r.a < norm[-1].b:
                raise DomainError(f"overlapping rectangles at {r.a}")
            if norm and r.a == norm[-1].b and r.c == norm[-1].c:
                norm[-1] = Rect(norm[-1].a, r.b, r.c)
            else:
                norm.append(r)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "rects", tuple(norm))

    def __setattr__(self, *_):
        raise AttributeError("RectSet is immutable")

    @staticmethod
    def empty(base=UNIT):
        return RectSet(base)

    @staticmethod
    def lift(s: IntervalSet, height=1, base=UNIT):
        """Interval set embedded as height-c rectangles."""
        height = rat(height)
        if height == 0:
            return RectSet(base)
        return RectSet(base, [Rect(a, b, height) for a, b in s.pieces])

    def footprint(self) -> IntervalSet:
        if self.base != UNIT:
            raise DomainError("footprint as IntervalSet requires base U")
        return IntervalSet([(r.a, r.b) for r in self.rects])

    def signed_measure(self):
        m = R0
        for r in self.rects:
            m += r.area()
        return m

    def height_at(self, t):
        t = rat(t)
        if t < R0 or (self.base == UNIT and t >= R1):
            raise DomainError(f"{t} outside base {self.base}")
        for r in self.rects:
            if r.a <= t < r.b:
                return r.c
            if t < r.a:
                return R0
        return R0

    def stack_union(self, other: "RectSet") -> "RectSet":
        """Pointwise sum of heights; zero-height residue is dropped."""
        if self.base != other.base:
            raise DomainError("stack_union requires a common base")
        pts = set()
        for s in (self, other):
            for r in s.rects:
                pts.add(r.a)
                pts.add(r.b)
        pts = sorted(pts)
        out = []
        for k in range(len(pts) - 1):
            a, b = pts[k], pts[k + 1]
            c = self.height_at(a) + other.height_at(a)
            if c != 0:
                out.append(Rect(a, b, c))
        return RectSet(self.base, out)

    def scale(self, factor) -> "RectSet":
        factor = rat(factor)
        if factor == 0:
            return RectSet(self.base)
        return RectSet(self.base, [Rect(r.a, r.b, r.c * factor) for r in self.rects])

    def __eq__(self, other):
        return (
            isinstance(other, RectSet)
            and self.base == other.base
            and self.rects == other.rects
        )

    def __hash__(self):
        return hash((self.base, self.rects))

    def __repr__(self):
        if not self.rects:
            return f"RectSet({self.base}, ∅)"
        body = " ∪ ".join(
            f"([{fmt_rat(r.a)},{fmt_rat(r.b)})×{fmt_rat(r.c)})" for r in self.rects
        )
        return f"RectSet({self.base}, {body})"

    def to_json(self):
        return [[fmt_rat(r.a), fmt_rat(r.b), fmt_rat(r.c)] for r in self.rects]

    @staticmethod
    def from_json(data, base=UNIT):
        return RectSet(
            base, [Rect(parse_rat(a), parse_rat(b), parse_rat(c)) for a, b, c in data]
        )


def profile(sets, base=None):
    """Cell decomposition of a family of RectSets with the constant height
    vector on each cell.

    Cells are (a, b) pairs covering the base; for base ℝ₊ the final cell is
    unbounded, marked with b = None, and carries an all-zero vector.
    """
    sets = list(sets)
    if base is None:
        base = sets[0].base if sets else UNIT
    if any(s.base != base for s in sets):
        raise DomainError("profile requires a common base")
    pts = {R0}
    if base == UNIT:
        pts.add(R1)
    for s in sets:
        for r in s.rects:
            pts.add(r.a)
            pts.add(r.b)
    pts = sorted(pts)
    out = []
    for k in range(len(pts) - 1):
        a, b = pts[k], pts[k + 1]
        out.append(((a, b), tuple(s.height_at(a) for s in sets)))
    if base == RAY:
        out.append(((pts[-1], None), tuple(R0 for _ in sets)))
    return out


def bilinear_overlap(s1: RectSet, s2: RectSet):
    """Generalized overlap Σ z(R¹)·z(R²)·μ(footprint overlap) of two sets
    over base U; reduces to μ(S₁ ∩ S₂) for height-1 sets."""
    if s1.base != UNIT or s2.base != UNIT:
        raise DomainError("bilinear_overlap requires base U")
    total = R0
    for r1 in s1.rects:
        for r2 in s2.rects:
            lo = max(r1.a, r2.a)
            hi = min(r1.b, r2.b)
            if lo < hi:
                total += r1.c * r2.c * (hi - lo)
    return total
