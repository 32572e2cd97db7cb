"""Exact algebra of finite unions of half-open subintervals of U = [0, 1).

An IntervalSet is a canonical list of disjoint, sorted, maximal pieces
[a_i, b_i) with rational endpoints.  The half-open convention is enforced
everywhere: single points have measure zero and are never representable.
All operations are pure and values are immutable.
"""

from __future__ import annotations

from .errors import DomainError, InfeasibleWeightError
from .rational import R0, R1, fmt_rat, parse_rat, rat


class IntervalSet:
    """Finite union of disjoint half-open subintervals of [0, 1)."""

    __slots__ = ("pieces",)

    def __init__(self, pieces=()):
        norm = []
        for a, b in sorted((rat(a), rat(b)) for a, b in pieces):
            if a == b:
                continue
            if not (R0 <= a < b <= R1):
                raise DomainError(f"piece [{a}, {b}) outside [0, 1)")
            if norm and a < norm[-1][1]:
                raise DomainError(f"overlapping pieces at {a}")
            if norm and a == norm[-1][1]:
                norm[-1] = (norm[-1][0], b)
            else:
                norm.append((a, b))
        object.__setattr__(self, "pieces", tuple(norm))

    def __setattr__(self, *_):
        raise AttributeError("IntervalSet is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty():
        return _EMPTY

    @staticmethod
    def full():
        return _FULL

    @staticmethod
    def of(a, b):
        """Single piece [a, b); empty when a == b."""
        return IntervalSet([(a, b)])

    # -- basic queries -----------------------------------------------------

    def measure(self):
        m = R0
        for a, b in self.pieces:
            m += b - a
        return m

    def indicator(self, t):
        t = rat(t)
        if not (R0 <= t < R1):
            raise DomainError(f"indicator argument {t} outside [0, 1)")
        for a, b in self.pieces:
            if a <= t < b:
                return 1
            if t < a:
                return 0
        return 0

    def is_empty(self):
        return not self.pieces

    # -- set algebra -------------------------------------------------------

    def union(self, other):
        merged = []
        for a, b in sorted(self.pieces + other.pieces):
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        out = IntervalSet.__new__(IntervalSet)
        object.__setattr__(out, "pieces", tuple(merged))
        return out

    def intersect(self, other):
        out, i, j = [], 0, 0
        p, q = self.pieces, other.pieces
        while i < len(p) and j < len(q):
            a = max(p[i][0], q[j][0])
            b = min(p[i][1], q[j][1])
            if a < b:
                out.append((a, b))
            if p[i][1] <= q[j][1]:
                i += 1
            else:
                j += 1
        res = IntervalSet.__new__(IntervalSet)
        object.__setattr__(res, "pieces", tuple(out))
        return res

    def complement(self):
        out = []
        prev = R0
        for a, b in self.pieces:
            if prev < a:
                out.append((prev, a))
            prev = b
        if prev < R1:
            out.append((prev, R1))
        res = IntervalSet.__new__(IntervalSet)
        object.__setattr__(res, "pieces", tuple(out))
        return res

    def difference(self, other):
        return self.intersect(other.complement())

    def issubset(self, other):
        return self.difference(other).is_empty()

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        if not self.pieces:
            return "IntervalSet(∅)"
        body = " ∪ ".join(f"[{fmt_rat(a)},{fmt_rat(b)})" for a, b in self.pieces)
        return f"IntervalSet({body})"

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return [[fmt_rat(a), fmt_rat(b)] for a, b in self.pieces]

    @staticmethod
    def from_json(data):
        return IntervalSet([(parse_rat(a), parse_rat(b)) for a, b in data])


_EMPTY = IntervalSet()
_FULL = IntervalSet([(R0, R1)])


class CellDecomposition:
    """Breakpoints 0 = t_0 < ... < t_m = 1 such that every registered set's
    indicator is constant on each cell [t_k, t_{k+1}); the left endpoint is
    representative."""

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints):
        self.breakpoints = tuple(breakpoints)

    def cells(self):
        b = self.breakpoints
        return [(b[k], b[k + 1]) for k in range(len(b) - 1)]

    def __eq__(self, other):
        return (
            isinstance(other, CellDecomposition)
            and self.breakpoints == other.breakpoints
        )

    def __repr__(self):
        return f"CellDecomposition({[fmt_rat(t) for t in self.breakpoints]})"


def cells(sets):
    """Common cell decomposition of a family of IntervalSets."""
    pts = {R0, R1}
    for s in sets:
        for a, b in s.pieces:
            pts.add(a)
            pts.add(b)
    return CellDecomposition(sorted(pts))


def _take_prefix(s, start, w):
    """First w units of measure of s scanning rightwards from start.

    Returns (subset, stop).  Assumes w <= measure of s ∩ [start, 1).
    """
    got = R0
    out = []
    for a, b in s.pieces:
        lo = max(a, start)
        if lo >= b:
            continue
        need = w - got
        if b - lo >= need:
            if need > R0:
                out.append((lo, lo + need))
            return IntervalSet(out), lo + need
        out.append((lo, b))
        got += b - lo
    raise InfeasibleWeightError(f"cannot carve measure {w} from {s} past {start}")


def match(s, weights):
    """Carve subsets of prescribed measures out of s, filling greedily from
    the last stopping point and wrapping past 1 back to the start of s.

    Each output has measure exactly equal to its requested weight.  When the
    weights sum to at most the measure of s, the outputs are pairwise
    disjoint.  A zero weight yields the empty set and leaves the stopping
    point unchanged.
    """
    total = s.measure()
    for w in weights:
        w = rat(w)
        if w < 0:
            raise DomainError(f"negative weight {w}")
        if w > total:
            raise InfeasibleWeightError(
                f"weight {w} exceeds host measure {total}"
            )
    out = []
    t = R0
    for w in weights:
        w = rat(w)
        if w == 0:
            out.append(IntervalSet.empty())
            continue
        ahead = s.intersect(IntervalSet.of(t, R1)) if t > R0 else s
        avail = ahead.measure()
        if w <= avail:
            piece, t = _take_prefix(s, t, w)
        else:
            head, t = _take_prefix(s, R0, w - avail)
            piece = ahead.union(head)
        if t >= R1:
            t = R0
        out.append(piece)
    return out


def wrap_place(t, a):
    """Interval of diameter a starting at t, modulo 1.

    Returns (interval, end point).  The end point is t + a when that stays
    within [0, 1], and wraps to t + a - 1 otherwise.
    """
    t, a = rat(t), rat(a)
    if not (R0 <= t < R1):
        raise DomainError(f"start {t} outside [0, 1)")
    if not (R0 <= a < R1):
        raise DomainError(f"diameter {a} outside [0, 1)")
    if t + a <= R1:
        return IntervalSet.of(t, t + a), t + a
    end = t + a - R1
    return IntervalSet.of(t, R1).union(IntervalSet.of(R0, end)), end
