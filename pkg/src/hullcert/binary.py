"""Certificate constructions for 0/1-polytopes.

Three strategies recur: greedy placement (box, shortest path, bipartite
stable set, staircase), feasibility subproblems (tree-structured
multiple-choice cliques, via exact transportation), and transformation
(odd-cycle stable set: blow up to the boundary, place consecutively,
shrink back).  Every routine returns a Certificate; verification is the
caller's obligation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certificate import Certificate, height_one_certificate
from .constraints import EQ, GE, LE, ConstraintSystem, Linear, Product
from .errors import DomainError, HullcertError, ModeError, PreconditionError
from .intervals import IntervalSet, match
from .lp import TransportInfeasible, transportation_feasible
from .rational import R0, R1, is_integral, rat


def _require_in(system, h, what):
    bad = system.violated_constraint(h)
    if bad is not None:
        raise PreconditionError(
            f"{what}: point violates {bad[0]}", violated=bad[0]
        )


# ---------------------------------------------------------------------------
# McCormick linearization of a binary product
# ---------------------------------------------------------------------------

def mccormick_system() -> ConstraintSystem:
    """Integer points: binary (x, y, z) with x·y = z."""
    return ConstraintSystem(
        variables=["x", "y", "z"],
        integrality={v: "binary" for v in "xyz"},
        constraints=[Product("x", "y", "z")],
    )


def mccormick_relaxation() -> ConstraintSystem:
    rows = [
        Linear((("z", 1),), GE, 0, label="z >= 0"),
        Linear((("z", 1), ("x", -1)), LE, 0, label="z <= x"),
        Linear((("z", 1), ("y", -1)), LE, 0, label="z <= y"),
        Linear((("x", 1), ("y", 1), ("z", -1)), LE, 1, label="x + y - z <= 1"),
    ]
    return ConstraintSystem(
        variables=["x", "y", "z"],
        integrality={v: "continuous" for v in "xyz"},
        bounds={v: (R0, R1) for v in "xyz"},
        constraints=rows,
    )


def mccormick(h) -> Certificate:
    """S_x = [0, h_x), S_y = [h_x - h_z, h_x - h_z + h_y),
    S_z = [h_x - h_z, h_x); the overlap of S_x and S_y is exactly S_z."""
    h = tuple(rat(v) for v in h)
    _require_in(mccormick_relaxation(), h, "mccormick")
    hx, hy, hz = h
    sets = [
        IntervalSet.of(R0, hx),
        IntervalSet.of(hx - hz, hx - hz + hy),
        IntervalSet.of(hx - hz, hx),
    ]
    return height_one_certificate(
        mccormick_system(), sets, h, meta={"family": "mccormick"}
    )


# ---------------------------------------------------------------------------
# Unit box
# ---------------------------------------------------------------------------

def box_system(n) -> ConstraintSystem:
    names = [f"x{i+1}" for i in range(n)]
    return ConstraintSystem(
        variables=names, integrality={v: "binary" for v in names}
    )


def _box_check(h):
    h = tuple(rat(v) for v in h)
    for i, v in enumerate(h):
        if not (R0 <= v <= R1):
            raise PreconditionError(f"box: coordinate x{i+1} = {v} outside [0, 1]")
    return h


def box_a(h) -> Certificate:
    """All sets left-anchored: S_i = [0, h_i)."""
    h = _box_check(h)
    sets = [IntervalSet.of(R0, v) for v in h]
    return height_one_certificate(
        box_system(len(h)), sets, h, meta={"family": "box", "variant": "a"}
    )


def box_b(h) -> Certificate:
    """Anchoring alternates by index parity: odd indices at 0, even at 1 - h_i."""
    h = _box_check(h)
    sets = [
        IntervalSet.of(R0, v) if i % 2 == 0 else IntervalSet.of(R1 - v, R1)
        for i, v in enumerate(h)
    ]
    return height_one_certificate(
        box_system(len(h)), sets, h, meta={"family": "box", "variant": "b"}
    )


# ---------------------------------------------------------------------------
# Shortest-path polytope on a DAG
# ---------------------------------------------------------------------------

@dataclass
class DagInstance:
    nodes: list
    arcs: list  # (arc name, tail, head)
    source: str
    sink: str
    _topo: list = field(default=None, repr=False)

    def __post_init__(self):
        names = set()
        for name, u, v in self.arcs:
            if name in names:
                raise DomainError(f"duplicate arc name {name}")
            names.add(name)
            if u not in self.nodes or v not in self.nodes:
                raise DomainError(f"arc {name} references unknown node")
            if v == self.source:
                raise DomainError("source must have no incoming arcs")
            if u == self.sink:
                raise DomainError("sink must have no outgoing arcs")
        self._topo = self._topological_order()

    def _topological_order(self):
        indeg = {v: 0 for v in self.nodes}
        for _, _u, v in self.arcs:
            indeg[v] += 1
        order = [v for v in self.nodes if indeg[v] == 0]
        fringe = list(order)
        while fringe:
            u = fringe.pop(0)
            for _name, a, b in self.arcs:
                if a == u:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        order.append(b)
                        fringe.append(b)
        if len(order) != len(self.nodes):
            raise ModeError("arc set contains a cycle; a DAG is required")
        return order

    def out_arcs(self, v):
        return [(name, a, b) for name, a, b in self.arcs if a == v]

    def in_arcs(self, v):
        return [(name, a, b) for name, a, b in self.arcs if b == v]

    def arc_names(self):
        return [name for name, _, _ in self.arcs]

    def flow_rows(self):
        rows = [
            Linear(
                tuple((name, 1) for name, _, _ in self.out_arcs(self.source)),
                EQ,
                1,
                label="unit flow out of the source",
            )
        ]
        for v in self.nodes:
            if v in (self.source, self.sink):
                continue
            coeffs = [(name, rat(1)) for name, _, _ in self.out_arcs(v)]
            coeffs += [(name, rat(-1)) for name, _, _ in self.in_arcs(v)]
            if coeffs:
                rows.append(Linear(tuple(coeffs), EQ, 0, label=f"flow conservation at {v}"))
        return rows

    def feasible_system(self) -> ConstraintSystem:
        names = self.arc_names()
        return ConstraintSystem(
            variables=names,
            integrality={a: "binary" for a in names},
            constraints=self.flow_rows(),
        )

    def relaxation(self) -> ConstraintSystem:
        names = self.arc_names()
        return ConstraintSystem(
            variables=names,
            integrality={a: "continuous" for a in names},
            bounds={a: (R0, R1) for a in names},
            constraints=self.flow_rows(),
        )

    def paths(self):
        """All s-d paths as tuples of arc names."""
        out = []

        def walk(v, taken):
            if v == self.sink:
                out.append(tuple(taken))
                return
            for name, _, b in self.out_arcs(v):
                walk(b, taken + [name])

        walk(self.source, [])
        return out


def shortest_path(inst: DagInstance, h) -> Certificate:
    """Topological sweep: the union of the incoming-arc sets at each node
    (or [0,1) at the source) is distributed to the outgoing arcs by Match,
    so every profile cell's active arcs form an s-d path."""
    system = inst.feasible_system()
    h = tuple(rat(v) for v in h)
    _require_in(inst.relaxation(), h, "shortest-path")
    hmap = dict(zip(inst.arc_names(), h))
    sets = {}
    for v in inst._topo:
        if v == inst.sink:
            continue
        if v == inst.source:
            host = IntervalSet.full()
        else:
            host = IntervalSet.empty()
            for name, _, _ in inst.in_arcs(v):
                host = host.union(sets[name])
        outs = inst.out_arcs(v)
        pieces = match(host, [hmap[name] for name, _, _ in outs])
        for (name, _, _), piece in zip(outs, pieces):
            sets[name] = piece
    ordered = [sets[name] for name in inst.arc_names()]
    return height_one_certificate(
        system,
        ordered,
        h,
        meta={
            "family": "shortest-path",
            "node_order": list(inst._topo),
            "arc_order": inst.arc_names(),
        },
    )


# ---------------------------------------------------------------------------
# Clique problem with multiple-choice constraints (CPMC)
# ---------------------------------------------------------------------------

def maximal_stable_sets(nodes, adjacency):
    """Maximal stable sets, as maximal cliques of the complement graph
    (Bron-Kerbosch with pivoting)."""
    comp = {
        v: {u for u in nodes if u != v and u not in adjacency[v]} for v in nodes
    }
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(comp[v] & p))
        for v in list(p - comp[pivot]):
            expand(r | {v}, p & comp[v], x & comp[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(nodes), set())
    return out


@dataclass
class CpmcInstance:
    classes: list  # (class name, [node names])
    edges: set  # frozensets {u, v} of compatible nodes across classes
    orders: dict = None  # class name -> ordered node list (staircase mode)

    def __post_init__(self):
        self.edges = {frozenset(e) for e in self.edges}
        self._class_of = {}
        for cname, members in self.classes:
            for v in members:
                if v in self._class_of:
                    raise DomainError(f"node {v} in two classes")
                self._class_of[v] = cname
        for e in self.edges:
            u, v = tuple(e)
            if self._class_of[u] == self._class_of[v]:
                raise DomainError(f"edge {set(e)} inside one class")

    def nodes(self):
        return [v for _, members in self.classes for v in members]

    def adjacent(self, u, v):
        return frozenset((u, v)) in self.edges

    def adjacency(self):
        adj = {v: set() for v in self.nodes()}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def dependency_edges(self):
        """Class pairs whose induced bipartite graph is not complete."""
        out = []
        for i in range(len(self.classes)):
            for j in range(i + 1, len(self.classes)):
                ci, mi = self.classes[i]
                cj, mj = self.classes[j]
                if any(not self.adjacent(u, v) for u in mi for v in mj):
                    out.append((ci, cj))
        return out

    def dependency_is_forest(self):
        parent = {c: c for c, _ in self.classes}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for a, b in self.dependency_edges():
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def staircase_violation(self):
        """First (SC1)/(SC2) violation, or None when the given orders are a
        staircase ordering."""
        if not self.orders:
            return "staircase orders missing"
        pos = {}
        for cname, members in self.classes:
            order = self.orders.get(cname)
            if order is None or sorted(order) != sorted(members):
                return f"order for class {cname} missing or not a permutation"
            for k, v in enumerate(order):
                pos[v] = k
        for ci, mi in self.classes:
            for cj, mj in self.classes:
                if ci == cj:
                    continue
                si = sorted(mi, key=lambda v: pos[v])
                sj = sorted(mj, key=lambda v: pos[v])
                for u in si:
                    hits = [k for k, w in enumerate(sj) if self.adjacent(u, w)]
                    if not hits:
                        return f"{u} has no compatible node in {cj}"
                    if hits[-1] - hits[0] + 1 != len(hits):
                        return f"(SC1) fails at {u} towards {cj}"
                for a in range(len(si)):
                    for b in range(a + 1, len(si)):
                        for c in range(len(sj)):
                            for d in range(c + 1, len(sj)):
                                u1, u2, v1, v2 = si[a], si[b], sj[c], sj[d]
                                if self.adjacent(u1, v2) and self.adjacent(u2, v1):
                                    if not (
                                        self.adjacent(u1, v1)
                                        and self.adjacent(u2, v2)
                                    ):
                                        return (
                                            f"(SC2) fails on {u1},{u2} / {v1},{v2}"
                                        )
        return None

    def multiple_choice_rows(self):
        return [
            Linear(
                tuple((v, 1) for v in members),
                EQ,
                1,
                label=f"pick one node in {cname}",
            )
            for cname, members in self.classes
        ]

    def feasible_system(self) -> ConstraintSystem:
        names = self.nodes()
        rows = self.multiple_choice_rows()
        for i, u in enumerate(names):
            for v in names[i + 1:]:
                if self._class_of[u] != self._class_of[v] and not self.adjacent(u, v):
                    rows.append(
                        Linear(((u, 1), (v, 1)), LE, 1, label=f"{u}, {v} incompatible")
                    )
        return ConstraintSystem(
            variables=names,
            integrality={v: "binary" for v in names},
            constraints=rows,
        )

    def stable_set_relaxation(self) -> ConstraintSystem:
        names = self.nodes()
        rows = self.multiple_choice_rows()
        for ss in sorted(
            maximal_stable_sets(names, self.adjacency()), key=sorted
        ):
            if len(ss) >= 2:
                rows.append(
                    Linear(
                        tuple((v, 1) for v in sorted(ss)),
                        LE,
                        1,
                        label=f"stable set {sorted(ss)}",
                    )
                )
        return ConstraintSystem(
            variables=names,
            integrality={v: "continuous" for v in names},
            bounds={v: (R0, R1) for v in names},
            constraints=rows,
        )

    def staircase_relaxation(self) -> ConstraintSystem:
        names = self.nodes()
        pos = {}
        for cname, _ in self.classes:
            for k, v in enumerate(self.orders[cname]):
                pos[v] = k
        rows = self.multiple_choice_rows()
        for ci, mi in self.classes:
            for cj, mj in self.classes:
                if ci == cj:
                    continue
                oj = self.orders[cj]
                for v in self.orders[ci]:
                    compatible = [w for w in oj if self.adjacent(v, w)]
                    if not compatible:
                        raise ModeError(
                            f"{v} has no compatible node in {cj}; the "
                            "comparison system needs full partner coverage"
                        )
                    tail_i = [u for u in self.orders[ci] if pos[u] >= pos[v]]
                    tail_j = [w for w in oj if pos[w] >= pos[compatible[0]]]
                    coeffs = [(u, rat(1)) for u in tail_i]
                    coeffs += [(w, rat(-1)) for w in tail_j]
                    rows.append(
                        Linear(
                            tuple(coeffs),
                            LE,
                            0,
                            label=f"comparison {ci}≥{v} vs {cj}",
                        )
                    )
        return ConstraintSystem(
            variables=names,
            integrality={v: "continuous" for v in names},
            bounds={v: (R0, R1) for v in names},
            constraints=rows,
        )

    def cliques(self):
        """All m-cliques (one node per class, pairwise compatible)."""
        out = []

        def extend(idx, chosen):
            if idx == len(self.classes):
                out.append(tuple(chosen))
                return
            for v in self.classes[idx][1]:
                if all(self.adjacent(v, u) for u in chosen):
                    extend(idx + 1, chosen + [v])

        extend(0, [])
        return out


def cpmc_forest(inst: CpmcInstance, h) -> Certificate:
    """Root class laid out by Match; each dependency-tree edge solved as an
    exact transportation problem over compatible pairs, children carved from
    the parent sets by Match."""
    if not inst.dependency_is_forest():
        raise ModeError("dependency graph has a cycle; forest mode requires none")
    names = inst.nodes()
    h = tuple(rat(v) for v in h)
    relaxation = inst.stable_set_relaxation()
    _require_in(relaxation, h, "cpmc-forest")
    hmap = dict(zip(names, h))
    members = dict(inst.classes)
    dep = {c: [] for c, _ in inst.classes}
    for a, b in inst.dependency_edges():
        dep[a].append(b)
        dep[b].append(a)

    sets = {}
    visited = set()

    def traverse(ci, cj):
        visited.add(cj)
        rows = members[ci]
        cols = members[cj]
        allowed = [
            (i, j)
            for i, u in enumerate(rows)
            for j, w in enumerate(cols)
            if inst.adjacent(u, w)
        ]
        res = transportation_feasible(
            [hmap[u] for u in rows], [hmap[w] for w in cols], allowed
        )
        if isinstance(res, TransportInfeasible):
            stable = [rows[i] for i in res.deficient_rows] + [
                cols[j] for j in res.unreached_cols
            ]
            raise HullcertError(
                "internal error: transportation infeasible although the point "
                f"satisfies the stable-set relaxation; violating stable set {stable}"
            )
        for w in cols:
            sets[w] = IntervalSet.empty()
        for i, u in enumerate(rows):
            weights = [res.cells.get((i, j), R0) for j in range(len(cols))]
            carved = match(sets[u], weights)
            for w, piece in zip(cols, carved):
                sets[w] = sets[w].union(piece)
        for ck in dep[cj]:
            if ck not in visited:
                traverse(cj, ck)

    for cname, cls_members in inst.classes:
        if cname in visited:
            continue
        visited.add(cname)
        pieces = match(IntervalSet.full(), [hmap[v] for v in cls_members])
        for v, piece in zip(cls_members, pieces):
            sets[v] = piece
        for cj in dep[cname]:
            if cj not in visited:
                traverse(cname, cj)

    ordered = [sets[v] for v in names]
    return height_one_certificate(
        inst.feasible_system(),
        ordered,
        h,
        meta={"family": "cpmc", "mode": "forest", "node_order": names},
    )


def cpmc_staircase(inst: CpmcInstance, h) -> Certificate:
    """Each class laid out consecutively on [0,1) in its staircase order."""
    bad = inst.staircase_violation()
    if bad is not None:
        raise ModeError(f"not a staircase instance: {bad}")
    names = inst.nodes()
    h = tuple(rat(v) for v in h)
    _require_in(inst.staircase_relaxation(), h, "cpmc-staircase")
    hmap = dict(zip(names, h))
    sets = {}
    for cname, _members in inst.classes:
        order = inst.orders[cname]
        pieces = match(IntervalSet.full(), [hmap[v] for v in order])
        for v, piece in zip(order, pieces):
            sets[v] = piece
    ordered = [sets[v] for v in names]
    return height_one_certificate(
        inst.feasible_system(),
        ordered,
        h,
        meta={
            "family": "cpmc",
            "mode": "staircase",
            "orders": {c: list(o) for c, o in inst.orders.items()},
        },
    )


# ---------------------------------------------------------------------------
# Stable sets of an odd cycle
# ---------------------------------------------------------------------------

@dataclass
class CycleInstance:
    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise DomainError("odd cycle requires odd length >= 3")

    def node_names(self):
        return [f"u{i+1}" for i in range(self.n)]

    def edge_rows(self):
        names = self.node_names()
        return [
            Linear(
                ((names[i], 1), (names[(i + 1) % self.n], 1)),
                LE,
                1,
                label=f"edge {names[i]}-{names[(i + 1) % self.n]}",
            )
            for i in range(self.n)
        ]

    def feasible_system(self) -> ConstraintSystem:
        names = self.node_names()
        return ConstraintSystem(
            variables=names,
            integrality={v: "binary" for v in names},
            constraints=self.edge_rows(),
        )

    def relaxation(self) -> ConstraintSystem:
        names = self.node_names()
        rows = self.edge_rows() + [
            Linear(
                tuple((v, 1) for v in names),
                LE,
                rat(self.n - 1, 2),
                label="odd-cycle inequality",
            )
        ]
        return ConstraintSystem(
            variables=names,
            integrality={v: "continuous" for v in names},
            bounds={v: (R0, R1) for v in names},
            constraints=rows,
        )

    def stable_sets(self):
        out = []
        for mask in range(1 << self.n):
            if any(
                mask >> i & 1 and mask >> ((i + 1) % self.n) & 1
                for i in range(self.n)
            ):
                continue
            out.append(tuple(rat(mask >> i & 1) for i in range(self.n)))
        return out


def odd_cycle_blowup(inst: CycleInstance, h):
    """Greedy componentwise increase of h, making an edge inequality or the
    odd-cycle inequality active at every step.

    One pass usually ends on the odd-cycle boundary Σ h̄ = (n - 1)/2, but it
    can stall strictly below it on longer cycles when mutually tight edge
    pairs cover every vertex while slack remains elsewhere."""
    n = inst.n
    hbar = [rat(v) for v in h]
    target = rat(n - 1, 2)
    for i in range(n):
        r = target - sum(hbar, R0)
        hbar[i] = min(
            R1 - hbar[(i - 1) % n], R1 - hbar[(i + 1) % n], hbar[i] + r
        )
    return hbar


def _dominating_integer_sum(inst: CycleInstance, h):
    """Point of the relaxation dominating h whose coordinate sum is an
    integer, found by exact LP, preferring larger sums.  Returns None when
    no such point exists (then no consecutive layout can close up, because
    the final wrap position of the placement is the fractional part of the
    sum)."""
    import math

    from .constraints import to_linear_program
    from .lp import OPTIMAL, solve

    n = inst.n
    total = sum((rat(v) for v in h), R0)
    low = math.ceil(total)
    for m in range((inst.n - 1) // 2, low - 1, -1):
        lp = to_linear_program(inst.relaxation())
        for i in range(n):
            lp.set_bounds(i, rat(h[i]), R1)
        lp.add_row({i: 1 for i in range(n)}, "=", m)
        res = solve(lp)
        if res.status == OPTIMAL:
            return res.x
    return None


def _odd_cycle_peeling(inst: CycleInstance, h, rng=None):
    """Generic fallback: decompose h into stable-set vertices by exact
    vertex peeling and lay the plans out as consecutive windows."""
    import random

    from .constraints import to_linear_program
    from .lp import decompose_in_polytope

    parts = decompose_in_polytope(
        to_linear_program(inst.relaxation()), h, rng or random.Random(0)
    )
    n = inst.n
    sets = [IntervalSet.empty() for _ in range(n)]
    pos = R0
    for lam, point in parts:
        window = IntervalSet.of(pos, pos + lam)
        pos += lam
        for i in range(n):
            if point[i] == R1:
                sets[i] = sets[i].union(window)
            elif point[i] != R0:
                raise HullcertError(
                    "internal error: fractional stable-set vertex peeled"
                )
    return sets


def odd_cycle_stable_set(inst: CycleInstance, h, rng=None) -> Certificate:
    """Blow up, place the enlarged sets consecutively modulo 1, then shrink
    each back to its original measure.

    The consecutive layout closes up exactly when the blown-up sum is an
    integer (the placement then ends at position 0, so the wrap pair of
    cycle-adjacent sets stays disjoint).  When the greedy pass stalls at a
    fractional sum, a dominating point with integer sum is found by exact
    LP; when none exists at all, the certificate is built from an exact
    vertex-peeling decomposition instead."""
    h = tuple(rat(v) for v in h)
    _require_in(inst.relaxation(), h, "odd-cycle")
    hbar = odd_cycle_blowup(inst, h)
    if not is_integral(sum(hbar, R0)):
        hbar = _dominating_integer_sum(inst, h)
    if hbar is not None:
        big = match(IntervalSet.full(), hbar)
        sets = [match(s, [w])[0] for s, w in zip(big, h)]
    else:
        sets = _odd_cycle_peeling(inst, h, rng)
    return height_one_certificate(
        inst.feasible_system(),
        sets,
        h,
        meta={"family": "odd-cycle", "node_order": inst.node_names()},
    )


# ---------------------------------------------------------------------------
# Stable sets of a bipartite graph
# ---------------------------------------------------------------------------

@dataclass
class BipartiteInstance:
    left: list
    right: list
    edges: list  # (left node, right node)

    def __post_init__(self):
        for u, w in self.edges:
            if u not in self.left or w not in self.right:
                raise DomainError(f"edge ({u}, {w}) not across the bipartition")

    def node_names(self):
        return list(self.left) + list(self.right)

    def edge_rows(self):
        return [
            Linear(((u, 1), (w, 1)), LE, 1, label=f"edge {u}-{w}")
            for u, w in self.edges
        ]

    def feasible_system(self) -> ConstraintSystem:
        names = self.node_names()
        return ConstraintSystem(
            variables=names,
            integrality={v: "binary" for v in names},
            constraints=self.edge_rows(),
        )

    def relaxation(self) -> ConstraintSystem:
        names = self.node_names()
        return ConstraintSystem(
            variables=names,
            integrality={v: "continuous" for v in names},
            bounds={v: (R0, R1) for v in names},
            constraints=self.edge_rows(),
        )

    def stable_sets(self):
        names = self.node_names()
        idx = {v: i for i, v in enumerate(names)}
        out = []
        for mask in range(1 << len(names)):
            if any(
                mask >> idx[u] & 1 and mask >> idx[w] & 1 for u, w in self.edges
            ):
                continue
            out.append(tuple(rat(mask >> i & 1) for i in range(len(names))))
        return out


def bipartite_stable_set(inst: BipartiteInstance, h) -> Certificate:
    """Left side anchored at 0, right side anchored at 1; the per-edge
    inequality makes the two windows disjoint."""
    h = tuple(rat(v) for v in h)
    _require_in(inst.relaxation(), h, "bipartite-stable-set")
    hmap = dict(zip(inst.node_names(), h))
    sets = [IntervalSet.of(R0, hmap[u]) for u in inst.left]
    sets += [IntervalSet.of(R1 - hmap[w], R1) for w in inst.right]
    return height_one_certificate(
        inst.feasible_system(), sets, h, meta={"family": "bipartite-stable-set"}
    )
