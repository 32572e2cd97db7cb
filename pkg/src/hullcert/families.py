"""Construction family registry.

Binds every family name to its instance schema, constraint systems,
construction routine, seeded samplers (relaxation vertices via exact LP
with random objectives, random convex mixtures of feasible generators,
and relaxation violators), and, where the feasible set is enumerable, the
generator list for the brute-force membership oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import binary, extended
from .certificate import Certificate
from .constraints import to_linear_program
from .errors import EnumerationTooLargeError, InputError
from .lp import sample_vertex
from .rational import R0, R1, parse_rat, rat

VERTEX, MIXTURE = "vertex", "mixture"


def _rand_frac(rng, den=12):
    d = rng.randint(1, den)
    return rat(rng.randint(0, d), d)


def _mixture(points, rng, k=None):
    points = list(points)
    if k is None:
        k = rng.randint(2, min(4, len(points))) if len(points) > 1 else 1
    chosen = rng.sample(points, min(k, len(points)))
    weights = [rng.randint(1, 6) for _ in chosen]
    total = sum(weights)
    dims = len(chosen[0])
    out = [R0] * dims
    for w, p in zip(weights, chosen):
        for d in range(dims):
            out[d] += rat(w, total) * rat(p[d])
    return tuple(out)


def _reject_violation(relaxation, rng, lo=-1, hi=2, tries=300):
    n = len(relaxation.variables)
    for _ in range(tries):
        point = tuple(
            rat(rng.randint(lo * 12, hi * 12), 12) for _ in range(n)
        )
        if not relaxation.point_in_relaxation(point):
            return point
    raise InputError("could not sample a relaxation violator")


def _lp_vertex(relaxation, rng):
    return tuple(sample_vertex(to_linear_program(relaxation), rng))


@dataclass
class Family:
    """Uniform facade over one construction family."""

    name: str
    modes: tuple = (None,)

    def parse(self, data: dict):
        raise NotImplementedError

    def default_instance(self) -> dict:
        raise NotImplementedError

    def feasible_system(self, inst, mode=None):
        raise NotImplementedError

    def relaxation(self, inst, mode=None):
        raise NotImplementedError

    def construct(self, inst, h, mode=None, rng=None) -> Certificate:
        raise NotImplementedError

    def sample_instance(self, rng, mode=None) -> dict:
        return self.default_instance()

    def sample_point(self, inst, rng, kind, mode=None):
        if kind == VERTEX:
            return _lp_vertex(self.relaxation(inst, mode), rng)
        return _mixture(self.generators(inst, mode)[0], rng)

    def sample_violation(self, inst, rng, mode=None):
        return _reject_violation(self.relaxation(inst, mode), rng)

    def generators(self, inst, mode=None):
        """(points, rays) spanning conv(F), or None when not enumerable."""
        return None

    def decide_membership(self, inst, h, mode=None):
        """Family-specific exact hull decision for points inside the
        relaxation, when the generators are not enumerable.  Returns
        (inside: bool, separator or None) or None when undecidable."""
        return None

    def verify_tol(self, mode=None):
        return R0


class _McCormick(Family):
    def __init__(self):
        super().__init__("mccormick")

    def parse(self, data):
        return None

    def default_instance(self):
        return {"family": "mccormick"}

    def feasible_system(self, inst, mode=None):
        return binary.mccormick_system()

    def relaxation(self, inst, mode=None):
        return binary.mccormick_relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        return binary.mccormick(h)

    def generators(self, inst, mode=None):
        return self.feasible_system(inst).enumerate_feasible(), []


class _Box(Family):
    def __init__(self):
        super().__init__("box", modes=("a", "b"))

    def parse(self, data):
        return int(data.get("n", 2))

    def default_instance(self):
        return {"family": "box", "n": 2}

    def sample_instance(self, rng, mode=None):
        return {"family": "box", "n": rng.randint(2, 6)}

    def feasible_system(self, inst, mode=None):
        return binary.box_system(inst)

    def relaxation(self, inst, mode=None):
        sys = binary.box_system(inst)
        sys.integrality = {v: "continuous" for v in sys.variables}
        return sys

    def construct(self, inst, h, mode=None, rng=None):
        return binary.box_b(h) if mode == "b" else binary.box_a(h)

    def generators(self, inst, mode=None):
        return self.feasible_system(inst).enumerate_feasible(), []


class _ShortestPath(Family):
    def __init__(self):
        super().__init__("shortest-path")

    def parse(self, data):
        return binary.DagInstance(
            nodes=list(data["nodes"]),
            arcs=[tuple(a) for a in data["arcs"]],
            source=data["source"],
            sink=data["sink"],
        )

    def default_instance(self):
        return {
            "family": "shortest-path",
            "nodes": ["s", "v2", "v3", "v5", "v6", "d"],
            "arcs": [
                ["a1", "s", "v2"],
                ["a2", "v2", "v3"],
                ["a3", "v3", "d"],
                ["a4", "v5", "d"],
                ["a5", "v6", "d"],
                ["a6", "v2", "v5"],
                ["a7", "v2", "v6"],
                ["a8", "s", "v5"],
            ],
            "source": "s",
            "sink": "d",
        }

    def sample_instance(self, rng, mode=None):
        layers = [["s"]]
        for k in range(rng.randint(1, 3)):
            layers.append([f"n{k}_{i}" for i in range(rng.randint(1, 3))])
        layers.append(["d"])
        arcs = []
        idx = 0
        for a, b in zip(layers, layers[1:]):
            for u in a:
                targets = rng.sample(b, rng.randint(1, len(b)))
                for v in targets:
                    arcs.append([f"a{idx}", u, v])
                    idx += 1
        # make sure every non-source node has an incoming arc
        nodes = [v for layer in layers for v in layer]
        covered = {v for _, _, v in arcs} | {"s"}
        for depth, layer in enumerate(layers[1:], start=1):
            for v in layer:
                if v not in covered:
                    u = rng.choice(layers[depth - 1])
                    arcs.append([f"a{idx}", u, v])
                    idx += 1
        return {
            "family": "shortest-path",
            "nodes": nodes,
            "arcs": arcs,
            "source": "s",
            "sink": "d",
        }

    def feasible_system(self, inst, mode=None):
        return inst.feasible_system()

    def relaxation(self, inst, mode=None):
        return inst.relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        return binary.shortest_path(inst, h)

    def generators(self, inst, mode=None):
        names = inst.arc_names()
        points = []
        for path in inst.paths():
            chosen = set(path)
            points.append(tuple(R1 if a in chosen else R0 for a in names))
        return points, []


class _Cpmc(Family):
    def __init__(self):
        super().__init__("cpmc", modes=("forest", "staircase"))

    def parse(self, data):
        return binary.CpmcInstance(
            classes=[(c, list(m)) for c, m in data["classes"]],
            edges={frozenset(e) for e in data["edges"]},
            orders={c: list(o) for c, o in data.get("orders", {}).items()} or None,
        )

    def default_instance(self):
        return {
            "family": "cpmc",
            "classes": [["V1", ["a", "b"]], ["V2", ["c", "d"]]],
            "edges": [["a", "c"], ["b", "d"]],
            "orders": {"V1": ["a", "b"], "V2": ["c", "d"]},
            "mode": "forest",
        }

    def sample_instance(self, rng, mode=None):
        mode = mode or "forest"
        m = rng.randint(2, 3)
        classes = []
        for ci in range(m):
            size = rng.randint(2, 3)
            classes.append([f"V{ci+1}", [f"v{ci+1}_{k+1}" for k in range(size)]])
        for _ in range(60):
            edges = self._sample_edges(rng, classes, mode)
            inst = self.parse(
                {"classes": classes, "edges": edges, "orders": dict(
                    (c, list(members)) for c, members in classes
                )}
            )
            if not inst.cliques():
                continue
            if mode == "forest" and inst.dependency_is_forest():
                return {
                    "family": "cpmc",
                    "classes": classes,
                    "edges": edges,
                    "orders": {c: list(ms) for c, ms in classes},
                    "mode": mode,
                }
            if mode == "staircase" and inst.staircase_violation() is None:
                return {
                    "family": "cpmc",
                    "classes": classes,
                    "edges": edges,
                    "orders": {c: list(ms) for c, ms in classes},
                    "mode": mode,
                }
        raise InputError("failed to sample a CPMC instance")

    def _sample_edges(self, rng, classes, mode):
        m = len(classes)
        edges = []
        if mode == "staircase":
            # nondecreasing interval neighbourhoods with no gaps satisfy
            # (SC1)/(SC2) in both directions and cover every node
            for i in range(m):
                for j in range(i + 1, m):
                    mi, mj = classes[i][1], classes[j][1]
                    top = len(mj) - 1
                    lo, hi = 0, rng.randint(0, top)
                    for idx, u in enumerate(mi):
                        if idx == len(mi) - 1:
                            hi = top
                        for k in range(lo, hi + 1):
                            edges.append([u, mj[k]])
                        lo = rng.randint(lo, min(hi + 1, top))
                        hi = rng.randint(max(lo, hi), top)
            return edges
        # forest mode: build a random tree over the classes; tree pairs get a
        # non-complete bipartite graph, the rest are complete.
        tree = []
        for j in range(1, m):
            tree.append((rng.randint(0, j - 1), j))
        for i in range(m):
            for j in range(i + 1, m):
                mi, mj = classes[i][1], classes[j][1]
                full = [[u, w] for u in mi for w in mj]
                if (i, j) in tree:
                    removed = rng.sample(
                        range(len(full)), rng.randint(1, len(full) - 1)
                    )
                    keep = [e for k, e in enumerate(full) if k not in removed]
                    # keep every node matched at least once
                    for u in mi:
                        if not any(e[0] == u for e in keep):
                            keep.append([u, rng.choice(mj)])
                    for w in mj:
                        if not any(e[1] == w for e in keep):
                            keep.append([rng.choice(mi), w])
                    edges.extend(keep)
                else:
                    edges.extend(full)
        return edges

    def feasible_system(self, inst, mode=None):
        return inst.feasible_system()

    def relaxation(self, inst, mode=None):
        mode = mode or "forest"
        if mode == "staircase":
            return inst.staircase_relaxation()
        return inst.stable_set_relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        if mode == "staircase":
            return binary.cpmc_staircase(inst, h)
        return binary.cpmc_forest(inst, h)

    def generators(self, inst, mode=None):
        names = inst.nodes()
        points = []
        for clique in inst.cliques():
            chosen = set(clique)
            points.append(tuple(R1 if v in chosen else R0 for v in names))
        return points, []

    def sample_point(self, inst, rng, kind, mode=None):
        mode = mode or "forest"
        if kind == VERTEX:
            return _lp_vertex(self.relaxation(inst, mode), rng)
        return _mixture(self.generators(inst)[0], rng)

    def sample_violation(self, inst, rng, mode=None):
        mode = mode or "forest"
        return _reject_violation(self.relaxation(inst, mode), rng)


class _OddCycle(Family):
    def __init__(self):
        super().__init__("odd-cycle")

    def parse(self, data):
        return binary.CycleInstance(int(data["n"]))

    def default_instance(self):
        return {"family": "odd-cycle", "n": 5}

    def sample_instance(self, rng, mode=None):
        return {"family": "odd-cycle", "n": rng.choice([5, 7, 9])}

    def feasible_system(self, inst, mode=None):
        return inst.feasible_system()

    def relaxation(self, inst, mode=None):
        return inst.relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        return binary.odd_cycle_stable_set(inst, h)

    def generators(self, inst, mode=None):
        return inst.stable_sets(), []


class _BipartiteStableSet(Family):
    def __init__(self):
        super().__init__("bipartite-stable-set")

    def parse(self, data):
        return binary.BipartiteInstance(
            left=list(data["left"]),
            right=list(data["right"]),
            edges=[tuple(e) for e in data["edges"]],
        )

    def default_instance(self):
        return {
            "family": "bipartite-stable-set",
            "left": ["u1", "u2", "u3"],
            "right": ["w1", "w2", "w3"],
            "edges": [
                ["u1", "w1"],
                ["u2", "w2"],
                ["u3", "w3"],
                ["u1", "w2"],
                ["u2", "w3"],
                ["u3", "w1"],
            ],
        }

    def sample_instance(self, rng, mode=None):
        nl, nr = rng.randint(2, 4), rng.randint(2, 4)
        left = [f"u{i+1}" for i in range(nl)]
        right = [f"w{i+1}" for i in range(nr)]
        edges = [
            [u, w] for u in left for w in right if rng.random() < 0.5
        ]
        if not edges:
            edges = [[left[0], right[0]]]
        return {
            "family": "bipartite-stable-set",
            "left": left,
            "right": right,
            "edges": edges,
        }

    def feasible_system(self, inst, mode=None):
        return inst.feasible_system()

    def relaxation(self, inst, mode=None):
        return inst.relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        return binary.bipartite_stable_set(inst, h)

    def generators(self, inst, mode=None):
        return inst.stable_sets(), []


class _Simplex(Family):
    def __init__(self):
        super().__init__("simplex", modes=("a", "b"))

    def parse(self, data):
        return int(data.get("n", 3)), int(data.get("b", 4))

    def default_instance(self):
        return {"family": "simplex", "n": 3, "b": 4}

    def sample_instance(self, rng, mode=None):
        return {"family": "simplex", "n": rng.randint(2, 4), "b": rng.randint(1, 5)}

    def feasible_system(self, inst, mode=None):
        return extended.simplex_system(*inst)

    def relaxation(self, inst, mode=None):
        return extended.simplex_relaxation(*inst)

    def construct(self, inst, h, mode=None, rng=None):
        n, b = inst
        return extended.simplex_b(h, b) if mode == "b" else extended.simplex_a(h, b)

    def generators(self, inst, mode=None):
        n, b = inst
        sys = self.feasible_system(inst)
        return sys.enumerate_feasible({v: (0, b) for v in sys.variables}), []


class _ConvCone(Family):
    def __init__(self):
        super().__init__("conv-cone")

    def parse(self, data):
        return int(data.get("n", 3)), int(data.get("b", 1))

    def default_instance(self):
        return {"family": "conv-cone", "n": 3, "b": 1}

    def sample_instance(self, rng, mode=None):
        return {"family": "conv-cone", "n": rng.randint(2, 4), "b": rng.randint(1, 3)}

    def feasible_system(self, inst, mode=None):
        return extended.conv_cone_system(*inst)

    def relaxation(self, inst, mode=None):
        return extended.conv_cone_relaxation(*inst)

    def construct(self, inst, h, mode=None, rng=None):
        n, b = inst
        return extended.conv_cone_simplex(h, b)

    def generators(self, inst, mode=None):
        n, b = inst
        points = [
            tuple(rat(b) if d == i else R0 for d in range(n)) for i in range(n)
        ]
        rays = [tuple(R1 if d == i else R0 for d in range(n)) for i in range(n)]
        return points, rays

    def sample_point(self, inst, rng, kind, mode=None):
        n, b = inst
        points, rays = self.generators(inst)
        if kind == VERTEX:
            return rng.choice(points)
        g = _mixture(points, rng)
        extra = [_rand_frac(rng) * rng.randint(0, 2) for _ in range(n)]
        return tuple(gi + e for gi, e in zip(g, extra))

    def sample_violation(self, inst, rng, mode=None):
        n, b = inst
        return _reject_violation(self.relaxation(inst), rng, lo=-1, hi=b)


class _Ball(Family):
    def __init__(self):
        super().__init__("ball")

    def parse(self, data):
        return int(data.get("digits", 40))

    def default_instance(self):
        return {"family": "ball"}

    def feasible_system(self, inst, mode=None):
        return extended.ball_system()

    def relaxation(self, inst, mode=None):
        return extended.ball_relaxation()

    def construct(self, inst, h, mode=None, rng=None):
        return extended.ball(h, digits=inst or 40)

    def verify_tol(self, mode=None):
        return rat(1, 10**9)

    def decide_membership(self, inst, h, mode=None):
        # the hull of the circle is the closed disk, which is exactly the
        # relaxation; a point that passed the relaxation screen is inside
        return True, None

    def boundary_point(self, rng):
        """Rational point of the circle via the tangent half-angle map."""
        t = rat(rng.randint(-24, 24), rng.randint(1, 12))
        one = R1
        x = (one - t * t) / (one + t * t)
        y = 2 * t / (one + t * t)
        return (R1 + x, R1 + y)

    def sample_point(self, inst, rng, kind, mode=None):
        if kind == VERTEX:
            return self.boundary_point(rng)
        p, q = self.boundary_point(rng), self.boundary_point(rng)
        lam = _rand_frac(rng)
        return tuple(lam * a + (R1 - lam) * b for a, b in zip(p, q))

    def sample_violation(self, inst, rng, mode=None):
        return _reject_violation(self.relaxation(inst), rng, lo=-1, hi=3)


class _LotSizing(Family):
    def __init__(self):
        super().__init__("lot-sizing", modes=("repaired", "paper"))

    def parse(self, data):
        return extended.LotSizingInstance([parse_rat(d) for d in data["demands"]])

    def default_instance(self):
        return {"family": "lot-sizing", "demands": ["0", "2"]}

    def sample_instance(self, rng, mode=None):
        n = rng.randint(2, 5)
        return {
            "family": "lot-sizing",
            "demands": [str(rng.randint(0, 3)) for _ in range(n)],
        }

    def feasible_system(self, inst, mode=None):
        return inst.system()

    def relaxation(self, inst, mode=None):
        return inst.system(relaxed=True)

    def construct(self, inst, h, mode=None, rng=None):
        return extended.lot_sizing(inst, h, mode=mode or "repaired", rng=rng)

    def decide_membership(self, inst, h, mode=None):
        decomposition = extended.decompose_into_plans(inst, h)
        if decomposition.parts is not None:
            return True, None
        return False, decomposition.separator

    def random_plan(self, inst, rng):
        n = inst.n
        open_periods = set()
        for j in range(n):
            if inst.demands[j] > 0 and not (open_periods & set(range(j + 1))):
                open_periods.add(rng.randint(0, j))
        for u in range(n):
            if rng.random() < 0.4:
                open_periods.add(u)
        point = {}
        for u in range(n):
            point[f"y{u+1}"] = R1 if u in open_periods else R0
        for u in range(n):
            for j in range(u, n):
                point[inst.wname(u, j)] = R0
        for j in range(n):
            if inst.demands[j] == 0:
                continue
            servers = sorted(open_periods & set(range(j + 1)))
            weights = [rng.randint(0, 4) for _ in servers]
            if sum(weights) == 0:
                weights[rng.randrange(len(servers))] = 1
            total = sum(weights)
            for u, w in zip(servers, weights):
                point[inst.wname(u, j)] += inst.demands[j] * rat(w, total)
        return tuple(point[v] for v in inst.variables())

    def sample_point(self, inst, rng, kind, mode=None):
        if kind == VERTEX:
            # the printed relaxation can have fractional-y vertices that lie
            # outside the hull of integral plans; only hull points are
            # certifiable, so integral vertices are kept and single plans
            # (vertices of the hull itself) are the fallback
            for _ in range(10):
                v = _lp_vertex(self.relaxation(inst), rng)
                if all(v[u] in (R0, R1) for u in range(inst.n)):
                    return v
            return self.random_plan(inst, rng)
        plans = [self.random_plan(inst, rng) for _ in range(rng.randint(2, 4))]
        return _mixture(plans, rng, k=len(plans))


class _IncidenceTu(Family):
    def __init__(self):
        super().__init__("incidence-tu")

    def parse(self, data):
        return extended.IncidenceInstance(
            left=list(data["left"]),
            right=list(data["right"]),
            edges=[(u, w, parse_rat(b)) for u, w, b in data["edges"]],
        )

    def default_instance(self):
        return {
            "family": "incidence-tu",
            "left": ["u"],
            "right": ["w"],
            "edges": [["u", "w", "3"]],
        }

    def sample_instance(self, rng, mode=None, bmax=5):
        nl, nr = rng.randint(1, 4), rng.randint(1, 4)
        left = [f"u{i+1}" for i in range(nl)]
        right = [f"w{i+1}" for i in range(nr)]
        edges = []
        for u in left:
            for w in right:
                if len(edges) < 8 and rng.random() < 0.6:
                    edges.append([u, w, str(rng.randint(0, bmax))])
        # every node incident to an edge keeps the relaxation bounded
        for u in left:
            if not any(e[0] == u for e in edges):
                edges.append([u, rng.choice(right), str(rng.randint(0, bmax))])
        for w in right:
            if not any(e[1] == w for e in edges):
                edges.append([rng.choice(left), w, str(rng.randint(0, bmax))])
        return {
            "family": "incidence-tu",
            "left": left,
            "right": right,
            "edges": edges,
        }

    def feasible_system(self, inst, mode=None):
        return inst.system()

    def relaxation(self, inst, mode=None):
        return inst.system(relaxed=True)

    def construct(self, inst, h, mode=None, rng=None):
        return extended.incidence_tu(inst, h)

    def generators(self, inst, mode=None):
        bmax = max((int(b) for _, _, b in inst.edges), default=1)
        sys = inst.system()
        try:
            box = {v: (0, bmax) for v in sys.variables}
            return sys.enumerate_feasible(box, cap=50_000), []
        except EnumerationTooLargeError:
            return None

    def random_integer_point(self, inst, rng):
        names = inst.node_names()
        order = list(names)
        rng.shuffle(order)
        x = {}
        for v in order:
            cap = None
            for u, w, b in inst.edges:
                if v not in (u, w):
                    continue
                other = w if v == u else u
                slack = b - x.get(other, R0)
                cap = slack if cap is None else min(cap, slack)
            hi = 3 if cap is None else int(cap)
            x[v] = rat(rng.randint(0, max(0, hi)))
        return tuple(x[v] for v in names)

    def sample_point(self, inst, rng, kind, mode=None):
        if kind == VERTEX:
            return _lp_vertex(self.relaxation(inst), rng)
        points = [self.random_integer_point(inst, rng) for _ in range(4)]
        return _mixture(points, rng, k=len(points))


class _IntervalTu(Family):
    def __init__(self):
        super().__init__("interval-tu")

    def parse(self, data):
        return extended.IntervalMatrixInstance(
            matrix=[list(r) for r in data["matrix"]],
            b=[parse_rat(v) for v in data["b"]],
        )

    def default_instance(self):
        return {
            "family": "interval-tu",
            "matrix": [[1, 1, 0], [0, 1, 1]],
            "b": ["2", "2"],
        }

    def sample_instance(self, rng, mode=None, bmax=5):
        n = rng.randint(2, 8)
        m = rng.randint(1, 7)
        matrix = []
        b = []
        for _ in range(m):
            lo = rng.randint(0, n - 1)
            hi = rng.randint(lo, n - 1)
            matrix.append([1 if lo <= i <= hi else 0 for i in range(n)])
            b.append(str(rng.randint(0, bmax)))
        covered = [any(row[i] for row in matrix) for i in range(n)]
        if not all(covered):
            # cover stray columns so the relaxation stays bounded
            matrix.append([0 if c else 1 for c in covered])
            ones = [i for i, c in enumerate(covered) if not c]
            if ones[-1] - ones[0] + 1 != len(ones):
                matrix[-1] = [1] * n
            b.append(str(rng.randint(0, bmax)))
        return {"family": "interval-tu", "matrix": matrix, "b": b}

    def feasible_system(self, inst, mode=None):
        return inst.system()

    def relaxation(self, inst, mode=None):
        return inst.system(relaxed=True)

    def construct(self, inst, h, mode=None, rng=None):
        return extended.interval_matrix_tu(inst, h)

    def generators(self, inst, mode=None):
        bmax = max((int(v) for v in inst.b), default=1)
        sys = inst.system()
        try:
            box = {v: (0, bmax) for v in sys.variables}
            return sys.enumerate_feasible(box, cap=50_000), []
        except EnumerationTooLargeError:
            return None

    def random_integer_point(self, inst, rng):
        n = inst.ncols
        order = list(range(n))
        rng.shuffle(order)
        x = [None] * n
        for i in order:
            cap = None
            for row, rhs in zip(inst.matrix, inst.b):
                if not row[i]:
                    continue
                slack = rhs - sum(
                    (x[k] for k in range(n) if row[k] and x[k] is not None), R0
                )
                cap = slack if cap is None else min(cap, slack)
            hi = 3 if cap is None else int(cap)
            x[i] = rat(rng.randint(0, max(0, hi)))
        return tuple(x)

    def sample_point(self, inst, rng, kind, mode=None):
        if kind == VERTEX:
            return _lp_vertex(self.relaxation(inst), rng)
        points = [self.random_integer_point(inst, rng) for _ in range(4)]
        return _mixture(points, rng, k=len(points))


class _Pwl(Family):
    def __init__(self):
        super().__init__("pwl", modes=("mcm", "incremental"))

    def parse(self, data):
        return extended.PwlInstance(
            breakpoints=[parse_rat(v) for v in data["breakpoints"]],
            values=[parse_rat(v) for v in data["values"]],
        )

    def default_instance(self):
        return {
            "family": "pwl",
            "breakpoints": ["0", "1", "2"],
            "values": ["0", "1", "3"],
        }

    def sample_instance(self, rng, mode=None):
        n = rng.randint(1, 4)
        bp = [0]
        for _ in range(n):
            bp.append(bp[-1] + rng.randint(1, 3))
        vals = [0]
        for _ in range(n):
            vals.append(vals[-1] + rng.randint(-2, 3))
        return {
            "family": "pwl",
            "breakpoints": [str(v) for v in bp],
            "values": [str(v) for v in vals],
        }

    def feasible_system(self, inst, mode=None):
        mode = mode or "mcm"
        return inst.mcm_system() if mode == "mcm" else inst.im_system()

    def relaxation(self, inst, mode=None):
        mode = mode or "mcm"
        return (
            inst.mcm_system(relaxed=True)
            if mode == "mcm"
            else inst.im_system(relaxed=True)
        )

    def construct(self, inst, h, mode=None, rng=None):
        mode = mode or "mcm"
        if mode == "mcm":
            return extended.pwl_mcm(inst, h)
        return extended.pwl_incremental(inst, h)

    def generators(self, inst, mode=None):
        mode = mode or "mcm"
        points = (
            self.mcm_generators(inst) if mode == "mcm" else self.im_generators(inst)
        )
        return points, []

    def mcm_generators(self, inst):
        B, F = inst.breakpoints, inst.values
        m = len(B)
        points = [tuple([R0, R0, R0] + [R0] * m)]
        for i in range(m):
            lam = [R0] * m
            lam[i] = R1
            points.append(tuple([B[i], F[i], R1] + lam))
        return points

    def im_generators(self, inst):
        """Integral chain points of the incremental model: filled prefixes
        with every boundary b free in {d_{i+1}, d_i}."""
        n = inst.segments
        B, F = inst.breakpoints, inst.values
        points = []
        for k in range(n + 1):
            d = [R1 if i < k else R0 for i in range(n)]
            choices = [[]]
            for i in range(n - 1):
                lo, hi = d[i + 1], d[i]
                vals = [lo] if lo == hi else [lo, hi]
                choices = [c + [v] for c in choices for v in vals]
            x = sum(((B[i + 1] - B[i]) * d[i] for i in range(n)), R0)
            y = sum(((F[i + 1] - F[i]) * d[i] for i in range(n)), R0)
            for bvec in choices:
                for z in ([R1] if k > 0 else [R0, R1]):
                    points.append(tuple([x, y, z] + d + bvec))
        return list(dict.fromkeys(points))

    def sample_point(self, inst, rng, kind, mode=None):
        mode = mode or "mcm"
        if kind == VERTEX:
            return _lp_vertex(self.relaxation(inst, mode), rng)
        gens = (
            self.mcm_generators(inst)
            if mode == "mcm"
            else self.im_generators(inst)
        )
        return _mixture(gens, rng)

    def sample_violation(self, inst, rng, mode=None):
        mode = mode or "mcm"
        return _reject_violation(self.relaxation(inst, mode), rng)


FAMILIES = {
    f.name: f
    for f in [
        _McCormick(),
        _Box(),
        _ShortestPath(),
        _Cpmc(),
        _OddCycle(),
        _BipartiteStableSet(),
        _Simplex(),
        _ConvCone(),
        _Ball(),
        _LotSizing(),
        _IncidenceTu(),
        _IntervalTu(),
        _Pwl(),
    ]
}


def get_family(name) -> Family:
    if name not in FAMILIES:
        raise InputError(
            f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}"
        )
    return FAMILIES[name]


def load_instance(data: dict):
    """(family, instance object, mode) from an instance JSON dict."""
    fam = get_family(data.get("family"))
    mode = data.get("mode") or data.get("variant")
    if mode is not None and fam.modes != (None,) and mode not in fam.modes:
        raise InputError(f"family {fam.name} has modes {fam.modes}, got {mode!r}")
    try:
        inst = fam.parse(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {fam.name} instance: {exc}") from exc
    return fam, inst, mode
