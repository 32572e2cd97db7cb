"""Constructions for 0/1-polytopes against the published worked examples."""

import random

import pytest

from hullcert.binary import (
    BipartiteInstance,
    CpmcInstance,
    CycleInstance,
    DagInstance,
    bipartite_stable_set,
    box_a,
    box_b,
    cpmc_forest,
    cpmc_staircase,
    maximal_stable_sets,
    mccormick,
    odd_cycle_blowup,
    odd_cycle_stable_set,
    shortest_path,
)
from hullcert.certificate import extract, reconstruct, verify
from hullcert.errors import ModeError, PreconditionError
from hullcert.lp import membership
from hullcert.rational import R0, R1, rat


def support_of(cert):
    return dict(extract(cert).support)


def named_support(cert):
    names = cert.system.variables
    return {
        frozenset(n for n, v in zip(names, p) if v == 1): w
        for p, w in extract(cert).support
    }


class TestMcCormick:
    def test_worked_example(self):
        cert = mccormick((rat(1, 2), rat(7, 10), rat(1, 5)))
        assert support_of(cert) == {
            (1, 0, 0): rat(3, 10),
            (1, 1, 1): rat(1, 5),
            (0, 1, 0): rat(1, 2),
        }

    def test_vertex(self):
        assert support_of(mccormick((1, 1, 1))) == {(1, 1, 1): 1}

    def test_round_trip_and_oracle(self):
        h = (rat(1, 2), rat(1, 2), rat(1, 4))
        cert = mccormick(h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h
        points = cert.system.enumerate_feasible()
        assert membership(points, [], h).inside

    def test_precondition_names_inequality(self):
        with pytest.raises(PreconditionError) as err:
            mccormick((rat(1, 2), rat(1, 2), rat(3, 4)))
        assert "z <= x" in str(err.value)


class TestBox:
    def test_split_a(self):
        assert support_of(box_a((rat(1, 2), rat(1, 2)))) == {
            (1, 1): rat(1, 2),
            (0, 0): rat(1, 2),
        }

    def test_split_b(self):
        assert support_of(box_b((rat(1, 2), rat(1, 2)))) == {
            (1, 0): rat(1, 2),
            (0, 1): rat(1, 2),
        }

    def test_vertex(self):
        assert support_of(box_a((1, 0))) == {(1, 0): 1}

    def test_bounds_checked(self):
        with pytest.raises(PreconditionError):
            box_b((rat(3, 2), rat(1, 2)))

    def test_higher_dimensions_alternate(self):
        h = (rat(1, 4), rat(1, 3), rat(1, 5), rat(2, 3))
        cert = box_b(h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h


def figure_dag():
    return DagInstance(
        nodes=["s", "v2", "v3", "v5", "v6", "d"],
        arcs=[
            ("a1", "s", "v2"),
            ("a2", "v2", "v3"),
            ("a3", "v3", "d"),
            ("a4", "v5", "d"),
            ("a5", "v6", "d"),
            ("a6", "v2", "v5"),
            ("a7", "v2", "v6"),
            ("a8", "s", "v5"),
        ],
        source="s",
        sink="d",
    )


class TestShortestPath:
    H = (
        rat(4, 5),
        rat(1, 10),
        rat(1, 10),
        rat(3, 5),
        rat(3, 10),
        rat(2, 5),
        rat(3, 10),
        rat(1, 5),
    )

    def test_figure_flow_decomposes_into_four_paths(self):
        inst = figure_dag()
        cert = shortest_path(inst, self.H)
        assert verify(cert).ok
        comb = extract(cert)
        assert len(comb.support) == 4 == len(inst.paths())
        assert reconstruct(comb) == self.H
        arc_sets = {
            frozenset(n for n, v in zip(inst.arc_names(), p) if v == 1)
            for p, _w in comb.support
        }
        assert arc_sets == {
            frozenset(["a1", "a2", "a3"]),
            frozenset(["a8", "a4"]),
            frozenset(["a1", "a7", "a5"]),
            frozenset(["a1", "a6", "a4"]),
        }

    def test_path_indicator_gets_weight_one(self):
        inst = figure_dag()
        names = inst.arc_names()
        chosen = {"a1", "a6", "a4"}
        h = tuple(R1 if a in chosen else R0 for a in names)
        assert support_of(shortest_path(inst, h)) == {h: 1}

    def test_random_path_mixture_reconstructs(self, rng):
        inst = figure_dag()
        names = inst.arc_names()
        paths = inst.paths()
        for _ in range(30):
            picks = rng.sample(paths, 3)
            weights = [rng.randint(1, 5) for _ in picks]
            total = sum(weights)
            h = tuple(
                sum(
                    (rat(w, total) for w, p in zip(weights, picks) if a in p),
                    R0,
                )
                for a in names
            )
            cert = shortest_path(inst, h)
            assert verify(cert).ok
            assert reconstruct(extract(cert)) == h
            assert membership(
                [
                    tuple(R1 if a in set(p) else R0 for a in names)
                    for p in paths
                ],
                [],
                h,
            ).inside

    def test_infeasible_flow_rejected(self):
        with pytest.raises(PreconditionError):
            shortest_path(figure_dag(), (R1,) * 8)

    def test_cycle_rejected(self):
        with pytest.raises(ModeError):
            DagInstance(
                nodes=["s", "a", "b", "d"],
                arcs=[
                    ("e1", "s", "a"),
                    ("e2", "a", "b"),
                    ("e3", "b", "a"),
                    ("e4", "b", "d"),
                ],
                source="s",
                sink="d",
            )


class TestCpmcForest:
    def minimal(self):
        return CpmcInstance(
            classes=[("V1", ["a", "b"]), ("V2", ["c", "d"])],
            edges={frozenset(("a", "c")), frozenset(("b", "d"))},
        )

    def test_two_clique_instance(self):
        inst = self.minimal()
        h = (rat(1, 2),) * 4
        cert = cpmc_forest(inst, h)
        assert named_support(cert) == {
            frozenset(("a", "c")): rat(1, 2),
            frozenset(("b", "d")): rat(1, 2),
        }

    def test_clique_weight_one(self):
        inst = self.minimal()
        h = (R1, R0, R1, R0)
        assert named_support(cert := cpmc_forest(inst, h)) == {
            frozenset(("a", "c")): R1
        }
        assert verify(cert).ok

    def test_three_class_tree_mixture(self, rng):
        inst = CpmcInstance(
            classes=[
                ("V1", ["a1", "a2"]),
                ("V2", ["b1", "b2"]),
                ("V3", ["c1", "c2"]),
            ],
            edges={
                frozenset(("a1", "b1")),
                frozenset(("a2", "b1")),
                frozenset(("a2", "b2")),
                frozenset(("b1", "c1")),
                frozenset(("b2", "c2")),
                frozenset(("b2", "c1")),
                # V1-V3 complete so the dependency graph is the path V1-V2-V3
                frozenset(("a1", "c1")),
                frozenset(("a1", "c2")),
                frozenset(("a2", "c1")),
                frozenset(("a2", "c2")),
            },
        )
        assert inst.dependency_edges() == [("V1", "V2"), ("V2", "V3")]
        assert inst.dependency_is_forest()
        names = inst.nodes()
        cliques = inst.cliques()
        assert cliques
        for _ in range(25):
            picks = [rng.choice(cliques) for _ in range(3)]
            weights = [rng.randint(1, 4) for _ in picks]
            total = sum(weights)
            h = tuple(
                sum(
                    (rat(w, total) for w, c in zip(weights, picks) if v in c),
                    R0,
                )
                for v in names
            )
            cert = cpmc_forest(inst, h)
            assert verify(cert).ok
            assert reconstruct(extract(cert)) == h

    def test_cycle_dependency_rejected(self):
        inst = CpmcInstance(
            classes=[("V1", ["a", "b"]), ("V2", ["c", "d"]), ("V3", ["e", "f"])],
            edges={
                frozenset(("a", "c")),
                frozenset(("c", "e")),
                frozenset(("a", "e")),
            },
        )
        with pytest.raises(ModeError):
            cpmc_forest(inst, (rat(1, 2),) * 6)

    def test_stable_set_enumeration(self):
        sets = maximal_stable_sets(
            ["a", "b", "c"], {"a": {"b"}, "b": {"a", "c"}, "c": {"b"}}
        )
        assert sorted(map(sorted, sets)) == [["a", "c"], ["b"]]


class TestCpmcStaircase:
    def chains(self):
        return CpmcInstance(
            classes=[("V1", ["a1", "a2"]), ("V2", ["b1", "b2"])],
            edges={
                frozenset(("a1", "b1")),
                frozenset(("a2", "b1")),
                frozenset(("a2", "b2")),
            },
            orders={"V1": ["a1", "a2"], "V2": ["b1", "b2"]},
        )

    def test_uniform_point(self):
        inst = self.chains()
        h = (rat(1, 2),) * 4
        cert = cpmc_staircase(inst, h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h

    def test_vertex(self):
        inst = self.chains()
        assert named_support(cpmc_staircase(inst, (R1, R0, R1, R0))) == {
            frozenset(("a1", "b1")): R1
        }

    def test_non_staircase_rejected(self):
        inst = CpmcInstance(
            classes=[("V1", ["a1", "a2"]), ("V2", ["b1", "b2", "b3"])],
            edges={frozenset(("a1", "b1")), frozenset(("a1", "b3")),
                   frozenset(("a2", "b2"))},
            orders={"V1": ["a1", "a2"], "V2": ["b1", "b2", "b3"]},
        )
        with pytest.raises(ModeError):
            cpmc_staircase(inst, (rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 4), rat(1, 4)))

    def test_relaxation_point_outside_rejected(self):
        inst = self.chains()
        # b2 heavier than a2 violates the comparison inequality
        with pytest.raises(PreconditionError):
            cpmc_staircase(inst, (rat(3, 4), rat(1, 4), rat(1, 4), rat(3, 4)))


class TestOddCycle:
    H = (rat(1, 2), rat(1, 5), rat(3, 10), rat(1, 10), rat(1, 10))

    def test_blowup_matches_figure(self):
        inst = CycleInstance(5)
        assert odd_cycle_blowup(inst, self.H) == [
            rat(4, 5),
            rat(1, 5),
            rat(4, 5),
            rat(1, 10),
            rat(1, 10),
        ]

    def test_blowup_dominates_and_stays_feasible(self, rng):
        inst = CycleInstance(7)
        relax = inst.relaxation()
        saturated = 0
        for _ in range(40):
            h = None
            while h is None:
                cand = tuple(rat(rng.randint(0, 6), 14) for _ in range(7))
                if relax.point_in_relaxation(cand):
                    h = cand
            hbar = odd_cycle_blowup(inst, h)
            assert all(a >= b for a, b in zip(hbar, h))
            assert relax.point_in_relaxation(tuple(hbar))
            saturated += sum(hbar, R0) == rat(3)
        assert saturated > 30  # the greedy only rarely stalls early

    def test_greedy_stall_repaired_by_dominating_lp(self):
        # one greedy pass covers every vertex with a tight edge at 34/9 < 4;
        # a dominating point on the odd-cycle facet exists and is used
        inst = CycleInstance(9)
        h = tuple(
            rat(s)
            for s in ("1/9", "2/9", "0", "7/9", "0", "1/9", "2/3", "0", "2/9")
        )
        assert sum(odd_cycle_blowup(inst, h), R0) == rat(34, 9)
        cert = odd_cycle_stable_set(inst, h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h

    def test_no_integer_sum_dominating_point_falls_back_to_peeling(self):
        # x2 = 1 pins its neighbours; the maximal dominating sum is 25/7,
        # so no dominating point has an integer sum and no consecutive
        # layout closes up
        inst = CycleInstance(9)
        h = tuple(
            rat(s)
            for s in ("0", "1", "0", "3/7", "4/7", "2/7", "1/7", "6/7", "1/7")
        )
        cert = odd_cycle_stable_set(inst, h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h

    def test_figure_support(self):
        cert = odd_cycle_stable_set(CycleInstance(5), self.H)
        assert named_support(cert) == {
            frozenset(("u1", "u3")): rat(3, 10),
            frozenset(("u1",)): rat(1, 5),
            frozenset(): rat(3, 10),
            frozenset(("u2", "u4")): rat(1, 10),
            frozenset(("u2", "u5")): rat(1, 10),
        }

    def test_zero_point(self):
        cert = odd_cycle_stable_set(CycleInstance(5), (R0,) * 5)
        assert support_of(cert) == {(R0,) * 5: R1}

    def test_uniform_seven_cycle(self):
        inst = CycleInstance(7)
        h = (rat(3, 7),) * 7
        cert = odd_cycle_stable_set(inst, h)
        assert verify(cert).ok
        assert reconstruct(extract(cert)) == h
        assert membership(inst.stable_sets(), [], h).inside

    def test_even_cycle_rejected(self):
        with pytest.raises(Exception):
            CycleInstance(6)

    def test_outside_relaxation_rejected(self):
        with pytest.raises(PreconditionError):
            odd_cycle_stable_set(CycleInstance(5), (rat(1, 2),) * 5)


class TestBipartiteStableSet:
    def supplement(self):
        return BipartiteInstance(
            left=["u1", "u2", "u3"],
            right=["w1", "w2", "w3"],
            edges=[
                ("u1", "w1"),
                ("u2", "w2"),
                ("u3", "w3"),
                ("u1", "w2"),
                ("u2", "w3"),
                ("u3", "w1"),
            ],
        )

    def test_supplement_support(self):
        h = (rat(3, 5), rat(3, 10), rat(1, 5), rat(2, 5), rat(1, 5), rat(3, 5))
        cert = bipartite_stable_set(self.supplement(), h)
        assert named_support(cert) == {
            frozenset(("u1", "u2", "u3")): rat(1, 5),
            frozenset(("u1", "u2")): rat(1, 10),
            frozenset(("u1",)): rat(1, 10),
            frozenset(("u1", "w3")): rat(1, 5),
            frozenset(("w1", "w3")): rat(1, 5),
            frozenset(("w1", "w2", "w3")): rat(1, 5),
        }

    def test_zero_point(self):
        cert = bipartite_stable_set(self.supplement(), (R0,) * 6)
        assert support_of(cert) == {(R0,) * 6: R1}

    def test_random_stable_mixtures(self, rng):
        inst = self.supplement()
        stables = inst.stable_sets()
        for _ in range(25):
            picks = rng.sample(stables, 3)
            weights = [rng.randint(1, 4) for _ in picks]
            total = sum(weights)
            h = tuple(
                sum((rat(w, total) * p[i] for w, p in zip(weights, picks)), R0)
                for i in range(6)
            )
            cert = bipartite_stable_set(inst, h)
            assert verify(cert).ok
            assert reconstruct(extract(cert)) == h
            assert membership(stables, [], h).inside

    def test_edge_inequality_rejected(self):
        with pytest.raises(PreconditionError):
            bipartite_stable_set(
                self.supplement(),
                (rat(3, 4), R0, R0, rat(3, 4), R0, R0),
            )


class TestGreedyCellBound:
    def test_greedy_routines_stay_within_two_n_plus_one_cells(self, rng):
        """The single-pass routines touch each variable once, so the profile
        of their certificates has at most 2n + 1 cells."""
        from hullcert.families import get_family
        from hullcert.rectangles import profile

        for name, mode in (
            ("shortest-path", None),
            ("cpmc", "staircase"),
            ("bipartite-stable-set", None),
        ):
            fam = get_family(name)
            for k in range(40):
                inst = fam.parse(fam.sample_instance(rng, mode))
                kind = "vertex" if k % 4 == 0 else "mixture"
                h = fam.sample_point(inst, rng, kind, mode)
                cert = fam.construct(inst, h, mode=mode, rng=rng)
                n = len(cert.system.variables)
                assert len(profile(cert.convex_sets())) <= 2 * n + 1


class TestLayoutMetadata:
    def test_orderings_recorded(self):
        inst = figure_dag()
        cert = shortest_path(inst, TestShortestPath.H)
        assert cert.meta["arc_order"] == inst.arc_names()
        assert cert.meta["node_order"][0] == "s"
        oc = odd_cycle_stable_set(CycleInstance(5), TestOddCycle.H)
        assert oc.meta["node_order"] == ["u1", "u2", "u3", "u4", "u5"]
