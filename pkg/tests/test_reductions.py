import random
from fractions import Fraction

import pytest

from conncut.errors import CycleInputError, InvalidInputError
from conncut.exact import brute_force_cmc
from conncut.graph import Graph, Solution, cut_weight, is_connected_induced
from conncut.reductions import (D2Contraction, ReductionTrace, ZeroVertexRemoval,
                                contract_d2_paths, ensure_one_edges, is_simple_cycle,
                                lift_solution, lift_vertex_set)


def random_zero_one(rng, n, p, p1=0.6):
    return Graph(n, [(u, v, 1 if rng.random() < p1 else 0)
                     for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p])


def subdivided(rng, n, p):
    """Random graph with every edge randomly subdivided: plenty of
    degree-2 runs."""
    edges = []
    nxt = n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                inner = rng.randint(0, 3)
                chain = [u] + list(range(nxt, nxt + inner)) + [v]
                nxt += inner
                edges += [(a, b, rng.choice([0, 1])) for a, b in zip(chain, chain[1:])]
    return Graph(nxt, edges)


class TestEnsureOneEdges:
    def test_zero_only_vertex_removed(self):
        # a=0, b=1 joined by the only 1-edge; v=2 carries two 0-edges
        g = Graph(3, [(0, 2, 0), (1, 2, 0), (0, 1, 1)])
        r, t = ensure_one_edges(g)
        assert r.n == 2 and r.edges == ((0, 1, Fraction(1)),)
        assert len(t.steps) == 1 and isinstance(t.steps[0], ZeroVertexRemoval)
        # a and b were already adjacent: no fill edge needed
        assert t.steps[0].added_zero_edges == ()

    def test_all_one_graph_unchanged(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1)])
        r, t = ensure_one_edges(g)
        assert r == g and t.steps == ()

    def test_every_output_vertex_has_a_one_edge(self):
        rng = random.Random(8)
        for _ in range(40):
            g = random_zero_one(rng, rng.randint(1, 10), 0.5, p1=0.4)
            r, _ = ensure_one_edges(g)
            for v in range(r.n):
                assert any(r.weight(i) == 1 for _, i in r.adj[v])

    def test_optimum_preserved_random(self):
        rng = random.Random(9)
        done = 0
        while done < 30:
            g = random_zero_one(rng, rng.randint(2, 10), 0.5, p1=0.5)
            r, t = ensure_one_edges(g)
            if r.n == 0:
                assert all(w == 0 for _, _, w in g.edges)
                continue
            assert brute_force_cmc(g).cut_value == brute_force_cmc(r).cut_value
            done += 1

    def test_rejects_general_weights(self):
        with pytest.raises(InvalidInputError):
            ensure_one_edges(Graph(2, [(0, 1, "1/2")]))


class TestContractD2:
    def anchored_path(self, weights):
        # anchor 0 with two extra arms; run 1,2,3; tail 4
        w0, w1, w2 = weights
        return Graph(7, [(0, 5, 1), (0, 6, 1), (0, 1, w0), (1, 2, w1), (2, 3, w2),
                         (3, 4, 1)])

    @pytest.mark.parametrize("weights,expected", [
        ((1, 0, 1), (1, 1)),
        ((1, 1, 1), (1, 1)),
        ((0, 1, 0), (0, 1)),
        ((1, 0, 0), (0, 1)),
        ((0, 0, 0), (0, 0)),
    ])
    def test_weight_rules(self, weights, expected):
        r, t = contract_d2_paths(self.anchored_path(weights))
        assert len(t.steps) == 1
        assert t.steps[0].new_weights == expected

    def test_cycle_rejected(self):
        cyc = Graph(5, [(i, (i + 1) % 5, 1) for i in range(5)])
        with pytest.raises(CycleInputError):
            contract_d2_paths(cyc)

    def test_disconnected_rejected(self):
        with pytest.raises(InvalidInputError):
            contract_d2_paths(Graph(4, [(0, 1, 1), (2, 3, 1)]))

    def test_no_long_runs_in_output_and_idempotent(self):
        rng = random.Random(10)
        done = 0
        while done < 30:
            g = subdivided(rng, rng.randint(3, 7), 0.5)
            if not is_connected_induced(g, range(g.n)) or is_simple_cycle(g) or g.n < 2:
                continue
            r, t = contract_d2_paths(g)
            for v in range(r.n):
                if r.degree(v) == 2:
                    a, b = (u for u, _ in r.adj[v])
                    assert not (r.degree(a) == 2 and r.degree(b) == 2)
            r2, t2 = contract_d2_paths(r)
            assert r2 == r and t2.steps == ()
            assert len(t.steps) <= g.n
            done += 1

    def test_optimum_preserved_random(self):
        rng = random.Random(12)
        done = 0
        while done < 30:
            g = subdivided(rng, rng.randint(3, 6), 0.5)
            if not is_connected_induced(g, range(g.n)) or is_simple_cycle(g) \
                    or g.n < 2 or g.n > 14:
                continue
            r, _ = contract_d2_paths(g)
            assert brute_force_cmc(g).cut_value == brute_force_cmc(r).cut_value
            done += 1


class TestLifting:
    def test_contracted_singleton_lifts_to_inner_pair_subset(self):
        g = Graph(7, [(0, 5, 1), (0, 6, 1), (0, 1, 1), (1, 2, 0), (2, 3, 1), (3, 4, 1)])
        r, t = contract_d2_paths(g)
        vn_id = t.final_labels.index(t.steps[0].new_vertex)
        lifted = lift_vertex_set(t, {vn_id})
        assert lifted <= {1, 2}
        assert cut_weight(g, lifted) >= 2

    def test_empty_trace_identity(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1)])
        r, t = ensure_one_edges(g)
        sol = Solution.evaluate(r, {1})
        assert lift_solution(t, sol).vertices == {1}

    def test_lift_monotone_random(self):
        rng = random.Random(13)
        done = 0
        while done < 100:
            g = subdivided(rng, rng.randint(2, 6), 0.6)
            if g.n < 2 or not is_connected_induced(g, range(g.n)) or is_simple_cycle(g):
                continue
            g1, t1 = ensure_one_edges(g)
            if g1.n == 0 or not is_connected_induced(g1, range(g1.n)) \
                    or is_simple_cycle(g1):
                continue
            g2, t2 = contract_d2_paths(g1)
            # a random feasible (connected) set on the reduced graph
            start = rng.randrange(g2.n)
            s = {start}
            for _ in range(rng.randint(0, g2.n)):
                frontier = {u for v in s for u, _ in g2.adj[v]} - s
                if not frontier:
                    break
                s.add(min(frontier))
            sol = Solution.evaluate(g2, s)
            lifted = lift_solution([t1, t2], sol)
            assert lifted.connected
            assert lifted.cut_value >= sol.cut_value
            assert lifted.cut_value == cut_weight(g, lifted.vertices)
            done += 1

    def test_lift_rejects_empty(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1)])
        _, t = ensure_one_edges(g)
        with pytest.raises(InvalidInputError):
            lift_vertex_set(t, set())


def test_trace_json_round_trip():
    rng = random.Random(14)
    g = subdivided(rng, 5, 0.6)
    if not is_connected_induced(g, range(g.n)) or is_simple_cycle(g):
        g = Graph(7, [(0, 5, 1), (0, 6, 1), (0, 1, 1), (1, 2, 0), (2, 3, 1), (3, 4, 1)])
    r, t = contract_d2_paths(g)
    clone = ReductionTrace.from_json(g, t.to_json())
    assert clone.steps == t.steps and clone.final_labels == t.final_labels
