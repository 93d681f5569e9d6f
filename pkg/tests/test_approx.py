import random
from fractions import Fraction

import pytest

from conncut.approx import (LeafBipartition, ThickTree, bcmc_approx, cycle_solve,
                            half_density_trials, leaf_bipartition, leafy_spanning_tree,
                            random_half_cmc, thick_tree_cut, wcmc_approx,
                            weight_class_split)
from conncut.errors import InvalidInputError
from conncut.exact import brute_force_cmc
from conncut.graph import Graph, cut_weight, is_connected_induced
from conncut.reductions import contract_d2_paths, ensure_one_edges, is_simple_cycle


def random_connected(rng, n, weighted=False, extra=None):
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for _ in range(extra if extra is not None else n):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    out = []
    for u, v in sorted(edges):
        w = Fraction(rng.randint(0, 12), rng.randint(1, 4)) if weighted \
            else rng.choice([0, 1, 1])
        out.append((u, v, w))
    return Graph(n, out)


class TestCycleSolve:
    def test_weighted_four_cycle(self):
        g = Graph(4, [(0, 1, 5), (1, 2, 1), (2, 3, 1), (0, 3, 3)])
        sol = cycle_solve(g)
        assert sol.cut_value == 8
        assert sol.cut_value == brute_force_cmc(g).cut_value

    def test_unit_cycles_cut_two(self):
        for n in (3, 5, 8):
            g = Graph(n, [(i, (i + 1) % n, 1) for i in range(n)])
            assert cycle_solve(g).cut_value == 2

    def test_matches_brute_force_random_weights(self):
        rng = random.Random(21)
        for n in (3, 4, 5, 6, 7):
            for _ in range(5):
                g = Graph(n, [(i, (i + 1) % n, rng.randint(0, 9)) for i in range(n)])
                assert cycle_solve(g).cut_value == brute_force_cmc(g).cut_value

    def test_non_cycle_rejected(self):
        with pytest.raises(InvalidInputError):
            cycle_solve(Graph(3, [(0, 1, 1), (1, 2, 1)]))


class TestLeafySpanningTree:
    def test_k4_has_a_leaf(self):
        g = Graph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
        tt = leafy_spanning_tree(g)
        assert len(tt.leaves) >= 1
        assert len(tt.tree_edges) == 3

    def test_cycle_rejected(self):
        g = Graph(6, [(i, (i + 1) % 6, 1) for i in range(6)])
        with pytest.raises(InvalidInputError):
            leafy_spanning_tree(g)

    def test_long_run_rejected(self):
        g = Graph(6, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (0, 5, 1),
                      (0, 2, 1)])
        # vertices 3,4,5 form a degree-2 run of length 3
        with pytest.raises(InvalidInputError):
            leafy_spanning_tree(g)

    def test_bounds_on_random_reduced_graphs(self):
        rng = random.Random(22)
        done = 0
        while done < 50:
            g = random_connected(rng, rng.randint(2, 40))
            g1, _ = ensure_one_edges(g)
            if g1.n == 0 or not is_connected_induced(g1, range(g1.n)) \
                    or is_simple_cycle(g1):
                continue
            g2, _ = contract_d2_paths(g1)
            if g2.n < 1 or is_simple_cycle(g2):
                continue
            tt = leafy_spanning_tree(g2)
            assert len(tt.leaves) >= -(-g2.n // 14)
            done += 1


class TestLeafBipartition:
    def test_triangle_crossing_two(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
        bip = leaf_bipartition(g, {0, 1, 2})
        assert bip.crossing_ones == 2

    def test_no_one_edges(self):
        g = Graph(3, [(0, 1, 0), (1, 2, 0)])
        bip = leaf_bipartition(g, {0, 1, 2})
        assert bip.cross_weight == 0

    def test_four_cycle_at_least_half(self):
        g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
        bip = leaf_bipartition(g, {0, 1, 2, 3})
        assert bip.crossing_ones >= 2

    def test_half_of_induced_weight_random(self):
        rng = random.Random(23)
        for _ in range(40):
            g = random_connected(rng, rng.randint(2, 15), weighted=True)
            leaves = {v for v in range(g.n) if rng.random() < 0.6} or {0}
            bip = leaf_bipartition(g, leaves)
            induced = sum((w for u, v, w in g.edges if u in leaves and v in leaves),
                          Fraction(0))
            assert bip.cross_weight >= induced / 2
            assert bip.part1 | bip.part2 == frozenset(leaves)
            assert not (bip.part1 & bip.part2)


class TestThickTreeCut:
    def test_star_with_unit_edges(self):
        g = Graph(7, [(0, i, 1) for i in range(1, 7)])
        tt = ThickTree.from_tree(g, [(0, i) for i in range(1, 7)])
        assert tt.leaf_weight == 6
        sol = thick_tree_cut(tt)
        assert sol.cut_value >= Fraction(6, 4)
        assert sol.cut_value == 3

    def test_single_edge_tree_prefers_heavier_endpoint(self):
        g = Graph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
        tt = ThickTree.from_tree(g, [(0, 1)])
        sol = thick_tree_cut(tt)
        assert sol.vertices == {0} and sol.cut_value == 3

    def test_quarter_bound_random_spanning_trees(self):
        rng = random.Random(24)
        for _ in range(50):
            g = random_connected(rng, rng.randint(2, 25), weighted=True)
            order = list(range(g.m))
            rng.shuffle(order)
            parent = list(range(g.n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            tree = []
            for i in order:
                u, v, _ = g.edges[i]
                if find(u) != find(v):
                    parent[find(u)] = find(v)
                    tree.append((u, v))
            tt = ThickTree.from_tree(g, tree)
            sol = thick_tree_cut(tt)
            assert sol.connected
            assert sol.cut_value >= tt.leaf_weight / 4


class TestBcmc:
    def test_path_optimal(self):
        assert bcmc_approx(Graph(3, [(0, 1, 1), (1, 2, 1)])).cut_value == 2

    def test_k4_at_least_three(self):
        g = Graph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
        sol = bcmc_approx(g)
        assert sol.cut_value >= 3

    def test_single_vertex(self):
        sol = bcmc_approx(Graph(1))
        assert sol.vertices == {0} and sol.cut_value == 0

    def test_all_zero_weights(self):
        g = Graph(3, [(0, 1, 0), (1, 2, 0)])
        sol = bcmc_approx(g)
        assert sol.cut_value == 0 and len(sol.vertices) >= 1

    def test_disconnected_picks_best_component(self):
        g = Graph(6, [(0, 1, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1), (3, 5, 1)])
        sol = bcmc_approx(g)
        assert sol.connected
        assert sol.cut_value == brute_force_cmc(g).cut_value

    def test_cycle_component_exact(self):
        g = Graph(5, [(i, (i + 1) % 5, 1) for i in range(5)])
        assert bcmc_approx(g).cut_value == 2

    def test_rejects_general_weights(self):
        with pytest.raises(InvalidInputError):
            bcmc_approx(Graph(2, [(0, 1, 5)]))

    def test_never_beats_optimum_and_feasible(self):
        rng = random.Random(25)
        for _ in range(60):
            g = random_connected(rng, rng.randint(1, 12))
            sol = bcmc_approx(g)
            sol.check(g)
            assert sol.connected
            assert sol.cut_value <= brute_force_cmc(g).cut_value


class TestWeightClasses:
    def test_documented_example(self):
        g = Graph(5, [(0, 1, 10), (1, 2, 5), (2, 3, 3), (3, 4, "1/250")])
        classes = weight_class_split(g, 1)
        assert len(classes) == 3
        assert classes[0].lower == Fraction(5, 2) and classes[0].edge_ids == (2,)
        assert classes[1].edge_ids == (1,)
        assert classes[2].edge_ids == (0,)

    def test_uniform_weights_single_class(self):
        g = Graph(4, [(0, 1, 7), (1, 2, 7), (2, 3, 7)])
        classes = weight_class_split(g, 1)
        nonempty = [c for c in classes if c.edge_ids]
        assert len(nonempty) == 1 and set(nonempty[0].edge_ids) == {0, 1, 2}

    def test_partition_of_heavy_edges(self):
        rng = random.Random(26)
        for _ in range(30):
            g = random_connected(rng, rng.randint(2, 12), weighted=True)
            if all(w == 0 for _, _, w in g.edges):
                continue
            eps = Fraction(rng.randint(1, 4), rng.randint(1, 3))
            classes = weight_class_split(g, eps)
            w0 = classes[0].lower
            seen: dict = {}
            for c in classes:
                for e in c.edge_ids:
                    assert e not in seen
                    seen[e] = c.index
                    assert c.lower <= g.weight(e) < c.upper
            for idx, (_, _, w) in enumerate(g.edges):
                assert (idx in seen) == (w >= w0)

    def test_zero_graph_empty_split(self):
        assert weight_class_split(Graph(2, [(0, 1, 0)]), 1) == []


class TestWcmc:
    def test_uniform_star(self):
        g = Graph(6, [(0, i, 7) for i in range(1, 6)])
        assert wcmc_approx(g).cut_value == 35

    def test_two_vertex_edge(self):
        assert wcmc_approx(Graph(2, [(0, 1, 3)])).cut_value == 3

    def test_sandwich_random(self):
        rng = random.Random(27)
        for _ in range(30):
            g = random_connected(rng, rng.randint(2, 11), weighted=True)
            sol = wcmc_approx(g, 1, seed=3)
            sol.check(g)
            assert sol.connected
            assert sol.cut_value <= brute_force_cmc(g).cut_value


class TestRandomHalf:
    def test_clique_samples_always_accepted(self):
        g = Graph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
        accepted = half_density_trials(g, 64, seed=5)
        assert accepted
        for s, c in accepted:
            assert is_connected_induced(g, s) and c == cut_weight(g, s)

    def test_path_output_feasible(self):
        g = Graph(10, [(i, i + 1, 1) for i in range(9)])
        sol = random_half_cmc(g, 50, seed=6)
        sol.check(g)
        assert sol.connected

    def test_deterministic_given_seed(self):
        g = Graph(8, [(i, (i + 1) % 8, 1) for i in range(8)] + [(0, 4, 1)])
        a = random_half_cmc(g, 40, seed=9)
        b = random_half_cmc(g, 40, seed=9)
        assert a == b

    def test_trials_validation(self):
        with pytest.raises(InvalidInputError):
            random_half_cmc(Graph(2, [(0, 1, 1)]), 0, seed=0)
