import itertools
from fractions import Fraction

import pytest

from conncut.errors import InfeasibleAssignmentError, InvalidInputError, SizeGuardError
from conncut.graph import cut_weight, is_connected_induced
from conncut.hardness import (PM3SatInstance, assignment_to_solution, helper_count,
                              sat_brute_force, sat_to_cmc, structured_opt_oracle,
                              validate_pm3sat)


def figure_instance():
    return PM3SatInstance(5, ((1, 2, 5), (2, 3, 4)), ((1, 2, 3), (3, 4, 5), (1, 3, 5)))


class TestValidation:
    def test_figure_instance_valid(self):
        assert validate_pm3sat(figure_instance())

    def test_crossing_intervals_invalid(self):
        res = validate_pm3sat(PM3SatInstance(4, ((1, 3), (2, 4)), ()))
        assert not res and "cross" in res.problems[0]

    def test_single_clause_valid(self):
        assert validate_pm3sat(PM3SatInstance(3, ((1, 2, 3),), ()))

    def test_endpoint_sharing_allowed(self):
        assert validate_pm3sat(PM3SatInstance(5, ((1, 3), (3, 5)), ()))

    def test_oversized_clause_invalid(self):
        assert not validate_pm3sat(PM3SatInstance(4, ((1, 2, 3, 4),), ()))

    def test_variable_out_of_range(self):
        assert not validate_pm3sat(PM3SatInstance(2, ((3,),), ()))


class TestConstruction:
    def test_helper_count_invariants(self):
        for m in range(1, 12):
            k = helper_count(m)
            s = int(round(k ** 0.5))
            assert s * s == k, "K must be a perfect square"
            assert k > m * m, "K must exceed m^2"
            assert m * s + 3 * m < k, "exchange margin must hold"
            assert s > 2 * (m - 1), "threshold margin must hold"

    def test_counts_single_positive_clause(self):
        inst = PM3SatInstance(3, ((1, 2, 3),), ())
        gdt = sat_to_cmc(inst)
        kk, s = gdt.k_helpers, gdt.sqrt_k
        n, m = 3, 1
        assert gdt.graph.n == 2 * n + n * kk + n * kk * kk + m + m * s
        assert gdt.threshold == m * s + n * kk + n * kk * kk
        # edges: helper-literal pairs, helper leaves, chain, clause wiring
        assert gdt.graph.m == 2 * n * kk + n * kk * kk + (n - 1) + 3 + s

    def test_helper_degrees(self):
        gdt = sat_to_cmc(PM3SatInstance(3, ((1, 2, 3),), ()))
        kk = gdt.k_helpers
        for i in range(1, 4):
            for k in range(1, kk + 1):
                deg = gdt.graph.degree(gdt.helper(i, k))
                joint = (k == kk and i < 3) or (k == 1 and i > 1)
                assert deg == kk + 2 + (1 if joint else 0)

    def test_repeated_literals_deduplicated(self):
        gdt = sat_to_cmc(PM3SatInstance(1, ((1, 1, 1),), ((1,),)))
        cv = gdt.clause_vertex(0)
        lits = [u for u, _ in gdt.graph.adj[cv] if gdt.roles[u].startswith("pos_")]
        assert len(lits) == 1

    def test_invalid_instance_rejected(self):
        with pytest.raises(InvalidInputError):
            sat_to_cmc(PM3SatInstance(4, ((1, 3), (2, 4)), ()))


class TestAssignmentForwardMap:
    def test_satisfying_assignment_reaches_threshold(self):
        inst = PM3SatInstance(3, ((1, 2, 3),), ())
        gdt = sat_to_cmc(inst)
        sol = assignment_to_solution(gdt, (True, True, True))
        assert sol.connected
        assert sol.cut_value >= gdt.threshold
        assert len(sol.vertices) == inst.n + inst.m + inst.n * gdt.k_helpers

    def test_every_satisfying_assignment_fig(self):
        inst = figure_instance()
        gdt = sat_to_cmc(inst)
        count = 0
        for bits in itertools.product([False, True], repeat=inst.n):
            try:
                sol = assignment_to_solution(gdt, bits)
            except InfeasibleAssignmentError:
                continue
            count += 1
            assert sol.cut_value >= gdt.threshold
        assert count > 0

    def test_unsatisfying_assignment_reported(self):
        gdt = sat_to_cmc(PM3SatInstance(1, ((1,),), ((1,),)))
        with pytest.raises(InfeasibleAssignmentError):
            assignment_to_solution(gdt, (True,))
        with pytest.raises(InfeasibleAssignmentError):
            assignment_to_solution(gdt, (False,))

    def test_wrong_length_rejected(self):
        gdt = sat_to_cmc(PM3SatInstance(2, ((1, 2),), ()))
        with pytest.raises(InvalidInputError):
            assignment_to_solution(gdt, (True,))


class TestOracle:
    def test_satisfiable_reaches_threshold(self):
        gdt = sat_to_cmc(PM3SatInstance(3, ((1, 2, 3),), ()))
        res = structured_opt_oracle(gdt)
        assert res.value >= gdt.threshold

    def test_unsatisfiable_stays_below(self):
        gdt = sat_to_cmc(PM3SatInstance(1, ((1,),), ((1,),)))
        res = structured_opt_oracle(gdt)
        assert res.value < gdt.threshold

    def test_returned_set_verifies(self):
        gdt = sat_to_cmc(figure_instance())
        res = structured_opt_oracle(gdt)
        assert is_connected_induced(gdt.graph, res.vertices)
        assert cut_weight(gdt.graph, res.vertices) == res.value

    def test_closed_form_matches_direct_cut_everywhere(self):
        # exhaustively: build the assignment set by hand for every
        # assignment and compare the true cut to the oracle decomposition
        inst = PM3SatInstance(2, ((1, 2),), ((1,), (2,)))
        gdt = sat_to_cmc(inst)
        from conncut.hardness import _assignment_set, _clause_satisfied

        base = inst.n * gdt.k_helpers ** 2 + inst.n * gdt.k_helpers
        for bits in itertools.product([False, True], repeat=inst.n):
            sat = {j for j, (p, c) in enumerate(inst.clauses)
                   if _clause_satisfied(p, c, bits)}
            s = _assignment_set(gdt, bits, clause_subset=sat)
            expect = base
            for j, (p, c) in enumerate(inst.clauses):
                if j in sat:
                    expect += gdt.sqrt_k + sum(1 for v in set(c) if bits[v - 1] != p)
            assert cut_weight(gdt.graph, s) == expect

    def test_size_guard(self):
        # guard fires on the variable count before touching the graph, so
        # a stub gadget suffices (the real graph would be astronomically big)
        from conncut.graph import Graph
        from conncut.hardness import Gadget

        inst = PM3SatInstance(21, tuple((i,) for i in range(1, 22)), ())
        stub = Gadget(Graph(0), inst, 4, Fraction(0), ())
        with pytest.raises(SizeGuardError):
            structured_opt_oracle(stub)


def test_threshold_biconditional_corpus():
    corpus = [
        PM3SatInstance(3, ((1, 2, 3),), ()),
        PM3SatInstance(1, ((1,),), ((1,),)),              # unsat core
        PM3SatInstance(2, ((1,), (2,)), ((1, 2),)),       # sat
        PM3SatInstance(2, ((1,), (2,)), ((1,), (2,))),    # unsat
        figure_instance(),
    ]
    for inst in corpus:
        assert validate_pm3sat(inst)
        gdt = sat_to_cmc(inst)
        res = structured_opt_oracle(gdt)
        assert sat_brute_force(inst) == (res.value >= gdt.threshold)
