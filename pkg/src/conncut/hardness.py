"""Planar-monotone-SAT to connected-max-cut gadget generator.

Every variable becomes a pair of literal vertices bridged by K helper
vertices (each carrying K private leaves); helpers chain across adjacent
variables, clauses become vertices wired to their literals plus sqrt(K)
private leaves. A satisfying assignment turns into a connected set whose
cut reaches m*sqrt(K) + n*K + n*K^2, and no assignment-shaped set reaches
that threshold when the formula is unsatisfiable.

K is the square of max(m+2, 2m-1). The lower bound 2m-1 keeps unsatisfied
formulas strictly below the threshold: an assignment missing u clauses
can recover at most 2(m-u) cut edges from clause-to-false-literal wiring,
which stays under u*sqrt(K). The m+2 floor keeps sqrt(K)*m + 3m < K, so
dropping a duplicate literal vertex always beats keeping both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InfeasibleAssignmentError, InvalidInputError, InvariantViolationError, \
    SizeGuardError
from .graph import Graph, Solution, cut_weight, is_connected_induced
from .treewidth import ValidationResult

ORACLE_GUARD = 20


@dataclass(frozen=True)
class PM3SatInstance:
    """Monotone 3-SAT instance with variables ordered 1..n.

    positive_clauses / negative_clauses hold up to-3-variable index
    tuples; repeated variables inside a clause are allowed. The variable
    order doubles as the left-to-right layout order, so clause intervals
    on one side must be nested or interior-disjoint for the instance to
    be planar."""

    n: int
    positive_clauses: tuple
    negative_clauses: tuple

    @property
    def m(self) -> int:
        return len(self.positive_clauses) + len(self.negative_clauses)

    @property
    def clauses(self) -> tuple:
        """(is_positive, variables) pairs, positive side first."""
        return tuple([(True, c) for c in self.positive_clauses] +
                     [(False, c) for c in self.negative_clauses])


def validate_pm3sat(inst: PM3SatInstance) -> ValidationResult:
    """Check clause shape and the per-side laminar interval property.

    Two same-side clauses may be nested or share only interval endpoints;
    partially overlapping interiors cannot be drawn without crossings."""
    problems = []
    for positive, side in ((True, inst.positive_clauses), (False, inst.negative_clauses)):
        tag = "positive" if positive else "negative"
        for c in side:
            if not (1 <= len(c) <= 3):
                problems.append(f"{tag} clause {c} must have 1..3 literals")
            for v in c:
                if not (1 <= v <= inst.n):
                    problems.append(f"{tag} clause {c} uses variable {v} outside 1..{inst.n}")
        ivals = [(min(c), max(c), c) for c in side if c]
        for i in range(len(ivals)):
            for j in range(i + 1, len(ivals)):
                alo, ahi, ca = ivals[i]
                blo, bhi, cb = ivals[j]
                nested = (alo <= blo and bhi <= ahi) or (blo <= alo and ahi <= bhi)
                apart = ahi <= blo or bhi <= alo
                if not (nested or apart):
                    problems.append(f"{tag} clauses {ca} and {cb} cross")
    return ValidationResult(not problems, problems)


def helper_count(m: int) -> int:
    """K for a formula with m clauses: the square of max(m+2, 2m-1)."""
    side = max(m + 2, 2 * m - 1)
    return side * side


@dataclass(frozen=True)
class Gadget:
    """The constructed graph with role labels and the decision threshold."""

    graph: Graph
    instance: PM3SatInstance
    k_helpers: int          # K
    threshold: Fraction     # m*sqrt(K) + n*K + n*K^2
    roles: tuple            # per-vertex role string

    @property
    def sqrt_k(self) -> int:
        return int(round(self.k_helpers ** 0.5))

    # deterministic id layout
    def pos_literal(self, i: int) -> int:
        return 2 * (i - 1)

    def neg_literal(self, i: int) -> int:
        return 2 * (i - 1) + 1

    def helper(self, i: int, k: int) -> int:
        return 2 * self.instance.n + (i - 1) * self.k_helpers + (k - 1)

    def helper_leaf(self, i: int, k: int, t: int) -> int:
        n, kk = self.instance.n, self.k_helpers
        return 2 * n + n * kk + ((i - 1) * kk + (k - 1)) * kk + t

    def clause_vertex(self, j: int) -> int:
        n, kk = self.instance.n, self.k_helpers
        return 2 * n + n * kk + n * kk * kk + j

    def clause_leaf(self, j: int, t: int) -> int:
        return self.clause_vertex(self.instance.m - 1) + 1 + j * self.sqrt_k + t

    def literal_vertex(self, positive: bool, var: int) -> int:
        return self.pos_literal(var) if positive else self.neg_literal(var)


def sat_to_cmc(inst: PM3SatInstance) -> Gadget:
    """Build the gadget graph for a valid instance (unit weights)."""
    check = validate_pm3sat(inst)
    if not check:
        raise InvalidInputError("invalid instance: " + "; ".join(check.problems))
    n, m = inst.n, inst.m
    if n < 1 or m < 1:
        raise InvalidInputError("need at least one variable and one clause")
    kk = helper_count(m)
    s = int(round(kk ** 0.5))
    total = 2 * n + n * kk + n * kk * kk + m + m * s
    roles = [""] * total
    edges = []

    dummy = Gadget(Graph(0), inst, kk, Fraction(0), ())  # id helper only

    for i in range(1, n + 1):
        roles[dummy.pos_literal(i)] = f"pos_literal:{i}"
        roles[dummy.neg_literal(i)] = f"neg_literal:{i}"
        for k in range(1, kk + 1):
            h = dummy.helper(i, k)
            roles[h] = f"helper:{i}:{k}"
            edges.append((h, dummy.pos_literal(i), 1))
            edges.append((h, dummy.neg_literal(i), 1))
            for t in range(kk):
                leaf = dummy.helper_leaf(i, k, t)
                roles[leaf] = f"helper_leaf:{i}:{k}:{t}"
                edges.append((h, leaf, 1))
        if i < n:
            edges.append((dummy.helper(i, kk), dummy.helper(i + 1, 1), 1))
    for j, (positive, cvars) in enumerate(inst.clauses):
        cv = dummy.clause_vertex(j)
        roles[cv] = f"clause:{j}"
        for var in sorted(set(cvars)):
            edges.append((cv, dummy.literal_vertex(positive, var), 1))
        for t in range(s):
            leaf = dummy.clause_leaf(j, t)
            roles[leaf] = f"clause_leaf:{j}:{t}"
            edges.append((cv, leaf, 1))

    graph = Graph(total, edges)
    threshold = Fraction(m * s + n * kk + n * kk * kk)
    return Gadget(graph, inst, kk, threshold, tuple(roles))


def _clause_satisfied(positive: bool, cvars, assignment: Sequence[bool]) -> bool:
    if positive:
        return any(assignment[v - 1] for v in cvars)
    return any(not assignment[v - 1] for v in cvars)


def _assignment_set(gdt: Gadget, assignment: Sequence[bool], clause_subset=None) -> set:
    inst = gdt.instance
    s = set()
    for i in range(1, inst.n + 1):
        s.add(gdt.pos_literal(i) if assignment[i - 1] else gdt.neg_literal(i))
        for k in range(1, gdt.k_helpers + 1):
            s.add(gdt.helper(i, k))
    for j, _ in enumerate(inst.clauses):
        if clause_subset is None or j in clause_subset:
            s.add(gdt.clause_vertex(j))
    return s


def assignment_to_solution(gdt: Gadget, assignment: Sequence[bool]) -> Solution:
    """Connected set of cut weight >= threshold from a satisfying
    assignment: the true literals, all helpers, and all clause vertices.

    A non-satisfying assignment leaves some clause vertex with no chosen
    neighbor, so the set would be disconnected; this is reported as
    InfeasibleAssignmentError instead of returning a bad set."""
    inst = gdt.instance
    if len(assignment) != inst.n:
        raise InvalidInputError(f"assignment must cover {inst.n} variables")
    for j, (positive, cvars) in enumerate(inst.clauses):
        if not _clause_satisfied(positive, cvars, assignment):
            raise InfeasibleAssignmentError(
                f"clause {j} ({'positive' if positive else 'negative'} {tuple(cvars)}) "
                "has no true literal; the clause vertex would be disconnected")
    sol = Solution.evaluate(gdt.graph, _assignment_set(gdt, assignment))
    if not sol.connected:
        raise InvariantViolationError("satisfying-assignment set must be connected")
    if sol.cut_value < gdt.threshold:
        raise InvariantViolationError("satisfying-assignment cut fell below the threshold")
    return sol


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    assignment: tuple
    vertices: frozenset


def structured_opt_oracle(gdt: Gadget) -> OracleResult:
    """Gadget optimum over assignment-shaped sets, by 2^n enumeration.

    For each assignment: all helpers, the true literals, and the vertices
    of satisfied clauses (unsatisfied ones cannot connect). The cut
    decomposes exactly as n*K^2 + n*K plus, per satisfied clause,
    sqrt(K) + the number of its false literal vertices; the winning set is
    rebuilt and re-verified against the graph."""
    inst = gdt.instance
    n, kk, s = inst.n, gdt.k_helpers, gdt.sqrt_k
    if n > ORACLE_GUARD:
        raise SizeGuardError(f"oracle guarded at n <= {ORACLE_GUARD}")
    clause_lits = [(positive, tuple(sorted(set(c)))) for positive, c in inst.clauses]
    base = n * kk * kk + n * kk
    best_val = -1
    best_bits = 0
    for bits in range(1 << n):
        assignment = [(bits >> i) & 1 == 1 for i in range(n)]
        val = base
        for positive, cvars in clause_lits:
            if _clause_satisfied(positive, cvars, assignment):
                false_lits = sum(
                    1 for v in cvars if assignment[v - 1] != positive)
                val += s + false_lits
        if val > best_val:
            best_val = val
            best_bits = bits
    assignment = tuple((best_bits >> i) & 1 == 1 for i in range(n))
    sat = {j for j, (positive, cvars) in enumerate(clause_lits)
           if _clause_satisfied(positive, cvars, assignment)}
    vertices = frozenset(_assignment_set(gdt, assignment, clause_subset=sat))
    value = Fraction(best_val)
    if cut_weight(gdt.graph, vertices) != value:
        raise InvariantViolationError("oracle cut decomposition mismatch")
    if not is_connected_induced(gdt.graph, vertices):
        raise InvariantViolationError("oracle set is not connected")
    return OracleResult(value, assignment, vertices)


def sat_brute_force(inst: PM3SatInstance) -> bool:
    """Truth-table satisfiability for small instances."""
    if inst.n > ORACLE_GUARD:
        raise SizeGuardError(f"brute-force SAT guarded at n <= {ORACLE_GUARD}")
    for bits in range(1 << inst.n):
        assignment = [(bits >> i) & 1 == 1 for i in range(inst.n)]
        if all(_clause_satisfied(p, c, assignment) for p, c in inst.clauses):
            return True
    return False
