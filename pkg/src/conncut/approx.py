"""Approximation algorithms built on leaf-heavy spanning trees.

The driving idea: if a subtree's leaves carry a large share of the total
edge weight, split the leaf set so that at least half of the leaf-induced
weight crosses the split, then drop either side from the tree. Both
remainders stay connected, and together their cuts cover at least half
the leaf weight, so the better one keeps a quarter.

For 0/1 weights the full pipeline is: eliminate vertices without a
weight-1 edge, collapse long degree-2 runs, then repeatedly build a
spanning tree with many leaves, harvest a candidate cut from it, peel the
leaves off, and recurse; every candidate is lifted back to the original
graph and the best true cut wins. General weights reduce to 0/1 by
geometric weight classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, InvariantViolationError
from .graph import (
    Graph,
    Solution,
    connected_components,
    cut_weight,
    induced_subgraph,
    is_connected_induced,
)
from .reductions import contract_d2_paths, ensure_one_edges, is_simple_cycle, lift_vertex_set


# -- exact solver for simple cycles --------------------------------------

def cycle_solve(g: Graph) -> Solution:
    """Exact optimum on a simple cycle.

    Every proper connected subset is an arc bounded by exactly two edges,
    so the optimum arc is bounded by the two heaviest edges.
    """
    if not is_simple_cycle(g):
        raise InvalidInputError("cycle_solve expects a simple cycle")
    order = [0]
    prev, cur = -1, 0
    while len(order) < g.n:
        nxt = min(u for u, _ in g.adj[cur] if u != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    wdict = {}
    for u, v, w in g.edges:
        wdict[(u, v)] = w
        wdict[(v, u)] = w
    ws = [wdict[(order[i], order[(i + 1) % g.n])] for i in range(g.n)]
    ranked = sorted(range(g.n), key=lambda i: (-ws[i], i))
    i, j = sorted(ranked[:2])
    arc = order[i + 1: j + 1]
    sol = Solution.evaluate(g, arc)
    if sol.cut_value != ws[i] + ws[j] or not sol.connected:
        raise InvariantViolationError("cycle arc evaluation mismatch")
    return sol


# -- thick trees ----------------------------------------------------------

@dataclass(frozen=True)
class ThickTree:
    """A subtree of a host graph together with its leaf statistics.

    leaf_weight is the total host-incident weight over the tree's leaves;
    thickness relates it to the host's total edge weight.
    """

    host: Graph
    tree_edges: tuple
    vertices: frozenset
    leaves: frozenset
    leaf_weight: Fraction
    thickness: Fraction

    @classmethod
    def from_tree(cls, host: Graph, tree_edges, vertices=None) -> "ThickTree":
        tree_edges = tuple(sorted(tuple(sorted(e)) for e in tree_edges))
        vs = set()
        for u, v in tree_edges:
            vs.add(u)
            vs.add(v)
        if vertices is not None:
            vertices = frozenset(vertices)
            if tree_edges and vs != vertices:
                raise InvalidInputError("explicit vertex set does not match tree edges")
            vs = set(vertices)
        if not vs:
            raise InvalidInputError("tree must have at least one vertex")
        deg: dict[int, int] = {v: 0 for v in vs}
        have = {(min(u, v), max(u, v)) for u, v, _ in host.edges}
        for u, v in tree_edges:
            if (u, v) not in have:
                raise InvalidInputError(f"tree edge ({u},{v}) is not a host edge")
            deg[u] += 1
            deg[v] += 1
        if len(tree_edges) != len(vs) - 1:
            raise InvalidInputError("edge count does not match a tree")
        # connectivity over tree edges
        tadj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in tree_edges:
            tadj[u].append(v)
            tadj[v].append(u)
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != vs:
            raise InvalidInputError("tree edges are not connected")
        leaves = frozenset(v for v in vs if deg[v] <= 1)
        lw = sum((host.vertex_weight(v) for v in leaves), Fraction(0))
        eta = host.total_weight()
        return cls(host, tree_edges, frozenset(vs), leaves, lw,
                   lw / eta if eta else Fraction(0))


def _tree_runs(tdeg: dict, tadj: dict) -> list[list[int]]:
    """Maximal chains of tree-degree-2 vertices, each discovered from an
    anchor endpoint; deterministic order."""
    runs = []
    seen: set = set()
    for a in sorted(tadj):
        if tdeg[a] == 2:
            continue
        for b in sorted(tadj[a]):
            if tdeg[b] != 2 or b in seen:
                continue
            run = []
            prev, cur = a, b
            while tdeg[cur] == 2:
                run.append(cur)
                seen.add(cur)
                nxt = [x for x in tadj[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
            runs.append(run)
    return runs


def leafy_spanning_tree(g: Graph) -> ThickTree:
    """Spanning tree with at least ceil(n/14) leaves.

    Requires a connected non-cycle host with no run of three consecutive
    degree-2 vertices. Starts from a breadth-first tree and performs edge
    swaps: while seven consecutive tree-degree-2 vertices exist, one of
    the middle three has host degree >= 3, so a non-tree edge can replace
    a run-boundary edge, strictly decreasing the number of tree-degree-2
    vertices.
    """
    n = g.n
    if n == 0:
        raise InvalidInputError("empty graph")
    if not is_connected_induced(g, range(n)):
        raise InvalidInputError("host must be connected")
    if is_simple_cycle(g):
        raise InvalidInputError("host is a simple cycle; use cycle_solve")
    for v in range(n):
        if g.degree(v) == 2:
            a, b = (u for u, _ in g.adj[v])
            if g.degree(a) == 2 and g.degree(b) == 2:
                raise InvalidInputError(
                    "host has a degree-2 run of length >= 3; contract it first")

    if n == 1:
        return ThickTree.from_tree(g, [], vertices={0})

    tadj: dict[int, set] = {v: set() for v in range(n)}
    seen = {0}
    queue = [0]
    while queue:
        v = queue.pop(0)
        for u, _ in sorted(g.adj[v]):
            if u not in seen:
                seen.add(u)
                tadj[v].add(u)
                tadj[u].add(v)
                queue.append(u)

    def tdeg():
        return {v: len(tadj[v]) for v in range(n)}

    guard = 0
    while True:
        guard += 1
        if guard > 4 * n + 16:
            raise InvariantViolationError("leaf swap loop failed to terminate")
        deg = tdeg()
        deg2_count = sum(1 for v in range(n) if deg[v] == 2)
        run7 = None
        for run in _tree_runs(deg, tadj):
            if len(run) >= 7:
                run7 = run[:7]
                break
        if run7 is None:
            break
        v1, v2, v3, v4, v5, v6, v7 = run7
        mid = [v for v in (v3, v4, v5) if g.degree(v) >= 3]
        if not mid:
            raise InvariantViolationError("no expandable vertex in a long tree run")
        vi = mid[0]
        spare = sorted(u for u, _ in g.adj[vi] if u not in tadj[vi] and u != vi)
        if not spare:
            raise InvariantViolationError("expandable vertex has no spare host edge")
        w = spare[0]
        # tree path vi -> w gives the cycle the new edge would close
        parent = {vi: None}
        stack = [vi]
        while w not in parent:
            x = stack.pop()
            for y in tadj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        path_edges = set()
        x = w
        while parent[x] is not None:
            path_edges.add(frozenset((x, parent[x])))
            x = parent[x]
        if frozenset((v1, v2)) in path_edges:
            drop = (v1, v2)
        elif frozenset((v6, v7)) in path_edges:
            drop = (v6, v7)
        else:
            # chord inside the run: drop the path edge at vi
            nb = next(iter(x for x in tadj[vi] if frozenset((vi, x)) in path_edges))
            drop = (vi, nb)
        tadj[drop[0]].discard(drop[1])
        tadj[drop[1]].discard(drop[0])
        tadj[vi].add(w)
        tadj[w].add(vi)
        new_deg2 = sum(1 for v in range(n) if len(tadj[v]) == 2)
        if new_deg2 >= deg2_count:
            raise InvariantViolationError("edge swap did not reduce degree-2 count")

    edges = [(v, u) for v in range(n) for u in tadj[v] if v < u]
    tt = ThickTree.from_tree(g, edges)
    need = -(-n // 14)  # ceil
    if len(tt.leaves) < need:
        raise InvariantViolationError(
            f"spanning tree has {len(tt.leaves)} leaves, below the n/14 bound")
    deg = {v: len(tadj[v]) for v in range(n)}
    if any(len(r) >= 7 for r in _tree_runs(deg, tadj)):
        raise InvariantViolationError("long degree-2 run survived the swap loop")
    return tt


# -- leaf bipartition and the quarter-of-leaf-weight cut ------------------

@dataclass(frozen=True)
class LeafBipartition:
    """Split of a leaf set; cross_weight is the total weight of host
    edges between the two sides (for 0/1 hosts: the number of crossing
    weight-1 edges)."""

    part1: frozenset
    part2: frozenset
    cross_weight: Fraction

    @property
    def crossing_ones(self) -> int:
        return int(self.cross_weight)


def leaf_bipartition(g: Graph, leaves) -> LeafBipartition:
    """Deterministic local search: start from the even/odd id split and
    flip any vertex with more same-side than crossing incident weight
    inside the leaf-induced subgraph. On termination at least half of the
    leaf-induced edge weight crosses."""
    leaves = frozenset(leaves)
    for v in leaves:
        if not (0 <= v < g.n):
            raise InvalidInputError(f"leaf {v} is not a vertex")
    side = {v: v % 2 for v in leaves}
    inner = [(u, v, w) for (u, v, _), w in zip(g.edges, g.int_weights)
             if u in leaves and v in leaves and w > 0]
    inc: dict[int, list] = {v: [] for v in leaves}
    for u, v, w in inner:
        inc[u].append((v, w))
        inc[v].append((u, w))
    changed = True
    while changed:
        changed = False
        for v in sorted(leaves):
            same = sum(w for u, w in inc[v] if side[u] == side[v])
            cross = sum(w for u, w in inc[v] if side[u] != side[v])
            if same > cross:
                side[v] = 1 - side[v]
                changed = True
    crossw = sum(w for u, v, w in inner if side[u] != side[v])
    return LeafBipartition(
        frozenset(v for v in leaves if side[v] == 0),
        frozenset(v for v in leaves if side[v] == 1),
        Fraction(crossw, g.scale),
    )


def thick_tree_cut(t: ThickTree) -> Solution:
    """Better of the two connected sets (tree minus either leaf part).

    The returned cut is at least a quarter of the tree's leaf weight.
    Parts that would empty the tree are skipped; if both would, the best
    single tree vertex is returned.
    """
    g = t.host
    bip = leaf_bipartition(g, t.leaves)
    best: Solution | None = None
    for part in (bip.part1, bip.part2):
        rest = t.vertices - part
        if not rest:
            continue
        sol = Solution.evaluate(g, rest)
        if not sol.connected:
            raise InvariantViolationError("tree minus a leaf side must stay connected")
        if best is None or sol.cut_value > best.cut_value:
            best = sol
    if best is None:
        v = max(sorted(t.vertices), key=lambda x: (g.vertex_weight(x), -x))
        best = Solution.evaluate(g, {v})
    return best


# -- the 0/1 pipeline ------------------------------------------------------

def bcmc_approx(g: Graph, seed: int = 0) -> Solution:
    """Approximate connected maximum cut for 0/1 weights.

    Runs per connected component: remove weightless vertices, collapse
    degree-2 runs (or solve cycles exactly), then alternate tree-building
    and leaf-peeling, keeping every intermediate tree's cut as a
    candidate. All candidates are lifted to the original graph and the
    argmax by true cut wins. The pipeline is deterministic; seed is
    accepted for interface stability with the sampling solver.
    """
    del seed  # deterministic pipeline
    if g.n == 0:
        raise InvalidInputError("empty graph has no solution")
    if not g.is_zero_one():
        raise InvalidInputError("0/1 weights required; use wcmc_approx for general weights")
    best: Solution | None = None
    for comp in connected_components(g):
        for cand in _component_candidates(g, comp):
            sol = Solution.evaluate(g, cand)
            if not sol.connected:
                raise InvariantViolationError("candidate lifted to a disconnected set")
            if best is None or sol.cut_value > best.cut_value:
                best = sol
    assert best is not None
    return best


def _component_candidates(g: Graph, comp: list) -> list:
    """Candidate vertex sets for one component, already in g's ids."""
    sub, back = induced_subgraph(g, comp)
    cands = [frozenset([comp[0]])]
    g1, t1 = ensure_one_edges(sub)
    if g1.n == 0:
        return cands

    chain = [lambda s: {back[i] for i in s}, lambda s: set(lift_vertex_set(t1, s))]

    def lifted(s) -> frozenset:
        s = set(s)
        for f in reversed(chain):
            s = f(s)
        return frozenset(s)

    cur = g1
    while cur.n:
        if is_simple_cycle(cur):
            cands.append(lifted(cycle_solve(cur).vertices))
            break
        g2, t2 = contract_d2_paths(cur)
        chain = chain + [lambda s, t=t2: set(lift_vertex_set(t, s))]
        if g2.n == 1:
            cands.append(lifted({0}))
            break
        tree = leafy_spanning_tree(g2)
        cands.append(lifted(thick_tree_cut(tree).vertices))
        keep = sorted(set(range(g2.n)) - tree.leaves)
        if not keep:
            break
        nxt, back2 = induced_subgraph(g2, keep)
        chain = chain + [lambda s, b=back2: {b[i] for i in s}]
        cur = nxt
    return cands


# -- weight classes and the general-weight wrapper -------------------------

@dataclass(frozen=True)
class WeightClass:
    """Edges with weight in [lower, upper); the 0/1 view puts weight 1 on
    exactly these edges."""

    index: int
    lower: Fraction
    upper: Fraction
    edge_ids: tuple


def weight_class_split(g: Graph, eps) -> list:
    """Geometric weight classes [w0 (1+eps)^i, w0 (1+eps)^(i+1)) with
    w0 = eps * wmax / m. Edges below w0 belong to no class; classes are
    emitted up to the one containing wmax."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidInputError("eps must be positive")
    weights = [w for _, _, w in g.edges]
    if not weights or max(weights) == 0:
        return []
    wmax = max(weights)
    w0 = eps * wmax / g.m
    classes = []
    lower = w0
    i = 0
    while True:
        upper = lower * (1 + eps)
        members = tuple(idx for idx, w in enumerate(weights) if lower <= w < upper)
        classes.append(WeightClass(i, lower, upper, members))
        if wmax < upper:
            break
        lower = upper
        i += 1
    return classes


def wcmc_approx(g: Graph, eps=1, seed: int = 0) -> Solution:
    """General-weight approximation: solve the 0/1 instance of every
    weight class and return the class solution with the best true cut."""
    if g.n == 0:
        raise InvalidInputError("empty graph has no solution")
    classes = weight_class_split(g, eps)
    best: Solution | None = None
    for wc in classes:
        if not wc.edge_ids:
            continue
        members = set(wc.edge_ids)
        view = Graph(g.n, [
            (u, v, 1 if idx in members else 0)
            for idx, (u, v, _) in enumerate(g.edges)
        ])
        sol01 = bcmc_approx(view, seed)
        true = Solution.evaluate(g, sol01.vertices)
        if not true.connected:
            raise InvariantViolationError("class solution is disconnected on the host")
        if best is None or true.cut_value > best.cut_value:
            best = true
    if best is None:
        v = max(range(g.n), key=lambda x: (g.vertex_weight(x), -x))
        best = Solution.evaluate(g, {v})
    return best


# -- half-density sampling --------------------------------------------------

def half_density_trials(g: Graph, trials: int, seed: int) -> list:
    """Accepted (connected, nonempty) half-density samples with their cut
    weights, in draw order. Deterministic for a fixed seed."""
    if trials < 1:
        raise InvalidInputError("need at least one trial")
    if g.n == 0:
        raise InvalidInputError("empty graph")
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        mask = rng.getrandbits(g.n)
        if mask == 0:
            continue
        s = frozenset(v for v in range(g.n) if (mask >> v) & 1)
        if is_connected_induced(g, s):
            out.append((s, cut_weight(g, s)))
    return out


def random_half_cmc(g: Graph, trials: int, seed: int) -> Solution:
    """Best cut among `trials` random half-density vertex sets, keeping
    only connected samples; falls back to the heaviest single vertex if
    every sample is rejected. Useful on highly connected hosts, where a
    random half is connected with good probability."""
    samples = half_density_trials(g, trials, seed)
    if not samples:
        v = max(range(g.n), key=lambda x: (g.vertex_weight(x), -x))
        return Solution.evaluate(g, {v})
    best_s, best_c = samples[0]
    for s, c in samples[1:]:
        if c > best_c:
            best_s, best_c = s, c
    return Solution(best_s, best_c, True)
