"""Optimum-preserving preprocessing for 0/1-weighted instances.

Two rewrites, each with an invertible trace:

* zero-vertex elimination: a vertex with no weight-1 edge is deleted and
  its neighborhood is completed with weight-0 edges;
* degree-2 path contraction: three consecutive degree-2 vertices anchored
  at a non-degree-2 vertex collapse to a single fresh vertex, with the
  two replacement weights chosen by how many weight-1 edges were removed.

Traces replay forward to reproduce the reduced graph exactly and lift
backward so a solution on the reduced graph becomes one of at least equal
cut weight on the original.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CycleInputError, InvalidInputError, InvariantViolationError
from .graph import Graph, Solution, cut_weight, is_connected_induced


@dataclass(frozen=True)
class ZeroVertexRemoval:
    vertex: int
    neighbors: tuple[int, ...]
    added_zero_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class D2Contraction:
    path: tuple[int, int, int, int]  # anchor v0, then the degree-2 run v1 v2 v3
    weights: tuple[int, int, int]    # weights of the removed edges e0 e1 e2
    new_vertex: int
    new_weights: tuple[int, int]     # weights of (v0, new) and (new, v3)


Step = "ZeroVertexRemoval | D2Contraction"


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable log of rewrites. Vertex labels are stable: original ids
    plus fresh labels (>= original n) minted by contractions.
    final_labels[i] is the label of reduced-graph vertex i."""

    original: Graph
    steps: tuple
    final_labels: tuple[int, ...]

    def to_json(self) -> str:
        out = {"original_n": self.original.n, "final_labels": list(self.final_labels), "steps": []}
        for st in self.steps:
            if isinstance(st, ZeroVertexRemoval):
                out["steps"].append({
                    "kind": "zero_vertex_removal",
                    "vertex": st.vertex,
                    "neighbors": list(st.neighbors),
                    "added_zero_edges": [list(p) for p in st.added_zero_edges],
                })
            else:
                out["steps"].append({
                    "kind": "degree2_contraction",
                    "path": list(st.path),
                    "weights": list(st.weights),
                    "new_vertex": st.new_vertex,
                    "new_weights": list(st.new_weights),
                })
        return json.dumps(out)

    @classmethod
    def from_json(cls, original: Graph, text: str) -> "ReductionTrace":
        data = json.loads(text)
        if data["original_n"] != original.n:
            raise InvalidInputError("trace does not belong to this graph")
        steps = []
        for st in data["steps"]:
            if st["kind"] == "zero_vertex_removal":
                steps.append(ZeroVertexRemoval(
                    st["vertex"], tuple(st["neighbors"]),
                    tuple(tuple(p) for p in st["added_zero_edges"])))
            elif st["kind"] == "degree2_contraction":
                steps.append(D2Contraction(
                    tuple(st["path"]), tuple(st["weights"]),
                    st["new_vertex"], tuple(st["new_weights"])))
            else:
                raise InvalidInputError(f"unknown trace step kind {st['kind']!r}")
        return cls(original, tuple(steps), tuple(data["final_labels"]))


# -- labeled working graphs (dict of dicts, int 0/1 weights) -------------

def _to_labeled(g: Graph) -> dict:
    if not g.is_zero_one():
        raise InvalidInputError("reduction requires 0/1 edge weights")
    adj: dict[int, dict[int, int]] = {v: {} for v in range(g.n)}
    for u, v, w in g.edges:
        adj[u][v] = int(w)
        adj[v][u] = int(w)
    return adj


def _to_graph(adj: dict) -> tuple[Graph, tuple[int, ...]]:
    labels = tuple(sorted(adj))
    pos = {lbl: i for i, lbl in enumerate(labels)}
    edges = []
    for v in labels:
        for u, w in adj[v].items():
            if v < u:
                edges.append((pos[v], pos[u], w))
    edges.sort()
    return Graph(len(labels), edges), labels


def _labeled_connected(adj: dict, s: Iterable[int]) -> bool:
    s = set(s)
    if not s:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u in s and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == s


def _labeled_cut(adj: dict, s: Iterable[int]) -> int:
    s = set(s)
    total = 0
    for v in s:
        for u, w in adj[v].items():
            if u not in s:
                total += w
    return total


def _apply_step(adj: dict, step) -> None:
    if isinstance(step, ZeroVertexRemoval):
        for a, b in step.added_zero_edges:
            adj[a][b] = 0
            adj[b][a] = 0
        for u in step.neighbors:
            del adj[u][step.vertex]
        del adj[step.vertex]
    else:
        v0, v1, v2, v3 = step.path
        vn = step.new_vertex
        del adj[v0][v1]
        del adj[v3][v2]
        del adj[v1]
        del adj[v2]
        adj[vn] = {v0: step.new_weights[0], v3: step.new_weights[1]}
        adj[v0][vn] = step.new_weights[0]
        adj[v3][vn] = step.new_weights[1]


# -- the rewrites --------------------------------------------------------

def ensure_one_edges(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Remove every vertex that has no incident weight-1 edge.

    The removed vertex's neighbors are pairwise connected with weight-0
    edges, which preserves both connectivity options and every cut value.
    If all vertices disappear the reduced graph is empty and the caller
    should fall back to any single original vertex (cut 0).
    """
    adj = _to_labeled(g)
    steps: list = []
    while True:
        victims = [v for v in sorted(adj) if not any(w == 1 for w in adj[v].values())]
        if not victims:
            break
        v = victims[0]
        nbrs = tuple(sorted(adj[v]))
        added = []
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if b not in adj[a]:
                    added.append((a, b))
        step = ZeroVertexRemoval(v, nbrs, tuple(added))
        _apply_step(adj, step)
        steps.append(step)
    reduced, labels = _to_graph(adj)
    return reduced, ReductionTrace(g, tuple(steps), labels)


def _find_runs(adj: dict) -> list[tuple[int, int, int, int]]:
    runs = []
    for v0 in adj:
        if len(adj[v0]) == 2:
            continue
        for v1 in adj[v0]:
            if len(adj[v1]) != 2:
                continue
            (v2,) = [x for x in adj[v1] if x != v0]
            if len(adj[v2]) != 2:
                continue
            (v3,) = [x for x in adj[v2] if x != v1]
            if len(adj[v3]) != 2:
                continue
            runs.append((v0, v1, v2, v3))
    return runs


def is_simple_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in range(g.n)) \
        and is_connected_induced(g, range(g.n))


def contract_d2_paths(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Collapse every run of three consecutive degree-2 vertices.

    Weight rule for the two replacement edges, by the number of weight-1
    edges among the three removed ones: >=2 -> (1,1); ==1 -> (0,1);
    0 -> (0,0). The optimum cut value is preserved exactly.

    Requires a connected non-cycle input; simple cycles get their own
    exact solver and are rejected here.
    """
    if g.n == 0:
        return g, ReductionTrace(g, (), ())
    if not is_connected_induced(g, range(g.n)):
        raise InvalidInputError("degree-2 contraction expects a connected graph; split by component first")
    if is_simple_cycle(g):
        raise CycleInputError("input is a simple cycle; use cycle_solve")
    adj = _to_labeled(g)
    steps: list = []
    next_label = g.n
    while True:
        runs = _find_runs(adj)
        if not runs:
            break
        v0, v1, v2, v3 = min(runs)
        w0, w1, w2 = adj[v0][v1], adj[v1][v2], adj[v2][v3]
        ones = w0 + w1 + w2
        if ones >= 2:
            new_w = (1, 1)
        elif ones == 1:
            new_w = (0, 1)
        else:
            new_w = (0, 0)
        step = D2Contraction((v0, v1, v2, v3), (w0, w1, w2), next_label, new_w)
        next_label += 1
        _apply_step(adj, step)
        steps.append(step)
    reduced, labels = _to_graph(adj)
    return reduced, ReductionTrace(g, tuple(steps), labels)


# -- lifting -------------------------------------------------------------

def _lift_zero_removal(pre: dict, step: ZeroVertexRemoval, s: set) -> set:
    if _labeled_connected(pre, s):
        return s
    return s | {step.vertex}


def _lift_d2(pre: dict, step: D2Contraction, s: set) -> set:
    v0, v1, v2, v3 = step.path
    vn = step.new_vertex
    cut0 = (v0 in s) != (vn in s)
    cut1 = (vn in s) != (v3 in s)
    base = s - {vn}
    if cut0 and cut1:
        if s == {vn}:
            options = [{v1}, {v2}, {v1, v2}]
        else:
            options = [set(base), base | {v1}, base | {v2}]
        best = options[0]
        best_cut = _labeled_cut(pre, best)
        for o in options[1:]:
            c = _labeled_cut(pre, o)
            if c > best_cut:
                best, best_cut = o, c
        return best
    if cut0 or cut1:
        weights = step.weights
        emax = weights.index(max(weights))
        inner = (v1, v2)
        if v0 in s:
            return base | set(inner[:emax])
        return base | set(inner[emax:])
    if vn in s:
        return base | {v1, v2}
    return set(s)


def lift_vertex_set(trace: ReductionTrace, s: Iterable[int]) -> frozenset:
    """Map a reduced-graph vertex set back to the original graph.

    Replays the rewrites forward to rebuild each intermediate graph, then
    walks the steps in reverse applying the case analysis of each rewrite.
    Never decreases the cut and always preserves connectivity.
    """
    s = set(s)
    if not s:
        raise InvalidInputError("cannot lift an empty vertex set")
    for i in s:
        if not (0 <= i < len(trace.final_labels)):
            raise InvariantViolationError("vertex id outside the reduced graph")
    cur = {trace.final_labels[i] for i in s}

    snapshots = []
    adj = _to_labeled(trace.original)
    for step in trace.steps:
        snapshots.append({v: dict(nb) for v, nb in adj.items()})
        _apply_step(adj, step)
    post = adj
    prev_cut = _labeled_cut(post, cur)
    if not _labeled_connected(post, cur):
        raise InvalidInputError("reduced solution is not connected")

    for step, pre in zip(reversed(trace.steps), reversed(snapshots)):
        if isinstance(step, ZeroVertexRemoval):
            cur = _lift_zero_removal(pre, step, cur)
        else:
            cur = _lift_d2(pre, step, cur)
        new_cut = _labeled_cut(pre, cur)
        if not _labeled_connected(pre, cur) or new_cut < prev_cut:
            raise InvariantViolationError("lifting lost connectivity or cut weight")
        prev_cut = new_cut
    return frozenset(cur)


def lift_solution(trace, sol: Solution) -> Solution:
    """Lift a Solution through one trace or a sequence of traces
    (applied last to first). The result is evaluated on the original
    graph of the first trace."""
    traces: Sequence[ReductionTrace]
    if isinstance(trace, ReductionTrace):
        traces = [trace]
    else:
        traces = list(trace)
        if not traces:
            return sol
    s = set(sol.vertices)
    for t in reversed(traces):
        s = set(lift_vertex_set(t, s))
    out = Solution.evaluate(traces[0].original, s)
    if not out.connected:
        raise InvariantViolationError("lifted solution is disconnected")
    if out.cut_value < sol.cut_value:
        raise InvariantViolationError("lifted solution lost cut weight")
    return out
