"""Immutable undirected weighted graphs with exact rational arithmetic.

All cut values are ``fractions.Fraction``; no floating point enters cut
arithmetic, so every comparison made by the solvers is bit-stable.
Vertices are dense integer ids ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidInputError, InvariantViolationError

# Adjacency bitmasks are only materialized for graphs up to this size;
# larger graphs (e.g. hardness gadgets) use plain adjacency lists.
_MASK_LIMIT = 512

WeightLike = "int | str | Fraction"


def as_weight(w) -> Fraction:
    """Coerce an edge weight to a nonnegative Fraction."""
    if isinstance(w, float):
        raise InvalidInputError(f"float weight {w!r} rejected; pass int, str, or Fraction")
    try:
        f = Fraction(w)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad weight {w!r}: {exc}") from None
    if f < 0:
        raise InvalidInputError(f"negative weight {w} not allowed")
    return f


class Graph:
    """Undirected simple graph with nonnegative rational edge weights.

    Instances are immutable after construction and safe to share between
    threads. ``edges`` is a tuple of ``(u, v, w)`` with ``u < v`` and
    ``w`` a Fraction; ``adj[v]`` lists ``(neighbor, edge_index)`` pairs.
    """

    __slots__ = ("n", "edges", "adj", "scale", "int_weights", "adj_masks", "_nbr_csr")

    def __init__(self, n: int, edges: Iterable[tuple] = ()):
        if n < 0:
            raise InvalidInputError("vertex count must be >= 0")
        norm = []
        seen = set()
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = Fraction(1)
            else:
                u, v, w = e
                w = as_weight(w)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InvalidInputError(f"parallel edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, w))
        norm.sort(key=lambda e: (e[0], e[1]))
        self.n = n
        self.edges = tuple(norm)

        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        self.adj = tuple(tuple(a) for a in adj)

        # Exact integer view: weights scaled by the lcm of denominators.
        self.scale = lcm(*(w.denominator for _, _, w in self.edges)) if self.edges else 1
        self.int_weights = tuple(int(w * self.scale) for _, _, w in self.edges)

        if n <= _MASK_LIMIT:
            masks = [0] * n
            for u, v, _ in self.edges:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            self.adj_masks = tuple(masks)
        else:
            self.adj_masks = None
        self._nbr_csr = None

    # -- basic views -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weight(self, idx: int) -> Fraction:
        return self.edges[idx][2]

    def vertex_weight(self, v: int) -> Fraction:
        """Total weight of edges incident on v."""
        return Fraction(sum(self.int_weights[i] for _, i in self.adj[v]), self.scale)

    def total_weight(self) -> Fraction:
        """Sum of all edge weights (the 1-edge count for 0/1 graphs)."""
        return Fraction(sum(self.int_weights), self.scale)

    def is_zero_one(self) -> bool:
        return all(w == 0 or w == 1 for _, _, w in self.edges)

    def neighbor_weights(self):
        """CSR-like per-vertex (neighbors, scaled weights) arrays for kernels."""
        if self._nbr_csr is None:
            nbrs = tuple(tuple(u for u, _ in self.adj[v]) for v in range(self.n))
            wts = tuple(tuple(self.int_weights[i] for _, i in self.adj[v]) for v in range(self.n))
            self._nbr_csr = (nbrs, wts)
        return self._nbr_csr

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _check_members(g: Graph, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    for v in s:
        if not (0 <= v < g.n):
            raise InvalidInputError(f"vertex {v} not in graph with n={g.n}")
    return s


def cut_weight(g: Graph, s: Iterable[int]) -> Fraction:
    """Total weight of edges with exactly one endpoint in s.

    Both s = empty set and s = V cut nothing and return 0.
    """
    s = _check_members(g, s)
    total = 0
    for (u, v, _), w in zip(g.edges, g.int_weights):
        if (u in s) != (v in s):
            total += w
    return Fraction(total, g.scale)


def is_connected_induced(g: Graph, s: Iterable[int]) -> bool:
    """True iff s is nonempty and g[s] is connected.

    Empty sets return False by convention. Singletons are connected.
    """
    s = _check_members(g, s)
    if not s:
        return False
    if g.adj_masks is not None:
        mask = 0
        for v in s:
            mask |= 1 << v
        from . import kernels

        return kernels.is_connected_mask(g.adj_masks, mask, g.n)
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u, _ in g.adj[v]:
            if u in s and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(s)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for r in range(g.n):
        if seen[r]:
            continue
        comp = [r]
        seen[r] = True
        stack = [r]
        while stack:
            v = stack.pop()
            for u, _ in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the given vertices plus the id mapping back.

    Returns (h, back) where back[i] is the g-vertex for h-vertex i.
    """
    back = sorted(_check_members(g, vertices))
    pos = {v: i for i, v in enumerate(back)}
    edges = [
        (pos[u], pos[v], w)
        for u, v, w in g.edges
        if u in pos and v in pos
    ]
    return Graph(len(back), edges), back


@dataclass(frozen=True)
class ContractionMap:
    """For each vertex of a contracted graph, the original vertices merged
    into it. Origin sets partition the original vertex set."""

    origin: tuple[frozenset, ...]

    def lift(self, s: Iterable[int]) -> frozenset:
        """Union of origin sets over a contracted-graph vertex set."""
        out: set = set()
        for v in s:
            out |= self.origin[v]
        return frozenset(out)


def contract_vertex_sets(g: Graph, parts: Sequence[Iterable[int]]) -> tuple[Graph, ContractionMap]:
    """Quotient graph with one vertex per part.

    Each part must induce a connected subgraph. Parallel edges arising
    from the contraction are merged by summing weights; self-loops drop.
    """
    part_sets = [frozenset(p) for p in parts]
    covered: set = set()
    for p in part_sets:
        if not p:
            raise InvalidInputError("empty part in contraction")
        if p & covered:
            raise InvalidInputError("contraction parts overlap")
        covered |= p
        if not is_connected_induced(g, p):
            raise InvalidInputError(f"contraction part {sorted(p)} is not connected")
    if covered != set(range(g.n)):
        raise InvalidInputError("contraction parts do not cover all vertices")

    part_of = [0] * g.n
    for i, p in enumerate(part_sets):
        for v in p:
            part_of[v] = i
    acc: dict[tuple[int, int], Fraction] = {}
    for u, v, w in g.edges:
        pu, pv = part_of[u], part_of[v]
        if pu == pv:
            continue
        key = (min(pu, pv), max(pu, pv))
        acc[key] = acc.get(key, Fraction(0)) + w
    edges = [(u, v, w) for (u, v), w in sorted(acc.items())]
    return Graph(len(part_sets), edges), ContractionMap(tuple(part_sets))


@dataclass(frozen=True)
class Solution:
    """A candidate vertex set with its cut value and connectivity flag."""

    vertices: frozenset
    cut_value: Fraction
    connected: bool

    @classmethod
    def evaluate(cls, g: Graph, vertices: Iterable[int]) -> "Solution":
        vs = frozenset(vertices)
        if not vs:
            raise InvalidInputError("solution vertex set must be nonempty")
        return cls(vs, cut_weight(g, vs), is_connected_induced(g, vs))

    def check(self, g: Graph) -> None:
        """Re-verify all invariants against the host graph."""
        if not self.vertices:
            raise InvariantViolationError("empty solution")
        if self.cut_value != cut_weight(g, self.vertices):
            raise InvariantViolationError("stored cut value does not match recomputation")
        if self.connected and not is_connected_induced(g, self.vertices):
            raise InvariantViolationError("connectivity certificate is wrong")
