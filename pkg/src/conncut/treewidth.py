"""Tree decompositions: min-fill construction, validation, and the
leaf/introduce/forget/join normal form consumed by the dynamic program."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidInputError
from .graph import Graph


@dataclass
class TreeDecomposition:
    """Bags indexed 0..len(bags)-1 with a tree over bag ids."""

    bags: list[frozenset]
    tree: list[tuple[int, int]]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass
class ValidationResult:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_decomposition(g: Graph, td: TreeDecomposition) -> ValidationResult:
    """Check the three decomposition properties, reporting witnesses.

    1. bags cover every vertex; 2. every edge lies inside some bag;
    3. the bags containing any fixed vertex form a connected subtree.
    """
    problems: list[str] = []
    nb = len(td.bags)
    for a, b in td.tree:
        if not (0 <= a < nb and 0 <= b < nb):
            return ValidationResult(False, [f"tree edge ({a},{b}) out of range"])
    if nb and len(td.tree) != nb - 1:
        problems.append(f"tree has {len(td.tree)} edges for {nb} bags; not a tree")
    else:
        seen = {0} if nb else set()
        adj = td.neighbors()
        stack = [0] if nb else []
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if nb and len(seen) != nb:
            problems.append("bag tree is disconnected")

    covered = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in covered:
            problems.append(f"vertex {v} is in no bag")
    for u, v, _ in g.edges:
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge ({u},{v}) is in no bag")
    # connected-trace property per vertex
    if not problems:
        adj = td.neighbors()
        for v in range(g.n):
            holding = [i for i, b in enumerate(td.bags) if v in b]
            if not holding:
                continue
            target = set(holding)
            seen = {holding[0]}
            stack = [holding[0]]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in target and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != target:
                problems.append(f"bags containing vertex {v} are not connected in the tree")
    return ValidationResult(not problems, problems)


def build_decomposition(g: Graph) -> TreeDecomposition:
    """Tree decomposition from the min-fill elimination heuristic.

    Always valid; the width is heuristic, not necessarily optimal.
    """
    if g.n == 0:
        raise InvalidInputError("cannot decompose the empty graph")
    nbrs: dict[int, set] = {v: set(u for u, _ in g.adj[v]) for v in range(g.n)}
    order: list[int] = []
    bag_of: dict[int, frozenset] = {}
    alive = set(range(g.n))
    while alive:
        best_v, best_fill = -1, None
        for v in sorted(alive):
            live = nbrs[v]
            fill = 0
            live_l = sorted(live)
            for i, a in enumerate(live_l):
                for b in live_l[i + 1:]:
                    if b not in nbrs[a]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        v = best_v
        live = sorted(nbrs[v])
        bag_of[v] = frozenset([v, *live])
        for i, a in enumerate(live):
            for b in live[i + 1:]:
                nbrs[a].add(b)
                nbrs[b].add(a)
        for a in live:
            nbrs[a].discard(v)
        alive.discard(v)
        order.append(v)

    # Bag for v attaches to the bag of its earliest-eliminated live neighbor.
    pos = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    edges = []
    for i, v in enumerate(order):
        later = [u for u in bag_of[v] if u != v and pos[u] > i]
        if later:
            parent = min(later, key=lambda u: pos[u])
            edges.append((i, pos[parent]))
        elif i != len(order) - 1:
            # isolated remainder (disconnected graph): chain onto the last bag
            edges.append((i, len(order) - 1))
    return TreeDecomposition(bags, edges)


@dataclass
class NiceNode:
    """One node of the normal-form decomposition.

    kind is one of "leaf", "introduce", "forget", "join"; vertex is the
    introduced/forgotten vertex; children by node index.
    """

    kind: str
    bag: frozenset
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass
class NiceDecomposition:
    nodes: list[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def validate(self) -> ValidationResult:
        problems = []
        for i, nd in enumerate(self.nodes):
            ch = [self.nodes[c] for c in nd.children]
            if nd.kind == "leaf":
                if ch or len(nd.bag) != 1:
                    problems.append(f"node {i}: bad leaf")
            elif nd.kind == "introduce":
                if len(ch) != 1 or nd.vertex is None or nd.vertex in ch[0].bag \
                        or nd.bag != ch[0].bag | {nd.vertex}:
                    problems.append(f"node {i}: bad introduce")
            elif nd.kind == "forget":
                if len(ch) != 1 or nd.vertex is None or nd.vertex not in ch[0].bag \
                        or nd.bag != ch[0].bag - {nd.vertex}:
                    problems.append(f"node {i}: bad forget")
            elif nd.kind == "join":
                if len(ch) != 2 or ch[0].bag != nd.bag or ch[1].bag != nd.bag:
                    problems.append(f"node {i}: bad join")
            else:
                problems.append(f"node {i}: unknown kind {nd.kind}")
        return ValidationResult(not problems, problems)

    def postorder(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            idx, expanded = stack.pop()
            if expanded:
                out.append(idx)
            else:
                stack.append((idx, True))
                for c in self.nodes[idx].children:
                    stack.append((c, False))
        return out

    def to_tree_decomposition(self) -> TreeDecomposition:
        bags = [nd.bag for nd in self.nodes]
        edges = [(i, c) for i, nd in enumerate(self.nodes) for c in nd.children]
        return TreeDecomposition(bags, edges)


class _NiceBuilder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, node: NiceNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def chain_leaf_to_bag(self, bag: frozenset) -> int:
        """Leaf plus introduces building up to the full bag."""
        vs = sorted(bag)
        idx = self.add(NiceNode("leaf", frozenset([vs[0]])))
        cur = frozenset([vs[0]])
        for v in vs[1:]:
            cur = cur | {v}
            idx = self.add(NiceNode("introduce", cur, (idx,), v))
        return idx

    def bridge(self, idx: int, src: frozenset, dst: frozenset) -> int:
        """Forget src-only vertices, then introduce dst-only ones.

        The hinge bag is src & dst, which may be empty; an empty bag is a
        true separator and the value tables handle it.
        """
        cur = src
        for v in sorted(src - dst):
            cur = cur - {v}
            idx = self.add(NiceNode("forget", cur, (idx,), v))
        for v in sorted(dst - src):
            cur = cur | {v}
            idx = self.add(NiceNode("introduce", cur, (idx,), v))
        return idx


def make_nice(td: TreeDecomposition) -> NiceDecomposition:
    """Normal form with unit bag deltas and binary joins; width preserved."""
    if not td.bags:
        raise InvalidInputError("empty decomposition")
    nb = len(td.bags)
    adj = td.neighbors()
    root_bag = 0
    b = _NiceBuilder()

    def build(i: int, parent: int) -> int:
        children = [c for c in adj[i] if c != parent]
        bag = td.bags[i]
        if not children:
            return b.chain_leaf_to_bag(bag)
        sub = []
        for c in children:
            idx = build(c, i)
            sub.append(b.bridge(idx, td.bags[c], bag))
        left = sub[0]
        for right in sub[1:]:
            left = b.add(NiceNode("join", bag, (left, right)))
        return left

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * nb + 100))
    try:
        root = build(root_bag, -1)
    finally:
        sys.setrecursionlimit(old)
    nd = NiceDecomposition(b.nodes, root)
    res = nd.validate()
    if not res:
        raise InvalidInputError("nice transformation failed: " + "; ".join(res.problems))
    return nd
