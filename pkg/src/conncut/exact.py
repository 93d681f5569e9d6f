"""Exact solvers: brute-force enumeration oracle and the dynamic program
over tree decompositions.

The DP state at a node is (chosen bag vertices, partition of them into
components of the partial solution, closed flag). The closed flag records
that one finished component has been fully forgotten; from then on the
solution cannot grow, so at most one close ever happens and a closing is
only legal when no other open component remains.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from . import kernels
from .errors import InvalidInputError, InvariantViolationError, SizeGuardError
from .graph import Graph, Solution, cut_weight, is_connected_induced
from .treewidth import NiceDecomposition, TreeDecomposition, build_decomposition, \
    make_nice, validate_decomposition

BRUTE_FORCE_GUARD = 24
WIDTH_GUARD = 12


def brute_force_cmc(g: Graph, force: bool = False) -> Solution:
    """Exact optimum by enumerating every nonempty connected induced set.

    Connected sets are grown from their minimum vertex, so enumeration is
    linear in the number of connected sets rather than 2^n. Ties prefer
    the lexicographically smallest vertex set. Guarded at n <= 24 unless
    force=True.
    """
    if g.n == 0:
        raise InvalidInputError("empty graph has no nonempty solution")
    if g.n > BRUTE_FORCE_GUARD and not force:
        raise SizeGuardError(
            f"brute force guarded at n <= {BRUTE_FORCE_GUARD} (n={g.n}); pass force=True to override")
    masks = g.adj_masks
    if masks is None:
        tmp = [0] * g.n
        for u, v, _ in g.edges:
            tmp[u] |= 1 << v
            tmp[v] |= 1 << u
        masks = tuple(tmp)
    nbrs, wts = g.neighbor_weights()
    val, mask, _ = kernels.best_connected_cut(g.n, masks, nbrs, wts, sum(g.int_weights))
    vertices = frozenset(v for v in range(g.n) if (mask >> v) & 1)
    return Solution(vertices, Fraction(val, g.scale), True)


def count_connected_sets(g: Graph) -> int:
    """Number of nonempty connected induced vertex sets (test helper)."""
    masks = g.adj_masks
    nbrs, wts = g.neighbor_weights()
    _, _, count = kernels.best_connected_cut(g.n, masks, nbrs, wts, sum(g.int_weights))
    return count


# -- dynamic program ----------------------------------------------------

_EMPTY_STATE = (frozenset(), (), False)


def _canon(blocks: Iterable[frozenset]) -> tuple:
    return tuple(sorted(blocks, key=min))


class _Table(dict):
    """State -> (value, chosen set); keeps the max per state."""

    def offer(self, key, value, chosen):
        cur = self.get(key)
        if cur is None or value > cur[0]:
            self[key] = (value, chosen)


def dp_solve(g: Graph, nd: NiceDecomposition) -> Solution:
    """Exact optimum via the table recurrence over a nice decomposition.

    Values accumulate rational cut weight (as scaled integers), so
    weighted graphs are handled. Raises SizeGuardError above width 12.
    """
    check = nd.validate()
    if not check:
        raise InvalidInputError("invalid nice decomposition: " + "; ".join(check.problems))
    tde = validate_decomposition(g, nd.to_tree_decomposition())
    if not tde:
        raise InvalidInputError("decomposition does not fit graph: " + "; ".join(tde.problems))
    if nd.width > WIDTH_GUARD:
        raise SizeGuardError(f"width {nd.width} exceeds DP guard {WIDTH_GUARD}")
    if g.n == 0:
        raise InvalidInputError("empty graph has no nonempty solution")

    wmap: dict[tuple[int, int], int] = {}
    for (u, v, _), w in zip(g.edges, g.int_weights):
        wmap[(u, v)] = w
        wmap[(v, u)] = w

    def bag_gain(v: int, others: Iterable[int]) -> int:
        return sum(wmap.get((v, u), 0) for u in others)

    tables: dict[int, _Table] = {}
    for idx in nd.postorder():
        node = nd.nodes[idx]
        bag = node.bag
        table = _Table()
        if node.kind == "leaf":
            (v,) = bag
            table.offer(_EMPTY_STATE, 0, frozenset())
            table.offer((frozenset([v]), (frozenset([v]),), False), 0, frozenset([v]))
        elif node.kind == "introduce":
            v = node.vertex
            child = tables[node.children[0]]
            for (s, part, closed), (val, chosen) in child.items():
                # skip v: edges from v to chosen bag vertices join the cut
                table.offer((s, part, closed), val + bag_gain(v, s), chosen)
                if closed:
                    continue  # a closed component forbids further growth
                # take v: merge with every block v is adjacent to
                # (zero-weight edges still connect, so test adjacency, not gain)
                touching = [b for b in part if any((v, u) in wmap for u in b)]
                merged = frozenset([v]).union(*touching) if touching else frozenset([v])
                rest = [b for b in part if b not in touching]
                new_part = _canon([*rest, merged])
                gain = bag_gain(v, bag - s - {v})
                table.offer((s | {v}, new_part, False), val + gain, chosen | {v})
        elif node.kind == "forget":
            v = node.vertex
            child = tables[node.children[0]]
            for (s, part, closed), (val, chosen) in child.items():
                if v not in s:
                    table.offer((s, part, closed), val, chosen)
                    continue
                blk = next(b for b in part if v in b)
                if len(blk) > 1:
                    new_part = _canon([b for b in part if b is not blk] + [blk - {v}])
                    table.offer((s - {v}, new_part, closed), val, chosen)
                elif len(part) == 1:
                    # the only open component finishes here
                    table.offer((frozenset(), (), True), val, chosen)
                # else: a finished component coexists with open ones -> dead
        else:  # join
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            by_s: dict[frozenset, list] = {}
            for key, payload in right.items():
                by_s.setdefault(key[0], []).append((key, payload))
            for (s1, p1, c1), (val1, sol1) in sorted(
                    left.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][2])):
                boundary = sum(
                    wmap.get((u, x), 0) for u in s1 for x in bag - s1)
                for (s2, p2, c2), (val2, sol2) in by_s.get(s1, ()):
                    if c1 and c2:
                        continue
                    if c1 or c2:
                        table.offer((frozenset(), (), True), val1 + val2, sol1 | sol2)
                        continue
                    # merge-graph components: blocks sharing a vertex fuse
                    items = list(p1) + list(p2)
                    parent = list(range(len(items)))

                    def find(i):
                        while parent[i] != i:
                            parent[i] = parent[parent[i]]
                            i = parent[i]
                        return i

                    owner: dict[int, int] = {}
                    for i, blk in enumerate(items):
                        for u in blk:
                            j = owner.setdefault(u, i)
                            if j != i:
                                parent[find(i)] = find(j)
                    groups: dict[int, set] = {}
                    for i, blk in enumerate(items):
                        groups.setdefault(find(i), set()).update(blk)
                    new_part = _canon(frozenset(b) for b in groups.values())
                    table.offer((s1, new_part, False), val1 + val2 - boundary, sol1 | sol2)
        tables[idx] = table
        for c in node.children:
            del tables[c]

    best_val = None
    best_sol = None
    root = tables[nd.root]
    for (s, part, closed), (val, chosen) in sorted(
            root.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][2])):
        feasible = (closed and not s) or (not closed and len(part) == 1)
        if feasible and chosen and (best_val is None or val > best_val):
            best_val = val
            best_sol = chosen
    if best_sol is None:
        raise InvariantViolationError("dynamic program produced no feasible state")
    value = Fraction(best_val, g.scale)
    sol = Solution(best_sol, value, True)
    if not is_connected_induced(g, best_sol):
        raise InvariantViolationError("extracted DP set is not connected")
    if cut_weight(g, best_sol) != value:
        raise InvariantViolationError("extracted DP set does not match table value")
    return sol


def solve_treewidth(g: Graph, td: TreeDecomposition | None = None) -> Solution:
    """Convenience wrapper: build (or take) a decomposition, validate,
    normalize, and run the DP."""
    if td is None:
        td = build_decomposition(g)
    res = validate_decomposition(g, td)
    if not res:
        raise InvalidInputError("invalid tree decomposition: " + "; ".join(res.problems))
    return dp_solve(g, make_nice(td))
