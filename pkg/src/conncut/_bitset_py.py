"""Pure-Python bitset kernels.

Semantically identical to the compiled extension (same enumeration
order, same tie-breaking), but works for any n because Python ints are
unbounded. The compiled backend mirrors this file line for line.
"""

from __future__ import annotations


def lex_less(a: int, b: int) -> bool:
    """True if the vertex set of mask a sorts before b's (as sorted
    tuples, so a proper prefix sorts first).

    Decided at m = the smallest vertex in the symmetric difference: if a
    owns m it wins exactly when b still has vertices above m; if b owns
    m, a wins exactly when it has none.
    """
    d = a ^ b
    if d == 0:
        return False
    low = d & -d
    shift = low.bit_length()
    if a & low:
        return (b >> shift) != 0
    return (a >> shift) == 0


def is_connected_mask(adj: tuple, mask: int) -> bool:
    """Connectivity of the induced subgraph given per-vertex neighbor masks."""
    if mask == 0:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        reach = 0
        m = frontier
        while m:
            b = m & -m
            m ^= b
            reach |= adj[b.bit_length() - 1]
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def best_connected_cut(n: int, adj: tuple, nbrs: tuple, wts: tuple):
    """Maximum cut over all nonempty connected induced vertex sets.

    adj: per-vertex neighbor bitmasks; nbrs/wts: aligned per-vertex
    neighbor ids and integer edge weights. Returns (best_cut, best_mask,
    subsets_seen); ties prefer the lexicographically smallest vertex set.
    Enumeration grows connected sets from their minimum vertex, so each
    connected set is visited exactly once.
    """
    vertex_weight = [sum(w) for w in wts]
    best_cut = -1
    best_mask = 0
    count = 0

    def rec(smask: int, ext: int, forb: int, cut: int) -> None:
        nonlocal best_cut, best_mask, count
        count += 1
        if cut > best_cut or (cut == best_cut and lex_less(smask, best_mask)):
            best_cut = cut
            best_mask = smask
        processed = 0
        while ext:
            b = ext & -ext
            ext ^= b
            v = b.bit_length() - 1
            delta = vertex_weight[v]
            for u, w in zip(nbrs[v], wts[v]):
                if (smask >> u) & 1:
                    delta -= 2 * w
            child_forb = forb | processed
            grow = adj[v] & ~smask & ~child_forb & ~ext & ~b
            rec(smask | b, ext | grow, child_forb, cut + delta)
            processed |= b
    for r in range(n):
        below = (1 << r) - 1
        rec(1 << r, adj[r] & ~below & ~(1 << r), below, vertex_weight[r])
    return best_cut, best_mask, count
