# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels for graphs with n <= 63.

Mirrors _bitset_py exactly: same enumeration order, same lexicographic
tie-breaking, so both backends return identical results on any instance
they both accept.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline int _lowbit_index(u64 b) nogil:
    cdef int i = 0
    while not (b & 1):
        b >>= 1
        i += 1
    return i


cdef inline bint _lex_less(u64 a, u64 b) nogil:
    # sorted-tuple order: a proper prefix sorts first; decided at the
    # smallest differing vertex m
    cdef u64 d = a ^ b
    if d == 0:
        return False
    cdef u64 low = d & (~d + 1)
    cdef int shift = _lowbit_index(low) + 1  # < 64 because n <= 63
    if a & low:
        return (b >> shift) != 0
    return (a >> shift) == 0


def is_connected_mask(adj, mask):
    """Connectivity of the induced subgraph given neighbor bitmasks."""
    cdef int n = len(adj)
    if n > 63:
        raise ValueError("compiled kernel limited to n <= 63")
    cdef u64 cmask = mask
    if cmask == 0:
        return False
    cdef u64 *cadj = <u64 *> malloc(n * sizeof(u64))
    if cadj == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        cadj[i] = adj[i]
    cdef u64 seen = cmask & (~cmask + 1)
    cdef u64 frontier = seen
    cdef u64 reach, m, b
    while frontier:
        reach = 0
        m = frontier
        while m:
            b = m & (~m + 1)
            m ^= b
            reach |= cadj[_lowbit_index(b)]
        frontier = reach & cmask & ~seen
        seen |= frontier
    free(cadj)
    return seen == cmask


cdef struct _Ctx:
    int n
    u64 *adj
    int *row_start
    int *nbr
    i64 *w
    i64 *vertex_weight
    i64 best_cut
    u64 best_mask
    unsigned long long count


cdef void _rec(_Ctx *ctx, u64 smask, u64 ext, u64 forb, i64 cut) nogil:
    cdef u64 processed = 0, b, grow
    cdef int v, j
    cdef i64 delta
    ctx.count += 1
    if cut > ctx.best_cut or (cut == ctx.best_cut and _lex_less(smask, ctx.best_mask)):
        ctx.best_cut = cut
        ctx.best_mask = smask
    while ext:
        b = ext & (~ext + 1)
        ext ^= b
        v = _lowbit_index(b)
        delta = ctx.vertex_weight[v]
        for j in range(ctx.row_start[v], ctx.row_start[v + 1]):
            if (smask >> ctx.nbr[j]) & 1:
                delta -= 2 * ctx.w[j]
        grow = ctx.adj[v] & ~smask & ~(forb | processed) & ~ext & ~b
        _rec(ctx, smask | b, ext | grow, forb | processed, cut + delta)
        processed |= b


def best_connected_cut(n, adj, nbrs, wts):
    """Maximum cut over nonempty connected induced sets; see _bitset_py."""
    if n > 63:
        raise ValueError("compiled kernel limited to n <= 63")
    cdef _Ctx ctx
    ctx.n = n
    ctx.best_cut = -1
    ctx.best_mask = 0
    ctx.count = 0
    cdef int total = 0
    cdef int i, j, k
    cdef u64 below, rbit
    for i in range(n):
        total += len(nbrs[i])
    ctx.adj = <u64 *> malloc(n * sizeof(u64))
    ctx.row_start = <int *> malloc((n + 1) * sizeof(int))
    ctx.nbr = <int *> malloc((total if total else 1) * sizeof(int))
    ctx.w = <i64 *> malloc((total if total else 1) * sizeof(i64))
    ctx.vertex_weight = <i64 *> malloc(n * sizeof(i64))
    if (ctx.adj == NULL or ctx.row_start == NULL or ctx.nbr == NULL
            or ctx.w == NULL or ctx.vertex_weight == NULL):
        raise MemoryError()
    try:
        k = 0
        for i in range(n):
            ctx.adj[i] = adj[i]
            ctx.row_start[i] = k
            ctx.vertex_weight[i] = 0
            row_n = nbrs[i]
            row_w = wts[i]
            for j in range(len(row_n)):
                ctx.nbr[k] = row_n[j]
                ctx.w[k] = row_w[j]
                ctx.vertex_weight[i] += row_w[j]
                k += 1
        ctx.row_start[n] = k
        for i in range(n):
            below = (<u64> 1 << i) - 1
            rbit = <u64> 1 << i
            _rec(&ctx, rbit, ctx.adj[i] & ~below & ~rbit, below, ctx.vertex_weight[i])
        return int(ctx.best_cut), int(ctx.best_mask), int(ctx.count)
    finally:
        free(ctx.adj)
        free(ctx.row_start)
        free(ctx.nbr)
        free(ctx.w)
        free(ctx.vertex_weight)
