# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contract as :mod:`boxkit._pykernels`.

Limited to graphs on at most 64 vertices (one machine word per bit row)
and at most ``MAX_DIM`` dimensions; callers fall back to Python beyond that.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy, memset

cdef enum:
    MAX_DIM = 32

YES, NO, UNKNOWN = 1, 0, -1
MAX_VERTICES = 64
MAX_DIMENSION = MAX_DIM


cdef extern from * nogil:
    int popcount "__builtin_popcountll"(unsigned long long)
    int ctz "__builtin_ctzll"(unsigned long long)


cdef inline uint64_t bit(int v) nogil:
    return (<uint64_t>1) << v


cdef inline uint64_t full_mask(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return (bit(n)) - 1


# -- common neighbourhoods -----------------------------------------------------

cdef struct CnCtx:
    int n
    uint64_t rows[64]
    int best
    int limit


cdef bint _cn_dfs(CnCtx* ctx, int start, int need, uint64_t common) nogil:
    cdef int c, w, pos, m = 0
    cdef int cands[64]
    cdef uint64_t nxt
    if need == 0:
        c = popcount(common)
        if c > ctx.best:
            ctx.best = c
        return ctx.best >= ctx.limit
    for w in range(start, ctx.n):
        if popcount(common & ctx.rows[w]) > ctx.best:
            cands[m] = w
            m += 1
    if m < need:
        return False
    for pos in range(m - need + 1):
        w = cands[pos]
        nxt = common & ctx.rows[w]
        if popcount(nxt) <= ctx.best:
            continue
        if _cn_dfs(ctx, w + 1, need - 1, nxt):
            return True
    return False


def max_common_neighbors(int n, rows, int i, int lower=-1, int first=-1, stop_at=None):
    """Largest ``|N(S)|`` over ``i``-subsets ``S``, or ``lower`` if nothing beats it."""
    cdef CnCtx ctx
    cdef int v
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    ctx.n = n
    for v in range(n):
        ctx.rows[v] = <uint64_t>rows[v]
    ctx.best = lower
    ctx.limit = n + 1 if stop_at is None else stop_at
    if i < 1 or i > n:
        return ctx.best
    if first >= 0:
        if first < n:
            if i == 1:
                if popcount(ctx.rows[first]) > ctx.best:
                    ctx.best = popcount(ctx.rows[first])
            else:
                with nogil:
                    _cn_dfs(&ctx, first + 1, i - 1, full_mask(n) & ctx.rows[first])
        return ctx.best
    with nogil:
        _cn_dfs(&ctx, 0, i, full_mask(n))
    return ctx.best


# -- interval-order search -----------------------------------------------------

cdef struct BoxCtx:
    int n
    int d
    int n_nonedges
    int* ne_u
    int* ne_v
    uint64_t adj[64]
    long long nodes
    long long max_nodes
    int split_depth
    long long split_index
    long long split_count
    long long split_counter
    int* work
    long long work_cap
    int* fresh
    uint64_t* result
    int result_used


# state layout per dimension t: pred rows at t*2n, succ rows at t*2n + n

cdef bint _push(BoxCtx* ctx, long long* top, int a, int b) nogil:
    cdef int* grown
    if top[0] + 2 > ctx.work_cap:
        grown = <int*>realloc(ctx.work, 2 * ctx.work_cap * sizeof(int))
        if grown == NULL:
            return False
        ctx.work = grown
        ctx.work_cap *= 2
    ctx.work[top[0]] = a
    ctx.work[top[0] + 1] = b
    top[0] += 2
    return True


cdef bint _add_lt(BoxCtx* ctx, uint64_t* pred, uint64_t* succ, int a0, int b0) nogil:
    """Insert a0<b0 with transitive and 2+2 closure; False on contradiction."""
    cdef long long top = 0
    cdef int nfresh, k
    cdef int a, b, x, y, c, dd
    cdef uint64_t P, S, new, rest, cp, ds
    if not _push(ctx, &top, a0, b0):
        return False
    while top > 0:
        top -= 2
        a = ctx.work[top]
        b = ctx.work[top + 1]
        if (succ[a] >> b) & 1:
            continue
        P = pred[a] | bit(a)
        S = succ[b] | bit(b)
        if P & S:
            return False
        nfresh = 0
        rest = P
        while rest:
            x = ctz(rest)
            rest &= rest - 1
            new = S & ~succ[x]
            if not new:
                continue
            if new & (ctx.adj[x] | pred[x]):
                return False
            succ[x] |= new
            while new:
                y = ctz(new)
                new &= new - 1
                pred[y] |= bit(x)
                ctx.fresh[2 * nfresh] = x
                ctx.fresh[2 * nfresh + 1] = y
                nfresh += 1
        for k in range(nfresh):
            x = ctx.fresh[2 * k]
            y = ctx.fresh[2 * k + 1]
            # x<y, c<d and x||d (edge) force c<y; c||y forces x<d
            cp = 0
            rest = ctx.adj[x]
            while rest:
                dd = ctz(rest)
                rest &= rest - 1
                cp |= pred[dd]
            cp &= ~pred[y]
            while cp:
                c = ctz(cp)
                cp &= cp - 1
                if not _push(ctx, &top, c, y):
                    return False
            ds = 0
            rest = ctx.adj[y]
            while rest:
                c = ctz(rest)
                rest &= rest - 1
                ds |= succ[c]
            ds &= ~succ[x]
            while ds:
                dd = ctz(ds)
                ds &= ds - 1
                if not _push(ctx, &top, x, dd):
                    return False
    return True


cdef bint _feasible(BoxCtx* ctx, uint64_t* pred, uint64_t* succ, int a, int b) nogil:
    cdef uint64_t P, S, acc = 0, rest
    cdef int x
    if (succ[b] >> a) & 1:
        return False
    P = pred[a] | bit(a)
    S = succ[b] | bit(b)
    if P & S:
        return False
    rest = P
    while rest:
        x = ctz(rest)
        rest &= rest - 1
        acc |= ctx.adj[x]
    return not (acc & S)


cdef bint _violation(int n, uint64_t* pred, int* out) nogil:
    cdef int b, d
    cdef uint64_t x, y
    for b in range(n):
        for d in range(b + 1, n):
            x = pred[b] & ~pred[d]
            y = pred[d] & ~pred[b]
            if x and y:
                out[0] = ctz(x)
                out[1] = d
                out[2] = ctz(y)
                out[3] = b
                return True
    return False


cdef int _rec(BoxCtx* ctx, uint64_t* state, int used, int depth) nogil:
    """1 = solution stored in ctx.result, 0 = none below, -1 = budget exhausted."""
    cdef int n = ctx.n, d = ctx.d
    cdef int stride = 2 * n
    cdef int e, t, u, v, k, r, nt
    cdef int nbest = -1, nopts
    cdef int opt_t[2 * MAX_DIM + 1]
    cdef int opt_a[2 * MAX_DIM + 1]
    cdef int opt_b[2 * MAX_DIM + 1]
    cdef int cur_t[2 * MAX_DIM + 1]
    cdef int cur_a[2 * MAX_DIM + 1]
    cdef int cur_b[2 * MAX_DIM + 1]
    cdef int hit[4]
    cdef bint covered, mine
    cdef uint64_t* ns
    cdef size_t nbytes = <size_t>d * stride * sizeof(uint64_t)

    ctx.nodes += 1
    if ctx.nodes > ctx.max_nodes:
        return -1

    for e in range(ctx.n_nonedges):
        u = ctx.ne_u[e]
        v = ctx.ne_v[e]
        covered = False
        for t in range(used):
            if ((state[t * stride + n + u] >> v) & 1) or ((state[t * stride + u] >> v) & 1):
                covered = True
                break
        if covered:
            continue
        nopts = 0
        for t in range(used):
            if _feasible(ctx, state + t * stride, state + t * stride + n, u, v):
                cur_t[nopts] = t; cur_a[nopts] = u; cur_b[nopts] = v
                nopts += 1
            if _feasible(ctx, state + t * stride, state + t * stride + n, v, u):
                cur_t[nopts] = t; cur_a[nopts] = v; cur_b[nopts] = u
                nopts += 1
        if used < d:
            cur_t[nopts] = used; cur_a[nopts] = u; cur_b[nopts] = v
            nopts += 1
        if nbest < 0 or nopts < nbest:
            nbest = nopts
            for k in range(nopts):
                opt_t[k] = cur_t[k]; opt_a[k] = cur_a[k]; opt_b[k] = cur_b[k]
            if nopts <= 1:
                break

    if nbest < 0:
        for t in range(used):
            if _violation(n, state + t * stride, hit):
                nbest = 2
                opt_t[0] = t; opt_a[0] = hit[0]; opt_b[0] = hit[1]
                opt_t[1] = t; opt_a[1] = hit[2]; opt_b[1] = hit[3]
                break
        if nbest < 0:
            memcpy(ctx.result, state, <size_t>used * stride * sizeof(uint64_t))
            ctx.result_used = used
            return 1

    ns = <uint64_t*>malloc(nbytes if nbytes > 0 else 1)
    if ns == NULL:
        return -1
    for k in range(nbest):
        if depth == ctx.split_depth:
            mine = (ctx.split_counter % ctx.split_count) == ctx.split_index
            ctx.split_counter += 1
            if not mine:
                continue
        t = opt_t[k]
        memcpy(ns, state, <size_t>used * stride * sizeof(uint64_t))
        nt = used
        if t == used:
            memset(ns + used * stride, 0, stride * sizeof(uint64_t))
            nt = used + 1
        if not _add_lt(ctx, ns + t * stride, ns + t * stride + n, opt_a[k], opt_b[k]):
            continue
        r = _rec(ctx, ns, nt, depth + 1)
        if r != 0:
            free(ns)
            return r
    free(ns)
    return 0


def box_search(int n, rows, int d, long long max_nodes, int split_depth=-1,
               long long split_index=0, long long split_count=1):
    """Compiled twin of :func:`boxkit._pykernels.box_search`."""
    cdef BoxCtx ctx
    cdef int u, v, m = 0, t, r
    cdef uint64_t* root
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    if d > MAX_DIM:
        raise ValueError(f"compiled kernel supports at most {MAX_DIM} dimensions")
    for u in range(n):
        ctx.adj[u] = <uint64_t>rows[u]
    nonedges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (rows[u] >> v) & 1]
    if d == 0:
        return (NO if nonedges else YES), 0, []
    ctx.n = n
    ctx.d = d
    ctx.n_nonedges = len(nonedges)
    ctx.nodes = 0
    ctx.max_nodes = max_nodes
    ctx.split_depth = split_depth
    ctx.split_index = split_index
    ctx.split_count = split_count
    ctx.split_counter = 0
    ctx.work_cap = 4096
    ctx.ne_u = <int*>malloc((len(nonedges) + 1) * sizeof(int))
    ctx.ne_v = <int*>malloc((len(nonedges) + 1) * sizeof(int))
    ctx.work = <int*>malloc(ctx.work_cap * sizeof(int))
    ctx.fresh = <int*>malloc(2 * 64 * 64 * sizeof(int))
    ctx.result = <uint64_t*>malloc(d * 2 * n * sizeof(uint64_t) + 8)
    root = <uint64_t*>malloc(8)
    try:
        if (ctx.ne_u == NULL or ctx.ne_v == NULL or ctx.work == NULL
                or ctx.fresh == NULL or ctx.result == NULL or root == NULL):
            raise MemoryError()
        for m, (u, v) in enumerate(nonedges):
            ctx.ne_u[m] = u
            ctx.ne_v[m] = v
        with nogil:
            r = _rec(&ctx, root, 0, 0)
        if r < 0:
            return UNKNOWN, ctx.nodes, None
        if r == 0:
            return NO, ctx.nodes, None
        preds = []
        for t in range(d):
            if t < ctx.result_used:
                preds.append([int(ctx.result[t * 2 * n + v]) for v in range(n)])
            else:
                preds.append([0] * n)
        return YES, ctx.nodes, preds
    finally:
        free(ctx.ne_u)
        free(ctx.ne_v)
        free(ctx.work)
        free(ctx.fresh)
        free(ctx.result)
        free(root)
