"""Pure-Python hot kernels.

Reference implementation for :mod:`boxkit._ckernels`; both expose the same
three functions with identical results.  Vertex sets are int bitmasks.
"""

from __future__ import annotations

YES, NO, UNKNOWN = 1, 0, -1


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_common_neighbors(n, rows, i, lower=-1, first=-1, stop_at=None):
    """Largest ``|N(S)|`` over ``i``-subsets ``S``, or ``lower`` if nothing beats it.

    ``first >= 0`` restricts the search to sets whose smallest element is
    ``first``.  The search stops early once a value ``>= stop_at`` is found.
    Since ``rows[v]`` never contains ``v``, the running intersection of the
    rows of ``S`` is exactly ``N(S)``.
    """
    rows = list(rows)
    best = lower
    limit = n + 1 if stop_at is None else stop_at

    def dfs(start, need, common):
        nonlocal best
        if need == 0:
            c = common.bit_count()
            if c > best:
                best = c
            return best >= limit
        # candidates that can still beat best after joining S
        cands = [w for w in range(start, n) if (common & rows[w]).bit_count() > best]
        if len(cands) < need:
            return False
        for pos in range(len(cands) - need + 1):
            w = cands[pos]
            nxt = common & rows[w]
            if nxt.bit_count() <= best:
                continue
            if dfs(w + 1, need - 1, nxt):
                return True
        return False

    full = (1 << n) - 1
    if i < 1 or i > n:
        return best
    if first >= 0:
        if first < n:
            if i == 1:
                best = max(best, rows[first].bit_count())
            else:
                dfs(first + 1, i - 1, full & rows[first])
        return best
    dfs(0, i, full)
    return best


class _Conflict(Exception):
    pass


def _add_lt(adj, pred, succ, a, b):
    """Insert ``a < b`` into one dimension and close under transitivity and 2+2."""
    work = [(a, b)]
    while work:
        a, b = work.pop()
        if (succ[a] >> b) & 1:
            continue
        P = pred[a] | (1 << a)
        S = succ[b] | (1 << b)
        if P & S:
            raise _Conflict
        fresh = []
        for x in _bits(P):
            new = S & ~succ[x]
            if not new:
                continue
            if new & (adj[x] | pred[x]):
                raise _Conflict
            succ[x] |= new
            bx = 1 << x
            for y in _bits(new):
                pred[y] |= bx
                fresh.append((x, y))
        for x, y in fresh:
            # x<y, c<d and x||d (edge) force c<y; c||y forces x<d
            cp = 0
            for d in _bits(adj[x]):
                cp |= pred[d]
            cp &= ~pred[y]
            for c in _bits(cp):
                work.append((c, y))
            ds = 0
            for c in _bits(adj[y]):
                ds |= succ[c]
            ds &= ~succ[x]
            for d in _bits(ds):
                work.append((x, d))


def _feasible(adj, pred, succ, a, b):
    if (succ[b] >> a) & 1:
        return False
    P = pred[a] | (1 << a)
    S = succ[b] | (1 << b)
    if P & S:
        return False
    acc = 0
    for x in _bits(P):
        acc |= adj[x]
    return not (acc & S)


def _two_plus_two_violation(n, pred):
    for b in range(n):
        pb = pred[b]
        for d in range(b + 1, n):
            pd = pred[d]
            x = pb & ~pd
            y = pd & ~pb
            if x and y:
                a = (x & -x).bit_length() - 1
                c = (y & -y).bit_length() - 1
                return a, d, c, b
    return None


def box_search(n, rows, d, max_nodes, split_depth=-1, split_index=0, split_count=1):
    """Decide whether the graph is an intersection of ``d`` interval graphs.

    Returns ``(status, nodes, preds)`` with status ``YES``/``NO``/``UNKNOWN``.
    On ``YES``, ``preds[t][v]`` is the bitmask of vertices entirely left of
    ``v`` in dimension ``t`` (an interval order, 2+2-free and transitive).

    Each non-edge is given a witness dimension and orientation.  Dimensions
    with no relation yet are interchangeable and reversal-symmetric, so only
    the first unused one is tried, with a fixed orientation.  When every
    non-edge is covered, any remaining 2+2 pattern is resolved by branching
    on its two possible repairs.

    With ``split_count > 1`` only every ``split_count``-th branch (offset
    ``split_index``) taken at recursion depth ``split_depth`` is explored, so
    workers with distinct indices partition the tree.
    """
    adj = list(rows)
    nonedges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (adj[u] >> v) & 1]
    nodes = 0
    split_counter = 0

    class _Budget(Exception):
        pass

    if d == 0:
        return (NO if nonedges else YES), 0, []

    def rec(state, used, depth):
        nonlocal nodes, split_counter
        nodes += 1
        if nodes > max_nodes:
            raise _Budget
        best = None
        for u, v in nonedges:
            covered = False
            for t in range(used):
                if (state[t][1][u] >> v) & 1 or (state[t][0][u] >> v) & 1:
                    covered = True
                    break
            if covered:
                continue
            opts = []
            for t in range(used):
                pr, su = state[t]
                if _feasible(adj, pr, su, u, v):
                    opts.append((t, u, v))
                if _feasible(adj, pr, su, v, u):
                    opts.append((t, v, u))
            if used < d:
                opts.append((used, u, v))
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
        if best is None:
            for t in range(used):
                hit = _two_plus_two_violation(n, state[t][0])
                if hit is not None:
                    a, dd, c, b = hit
                    best = [(t, a, dd), (t, c, b)]
                    break
            if best is None:
                return state
        for t, a, b in best:
            if depth == split_depth:
                mine = split_counter % split_count == split_index
                split_counter += 1
                if not mine:
                    continue
            ns = [(list(p), list(s)) for p, s in state]
            nu = used
            if t == used:
                ns.append(([0] * n, [0] * n))
                nu = used + 1
            try:
                _add_lt(adj, ns[t][0], ns[t][1], a, b)
            except _Conflict:
                continue
            found = rec(ns, nu, depth + 1)
            if found is not None:
                return found
        return None

    try:
        found = rec([], 0, 0)
    except _Budget:
        return UNKNOWN, nodes, None
    if found is None:
        return NO, nodes, None
    preds = [list(p) for p, _ in found]
    while len(preds) < d:
        preds.append([0] * n)
    return YES, nodes, preds
