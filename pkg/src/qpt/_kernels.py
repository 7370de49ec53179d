"""Hot integer kernels with two interchangeable backends.

Three kernels dominate the combinatorial side of the library:

* ``refine_colors``: equitable-partition refinement used by the graph search.
* ``gf2_rref``: reduced row echelon form over F2 (parity constraint systems).
* ``smith_prime_power``: diagonal reduction over Z/p^e (cocycle equations).

Each exists as a numba ``@njit`` function and as a pure numpy function with
identical results.  The backend is picked once at import time from the
``QPT_BACKEND`` environment variable (``numba`` or ``numpy``); numba is the
default whenever it imports.  Both variants stay importable under explicit
names so tests and ``benchmarks/bench_kernels.py`` can compare them.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

_REQUESTED = os.environ.get("QPT_BACKEND", "numba").strip().lower()
if _REQUESTED not in ("numba", "numpy"):
    raise ImportError(f"QPT_BACKEND must be 'numba' or 'numpy', got {_REQUESTED!r}")

HAVE_NUMBA = numba is not None
BACKEND = "numba" if (HAVE_NUMBA and _REQUESTED == "numba") else "numpy"


# ---------------------------------------------------------------------------
# equitable refinement


def refine_colors_numpy(adj, colors):
    """Refine a vertex colouring until it is equitable.

    Colours are canonical ranks: vertex u gets the rank of the tuple
    (old colour, number of neighbours in colour 0, 1, ...) in lexicographic
    order.  The result therefore commutes with relabelling the graph.
    """
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, colors = np.unique(np.asarray(colors), return_inverse=True)
    colors = colors.ravel().astype(np.int64)
    k = int(colors.max()) + 1
    while True:
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), colors] = 1
        keys = np.column_stack([colors, adj @ onehot])
        _, new = np.unique(keys, axis=0, return_inverse=True)
        new = new.ravel().astype(np.int64)
        k_new = int(new.max()) + 1
        if k_new == k:
            return new
        colors, k = new, k_new


def gf2_rref_numpy(mat):
    """Row-reduce a 0/1 matrix over F2; returns (reduced matrix, pivot columns)."""
    a = (np.asarray(mat, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    pivots = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        hits = np.flatnonzero(a[rank:, col])
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        mask = a[:, col].astype(bool)
        mask[rank] = False
        a[mask] ^= a[rank]
        pivots.append(col)
        rank += 1
    return a, np.asarray(pivots, dtype=np.int64)


def _valuation(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def smith_prime_power_numpy(mat, rhs, p, e):
    """Diagonalise ``mat`` over Z/p^e by invertible row and column operations.

    Returns ``(vals, V, rhs_out)`` such that ``U @ mat @ V`` is diagonal with
    entries ``p**vals[i]`` (then zeros) and ``rhs_out = U @ rhs``.  Pivots are
    chosen with minimal p-valuation so every elimination step is exact.
    """
    q = p**e
    a = np.asarray(mat, dtype=np.int64) % q
    b = np.asarray(rhs, dtype=np.int64).reshape(a.shape[0], -1) % q
    rows, cols = a.shape
    V = np.eye(cols, dtype=np.int64)
    vals = []
    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        units = np.flatnonzero(sub[:, 0] % p)
        if units.size:
            bi, bj, best = t + units[0], t, 0
        else:
            nz = sub != 0
            if not nz.any():
                break
            units = np.flatnonzero((sub % p != 0).ravel())
            if units.size:
                i, j = divmod(int(units[0]), sub.shape[1])
                bi, bj, best = t + i, t + j, 0
            else:
                ii, jj = np.nonzero(nz)
                vs = np.array([_valuation(int(x), p) for x in sub[ii, jj]])
                k = int(np.argmin(vs))
                bi, bj, best = t + ii[k], t + jj[k], int(vs[k])
        if bi != t:
            a[[t, bi]] = a[[bi, t]]
            b[[t, bi]] = b[[bi, t]]
        if bj != t:
            a[:, [t, bj]] = a[:, [bj, t]]
            V[:, [t, bj]] = V[:, [bj, t]]
        pv = p**best
        unit_inv = pow(int(a[t, t] // pv) % q, -1, q)
        a[t] = (a[t] * unit_inv) % q
        b[t] = (b[t] * unit_inv) % q
        col = a[:, t].copy()
        col[t] = 0
        rows_hit = np.flatnonzero(col)
        if rows_hit.size:
            f = (col[rows_hit] // pv)[:, None]
            a[rows_hit] = (a[rows_hit] - f * a[t]) % q
            b[rows_hit] = (b[rows_hit] - f * b[t]) % q
        row = a[t].copy()
        row[: t + 1] = 0
        cols_hit = np.flatnonzero(row)
        if cols_hit.size:
            f = (row[cols_hit] // pv)[None, :]
            a[:, cols_hit] = (a[:, cols_hit] - a[:, [t]] * f) % q
            V[:, cols_hit] = (V[:, cols_hit] - V[:, [t]] * f) % q
        vals.append(best)
        t += 1
    return np.asarray(vals, dtype=np.int64), V, b


# ---------------------------------------------------------------------------
# numba variants

if HAVE_NUMBA:

    @njit(cache=True)
    def _rank_lex(keys):
        n, width = keys.shape
        order = np.arange(n)
        for col in range(width - 1, -1, -1):
            idx = np.argsort(keys[order, col], kind="mergesort")
            order = order[idx]
        ranks = np.empty(n, dtype=np.int64)
        r = 0
        ranks[order[0]] = 0
        for t in range(1, n):
            for col in range(width):
                if keys[order[t], col] != keys[order[t - 1], col]:
                    r += 1
                    break
            ranks[order[t]] = r
        return ranks, r + 1

    @njit(cache=True)
    def _refine_colors_jit(adj, colors):
        n = adj.shape[0]
        start = np.empty((n, 1), dtype=np.int64)
        start[:, 0] = colors
        colors, k = _rank_lex(start)
        while True:
            keys = np.zeros((n, k + 1), dtype=np.int64)
            for u in range(n):
                keys[u, 0] = colors[u]
                for v in range(n):
                    if adj[u, v]:
                        keys[u, colors[v] + 1] += 1
            new, k_new = _rank_lex(keys)
            if k_new == k:
                return new
            colors, k = new, k_new

    @njit(cache=True)
    def _gf2_rref_jit(a):
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        rank = 0
        for col in range(cols):
            if rank == rows:
                break
            p = -1
            for i in range(rank, rows):
                if a[i, col]:
                    p = i
                    break
            if p < 0:
                continue
            if p != rank:
                for j in range(cols):
                    tmp = a[rank, j]
                    a[rank, j] = a[p, j]
                    a[p, j] = tmp
            for i in range(rows):
                if i != rank and a[i, col]:
                    for j in range(col, cols):
                        a[i, j] ^= a[rank, j]
            pivots[rank] = col
            rank += 1
        return a, pivots[:rank]

    @njit(cache=True)
    def _modinv(u, q):
        r0, r1 = q, u % q
        s0, s1 = 0, 1
        while r1 != 0:
            quo = r0 // r1
            r0, r1 = r1, r0 - quo * r1
            s0, s1 = s1, s0 - quo * s1
        return s0 % q

    @njit(cache=True)
    def _smith_jit(a, b, p, e):
        q = 1
        for _ in range(e):
            q *= p
        rows, cols = a.shape
        nb = b.shape[1]
        V = np.eye(cols, dtype=np.int64)
        vals = np.empty(min(rows, cols), dtype=np.int64)
        t = 0
        while t < min(rows, cols):
            best = e
            bi = -1
            bj = -1
            for j in range(t, cols):
                for i in range(t, rows):
                    x = a[i, j]
                    if x != 0:
                        v = 0
                        while x % p == 0:
                            x //= p
                            v += 1
                        if v < best:
                            best, bi, bj = v, i, j
                            if v == 0:
                                break
                if best == 0:
                    break
            if bi < 0:
                break
            if bi != t:
                for j in range(cols):
                    tmp = a[t, j]
                    a[t, j] = a[bi, j]
                    a[bi, j] = tmp
                for j in range(nb):
                    tmp = b[t, j]
                    b[t, j] = b[bi, j]
                    b[bi, j] = tmp
            if bj != t:
                for i in range(rows):
                    tmp = a[i, t]
                    a[i, t] = a[i, bj]
                    a[i, bj] = tmp
                for i in range(cols):
                    tmp = V[i, t]
                    V[i, t] = V[i, bj]
                    V[i, bj] = tmp
            pv = 1
            for _ in range(best):
                pv *= p
            uinv = _modinv((a[t, t] // pv) % q, q)
            for j in range(cols):
                a[t, j] = (a[t, j] * uinv) % q
            for j in range(nb):
                b[t, j] = (b[t, j] * uinv) % q
            for i in range(rows):
                if i != t and a[i, t] != 0:
                    f = a[i, t] // pv
                    for j in range(t, cols):
                        a[i, j] = (a[i, j] - f * a[t, j]) % q
                    for j in range(nb):
                        b[i, j] = (b[i, j] - f * b[t, j]) % q
            for j in range(t + 1, cols):
                if a[t, j] != 0:
                    f = a[t, j] // pv
                    a[t, j] = 0
                    for i in range(cols):
                        V[i, j] = (V[i, j] - f * V[i, t]) % q
            vals[t] = best
            t += 1
        return vals[:t], V, b


def refine_colors_numba(adj, colors):
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    if adj.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _refine_colors_jit(adj, np.ascontiguousarray(colors, dtype=np.int64))


def gf2_rref_numba(mat):
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.uint8) & 1)
    return _gf2_rref_jit(a.copy())


def smith_prime_power_numba(mat, rhs, p, e):
    q = p**e
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % q)
    b = np.ascontiguousarray(np.asarray(rhs, dtype=np.int64).reshape(a.shape[0], -1) % q)
    return _smith_jit(a.copy(), b.copy(), int(p), int(e))


if BACKEND == "numba":
    refine_colors = refine_colors_numba
    gf2_rref = gf2_rref_numba
    smith_prime_power = smith_prime_power_numba
else:
    refine_colors = refine_colors_numpy
    gf2_rref = gf2_rref_numpy
    smith_prime_power = smith_prime_power_numpy
