"""Linear algebra over Z/N for composite N, via prime powers and the CRT."""

from __future__ import annotations

import numpy as np
import sympy

from . import _kernels


def _crt_weights(N):
    """For each prime power q || N: (p, e, q, w) with w = 1 mod q and 0 mod N/q."""
    out = []
    for p, e in sympy.factorint(N).items():
        q = p**e
        m = N // q
        out.append((p, e, q, (m * pow(m, -1, q)) % N))
    return out


def solve_mod(A, b, N):
    """One solution x of ``A x = b (mod N)``, or ``None`` when the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    if N == 1:
        return np.zeros(cols, dtype=np.int64)
    x = np.zeros(cols, dtype=object)
    for p, e, q, w in _crt_weights(N):
        vals, V, bb = _kernels.smith_prime_power(A, b, p, e)
        bb = bb[:, 0]
        r = len(vals)
        if np.any(bb[r:] % q):
            return None
        y = np.zeros(cols, dtype=np.int64)
        for i in range(r):
            pv = p ** int(vals[i])
            if bb[i] % pv:
                return None
            y[i] = bb[i] // pv
        xp = (V.astype(object) @ y.astype(object)) % q
        x = (x + xp * w) % N
    return x.astype(np.int64)


def kernel_mod(A, N):
    """Generators of ``{x : A x = 0 (mod N)}`` as a list of ``(vector, additive order)``."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    gens = []
    if N == 1:
        return gens
    for p, e, q, w in _crt_weights(N):
        vals, V, _ = _kernels.smith_prime_power(A, np.zeros((A.shape[0], 1)), p, e)
        r = len(vals)
        for i in range(cols):
            if i < r:
                v = int(vals[i])
                if v == 0:
                    continue
                vec, order = V[:, i] * p ** (e - v), p**v
            else:
                vec, order = V[:, i], q
            vec = (vec.astype(object) % q * w) % N
            gens.append((vec.astype(np.int64), order))
    return gens
