"""Dense complex linear algebra shared by the algebraic modules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    InputError,
    NotCommuting,
    NotIdempotent,
    NotNormal,
    NotSelfAdjoint,
    SpectralGapViolation,
)


@dataclass(frozen=True)
class Tolerance:
    """Absolute max-norm tolerance plus the allowed spectral gap for projectors."""

    eps: float = 1e-9
    eig_gap: float = 1e-6

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise InputError(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 < self.eig_gap < 0.5:
            raise InputError(f"eig_gap must lie in (0, 0.5), got {self.eig_gap}")


DEFAULT_TOL = Tolerance()


def dagger(a):
    return np.conj(np.asarray(a)).T


def max_abs(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def residual(a, b):
    """Max-norm distance between two arrays of the same shape."""
    return max_abs(np.asarray(a) - np.asarray(b))


def kron(*mats):
    """Kronecker product of any number of factors (1-d inputs are treated as vectors)."""
    if not mats:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, (np.asarray(m) for m in mats))


def as_column(v):
    return np.asarray(v).reshape(-1, 1)


def split_dagger_idempotent(x, tol: Tolerance = DEFAULT_TOL):
    """Factor a self-adjoint idempotent as ``x = i @ i^dagger`` with ``i`` an isometry.

    Returns ``(i, rank)``; the columns of ``i`` span the eigenvalue-1 space.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise InputError(f"expected a square matrix, got shape {x.shape}")
    n = x.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex), 0
    adj_res = residual(x, dagger(x))
    if adj_res > tol.eps:
        raise NotSelfAdjoint(f"matrix is not self-adjoint (residual {adj_res:.3e})", adj_res)
    idem_res = residual(x @ x, x)
    if idem_res > tol.eps:
        raise NotIdempotent(f"x @ x != x (residual {idem_res:.3e})", idem_res)
    evals, evecs = np.linalg.eigh((x + dagger(x)) / 2)
    low = np.abs(evals) <= tol.eig_gap
    high = np.abs(evals - 1) <= tol.eig_gap
    bad = ~(low | high)
    if bad.any():
        worst = float(evals[bad][np.argmin(np.abs(evals[bad] - 0.5))])
        raise SpectralGapViolation(f"eigenvalue {worst:.6g} lies inside the spectral gap", worst)
    iso = evecs[:, high]
    return iso, iso.shape[1]


def simultaneously_diagonalize(ops, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    """Unitary basis in which every operator of a commuting normal family is diagonal.

    A random real combination of the Hermitian and anti-Hermitian parts is
    diagonalised and the result is checked against every operator.  Columns
    are ordered by the joint eigenvalues (descending real part, then imaginary
    part, operator by operator), and each column's phase is fixed so its
    largest entry is real positive.
    """
    ops = [np.asarray(o, dtype=complex) for o in ops]
    if not ops:
        raise InputError("need at least one operator")
    n = ops[0].shape[0]
    for k, a in enumerate(ops):
        if a.shape != (n, n):
            raise InputError(f"operator {k} has shape {a.shape}, expected {(n, n)}")
        r = residual(a @ dagger(a), dagger(a) @ a)
        if r > tol.eps:
            raise NotNormal(f"operator {k} is not normal (residual {r:.3e})", r)
    for j in range(len(ops)):
        for k in range(j + 1, len(ops)):
            r = residual(ops[j] @ ops[k], ops[k] @ ops[j])
            if r > tol.eps:
                raise NotCommuting(f"operators {j} and {k} do not commute (residual {r:.3e})", r)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((len(ops), 2))
    h = np.zeros((n, n), dtype=complex)
    for (c_re, c_im), a in zip(coeffs, ops):
        h += c_re * (a + dagger(a)) / 2 + c_im * (a - dagger(a)) / 2j
    _, basis = np.linalg.eigh(h)
    diag = np.stack([np.diag(dagger(basis) @ a @ basis) for a in ops])
    scale = max(1.0, max(max_abs(a) for a in ops))
    keys = []
    for col in range(n):
        key = []
        for val in diag[:, col]:
            key += [-round(val.real / scale, 6), -round(val.imag / scale, 6)]
        keys.append(tuple(key))
    order = sorted(range(n), key=lambda c: keys[c])
    basis = basis[:, order]
    for col in range(n):
        pivot = basis[np.argmax(np.abs(basis[:, col])), col]
        basis[:, col] *= np.conj(pivot) / abs(pivot)
    for k, a in enumerate(ops):
        d = dagger(basis) @ a @ basis
        off = max_abs(d - np.diag(np.diag(d)))
        if off > 10 * tol.eps * scale:
            raise NotCommuting(
                f"operator {k} is not diagonal in the joint basis (residual {off:.3e})", off
            )
    return basis


def null_space(a, tol: float = 1e-9):
    """Orthonormal basis of the kernel of ``a`` (relative singular-value cutoff)."""
    a = np.asarray(a, dtype=complex)
    if a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    cutoff = tol * max(1.0, s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return dagger(vh[rank:])


# JSON ------------------------------------------------------------------------


def cmatrix_to_json(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def cmatrix_from_json(obj):
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    if len(data) != rows * cols:
        raise InputError(f"matrix JSON has {len(data)} entries, expected {rows * cols}")
    arr = np.array([complex(re, im) for re, im in data], dtype=complex).reshape(rows, cols)
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix JSON contains non-finite values")
    return arr


def cvector_to_json(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).ravel()]


def cvector_from_json(data):
    return np.array([complex(re, im) for re, im in data], dtype=complex)
