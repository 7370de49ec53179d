"""Nice unitary error bases: group-indexed orthogonal unitary bases of a matrix algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cocycles import CentralTypeSubgroup, TwoCocycle, is_nondegenerate, verify_cocycle
from .errors import (
    InputError,
    NondegeneracyRequired,
    NotProjective,
    NotTraceOrthogonal,
    NotUnitary,
    PhaseSnapError,
    RankMismatch,
)
from .numerics import DEFAULT_TOL, Tolerance, cmatrix_from_json, cmatrix_to_json, max_abs
from .permgroups import FiniteGroup, direct_product

SNAP_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class UnitaryErrorBasis:
    """``matrices[a]`` is the unitary attached to abstract element ``a`` of ``group``."""

    group: FiniteGroup
    matrices: np.ndarray

    def __post_init__(self):
        mats = np.array(self.matrices, dtype=complex)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise InputError(f"expected a stack of square matrices, got shape {mats.shape}")
        if mats.shape[0] != self.group.order:
            raise InputError(f"{mats.shape[0]} matrices for a group of order {self.group.order}")
        if mats.shape[1] ** 2 != self.group.order:
            raise InputError(f"dimension {mats.shape[1]} squared is not the group order")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self):
        return self.matrices.shape[1]

    @property
    def order(self):
        return self.group.order

    @cached_property
    def cocycle(self) -> TwoCocycle:
        return verify_ueb(self)

    def to_json(self):
        return {
            "order": self.order,
            "mult_table": self.group.table.tolist(),
            "matrices": [cmatrix_to_json(m) for m in self.matrices],
        }

    @classmethod
    def from_json(cls, obj, tol: Tolerance = DEFAULT_TOL):
        try:
            group = FiniteGroup(obj["mult_table"])
            mats = np.stack([cmatrix_from_json(m) for m in obj["matrices"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed unitary error basis JSON: {exc}") from exc
        u = cls(group, mats)
        verify_ueb(u, tol=tol)
        return u


def clock_shift_basis(n: int) -> UnitaryErrorBasis:
    """Weyl-Heisenberg basis X^a Z^b on C^n, indexed by (a, b) -> a * n + b."""
    if n < 2:
        raise InputError("clock-and-shift needs n >= 2")
    shift = np.roll(np.eye(n), 1, axis=0)  # e_j -> e_{j+1}
    clock = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    xs = [np.linalg.matrix_power(shift, a) for a in range(n)]
    zs = [np.linalg.matrix_power(clock, b) for b in range(n)]
    mats = np.array([xs[a] @ zs[b] for a in range(n) for b in range(n)])
    return UnitaryErrorBasis(FiniteGroup.abelian([n, n]), mats)


def pauli_basis() -> UnitaryErrorBasis:
    """I, Z, X, XZ indexed by (a, b) in Z_2^2; XZ = -iY."""
    return clock_shift_basis(2)


def trivial_basis() -> UnitaryErrorBasis:
    return UnitaryErrorBasis(FiniteGroup.cyclic(1), np.ones((1, 1, 1)))


def tensor_ueb(u1: UnitaryErrorBasis, u2: UnitaryErrorBasis) -> UnitaryErrorBasis:
    """Basis U_a (x) U_b on the product group, element (a, b) at index a * |L2| + b."""
    mats = np.einsum("aij,bkl->abikjl", u1.matrices, u2.matrices, optimize=True)
    d = u1.dim * u2.dim
    mats = mats.reshape(u1.order * u2.order, d, d)
    return UnitaryErrorBasis(direct_product(u1.group, u2.group), mats)


def tensor_power(u: UnitaryErrorBasis, k: int) -> UnitaryErrorBasis:
    out = trivial_basis()
    for _ in range(k):
        out = tensor_ueb(out, u)
    return out


def verify_ueb(u: UnitaryErrorBasis, tol: Tolerance = DEFAULT_TOL, root_hint: int = 1):
    """Check the defining identities and return the cocycle as exact exponents.

    Phases are snapped to N-th roots of unity with N = lcm(|L|, root_hint).
    """
    mats = u.matrices
    k, d = mats.shape[0], u.dim
    eye = np.eye(d)
    if max_abs(mats[0] - eye) > tol.eps:
        raise InputError("the identity element must carry the identity matrix")
    adj = np.conj(np.swapaxes(mats, 1, 2))
    unit_res = max_abs(adj @ mats - eye)
    if unit_res > tol.eps:
        raise NotUnitary(f"matrices are not unitary (residual {unit_res:.3e})", unit_res)
    gram = np.einsum("aij,bij->ab", mats.conj(), mats, optimize=True)
    orth_res = max_abs(gram - d * np.eye(k))
    if orth_res > tol.eps * d:
        raise NotTraceOrthogonal(f"trace Gram matrix is not d*I (residual {orth_res:.3e})", orth_res)
    table = u.group.table
    prod = np.einsum("aij,bjk->abik", mats, mats, optimize=True)
    target = mats[table]
    phase = np.einsum("abij,abij->ab", target.conj(), prod, optimize=True) / d
    proj_res = np.max(np.abs(prod - phase[:, :, None, None] * target), axis=(2, 3))
    worst = np.unravel_index(np.argmax(proj_res), proj_res.shape)
    if proj_res[worst] > tol.eps * max(1, d):
        raise NotProjective(tuple(int(x) for x in worst), float(proj_res[worst]))
    N = math.lcm(k, root_hint)
    exps = np.angle(phase) / (2 * np.pi) * N
    snapped = np.rint(exps)
    snap_err = max_abs(exps - snapped)
    if snap_err > SNAP_TOL * N:
        raise PhaseSnapError(f"phases are not {N}-th roots of unity (error {snap_err:.3e})", snap_err)
    c = TwoCocycle(u.group, N, snapped.astype(np.int64) % N)
    verify_cocycle(c)
    return c


def _twisted_regular(c: TwoCocycle):
    """Left regular representation R_a e_b = psi(a, b) e_{ab} and the commuting right action."""
    k = c.order
    t = c.group.table
    vals = c.values()
    ar = np.arange(k)
    left = np.zeros((k, k, k), dtype=complex)
    right = np.zeros((k, k, k), dtype=complex)
    for a in range(k):
        left[a, t[a, ar], ar] = vals[a, ar]
        right[a, t[ar, a], ar] = vals[ar, a]
    return left, right


def ueb_from_central_type(c: CentralTypeSubgroup | TwoCocycle, seed: int = 0,
                          tol: Tolerance = DEFAULT_TOL) -> UnitaryErrorBasis:
    """Irreducible psi-representation of L, found inside the twisted regular representation.

    The right action spans the commutant of the left one, a full matrix
    algebra of size d.  A random self-adjoint element of it has eigenvalues of
    multiplicity exactly d; the eigenspace of the lowest one is a minimal
    invariant subspace, and compressing the left action to it gives the basis.
    """
    psi = c.psi if isinstance(c, CentralTypeSubgroup) else c
    if not is_nondegenerate(psi):
        raise NondegeneracyRequired("a unitary error basis needs a non-degenerate cocycle")
    k = psi.order
    d = math.isqrt(k)
    left, right = _twisted_regular(psi)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    h = np.einsum("a,aij->ij", coeffs, right, optimize=True)
    h = h + h.conj().T
    evals, evecs = np.linalg.eigh(h)
    cluster = np.abs(evals - evals[0]) <= tol.eig_gap * max(1.0, abs(evals).max())
    if cluster.sum() != d:
        raise RankMismatch(f"lowest eigenspace has dimension {cluster.sum()}, expected {d}")
    v = evecs[:, cluster]
    mats = np.einsum("ik,aij,jl->akl", v.conj(), left, v, optimize=True)
    mats = mats / (mats[0][0, 0] if d else 1)
    u = UnitaryErrorBasis(psi.group, mats)
    extracted = verify_ueb(u, tol, root_hint=psi.root_order)
    if not extracted.same_values(psi):
        raise RankMismatch("compressed representation does not reproduce the cocycle")
    return u
