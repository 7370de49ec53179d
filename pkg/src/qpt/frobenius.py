"""Special symmetric dagger Frobenius algebras and quantum graphs as structure tensors.

Index conventions, used by every contraction below:

* ``m3[k, i, j]`` is the coefficient of ``e_k`` in ``m(e_i (x) e_j)``; the
  stored matrix is ``m[k, i * n + j]``.
* the comultiplication is the adjoint, ``m^dagger(e_k) = sum conj(m3[k, i, j]) e_i (x) e_j``.
* the counit is ``u^dagger``.
* ``W = m^dagger u`` (as an n x n array) is the cup and ``F[i, j] = u^dagger m(e_i (x) e_j)``
  the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AxiomViolation,
    CenterMismatch,
    InputError,
    NonInteger,
    NotBooleanAdjacency,
    NotCommutative,
)
from .graphs import ClassicalGraph
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    cmatrix_from_json,
    cmatrix_to_json,
    cvector_from_json,
    cvector_to_json,
    max_abs,
    null_space,
    simultaneously_diagonalize,
)

BOOLEAN_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    m: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        u = np.array(self.u, dtype=complex).reshape(-1)
        n = u.shape[0]
        if m.shape != (n, n * n):
            raise InputError(f"multiplication has shape {m.shape}, expected {(n, n * n)}")
        m.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "u", u)

    @classmethod
    def from_tensor(cls, m3, u):
        m3 = np.asarray(m3)
        return cls(m3.reshape(m3.shape[0], -1), u)

    @property
    def dim(self):
        return self.u.shape[0]

    @cached_property
    def m3(self):
        return self.m.reshape(self.dim, self.dim, self.dim)

    @cached_property
    def cup(self):
        return np.einsum("kij,k->ij", self.m3.conj(), self.u, optimize=True)

    @cached_property
    def cap(self):
        return np.einsum("k,kij->ij", self.u.conj(), self.m3, optimize=True)

    def multiply(self, x, y):
        return np.einsum("kij,i,j->k", self.m3, x, y, optimize=True)

    def transformed(self, unitary):
        """The same algebra written in the orthonormal basis given by the columns of ``unitary``."""
        v = np.asarray(unitary, dtype=complex)
        m3 = np.einsum("pk,pab,ai,bj->kij", v.conj(), self.m3, v, v, optimize=True)
        return FrobeniusAlgebra.from_tensor(m3, v.conj().T @ self.u)

    def to_json(self):
        return {"dim": self.dim, "m": cmatrix_to_json(self.m), "u": cvector_to_json(self.u)}

    @classmethod
    def from_json(cls, obj):
        try:
            a = cls(cmatrix_from_json(obj["m"]), cvector_from_json(obj["u"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Frobenius algebra JSON: {exc}") from exc
        if "dim" in obj and int(obj["dim"]) != a.dim:
            raise InputError("Frobenius algebra JSON: 'dim' disagrees with the tensors")
        return a


@dataclass(frozen=True)
class FrobeniusReport:
    special: bool
    symmetric: bool
    commutative: bool
    residuals: dict


def _axiom_residuals(a: FrobeniusAlgebra):
    m3, u, n = a.m3, a.u, a.dim
    mc = m3.conj()
    eye = np.eye(n)
    res = {}
    # m (m (x) id) = m (id (x) m)
    left = np.einsum("pij,qpk->qijk", m3, m3, optimize=True)
    right = np.einsum("pjk,qip->qijk", m3, m3, optimize=True)
    res["associativity"] = max_abs(left - right)
    res["left unit"] = max_abs(np.einsum("i,kij->kj", u, m3, optimize=True) - eye)
    res["right unit"] = max_abs(np.einsum("j,kij->ki", u, m3, optimize=True) - eye)
    # (id (x) m)(m^dagger (x) id) = m^dagger m = (m (x) id)(id (x) m^dagger), as maps (i, j) -> (a, b)
    middle = np.einsum("kab,kij->abij", mc, m3, optimize=True)
    res["frobenius left"] = max_abs(np.einsum("iap,bpj->abij", mc, m3, optimize=True) - middle)
    res["frobenius right"] = max_abs(np.einsum("aip,jpb->abij", m3, mc, optimize=True) - middle)
    return res


def verify_frobenius(a: FrobeniusAlgebra, tol: Tolerance = DEFAULT_TOL) -> FrobeniusReport:
    """Check the monoid, Frobenius, speciality and symmetry identities by contraction.

    Monoid and Frobenius failures raise; speciality and symmetry are
    reported (the algebras used here are required to have both, callers
    that need them check the flags).
    """
    res = _axiom_residuals(a)
    for name, r in res.items():
        if r > tol.eps:
            raise AxiomViolation(name, r)
    m3 = a.m3
    res["special"] = max_abs(np.einsum("aij,bij->ab", m3, m3.conj(), optimize=True) - np.eye(a.dim))
    res["symmetric"] = max_abs(a.cap - a.cap.T)
    res["commutative"] = max_abs(m3 - m3.transpose(0, 2, 1))
    return FrobeniusReport(
        special=res["special"] <= tol.eps,
        symmetric=res["symmetric"] <= tol.eps,
        commutative=res["commutative"] <= tol.eps,
        residuals=res,
    )


def require_special_symmetric(a: FrobeniusAlgebra, tol: Tolerance = DEFAULT_TOL):
    rep = verify_frobenius(a, tol)
    for name in ("special", "symmetric"):
        if not getattr(rep, name):
            raise AxiomViolation(name, rep.residuals[name])
    return rep


def set_algebra(n: int) -> FrobeniusAlgebra:
    """Copy algebra on C^n: m(e_i (x) e_j) = delta_ij e_i, unit = sum of basis vectors."""
    if n < 1:
        raise InputError("set algebra needs n >= 1")
    m3 = np.zeros((n, n, n))
    m3[np.arange(n), np.arange(n), np.arange(n)] = 1
    return FrobeniusAlgebra.from_tensor(m3, np.ones(n))


def endomorphism_algebra(d: int) -> FrobeniusAlgebra:
    """Matrix algebra on H (x) H*, basis E_ij at index i * d + j, normalised to be special."""
    if d < 1:
        raise InputError("endomorphism algebra needs d >= 1")
    n = d * d
    m3 = np.zeros((n, n, n))
    i, j, l = np.meshgrid(np.arange(d), np.arange(d), np.arange(d), indexing="ij")
    m3[i * d + l, i * d + j, j * d + l] = 1 / np.sqrt(d)
    return FrobeniusAlgebra.from_tensor(m3, np.sqrt(d) * np.eye(d).reshape(-1))


def twisted_group_frobenius(c) -> FrobeniusAlgebra:
    """Twisted group algebra: g * h = psi(g, h) gh / sqrt|L|, unit sqrt|L| conj(psi(e, e)) e."""
    k = c.order
    vals = c.values()
    ar = np.arange(k)
    m3 = np.zeros((k, k, k), dtype=complex)
    m3[c.group.table, ar[:, None], ar[None, :]] = vals / np.sqrt(k)
    u = np.zeros(k, dtype=complex)
    u[0] = np.sqrt(k) * np.conj(vals[0, 0])
    return FrobeniusAlgebra.from_tensor(m3, u)


def center_projector(a: FrobeniusAlgebra):
    """x -> sum m(m(w1 (x) x) (x) w2) over the cup w = m^dagger u."""
    return np.einsum("ab,pax,qpb->qx", a.cup, a.m3, a.m3, optimize=True)


def center_dimension(a: FrobeniusAlgebra, tol: Tolerance = DEFAULT_TOL) -> int:
    """Trace of the centre projector, cross-checked against the commutant null space."""
    tr = np.trace(center_projector(a))
    dim = int(round(tr.real))
    if abs(tr - dim) > BOOLEAN_TOL:
        raise NonInteger(f"trace of the centre projector is {tr}", abs(tr - dim))
    n = a.dim
    comm = (a.m3 - a.m3.transpose(0, 2, 1)).transpose(0, 2, 1).reshape(n * n, n)
    null = null_space(comm, tol.eps * 10).shape[1]
    if null != dim:
        raise CenterMismatch(f"centre projector gives {dim}, commutant null space gives {null}")
    return dim


def is_commutative(a: FrobeniusAlgebra, tol: Tolerance = DEFAULT_TOL):
    return max_abs(a.m3 - a.m3.transpose(0, 2, 1)) <= tol.eps


def copyable_basis(a: FrobeniusAlgebra, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    """Unitary whose columns are the copyable elements of a commutative algebra.

    Copyable elements are the joint eigenvectors of left multiplication; each
    is normalised and its phase fixed by <u, psi> > 0, then the three
    copying identities are verified.
    """
    if not is_commutative(a, tol):
        raise NotCommutative("copyable elements only form a basis of a commutative algebra")
    ops = [a.m3[:, i, :] for i in range(a.dim)]
    basis = simultaneously_diagonalize(ops, tol, seed)
    overlap = a.u.conj() @ basis
    basis = basis * (np.abs(overlap) / np.where(overlap == 0, 1, overlap))[None, :]
    scale = max(1.0, max_abs(a.m))
    res = max(
        max_abs(np.einsum("kij,ia,ja->ka", a.m3, basis, basis, optimize=True) - basis),
        max_abs(np.einsum("kij,ka->ija", a.m3.conj(), basis, optimize=True) - np.einsum("ia,ja->ija", basis, basis, optimize=True)),
        max_abs(a.u.conj() @ basis - 1),
    )
    if res > 100 * tol.eps * scale:
        raise AxiomViolation("copyable basis", res)
    return basis


@dataclass(frozen=True, eq=False)
class QuantumGraph:
    algebra: FrobeniusAlgebra
    adj: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adj, dtype=complex)
        n = self.algebra.dim
        if adj.shape != (n, n):
            raise InputError(f"adjacency has shape {adj.shape}, expected {(n, n)}")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @property
    def dim(self):
        return self.algebra.dim

    def to_json(self):
        out = self.algebra.to_json()
        out["adj"] = cmatrix_to_json(self.adj)
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            adj = cmatrix_from_json(obj["adj"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"quantum graph JSON needs 'adj': {exc}") from exc
        return cls(FrobeniusAlgebra.from_json(obj), adj)


def adjacency_residuals(q: QuantumGraph):
    """Residuals of self-adjointness and the three quantum-adjacency identities."""
    a, g = q.algebra, q.adj
    m3 = a.m3
    sandwich = lambda x, y: np.einsum("qab,ac,bd,rcd->qr", m3, x, y, m3.conj(), optimize=True)  # noqa: E731
    eye = np.eye(q.dim)
    return {
        "self-adjoint": max_abs(g - g.conj().T),
        "schur idempotent": max_abs(sandwich(g, g) - g),
        # cap on the left, cup on the right: x -> (F (x) id)(x (x) (G (x) id) w)
        "real": max_abs((a.cap @ g @ a.cup).T - g),
        "reflexive": max_abs(sandwich(g, eye) - eye),
    }


def verify_quantum_graph(q: QuantumGraph, tol: Tolerance = DEFAULT_TOL):
    res = adjacency_residuals(q)
    for name, r in res.items():
        if r > tol.eps:
            raise AxiomViolation(f"quantum adjacency: {name}", r)
    return res


def quantum_from_classical(g: ClassicalGraph) -> QuantumGraph:
    """Copy algebra on the vertices with the reflexive adjacency A + I."""
    adj = g.adjacency.astype(float) + np.eye(g.n)
    return QuantumGraph(set_algebra(g.n), adj)


def classical_from_quantum(q: QuantumGraph, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    """Read a commutative quantum graph as an ordinary graph.

    Returns ``(graph, basis)``, where ``basis`` holds the copyable elements
    that become the vertices, in vertex order.
    """
    if not is_commutative(q.algebra, tol):
        raise NotCommutative("a quantum graph on a noncommutative algebra is not classical")
    basis = copyable_basis(q.algebra, tol, seed)
    adj = basis.conj().T @ q.adj @ basis
    snapped = np.rint(adj.real)
    err = max_abs(adj - snapped)
    if err > BOOLEAN_TOL or not np.isin(snapped, (0, 1)).all() or not np.all(np.diag(snapped) == 1):
        raise NotBooleanAdjacency(f"adjacency in the copyable basis is not 0/1 (residual {err:.3e})", err)
    snapped = snapped.astype(np.uint8)
    np.fill_diagonal(snapped, 0)
    if not np.array_equal(snapped, snapped.T):
        raise NotBooleanAdjacency("adjacency in the copyable basis is not symmetric", err)
    return ClassicalGraph.from_adjacency(snapped), basis
