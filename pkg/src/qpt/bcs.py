"""Linear binary constraint systems, their graphs, and operator solutions.

Variables take values +1 / -1.  A constraint (S, b) asks that the product of
the variables in S equals b.  Local solutions of a constraint are listed in
lexicographic order of the +-1 tuple over the sorted variables (-1 before +1);
graph vertices are (constraint index, local-solution rank) in that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import (
    InputError,
    InvalidQuantumSolution,
    NotAutomorphisms,
    NotIrreducible,
    NotSignCovariant,
    TooLarge,
    UnsatisfiableConstraint,
)
from .graphs import ClassicalGraph, complete_bipartite_graph, complete_graph
from .numerics import DEFAULT_TOL, Tolerance, max_abs, null_space
from .qiso import PPM, verify_ppm
from .ueb import UnitaryErrorBasis

MAX_FREE_VARIABLES = 24


@dataclass(frozen=True)
class Constraint:
    vars: tuple
    rhs: int

    def __post_init__(self):
        vs = tuple(sorted(int(v) for v in self.vars))
        if not vs:
            raise InputError("constraints must involve at least one variable")
        if len(set(vs)) != len(vs):
            raise InputError(f"constraint repeats a variable: {vs}")
        if self.rhs not in (1, -1):
            raise InputError(f"right-hand side must be +1 or -1, got {self.rhs}")
        object.__setattr__(self, "vars", vs)

    def local_solutions(self):
        return [s for s in itertools.product((-1, 1), repeat=len(self.vars)) if np.prod(s) == self.rhs]


@dataclass(frozen=True)
class BinaryConstraintSystem:
    num_vars: int
    constraints: tuple

    def __post_init__(self):
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        for c in cons:
            if c.vars[-1] >= self.num_vars or c.vars[0] < 0:
                raise InputError(f"constraint {c.vars} uses a variable outside 0..{self.num_vars - 1}")
        object.__setattr__(self, "constraints", cons)

    @property
    def is_homogeneous(self):
        return all(c.rhs == 1 for c in self.constraints)

    def to_json(self):
        return {
            "num_vars": self.num_vars,
            "constraints": [{"vars": list(c.vars), "rhs": c.rhs} for c in self.constraints],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj["num_vars"]),
                       tuple(Constraint(tuple(c["vars"]), int(c["rhs"])) for c in obj["constraints"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed constraint system JSON: {exc}") from exc


def homogenise(f: BinaryConstraintSystem) -> BinaryConstraintSystem:
    return BinaryConstraintSystem(f.num_vars, tuple(Constraint(c.vars, 1) for c in f.constraints))


@dataclass(frozen=True, eq=False)
class BCSGraph:
    """The graph of a system together with the (constraint, assignment) label of each vertex."""

    system: BinaryConstraintSystem
    graph: ClassicalGraph
    labels: tuple

    @cached_property
    def index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def labels_json(self):
        return [
            {"vertex": i, "constraint": l, "assignment": "".join("+" if x > 0 else "-" for x in s)}
            for i, (l, s) in enumerate(self.labels)
        ]


def bcs_graph(f: BinaryConstraintSystem) -> BCSGraph:
    """Vertices (C_l, local solution); edges join assignments that disagree on a shared variable."""
    labels = []
    for l, c in enumerate(f.constraints):
        sols = c.local_solutions()
        if not sols:  # pragma: no cover - every nonempty parity constraint is satisfiable
            raise UnsatisfiableConstraint(f"constraint {l} has no local solution")
        labels += [(l, s) for s in sols]
    # full assignment table with 0 for variables outside the constraint
    table = np.zeros((len(labels), f.num_vars), dtype=np.int8)
    for i, (l, s) in enumerate(labels):
        table[i, list(f.constraints[l].vars)] = s
    conflict = (table[:, None, :] * table[None, :, :] == -1).any(axis=2)
    adj = conflict.astype(np.uint8)
    np.fill_diagonal(adj, 0)
    return BCSGraph(f, ClassicalGraph.from_adjacency(adj), tuple(labels))


def _parity_system(f: BinaryConstraintSystem):
    a = np.zeros((len(f.constraints), f.num_vars), dtype=np.uint8)
    rhs = np.zeros(len(f.constraints), dtype=np.uint8)
    for l, c in enumerate(f.constraints):
        a[l, list(c.vars)] = 1
        rhs[l] = 0 if c.rhs == 1 else 1
    return a, rhs


def classical_solutions(f: BinaryConstraintSystem, max_free=MAX_FREE_VARIABLES):
    """All +-1 solutions, via x = (-1)^y and Gaussian elimination over F2."""
    a, rhs = _parity_system(f)
    aug, pivots = _kernels.gf2_rref(np.hstack([a, rhs[:, None]]))
    m = f.num_vars
    if len(pivots) and pivots[-1] == m:
        return []
    free = [j for j in range(m) if j not in set(pivots.tolist())]
    if len(free) > max_free:
        raise TooLarge(f"{len(free)} free variables exceed the limit {max_free}")
    r = len(pivots)
    sols = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        y = np.zeros(m, dtype=np.uint8)
        y[free] = bits
        for i in range(r):
            row = aug[i]
            y[pivots[i]] = (row[m] + (row[:m] @ y) - y[pivots[i]]) % 2
        sols.append(tuple(int(v) for v in 1 - 2 * y.astype(int)))
    return sols


def assignment_automorphism(bg: BCSGraph, signs):
    """Vertex permutation (C_l, g) -> (C_l, signs|S_l * g) of a homogeneous system's graph."""
    signs = np.asarray(signs)
    perm = np.empty(len(bg.labels), dtype=np.int64)
    for i, (l, s) in enumerate(bg.labels):
        vs = bg.system.constraints[l].vars
        image = tuple(int(x) for x in np.asarray(s) * signs[list(vs)])
        if (l, image) not in bg.index:
            raise NotAutomorphisms(f"sign vector does not preserve the local solutions of constraint {l}")
        perm[i] = bg.index[(l, image)]
    return perm


# ---------------------------------------------------------------------------
# operator solutions


@dataclass(frozen=True, eq=False)
class QuantumSolution:
    operators: np.ndarray

    def __post_init__(self):
        ops = np.array(self.operators, dtype=complex)
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise InputError(f"operators must be a stack of square matrices, got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self):
        return self.operators.shape[1]


def verify_quantum_solution(f: BinaryConstraintSystem, q: QuantumSolution, tol: Tolerance = DEFAULT_TOL):
    ops = q.operators
    if ops.shape[0] != f.num_vars:
        raise InvalidQuantumSolution(f"{ops.shape[0]} operators for {f.num_vars} variables")
    eye = np.eye(q.dim)
    res = {
        "self-adjoint": max_abs(ops - np.conj(np.swapaxes(ops, 1, 2))),
        "involution": max_abs(ops @ ops - eye),
        "commuting": 0.0,
        "constraint product": 0.0,
    }
    for c in f.constraints:
        local = ops[list(c.vars)]
        comm = np.einsum("aij,bjk->abik", local, local, optimize=True)
        res["commuting"] = max(res["commuting"], max_abs(comm - comm.transpose(1, 0, 2, 3)))
        prod = eye
        for x in local:
            prod = prod @ x
        res["constraint product"] = max(res["constraint product"], max_abs(prod - c.rhs * eye))
    for name, r in res.items():
        if r > tol.eps:
            raise InvalidQuantumSolution(f"quantum solution: {name} fails (residual {r:.3e})", r)
    return res


def quantum_solution_ppm(f_inhom: BinaryConstraintSystem, q: QuantumSolution,
                         tol: Tolerance = DEFAULT_TOL):
    """PPM from the graph of ``f_inhom`` to the graph of its homogenisation.

    P[(C_k, f), (C_l, g)] = delta_kl * prod_{i in S_l} (I + f_i g_i X_i) / 2, the joint
    eigenprojector of the constraint's operators for the eigenvalues f_i g_i.
    Returns ``(ppm, source BCSGraph, target BCSGraph)``.
    """
    verify_quantum_solution(f_inhom, q, tol)
    src = bcs_graph(f_inhom)
    tgt = bcs_graph(homogenise(f_inhom))
    n, d = src.graph.n, q.dim
    eye = np.eye(d)
    blocks = np.zeros((n, n, d, d), dtype=complex)
    for i, (k, fs) in enumerate(src.labels):
        vs = f_inhom.constraints[k].vars
        for j, (l, gs) in enumerate(tgt.labels):
            if l != k:
                continue
            proj = eye
            for v, a, b in zip(vs, fs, gs):
                proj = proj @ (eye + a * b * q.operators[v]) / 2
            blocks[i, j] = proj
    ppm = PPM(blocks)
    verify_ppm(ppm, src.graph, tgt.graph, tol)
    return ppm, src, tgt


def sign_patterns(q: QuantumSolution, u: UnitaryErrorBasis, tol: Tolerance = DEFAULT_TOL):
    """p[a, i] with U_a^dagger X_i U_a = p[a, i] X_i."""
    ops, mats = q.operators, u.matrices
    if mats.shape[1] != q.dim:
        raise InputError("basis and solution act on different dimensions")
    conj = np.einsum("aji,xjk,akl->axil", mats.conj(), ops, mats, optimize=True)
    overlap = np.einsum("xij,axij->ax", ops.conj(), conj, optimize=True) / q.dim
    signs = np.rint(overlap.real).astype(np.int64)
    res = max_abs(conj - signs[:, :, None, None] * ops[None])
    if res > tol.eps or not np.isin(signs, (1, -1)).all():
        raise NotSignCovariant(f"conjugation does not act by signs (residual {res:.3e})", res)
    return signs


def check_irreducible(q: QuantumSolution, tol: Tolerance = DEFAULT_TOL):
    """Only scalars commute with every operator (commutant null space of dimension 1)."""
    d = q.dim
    eye = np.eye(d)
    rows = [np.kron(x, eye) - np.kron(eye, x.T) for x in q.operators]
    dim = null_space(np.vstack(rows), tol.eps * 10).shape[1]
    if dim != 1:
        raise NotIrreducible(f"commutant of the solution has dimension {dim}")
    return True


def solution_signs_to_automorphisms(f: BinaryConstraintSystem, q: QuantumSolution,
                                    u: UnitaryErrorBasis, tol: Tolerance = DEFAULT_TOL):
    """Embedding a -> p^a of the basis group into Aut(graph of homogenise(f)).

    Returns an array of vertex permutations, row a realising element a.
    """
    check_irreducible(q, tol)
    signs = sign_patterns(q, u, tol)
    bg = bcs_graph(homogenise(f))
    perms = np.array([assignment_automorphism(bg, s) for s in signs])
    for a, p in enumerate(perms):
        if not bg.graph.is_automorphism(p):  # pragma: no cover - sign flips always preserve conflicts
            raise NotAutomorphisms(f"element {a} does not act by a graph automorphism")
    if len({p.tobytes() for p in perms}) != len(perms):
        raise NotSignCovariant("the sign map is not injective")
    return perms


# ---------------------------------------------------------------------------
# systems from graphs


def graph_system(z: ClassicalGraph, flipped=()):
    """Edge variables, one parity constraint per vertex; ``flipped`` vertices get rhs -1."""
    inc = [[] for _ in range(z.n)]
    for e, (a, b) in enumerate(z.edges):
        inc[a].append(e)
        inc[b].append(e)
    if any(not vs for vs in inc):
        raise InputError("every vertex needs at least one incident edge")
    flipped = set(flipped)
    return BinaryConstraintSystem(
        len(z.edges), tuple(Constraint(tuple(vs), -1 if v in flipped else 1) for v, vs in enumerate(inc))
    )


@dataclass(frozen=True, eq=False)
class ParityPair:
    homogeneous: BinaryConstraintSystem
    inhomogeneous: BinaryConstraintSystem
    hom_graph: BCSGraph
    inhom_graph: BCSGraph


def parity_pair(z: ClassicalGraph, l_star: int) -> ParityPair:
    """Edge-variable parity systems on a connected graph: all +1, and with ``l_star`` flipped."""
    if not 0 <= l_star < z.n:
        raise InputError(f"vertex {l_star} is outside the graph")
    if not _connected(z):
        raise InputError("the constraint graph must be connected")
    hom = graph_system(z)
    inhom = graph_system(z, (l_star,))
    return ParityPair(hom, inhom, bcs_graph(hom), bcs_graph(inhom))


def _connected(z: ClassicalGraph):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in z.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == z.n


_I = np.eye(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]])
_Z = np.diag([1.0, -1.0]).astype(complex)
_PAULI = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}


def pauli_string(word):
    out = np.ones((1, 1), dtype=complex)
    for ch in word:
        out = np.kron(out, _PAULI[ch])
    return out


# magic square: variable r * 3 + c; constraints rows 0-2 then columns 0-2.
# As a graph system this is K_{3,3} with rows 0-2, columns 3-5 and edge (r, 3 + c).
MAGIC_SQUARE_TABLE = (("IZ", "ZZ", "ZI"), ("XZ", "YY", "ZX"), ("XI", "XX", "IX"))
MAGIC_SQUARE_FLIP = 4

# pentagram on K_5: vertex i is a line, edge {i, j} the point where lines i and j meet.
# Line 0 = {XXX, XYY, YXY, YYX} multiplies to -I; the other lines to +I.
PENTAGRAM_POINTS = {
    (0, 1): "XXX", (0, 2): "XYY", (0, 3): "YXY", (0, 4): "YYX",
    (1, 2): "XII", (1, 3): "IXI", (1, 4): "IIX",
    (2, 3): "IIY", (2, 4): "IYI", (3, 4): "YII",
}
PENTAGRAM_FLIP = 0


def magic_square_system(flip=True):
    z = complete_bipartite_graph(3, 3)
    return graph_system(z, (MAGIC_SQUARE_FLIP,) if flip else ())


def magic_square_solution():
    return QuantumSolution([pauli_string(w) for row in MAGIC_SQUARE_TABLE for w in row])


def pentagram_solution():
    z = complete_graph(5)
    return QuantumSolution([pauli_string(PENTAGRAM_POINTS[e]) for e in z.edges])


def _transport(z: ClassicalGraph, base_flip: int, l_star: int, ops):
    """Move a solution flipped at ``base_flip`` to one flipped at ``l_star`` along an automorphism."""
    if l_star == base_flip:
        return ops
    from .graphs import automorphism_group

    for tau in automorphism_group(z).elements:
        if tau[l_star] == base_flip:
            edge_index = {e: i for i, e in enumerate(z.edges)}
            moved = [ops[edge_index[tuple(sorted((int(tau[a]), int(tau[b]))))]] for a, b in z.edges]
            return np.array(moved)
    raise InputError(f"no automorphism moves vertex {l_star} to {base_flip}")  # pragma: no cover


def builtin_quantum_solution(z: ClassicalGraph, l_star: int) -> QuantumSolution:
    """Pauli solution of graph_system(z, {l_star}) for z = K_{3,3} or K_5 as labelled here."""
    if z.n == 6 and z.edges == complete_bipartite_graph(3, 3).edges:
        ops = _transport(z, MAGIC_SQUARE_FLIP, l_star, magic_square_solution().operators)
    elif z.n == 5 and z.edges == complete_graph(5).edges:
        ops = _transport(z, PENTAGRAM_FLIP, l_star, pentagram_solution().operators)
    else:
        raise InputError("built-in operator solutions exist for K_{3,3} and K_5 only")
    q = QuantumSolution(ops)
    verify_quantum_solution(graph_system(z, (l_star,)), q)
    return q
