import numpy as np
import pytest

from qpt.cocycles import TwoCocycle, enumerate_nondegenerate_classes_abelian
from qpt.errors import AxiomViolation, NotCommutative
from qpt.frobenius import (
    FrobeniusAlgebra,
    QuantumGraph,
    center_dimension,
    classical_from_quantum,
    copyable_basis,
    endomorphism_algebra,
    quantum_from_classical,
    set_algebra,
    twisted_group_frobenius,
    verify_frobenius,
    verify_quantum_graph,
)
from qpt.graphs import ClassicalGraph, are_isomorphic, complete_graph, cycle_graph, petersen_graph
from qpt.numerics import max_abs
from qpt.permgroups import FiniteGroup
from qpt.ueb import pauli_basis


def test_set_algebra_examples():
    r = verify_frobenius(set_algebra(3))
    assert r.special and r.symmetric and r.commutative
    one = set_algebra(1)
    assert one.dim == 1 and np.allclose(one.m, 1) and np.allclose(one.u, 1)
    two = set_algebra(2)
    assert np.allclose(two.m3[0], [[1, 0], [0, 0]]) and np.allclose(two.m3[1], [[0, 0], [0, 1]])
    assert np.allclose(two.u, [1, 1])
    assert center_dimension(set_algebra(5)) == 5


def test_endomorphism_algebra_examples():
    r = verify_frobenius(endomorphism_algebra(2))
    assert r.special and r.symmetric and not r.commutative
    assert endomorphism_algebra(1).dim == 1
    assert endomorphism_algebra(2).dim == 4 and center_dimension(endomorphism_algebra(2)) == 1
    r4 = verify_frobenius(endomorphism_algebra(4))
    assert r4.special and r4.symmetric


def test_twisted_group_algebras():
    assert center_dimension(twisted_group_frobenius(TwoCocycle.trivial(FiniteGroup.cyclic(2)))) == 2
    assert center_dimension(twisted_group_frobenius(pauli_basis().cocycle)) == 1
    for psi in enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([3, 3])):
        r = verify_frobenius(twisted_group_frobenius(psi))
        assert r.special and r.symmetric and not r.commutative


def test_perturbed_multiplication_rejected():
    a = set_algebra(3)
    m = a.m.copy()
    m[0, 0] += 1e-3
    with pytest.raises(AxiomViolation):
        verify_frobenius(FrobeniusAlgebra(m, a.u))


def test_copyable_basis_examples():
    b = copyable_basis(set_algebra(4))
    assert np.allclose(np.abs(b) @ np.ones(4), 1) and np.allclose(np.sort(np.abs(b).ravel())[-4:], 1)
    rng = np.random.default_rng(2)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    moved = set_algebra(4).transformed(q)
    verify_frobenius(moved)
    b2 = copyable_basis(moved)
    # in the new coordinates the copyable elements are the columns of q^dagger, in some order
    overlap = b2.conj().T @ q.conj().T
    assert np.allclose(np.sort(np.abs(overlap).ravel())[-4:], 1)
    assert np.allclose(np.abs(overlap).sum(axis=0), 1)
    with pytest.raises(NotCommutative):
        copyable_basis(endomorphism_algebra(2))


def test_quantum_from_classical_examples():
    assert np.allclose(quantum_from_classical(ClassicalGraph(3, ())).adj, np.eye(3))
    c5 = quantum_from_classical(cycle_graph(5)).adj
    assert np.allclose(c5[0], [1, 1, 0, 0, 1])
    assert np.allclose(quantum_from_classical(complete_graph(3)).adj, np.ones((3, 3)))
    for g in (cycle_graph(5), petersen_graph()):
        verify_quantum_graph(quantum_from_classical(g))


def test_classical_round_trip_under_unitary_change():
    g = petersen_graph()
    q = quantum_from_classical(g)
    back, _ = classical_from_quantum(q)
    assert back == g
    rng = np.random.default_rng(5)
    u, _ = np.linalg.qr(rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10)))
    moved = QuantumGraph(q.algebra.transformed(u), u.conj().T @ q.adj @ u)
    verify_quantum_graph(moved)
    out, _ = classical_from_quantum(moved)
    assert are_isomorphic(out, g) is not None


def test_noncommutative_graph_is_not_classical():
    a = endomorphism_algebra(2)
    with pytest.raises(NotCommutative):
        classical_from_quantum(QuantumGraph(a, np.eye(4)))


def test_json_round_trip():
    q = quantum_from_classical(cycle_graph(5))
    back = QuantumGraph.from_json(q.to_json())
    assert max_abs(back.adj - q.adj) == 0 and max_abs(back.algebra.m - q.algebra.m) == 0
