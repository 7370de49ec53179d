import numpy as np
import pytest

from qpt.cocycles import TwoCocycle, cohomologous, enumerate_nondegenerate_classes_abelian, is_nondegenerate
from qpt.errors import NondegeneracyRequired, NotTraceOrthogonal
from qpt.numerics import max_abs
from qpt.permgroups import FiniteGroup
from qpt.ueb import (
    UnitaryErrorBasis,
    clock_shift_basis,
    pauli_basis,
    tensor_power,
    tensor_ueb,
    trivial_basis,
    ueb_from_central_type,
    verify_ueb,
)

I = np.eye(2)
X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])
Y = np.array([[0, -1j], [1j, 0]])


def test_pauli_matrices():
    m = pauli_basis().matrices
    assert np.allclose(m[0], I) and np.allclose(m[1], Z) and np.allclose(m[2], X)
    assert np.allclose(m[3], X @ Z) and np.allclose(m[3], -1j * Y)


def test_clock_shift_three():
    u = clock_shift_basis(3)
    assert u.matrices.shape == (9, 3, 3)
    gram = np.einsum("aij,bij->ab", u.matrices.conj(), u.matrices)
    assert max_abs(gram - 3 * np.eye(9)) < 1e-12
    assert is_nondegenerate(u.cocycle)


def test_tensor_products():
    p2 = tensor_ueb(pauli_basis(), pauli_basis())
    assert p2.dim == 4 and p2.order == 16
    assert np.allclose(p2.matrices[8 * 1 + 4 * 0 + 2 * 0 + 1], np.kron(X, Z))
    p3 = tensor_power(pauli_basis(), 3)
    assert p3.dim == 8 and p3.order == 64
    assert is_nondegenerate(p3.cocycle)
    same = tensor_ueb(pauli_basis(), trivial_basis())
    assert np.allclose(same.matrices, pauli_basis().matrices)


def test_verify_extracts_pauli_cocycle():
    c = verify_ueb(pauli_basis())
    assert is_nondegenerate(c)
    # Z X = -X Z: psi(Z, X) / psi(X, Z) = -1
    assert c.rho_table[1, 2] * 2 == c.root_order


def test_non_orthogonal_rejected():
    m = pauli_basis().matrices.copy()
    m[3] = m[2]
    with pytest.raises(NotTraceOrthogonal):
        verify_ueb(UnitaryErrorBasis(pauli_basis().group, m))


@pytest.mark.parametrize("moduli", [[2, 2], [2, 2, 2, 2], [3, 3], [4, 4]])
def test_extraction_reproduces_every_class(moduli):
    for psi in enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian(moduli))[:6]:
        u = ueb_from_central_type(psi, seed=1)
        assert u.dim ** 2 == psi.order
        assert cohomologous(u.cocycle, psi) is not None


def test_extraction_needs_nondegenerate():
    with pytest.raises(NondegeneracyRequired):
        ueb_from_central_type(TwoCocycle.trivial(FiniteGroup.abelian([2, 2])))


def test_json_round_trip():
    u = clock_shift_basis(3)
    back = UnitaryErrorBasis.from_json(u.to_json())
    assert np.allclose(back.matrices, u.matrices)
