import numpy as np
import pytest

from qpt.errors import InputError, NotCommuting, NotIdempotent, SpectralGapViolation
from qpt.numerics import (
    Tolerance,
    cmatrix_from_json,
    cmatrix_to_json,
    kron,
    max_abs,
    null_space,
    simultaneously_diagonalize,
    split_dagger_idempotent,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)


@pytest.mark.parametrize("bad", [dict(eps=0), dict(eps=1), dict(eig_gap=0.5), dict(eig_gap=0)])
def test_tolerance_bounds(bad):
    with pytest.raises(InputError):
        Tolerance(**bad)


def test_split_identity_and_zero():
    iso, r = split_dagger_idempotent(np.eye(5))
    assert r == 5
    assert max_abs(iso @ iso.conj().T - np.eye(5)) < 1e-12
    _, r = split_dagger_idempotent(np.zeros((4, 4)))
    assert r == 0


def test_split_random_projector():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8)))
    p = q[:, :3] @ q[:, :3].conj().T
    iso, r = split_dagger_idempotent(p)
    assert r == 3
    assert max_abs(iso @ iso.conj().T - p) < 1e-12
    assert max_abs(iso.conj().T @ iso - np.eye(3)) < 1e-12


def test_split_rejects_non_idempotent_and_gap():
    with pytest.raises(NotIdempotent):
        split_dagger_idempotent(np.diag([1.0, 0.5]))
    # idempotent within a loose eps but with an eigenvalue off the gap
    with pytest.raises(SpectralGapViolation):
        split_dagger_idempotent(np.diag([1.0, 1e-4]), Tolerance(eps=1e-3, eig_gap=1e-6))


def test_simultaneous_diagonalisation_paulis():
    basis = simultaneously_diagonalize([kron(SZ, I2), kron(I2, SZ)])
    # computational basis up to permutation and phase
    assert max_abs(np.abs(basis) ** 2 @ np.ones(4) - 1) < 1e-12
    assert np.allclose(np.sort(np.abs(basis).ravel()), np.r_[np.zeros(12), np.ones(4)])


def test_simultaneous_diagonalisation_sigma_x():
    basis = simultaneously_diagonalize([SX])
    d = basis.conj().T @ SX @ basis
    assert max_abs(d - np.diag([1, -1])) < 1e-12


def test_simultaneous_diagonalisation_rejects_noncommuting():
    with pytest.raises(NotCommuting):
        simultaneously_diagonalize([SX, SZ])


def test_null_space_and_json_round_trip():
    a = np.array([[1, 1, 0], [0, 0, 0]], dtype=complex)
    ns = null_space(a)
    assert ns.shape == (3, 2)
    assert max_abs(a @ ns) < 1e-12
    m = np.array([[1 + 2j, 0], [3, -1j]])
    assert np.array_equal(cmatrix_from_json(cmatrix_to_json(m)), m)
