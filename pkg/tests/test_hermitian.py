import numpy as np
import pytest
from hypothesis import given, strategies as st

from qig.errors import NotAState, NotHermitian, SingularLog, SingularPower
from qig.hermitian import (GELL_MANN, PAULI, eigendecompose_hermitian, is_pure, matrix_log,
                           matrix_power, random_density, random_unitary, validate_density,
                           weyl_basis)

seeds = st.integers(0, 2 ** 32 - 1)


def test_eigendecompose_descending_and_reconstructs(rng):
    m = random_density(3, rng)
    d = eigendecompose_hermitian(m)
    assert np.all(np.diff(d.eigenvalues) <= 0)
    np.testing.assert_allclose(d.reconstruct(), m, atol=1e-14)


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eigendecompose_hermitian(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_eigendecompose_symmetrizes_tiny_defect():
    m = np.diag([0.7, 0.3]).astype(complex)
    m[0, 1] = 1e-12
    d = eigendecompose_hermitian(m)
    np.testing.assert_allclose(d.eigenvalues, [0.7, 0.3], atol=1e-11)


def test_log_of_spectrum():
    np.testing.assert_allclose(np.diag(matrix_log(np.eye(2) / 2)).real, [-np.log(2)] * 2)
    np.testing.assert_allclose(np.diag(matrix_log(np.diag([0.8, 0.2]))).real,
                               [-0.22314355131420976, -1.6094379124341003])
    np.testing.assert_allclose(matrix_log(np.array([[1.0]])), [[0.0]])


def test_log_singular():
    with pytest.raises(SingularLog):
        matrix_log(np.diag([1.0, 0.0]))


def test_power_conventions():
    rho = np.diag([1.0, 0.0])
    np.testing.assert_allclose(matrix_power(rho, 0.3), rho)
    with pytest.raises(SingularPower):
        matrix_power(rho, -0.5)
    np.testing.assert_allclose(matrix_power(np.diag([0.25, 0.75]), 0.5), np.diag([0.5, np.sqrt(0.75)]))


@given(seeds, st.floats(0.05, 0.95))
def test_power_composition(seed, s):
    rho = random_density(3, np.random.default_rng(seed))
    a = matrix_power(rho, s) @ matrix_power(rho, 1 - s)
    np.testing.assert_allclose(a, rho, atol=1e-12)


@given(seeds, st.floats(0.05, 0.95))
def test_power_unitary_covariance(seed, s):
    r = np.random.default_rng(seed)
    rho, u = random_density(2, r), random_unitary(2, r)
    lhs = matrix_power(u @ rho @ u.conj().T, s)
    np.testing.assert_allclose(lhs, u @ matrix_power(rho, s) @ u.conj().T, atol=1e-12)


@given(seeds)
def test_log_exp_inverse(seed):
    from scipy.linalg import expm
    rho = random_density(3, np.random.default_rng(seed))
    np.testing.assert_allclose(expm(matrix_log(rho)), rho, atol=1e-12)


def test_validate_density_cases():
    s0, s1, s3 = np.eye(2), PAULI[0], PAULI[2]
    out = validate_density(s0 / 2)
    assert not out.flags.writeable
    with pytest.raises(NotAState) as err:
        validate_density(0.5 * (s0 + 1.2 * s3))
    assert err.value.invariant == "positivity"
    pure = validate_density(0.5 * (s0 + 0.6 * s1 + 0.8 * s3))
    assert is_pure(pure)
    with pytest.raises(NotAState) as err:
        validate_density(np.eye(2))
    assert err.value.invariant == "trace"
    with pytest.raises(NotAState) as err:
        validate_density(np.array([[0.5, 0.1], [0.0, 0.5]]))
    assert err.value.invariant == "hermitian"


def test_bases_orthogonal():
    for basis in (PAULI, GELL_MANN):
        gram = np.einsum("aij,bji->ab", basis, basis)
        np.testing.assert_allclose(gram, 2 * np.eye(len(basis)), atol=1e-14)
    assert len(weyl_basis(3)) == 9
