import numpy as np
import pytest
from resources.lib.errors import DimensionMismatch
from resources.lib.jacobi import jacobi_eigh, top_eigenpair


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2


@pytest.mark.parametrize('n', [1, 2, 4, 9, 16])
def test_eigenvalues_match_numpy(n):
    a = random_hermitian(n, n)

    values, _, _ = jacobi_eigh(a)

    assert np.allclose(np.sort(values), np.linalg.eigvalsh(a), atol=1e-10)


def test_eigenvectors_diagonalize():
    a = random_hermitian(6, 3)

    values, v, sweeps = jacobi_eigh(a)

    assert np.allclose(v.conj().T @ v, np.eye(6), atol=1e-12)
    assert np.allclose(a @ v, v * values, atol=1e-10)
    assert 0 < sweeps < 64


def test_complex_two_by_two():
    values, _, _ = jacobi_eigh(np.array([[1, 1j], [-1j, 1]]))

    assert np.allclose(np.sort(values), [0.0, 2.0])


def test_diagonal_matrix_needs_no_sweeps():
    values, _, sweeps = jacobi_eigh(np.diag([1.0, 2.0]))

    assert sweeps == 0
    assert values.tolist() == [1.0, 2.0]


def test_top_eigenpair():
    value, v = top_eigenpair(np.diag([0.5, 3.0, -1.0]).astype(complex))

    assert value == pytest.approx(3.0)
    assert abs(v[1]) == pytest.approx(1.0)


def test_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        jacobi_eigh(np.zeros((2, 3)))
