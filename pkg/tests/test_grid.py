import numpy as np
import pytest
from resources.lib import GRID_RESOLUTION
from resources.lib.errors import UnsupportedDims
from resources.lib.fixtures import example1_pair
from resources.lib.grid import bloch_grid
from resources.lib.oracle import grid_separable_max
from resources.lib.quantum import Dims
from resources.lib.seesaw import product_objective, seesaw_maximize

EXAMPLE1_ALPHA = 0.75 + np.sqrt(2) / 2


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2


def test_grid_matches_example1_alpha():
    refs = example1_pair()

    result = grid_separable_max(refs.operator([1, 1]), refs.dims)

    assert abs(result.value - EXAMPLE1_ALPHA) < 5e-3
    assert result.value <= EXAMPLE1_ALPHA + 1e-9
    assert result.resolution == GRID_RESOLUTION
    assert not result.exhaustive


def test_maximizer_attains_value():
    m = example1_pair().operator([1, -0.5])

    result = grid_separable_max(m, Dims(2, 2), resolution=60)

    p = result.maximizer
    value = product_objective(m.reshape(2, 2, 2, 2), p.a.amplitudes, p.b.amplitudes)
    assert value == pytest.approx(result.value, abs=1e-9)


def test_exhaustive_grid_is_bounded_by_exact_b_side():
    m = random_hermitian(4, 12)

    gridded = grid_separable_max(m, Dims(2, 2), resolution=24, exhaustive=True)
    exact_b = grid_separable_max(m, Dims(2, 2), resolution=24)

    assert gridded.exhaustive
    assert gridded.value <= exact_b.value + 1e-12


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_grid_agrees_with_seesaw(seed):
    m = random_hermitian(4, seed)

    grid = grid_separable_max(m, Dims(2, 2))
    seesaw = seesaw_maximize(m, Dims(2, 2), restarts=20, seed=seed)

    assert abs(grid.value - seesaw.value) < 5e-3


def test_bloch_grid_states_are_normalized():
    grid = bloch_grid(10)

    assert grid.shape == (100, 2)
    assert np.allclose(np.linalg.norm(grid, axis=1), 1.0)
    assert np.allclose(grid[0], [1.0, 0.0])


def test_rejects_qutrits():
    with pytest.raises(UnsupportedDims):
        grid_separable_max(np.eye(6), Dims(2, 3))
