"""Brute-force maximization of <a,b|M|a,b> over two-qubit product states.

Qubit states are scanned on a uniform Bloch grid
|a(theta, phi)> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0, pi],
phi in [0, 2 pi). By default only the A side is scanned and the B side is
maximized in closed form; exhaustive=True grids both sides. The scan does not
iterate, so it serves as the check on the seesaw optimizer, although both
use jacobi.top_eigenpair to recover the B factor of a maximizer.
"""
import numpy as np
from dataclasses import dataclass
from typing import List, Union
from .. import GRID_RESOLUTION
from . import logger
from .errors import UnsupportedDims
from .jacobi import top_eigenpair
from .quantum import Dims, HermitianOperator, ProductState, normalize

CHUNK = 256
START_RESOLUTION = 36
START_COUNT = 4


@dataclass(frozen=True, eq=False)
class GridResult:
    value: float
    maximizer: ProductState
    resolution: int
    exhaustive: bool


def bloch_grid(resolution: int) -> np.ndarray:
    """All grid states as the rows of a (resolution^2, 2) array, theta major."""
    thetas = np.linspace(0.0, np.pi, resolution)
    phis = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
    t, p = np.meshgrid(thetas, phis, indexing='ij')
    return np.stack(
        [np.cos(t / 2).ravel() + 0j, np.exp(1j * p.ravel()) * np.sin(t / 2).ravel()],
        axis=1,
    )


def grid_separable_max(
    m: Union[HermitianOperator, np.ndarray],
    dims: Dims,
    resolution: int = GRID_RESOLUTION,
    exhaustive: bool = False
) -> GridResult:
    """Grid estimate of the largest product-state expectation of m.

    By default only the A side is gridded and the B side is maximized
    exactly, using the closed-form top eigenvalue of the 2 x 2 operator left
    after fixing |a>. With exhaustive=True both sides are gridded. Ties go to
    the first grid index in row-major (a, b) order.
    """
    m4 = _qubit_pair_operator(m, dims)
    grid = bloch_grid(resolution)

    best_value = -np.inf
    best_a = best_b = None
    for start in range(0, grid.shape[0], CHUNK):
        a = grid[start:start + CHUNK]
        reduced = np.einsum('ni,ijkl,nk->njl', a.conj(), m4, a)
        if exhaustive:
            values = np.einsum('mj,njl,ml->nm', grid.conj(), reduced, grid).real
            n, mb = np.unravel_index(int(np.argmax(values)), values.shape)
            value = float(values[n, mb])
            if value > best_value:
                best_value, best_a, best_b = value, a[n], grid[mb]
        else:
            values = _top_eigenvalues_2x2(reduced)
            n = int(np.argmax(values))
            if values[n] > best_value:
                best_value = float(values[n])
                best_a = a[n]
                _, best_b = top_eigenpair(reduced[n])

    logger.debug(
        f'Grid oracle at resolution {resolution}'
        f'{" (exhaustive)" if exhaustive else ""}: max {best_value:.9g}'
    )
    return GridResult(
        value=best_value,
        maximizer=ProductState(normalize(best_a), normalize(best_b)),
        resolution=resolution,
        exhaustive=exhaustive,
    )


def _top_eigenvalues_2x2(r: np.ndarray) -> np.ndarray:
    mean = (r[:, 0, 0].real + r[:, 1, 1].real) / 2
    half_gap = (r[:, 0, 0].real - r[:, 1, 1].real) / 2
    return mean + np.sqrt(half_gap ** 2 + np.abs(r[:, 0, 1]) ** 2)


def grid_starts(
    m: Union[HermitianOperator, np.ndarray],
    dims: Dims,
    resolution: int = START_RESOLUTION,
    count: int = START_COUNT
) -> List[ProductState]:
    """Product states at the best local maxima of a coarse scan.

    Seeding the seesaw from every high local maximum puts one run in each
    basin of the objective, so a run can only end below the grid value when
    the grid itself misses a basin.
    """
    m4 = _qubit_pair_operator(m, dims)
    grid = bloch_grid(resolution)
    reduced = np.einsum('ni,ijkl,nk->njl', grid.conj(), m4, grid)
    values = _top_eigenvalues_2x2(reduced).reshape(resolution, resolution)

    padded = np.pad(values, ((1, 1), (0, 0)), constant_values=-np.inf)
    peak = np.ones(values.shape, dtype=bool)
    for dt in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dt or dp:
                neighbour = np.roll(padded, dp, axis=1)[1 + dt:1 + dt + resolution]
                peak &= values >= neighbour
    # every phi is the same state at the poles
    peak[0, 1:] = False
    peak[-1, 1:] = False

    flat = values.ravel()
    candidates = np.flatnonzero(peak.ravel())
    candidates = candidates[np.argsort(-flat[candidates], kind='stable')][:count]
    states = []
    for i in candidates:
        _, b = top_eigenpair(reduced[i])
        states.append(ProductState(normalize(grid[i]), normalize(b)))
    return states


def _qubit_pair_operator(m: Union[HermitianOperator, np.ndarray], dims: Dims) -> np.ndarray:
    if dims.d_a != 2 or dims.d_b != 2:
        raise UnsupportedDims(f'The grid oracle needs two qubits, got {dims}')
    entries = m.entries if isinstance(m, HermitianOperator) else np.asarray(m, dtype=complex)
    return entries.reshape(2, 2, 2, 2)
