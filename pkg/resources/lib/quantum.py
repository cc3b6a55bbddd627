"""States, operators and small dense linear algebra on bipartite Hilbert spaces.

Tensor products use row-major ordering everywhere: component i * d_b + j of
|a>|b> is a_i * b_j.
"""
import numpy as np
from dataclasses import dataclass
from functools import cached_property
from typing import List, Literal, Optional, Sequence, Tuple, Union
from .errors import DimensionMismatch, InvalidDensityOperator, NotHermitian, ZeroVector
from .jacobi import jacobi_eigh

ComplexScalar = complex
Subsystem = Literal['A', 'B']
Seed = Union[int, Sequence[int], np.random.Generator, None]

NORM_TOL = 1e-12
ZERO_NORM = 1e-14
HERMITIAN_TOL = 1e-9
DEGENERACY_TOL = 1e-9
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


def _frozen_array(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class Dims:
    d_a: int
    d_b: int

    def __post_init__(self):
        if self.d_a < 1 or self.d_b < 1:
            raise DimensionMismatch(f'Local dimensions must be positive, got {self.d_a}x{self.d_b}')

    @property
    def total(self) -> int:
        return self.d_a * self.d_b

    @property
    def is_bipartite(self) -> bool:
        return self.d_a >= 2 and self.d_b >= 2

    def require_bipartite(self) -> None:
        if not self.is_bipartite:
            raise DimensionMismatch(f'Bipartite operations need d_a, d_b >= 2, got {self}')

    def __str__(self) -> str:
        return f'{self.d_a}x{self.d_b}'


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen_array(self.amplitudes)
        if amplitudes.ndim != 1 or amplitudes.size == 0:
            raise DimensionMismatch(f'Expected a nonempty vector, got shape {amplitudes.shape}')
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f'State is not normalized (norm {norm!r}), use normalize()')
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class ProductState:
    a: PureState
    b: PureState

    @property
    def dims(self) -> Dims:
        return Dims(self.a.dim, self.b.dim)

    @cached_property
    def vector(self) -> PureState:
        return tensor(self.a, self.b)


AnyState = Union[PureState, ProductState]


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f'Expected a square matrix, got shape {m.shape}')
        asymmetry = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if asymmetry > HERMITIAN_TOL:
            raise NotHermitian(f'Matrix deviates from its adjoint by {asymmetry:.3g}')
        object.__setattr__(self, 'entries', _frozen_array((m + m.conj().T) / 2))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: 'HermitianOperator') -> 'HermitianOperator':
        return HermitianOperator(self.entries + other.entries)

    def scaled(self, factor: float) -> 'HermitianOperator':
        return HermitianOperator(factor * self.entries)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True, eq=False)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: List[PureState]
    max_eigenspace_dim: int

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    def max_eigenspace(self) -> List[PureState]:
        return self.eigenvectors[:self.max_eigenspace_dim]

    def vectors(self) -> np.ndarray:
        """Eigenvectors as the columns of a unitary matrix."""
        return np.column_stack([v.amplitudes for v in self.eigenvectors])


@dataclass(frozen=True, eq=False)
class DensityOperator:
    entries: np.ndarray
    dims: Dims

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (self.dims.total, self.dims.total):
            raise DimensionMismatch(
                f'Density matrix of shape {m.shape} does not match dims {self.dims}')
        if float(np.max(np.abs(m - m.conj().T))) > HERMITIAN_TOL:
            raise InvalidDensityOperator('Density matrix is not Hermitian')
        m = (m + m.conj().T) / 2
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidDensityOperator(f'Density matrix has trace {trace!r}')
        values, _, _ = jacobi_eigh(m)
        if float(np.min(values)) < -POSITIVITY_TOL:
            raise InvalidDensityOperator(
                f'Density matrix has negative eigenvalue {float(np.min(values)):.3g}')
        object.__setattr__(self, 'entries', _frozen_array(m))

    @property
    def dim(self) -> int:
        return self.dims.total


def state_vector(state: AnyState) -> np.ndarray:
    if isinstance(state, ProductState):
        return state.vector.amplitudes
    return state.amplitudes


def normalize(v: Sequence[complex]) -> PureState:
    arr = np.array(v, dtype=complex).ravel()
    norm = float(np.linalg.norm(arr))
    if norm < ZERO_NORM:
        raise ZeroVector(f'Cannot normalize a vector of norm {norm:.3g}')
    return PureState(arr / norm)


def tensor(a: PureState, b: PureState) -> PureState:
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def product_state(a: Sequence[complex], b: Sequence[complex]) -> ProductState:
    return ProductState(normalize(a), normalize(b))


def overlap(phi: AnyState, psi: AnyState) -> ComplexScalar:
    u = state_vector(phi)
    v = state_vector(psi)
    if u.size != v.size:
        raise DimensionMismatch(f'Cannot take the overlap of states of dims {u.size} and {v.size}')
    return complex(np.vdot(u, v))


def fidelity(phi: AnyState, psi: AnyState) -> float:
    return abs(overlap(phi, psi)) ** 2


def projector(psi: AnyState) -> HermitianOperator:
    v = state_vector(psi)
    return HermitianOperator(np.outer(v, v.conj()))


def expectation(op: HermitianOperator, psi: AnyState) -> float:
    v = state_vector(psi)
    if v.size != op.dim:
        raise DimensionMismatch(f'Operator of dim {op.dim} applied to a state of dim {v.size}')
    return float(np.vdot(v, op.entries @ v).real)


def hermitian_eigensystem(h: Union[HermitianOperator, np.ndarray]) -> EigenSystem:
    """Full spectral decomposition with eigenvalues in descending order.

    The global phase of every eigenvector is fixed by making its
    largest-modulus component real and positive.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)

    values, vectors, _ = jacobi_eigh(h.entries)
    order = np.argsort(-values, kind='stable')
    values = values[order]
    vectors = vectors[:, order]

    states = []
    for i in range(vectors.shape[1]):
        v = vectors[:, i]
        k = int(np.argmax(np.abs(v)))
        v = v * (np.conj(v[k]) / abs(v[k]))
        states.append(PureState(v / np.linalg.norm(v)))

    top = values[0]
    max_dim = int(np.sum(values >= top - DEGENERACY_TOL))
    return EigenSystem(_frozen_array(values, dtype=float), states, max_dim)


def partial_transpose(
    rho: Union[DensityOperator, HermitianOperator],
    subsystem: Subsystem = 'B',
    dims: Optional[Dims] = None
) -> HermitianOperator:
    if isinstance(rho, DensityOperator):
        dims = dims or rho.dims
    if dims is None:
        raise DimensionMismatch('dims are required for the partial transpose of an operator')
    if rho.entries.shape != (dims.total, dims.total):
        raise DimensionMismatch(f'Operator of shape {rho.entries.shape} does not match dims {dims}')

    t = rho.entries.reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)
    if subsystem == 'A':
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == 'B':
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f'Unknown subsystem: {subsystem}')
    return HermitianOperator(t.reshape(dims.total, dims.total))


def partial_trace(rho: DensityOperator, keep: Subsystem = 'A') -> np.ndarray:
    d = rho.dims
    t = rho.entries.reshape(d.d_a, d.d_b, d.d_a, d.d_b)
    if keep == 'A':
        return np.einsum('ijkj->ik', t)
    elif keep == 'B':
        return np.einsum('ijil->jl', t)
    raise ValueError(f'Unknown subsystem: {keep}')


def density_from_pure(psi: AnyState, dims: Dims) -> DensityOperator:
    v = state_vector(psi)
    return DensityOperator(np.outer(v, v.conj()), dims)


def density_from_mixture(
    states: Sequence[AnyState],
    weights: Sequence[float],
    dims: Dims
) -> DensityOperator:
    if len(states) != len(weights):
        raise DimensionMismatch(f'{len(states)} states but {len(weights)} weights')
    m = np.zeros((dims.total, dims.total), dtype=complex)
    for state, w in zip(states, weights):
        v = state_vector(state)
        m += w * np.outer(v, v.conj())
    return DensityOperator(m, dims)


def maximally_mixed(dims: Dims) -> DensityOperator:
    return DensityOperator(np.eye(dims.total, dtype=complex) / dims.total, dims)


def random_pure_state(dim: int, seed: Seed = None) -> PureState:
    """Haar-random state from a vector of independent standard complex Gaussians."""
    rng = make_rng(seed)
    return normalize(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_product_state(dims: Dims, seed: Seed = None) -> ProductState:
    rng = make_rng(seed)
    return ProductState(random_pure_state(dims.d_a, rng), random_pure_state(dims.d_b, rng))


def random_unitary(dim: int, seed: Seed = None) -> np.ndarray:
    """Haar-random unitary: QR of a complex Gaussian matrix with the phases of
    diag(R) pushed back into Q."""
    rng = make_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(dims: Dims, seed: Seed = None) -> Tuple[np.ndarray, np.ndarray]:
    rng = make_rng(seed)
    return random_unitary(dims.d_a, rng), random_unitary(dims.d_b, rng)


def apply_unitary(psi: AnyState, u: np.ndarray) -> PureState:
    return normalize(u @ state_vector(psi))


def apply_local_unitary(state: ProductState, u_a: np.ndarray, u_b: np.ndarray) -> ProductState:
    return ProductState(normalize(u_a @ state.a.amplitudes), normalize(u_b @ state.b.amplitudes))
