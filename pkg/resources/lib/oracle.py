"""Independent checks used to validate the analytic results: partial
transposition, brute-force separable maxima and the local-unitary
invariance harness."""
import numpy as np
from dataclasses import dataclass, field
from typing import List, Literal, Optional
from .. import CES_RESTARTS, CES_TOL, DEFAULT_SEED
from . import logger
from .effectiveness import ReferenceSet
from .geometry import hausdorff_distance
from .grid import GridResult, grid_separable_max
from .jointrange import sampled_region
from .quantum import (
    DensityOperator, Dims, POSITIVITY_TOL, ProductState, Seed, make_rng, apply_local_unitary,
    apply_unitary, density_from_mixture, hermitian_eigensystem, partial_transpose,
    random_local_unitary, random_product_state, random_unitary,
)
from .subspace import CesCertificate, Subspace, is_ces, max_ces_dimension

SUPPORT_EIGENVALUE_TOL = 1e-10
LU_TOL = 5e-3
LU_DIRECTIONS = 72
PPT_SEPARABLE_DIMS = ((2, 2), (2, 3), (3, 2))

UnitaryKind = Literal['local', 'global', 'identity']

__all__ = [
    'GridResult', 'InvarianceReport', 'OracleVerdict', 'PptReport', 'entanglement_oracle',
    'grid_separable_max', 'lu_invariance_harness', 'ppt_check', 'random_separable_state',
]


@dataclass(frozen=True)
class PptReport:
    min_eigenvalue: float
    is_npt: bool
    dims: Dims
    subsystem: str = 'B'


@dataclass(frozen=True, eq=False)
class OracleVerdict:
    verdict: Literal['Entangled', 'Separable', 'Unknown']
    reason: Optional[str]
    ppt: PptReport
    certificate: Optional[CesCertificate] = None

    def describe(self) -> str:
        return f'{self.verdict}({self.reason})' if self.reason else self.verdict


@dataclass(frozen=True)
class InvarianceReport:
    trials: int
    max_hausdorff: float
    passed: bool
    tolerance: float
    unitary: UnitaryKind
    seed: int
    distances: List[float] = field(default_factory=list)


def ppt_check(rho: DensityOperator, tol: float = POSITIVITY_TOL) -> PptReport:
    """A negative eigenvalue of the partial transpose proves entanglement."""
    eig = hermitian_eigensystem(partial_transpose(rho, 'B'))
    return PptReport(
        min_eigenvalue=eig.lambda_min,
        is_npt=eig.lambda_min < -tol,
        dims=rho.dims,
    )


def entanglement_oracle(
    rho: DensityOperator,
    tol: float = CES_TOL,
    restarts: int = CES_RESTARTS,
    seed: int = DEFAULT_SEED
) -> OracleVerdict:
    """Entangled if NPT or if rho lives inside a completely entangled
    subspace; Separable if PPT in 2x2 or 2x3; Unknown otherwise."""
    ppt = ppt_check(rho)
    if ppt.is_npt:
        return OracleVerdict('Entangled', 'NPT', ppt)

    certificate = None
    eig = hermitian_eigensystem(rho.entries)
    support = [v for v, value in zip(eig.eigenvectors, eig.eigenvalues)
               if value > SUPPORT_EIGENVALUE_TOL]
    if len(support) <= max_ces_dimension(rho.dims):
        certificate = is_ces(Subspace(support, rho.dims), tol=tol, restarts=restarts, seed=seed)
        if certificate.is_ces and not certificate.inconclusive:
            return OracleVerdict('Entangled', 'CES-support', ppt, certificate)

    if (rho.dims.d_a, rho.dims.d_b) in PPT_SEPARABLE_DIMS:
        return OracleVerdict('Separable', None, ppt, certificate)
    return OracleVerdict('Unknown', None, ppt, certificate)


def random_separable_state(dims: Dims, seed: Seed = None, max_terms: int = 4) -> DensityOperator:
    """Mixture of up to max_terms Haar-random product states with
    Dirichlet-uniform weights."""
    rng = make_rng(seed)
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    states = [random_product_state(dims, rng) for _ in range(terms)]
    return density_from_mixture(states, weights, dims)


def _transformed(refs: ReferenceSet, unitary: UnitaryKind, rng: np.random.Generator):
    if unitary == 'identity':
        return refs
    if unitary == 'local':
        u_a, u_b = random_local_unitary(refs.dims, rng)
        states = [apply_local_unitary(p, u_a, u_b) for p in refs.product_states()]
    elif unitary == 'global':
        u = random_unitary(refs.dims.total, rng)
        states = [apply_unitary(p, u) for p in refs.states]
    else:
        raise ValueError(f'Unknown unitary kind: {unitary}')
    return ReferenceSet(states, refs.dims, refs.labels)


def lu_invariance_harness(
    refs: ReferenceSet,
    trials: int = 20,
    seed: int = DEFAULT_SEED,
    tol: float = LU_TOL,
    unitary: UnitaryKind = 'local',
    directions: int = LU_DIRECTIONS
) -> InvarianceReport:
    """Rebuilds the sampled JSNR after transforming the references and
    measures how far it moved.

    Local unitaries must leave the region in place. unitary='global' draws
    Haar unitaries on the whole space instead and is expected to move it.
    """
    original = sampled_region(refs, 'jsnr', directions=directions, seed=seed)
    distances = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        moved = sampled_region(
            _transformed(refs, unitary, rng), 'jsnr', directions=directions, seed=seed)
        distances.append(hausdorff_distance(original, moved))

    worst = max(distances) if distances else 0.0
    logger.info(f'{unitary} unitary harness: {trials} trials, max Hausdorff drift {worst:.3g}')
    return InvarianceReport(
        trials=trials,
        max_hausdorff=worst,
        passed=worst < tol,
        tolerance=tol,
        unitary=unitary,
        seed=seed,
        distances=distances,
    )


def separable_product_states(dims: Dims, count: int, seed: Seed = None) -> List[ProductState]:
    rng = make_rng(seed)
    return [random_product_state(dims, rng) for _ in range(count)]
