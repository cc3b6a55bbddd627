"""Deciding whether fidelity measurements against reference states can detect
entanglement, and building the witnesses that do the detecting.

For a direction n the reference projectors combine into M = sum_i n_i |psi_i><psi_i|.
The witness W_n = alpha I - M, with alpha the largest expectation of M over
product states, is nonnegative on every separable state and detects something
exactly when the largest eigenvalue of M exceeds alpha.
"""
import numpy as np
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Sequence, Tuple, Union
from .. import (
    CES_RESTARTS, CES_TOL, DEFAULT_SEED, GRID_RESOLUTION, MARGIN_TOL, ORACLE_RESTARTS,
    SEESAW_MAX_ITERS, SEESAW_TOL, SUPPORT_RESTARTS,
)
from . import logger
from .errors import DimensionMismatch, InvalidParameter, LinearlyDependent, NotProductState
from .grid import grid_separable_max, grid_starts
from .quantum import (
    AnyState, DensityOperator, Dims, HermitianOperator, ProductState, hermitian_eigensystem,
    overlap, state_vector,
)
from .seesaw import seesaw_maximize
from .subspace import (
    CesCertificate, ReferencePartition, Subspace, is_ces, orthogonal_complement,
    partition_reference_set, schmidt_decompose, span_orthonormal_basis,
)

INDEPENDENCE_TOL = 1e-12
STRICTNESS_TOL = 1e-10
PAIR_SWEEP_DIRECTIONS = 72
RANDOM_SWEEP_DIRECTIONS = 500

Reason = Literal[
    'EffectivePair', 'ComplementCES', 'OrthogonalPair', 'SharedFactorPair',
    'ComplementNotCES', 'MaxEigenspaceCES', 'MaxEigenspaceNotCES', 'Inconclusive',
]
SupportMethod = Literal['seesaw', 'grid', 'eigen']

EFFECTIVE_REASONS = ('EffectivePair', 'ComplementCES', 'MaxEigenspaceCES')


@dataclass(frozen=True, eq=False)
class ReferenceSet:
    states: List[AnyState]
    dims: Dims
    labels: Optional[List[str]] = None

    def __post_init__(self):
        if not self.states:
            raise ValueError('A reference set needs at least one state')
        for i, state in enumerate(self.states):
            if isinstance(state, ProductState):
                if state.dims != self.dims:
                    raise DimensionMismatch(f'Reference {i} has dims {state.dims}, not {self.dims}')
            elif state.dim != self.dims.total:
                raise DimensionMismatch(f'Reference {i} has dim {state.dim}, not {self.dims.total}')
        if self.labels is not None and len(self.labels) != len(self.states):
            raise ValueError(f'{len(self.labels)} labels for {len(self.states)} states')

        for i in range(len(self.states)):
            for j in range(i + 1, len(self.states)):
                gram_det = 1.0 - abs(overlap(self.states[i], self.states[j])) ** 2
                if gram_det <= INDEPENDENCE_TOL:
                    raise LinearlyDependent(f'References {i + 1} and {j + 1} are proportional')

        span = span_orthonormal_basis(self.states, self.dims)
        if span.dim < len(self.states):
            raise LinearlyDependent(
                f'{len(self.states)} references span only {span.dim} dimensions')

    @property
    def k(self) -> int:
        return len(self.states)

    @property
    def is_product(self) -> bool:
        return all(isinstance(s, ProductState) for s in self.states)

    def product_states(self) -> List[ProductState]:
        if not self.is_product:
            raise NotProductState('The reference set contains states without local factors')
        return list(self.states)

    def vectors(self) -> np.ndarray:
        """Reference vectors as rows."""
        return np.array([state_vector(s) for s in self.states])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f'psi{i + 1}'

    def operator(self, n: Sequence[float]) -> np.ndarray:
        """M = sum_i n_i |psi_i><psi_i|."""
        n = _direction(n, self.k)
        v = self.vectors()
        return np.einsum('i,ij,ik->jk', n, v, v.conj())

    def subset(self, indices: Sequence[int]) -> 'ReferenceSet':
        labels = [self.labels[i] for i in indices] if self.labels else None
        return ReferenceSet([self.states[i] for i in indices], self.dims, labels)

    def fidelities(self, state: AnyState) -> np.ndarray:
        v = state_vector(state)
        return np.abs(self.vectors().conj() @ v) ** 2


@dataclass(frozen=True, eq=False)
class EffectivenessVerdict:
    effective: bool
    reason: Reason
    pair: Optional[Tuple[int, int]] = None
    evidence: Optional[CesCertificate] = None
    direction: Optional[np.ndarray] = None
    partition: Optional[ReferencePartition] = None
    witness_margin: Optional[float] = None

    def describe(self) -> str:
        if self.reason == 'EffectivePair' and self.pair is not None:
            return f'EffectivePair({self.pair[0] + 1},{self.pair[1] + 1})'
        return self.reason


@dataclass(frozen=True, eq=False)
class SupportQuery:
    direction: np.ndarray
    method: SupportMethod
    value: float
    argmax_state: AnyState
    point: np.ndarray
    oracle: Optional[str] = None
    restarts: Optional[int] = None
    resolution: Optional[int] = None


@dataclass(frozen=True, eq=False)
class Witness:
    direction: np.ndarray
    alpha: float
    operator: HermitianOperator
    lambda_max: float
    margin: float
    method: str
    oracle: Optional[str] = None
    maximizer: Optional[AnyState] = None

    def is_effective(self, tol: float = MARGIN_TOL) -> bool:
        return self.margin > tol


@dataclass(frozen=True, eq=False)
class SweepReport:
    directions_tested: int
    best_margin: float
    best_direction: np.ndarray
    margins: List[float] = field(default_factory=list)

    def any_effective(self, tol: float = MARGIN_TOL) -> bool:
        return self.best_margin > tol


def _direction(n: Sequence[float], k: int) -> np.ndarray:
    n = np.asarray(n, dtype=float).ravel()
    if n.size != k:
        raise DimensionMismatch(f'Direction has {n.size} components for {k} references')
    if not np.all(np.isfinite(n)):
        raise InvalidParameter('Direction components must be finite')
    return n


def single_observable_effective(
    a: Union[HermitianOperator, np.ndarray],
    dims: Dims,
    tol: float = CES_TOL,
    restarts: int = CES_RESTARTS,
    seed: int = DEFAULT_SEED
) -> EffectivenessVerdict:
    """An observable can detect entanglement on its own exactly when the
    eigenspace of its largest eigenvalue contains no product vector."""
    eig = hermitian_eigensystem(a)
    if eig.eigenvectors[0].dim != dims.total:
        raise DimensionMismatch(f'Operator of dim {eig.eigenvectors[0].dim} for dims {dims}')

    top = Subspace(eig.max_eigenspace(), dims)
    certificate = is_ces(top, tol=tol, restarts=restarts, seed=seed)
    if certificate.inconclusive:
        reason = 'Inconclusive'
    else:
        reason = 'MaxEigenspaceCES' if certificate.is_ces else 'MaxEigenspaceNotCES'
    return EffectivenessVerdict(
        effective=reason == 'MaxEigenspaceCES',
        reason=reason,
        evidence=certificate,
    )


def _pair_reason(p1: ProductState, p2: ProductState, tol: float) -> Reason:
    la = abs(overlap(p1.a, p2.a))
    lb = abs(overlap(p1.b, p2.b))
    if la < tol or lb < tol:
        return 'OrthogonalPair'
    if la > 1.0 - tol or lb > 1.0 - tol:
        return 'SharedFactorPair'
    return 'EffectivePair'


def pair_effective(
    p1: ProductState,
    p2: ProductState,
    tol: float = STRICTNESS_TOL,
    verify: bool = True,
    seed: int = DEFAULT_SEED
) -> EffectivenessVerdict:
    """Two product states are effective iff both local overlaps lie strictly
    between 0 and 1.

    The decision is analytic. With verify=True the witness for n = (1, 1) is
    built as well and its margin recorded.
    """
    refs = ReferenceSet([p1, p2], p1.dims)
    reason = _pair_reason(p1, p2, tol)
    if reason != 'EffectivePair':
        return EffectivenessVerdict(effective=False, reason=reason)

    direction = np.array([1.0, 1.0])
    margin = _verified_margin(refs, direction, seed) if verify else None
    return EffectivenessVerdict(
        effective=True,
        reason='EffectivePair',
        pair=(0, 1),
        direction=direction,
        witness_margin=margin,
    )


def set_effective(
    refs: ReferenceSet,
    tol: float = CES_TOL,
    restarts: int = CES_RESTARTS,
    verify: bool = True,
    seed: int = DEFAULT_SEED
) -> EffectivenessVerdict:
    """Effectiveness of a k-set of references.

    Either some pair is effective on its own, or the complement of the span
    has to be completely entangled. In the second case n = (-1, ..., -1) works:
    the top eigenspace of M is then exactly that complement.
    """
    partition = partition_reference_set(refs.states) if refs.is_product else None

    if refs.is_product:
        states = refs.product_states()
        for i in range(refs.k):
            for j in range(i + 1, refs.k):
                if _pair_reason(states[i], states[j], STRICTNESS_TOL) == 'EffectivePair':
                    direction = np.zeros(refs.k)
                    direction[[i, j]] = 1.0
                    margin = _verified_margin(refs, direction, seed) if verify else None
                    return EffectivenessVerdict(
                        effective=True,
                        reason='EffectivePair',
                        pair=(i, j),
                        direction=direction,
                        partition=partition,
                        witness_margin=margin,
                    )
        if refs.k == 2:
            # the complement of two states always exceeds the CES bound
            return EffectivenessVerdict(
                effective=False,
                reason=_pair_reason(states[0], states[1], STRICTNESS_TOL),
                partition=partition,
            )

    span = span_orthonormal_basis(refs.states, refs.dims)
    complement = orthogonal_complement(span)
    if complement.dim == 0:
        logger.info('References span the whole space, the complement is empty')
        return EffectivenessVerdict(effective=False, reason='ComplementNotCES', partition=partition)

    certificate = is_ces(complement, tol=tol, restarts=restarts, seed=seed)
    if certificate.inconclusive:
        return EffectivenessVerdict(
            effective=False, reason='Inconclusive', evidence=certificate, partition=partition)
    if not certificate.is_ces:
        return EffectivenessVerdict(
            effective=False, reason='ComplementNotCES', evidence=certificate, partition=partition)

    direction = -np.ones(refs.k)
    margin = _verified_margin(refs, direction, seed) if verify else None
    return EffectivenessVerdict(
        effective=True,
        reason='ComplementCES',
        evidence=certificate,
        direction=direction,
        partition=partition,
        witness_margin=margin,
    )


def _verified_margin(refs: ReferenceSet, direction: np.ndarray, seed: int) -> float:
    witness = build_witness(refs, direction, seed=seed)
    if not witness.is_effective():
        logger.warning(
            f'Witness for direction {direction.tolist()} has margin {witness.margin:.3g}, '
            f'expected a positive gap'
        )
    return witness.margin


def global_support(refs: ReferenceSet, n: Sequence[float]) -> SupportQuery:
    """Largest expectation of M over all states: its top eigenvalue."""
    n = _direction(n, refs.k)
    eig = hermitian_eigensystem(refs.operator(n))
    top = eig.eigenvectors[0]
    return SupportQuery(
        direction=n,
        method='eigen',
        value=eig.lambda_max,
        argmax_state=top,
        point=refs.fidelities(top),
    )


def separable_support(
    refs: ReferenceSet,
    n: Sequence[float],
    method: SupportMethod = 'seesaw',
    restarts: int = SUPPORT_RESTARTS,
    resolution: int = GRID_RESOLUTION,
    max_iters: int = SEESAW_MAX_ITERS,
    tol: float = SEESAW_TOL,
    seed: int = DEFAULT_SEED,
    starts: Sequence[Tuple[np.ndarray, np.ndarray]] = ()
) -> SupportQuery:
    """Largest expectation of M over product states.

    A linear functional on the separable states peaks at a pure product
    state, so searching those is enough. 'grid' is the brute-force scan for
    two qubits; larger local dimensions fall back to seesaw with many
    restarts and the query records oracle='seesaw'.

    The seesaw runs from `starts`, the product references and, for two
    qubits, the local maxima of a coarse grid scan before its random
    restarts.
    """
    n = _direction(n, refs.k)
    m = refs.operator(n)
    dims = refs.dims

    if method == 'grid':
        if dims.d_a == 2 and dims.d_b == 2:
            result = grid_separable_max(m, dims, resolution)
            return SupportQuery(
                direction=n,
                method='grid',
                value=result.value,
                argmax_state=result.maximizer,
                point=refs.fidelities(result.maximizer),
                oracle='grid',
                resolution=resolution,
            )
        logger.warning(f'No grid oracle for {dims}, using seesaw with {ORACLE_RESTARTS} restarts')
        restarts = ORACLE_RESTARTS
        oracle = 'seesaw'
    elif method == 'seesaw':
        oracle = None
    else:
        raise ValueError(f'Unknown support method: {method}')

    starts = list(starts) + _reference_starts(refs)
    if dims.d_a == 2 and dims.d_b == 2:
        starts += [(p.a.amplitudes, p.b.amplitudes) for p in grid_starts(m, dims)]
    result = seesaw_maximize(
        m, dims, restarts, max_iters=max_iters, tol=tol, seed=seed, starts=starts)
    return SupportQuery(
        direction=n,
        method=method,
        value=result.value,
        argmax_state=result.maximizer,
        point=refs.fidelities(result.maximizer),
        oracle=oracle,
        restarts=result.restarts_used,
    )


def _reference_starts(refs: ReferenceSet) -> List[Tuple[np.ndarray, np.ndarray]]:
    if not refs.is_product:
        return []
    return [(p.a.amplitudes, p.b.amplitudes) for p in refs.product_states()]


def build_witness(
    refs: ReferenceSet,
    n: Sequence[float],
    method: SupportMethod = 'seesaw',
    **opts
) -> Witness:
    """W_n = alpha I - M with alpha the separable support in direction n."""
    n = _direction(n, refs.k)
    separable = separable_support(refs, n, method=method, **opts)
    overall = global_support(refs, n)
    alpha = separable.value
    operator = HermitianOperator(alpha * np.eye(refs.dims.total) - refs.operator(n))
    return Witness(
        direction=n,
        alpha=alpha,
        operator=operator,
        lambda_max=overall.value,
        margin=overall.value - alpha,
        method=method,
        oracle=separable.oracle,
        maximizer=separable.argmax_state,
    )


def evaluate_witness(w: Witness, rho: DensityOperator) -> float:
    """Tr(W rho). A negative value certifies that rho is entangled."""
    if rho.dim != w.operator.dim:
        raise DimensionMismatch(f'Witness of dim {w.operator.dim} on a state of dim {rho.dim}')
    return float(np.trace(w.operator.entries @ rho.entries).real)


def fidelity_tuple(rho: DensityOperator, refs: ReferenceSet) -> np.ndarray:
    if rho.dim != refs.dims.total:
        raise DimensionMismatch(f'State of dim {rho.dim} for references of dim {refs.dims.total}')
    v = refs.vectors()
    return np.einsum('ij,jk,ik->i', v.conj(), rho.entries, v).real


def classes_block_operators(refs: ReferenceSet, n: Sequence[float]) -> List[HermitianOperator]:
    """M split along the nonorthogonality classes of the references.

    The blocks sum to M and multiply to zero across classes, so the spectrum
    of M is the union of the block spectra.
    """
    n = _direction(n, refs.k)
    partition = partition_reference_set(refs.product_states())
    v = refs.vectors()
    blocks = []
    for members in partition.classes:
        idx = list(members)
        blocks.append(HermitianOperator(
            np.einsum('i,ij,ik->jk', n[idx], v[idx], v[idx].conj())
        ))
    return blocks


def sweep_directions(k: int, count: int = RANDOM_SWEEP_DIRECTIONS, seed: int = DEFAULT_SEED):
    if k == 2:
        angles = 2.0 * np.pi * np.arange(PAIR_SWEEP_DIRECTIONS) / PAIR_SWEEP_DIRECTIONS
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, k))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def direction_sweep(
    refs: ReferenceSet,
    count: int = RANDOM_SWEEP_DIRECTIONS,
    seed: int = DEFAULT_SEED,
    method: SupportMethod = 'seesaw',
    restarts: int = SUPPORT_RESTARTS
) -> SweepReport:
    """Best witness margin over a finite set of directions.

    Pairs use 72 equally spaced directions on the unit circle, larger sets
    `count` random unit directions. This is a cross-check of the analytic
    verdicts, not a decision procedure.
    """
    directions = sweep_directions(refs.k, count, seed)
    opts = {'restarts': restarts, 'seed': seed} if method == 'seesaw' else {}
    margins = [build_witness(refs, n, method=method, **opts).margin for n in directions]
    best = int(np.argmax(margins))
    logger.debug(f'Direction sweep over {len(margins)} directions: best margin {margins[best]:.3g}')
    return SweepReport(
        directions_tested=len(margins),
        best_margin=float(margins[best]),
        best_direction=directions[best],
        margins=[float(x) for x in margins],
    )


def fidelity_witness(psi: AnyState, dims: Dims) -> Witness:
    """alpha I - |psi><psi| with alpha the largest squared Schmidt coefficient,
    the tightest single-fidelity witness for psi."""
    schmidt = schmidt_decompose(psi, dims)
    alpha = float(schmidt.coefficients[0] ** 2)
    v = state_vector(psi)
    operator = HermitianOperator(alpha * np.eye(dims.total) - np.outer(v, v.conj()))
    maximizer = ProductState(schmidt.left_vectors[0], schmidt.right_vectors[0])
    return Witness(
        direction=np.array([1.0]),
        alpha=alpha,
        operator=operator,
        lambda_max=1.0,
        margin=1.0 - alpha,
        method='schmidt',
        maximizer=maximizer,
    )


def reference_set_from(states: Sequence[AnyState], labels: Optional[List[str]] = None):
    """ReferenceSet with dims taken from the first product state."""
    first = states[0]
    if not isinstance(first, ProductState):
        raise NotProductState('dims can only be inferred from product states')
    return ReferenceSet(list(states), first.dims, labels)
