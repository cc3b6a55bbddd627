import numpy as np
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple
from .. import CES_RESTARTS, CES_TOL, DEFAULT_SEED, INCONCLUSIVE_BAND, SEESAW_MAX_ITERS
from . import logger
from .errors import DimensionMismatch
from .jacobi import jacobi_eigh
from .quantum import (
    AnyState, Dims, HermitianOperator, ProductState, PureState, hermitian_eigensystem,
    normalize, overlap, state_vector,
)
from .seesaw import SeesawResult, seesaw_maximize

SPAN_DROP_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
SCHMIDT_RANK_TOL = 1e-10
SHARED_FACTOR_TOL = 1e-10

ClassKind = Literal['A-shared', 'B-shared', 'singleton', 'mixed']


@dataclass(frozen=True, eq=False)
class Subspace:
    basis: List[PureState]
    dims: Dims

    def __post_init__(self):
        for v in self.basis:
            if v.dim != self.dims.total:
                raise DimensionMismatch(f'Basis vector of dim {v.dim} in a {self.dims} space')
        m = self.matrix()
        if m.shape[1] > 1:
            gram = m.conj().T @ m
            off = np.abs(gram - np.eye(gram.shape[0]))
            if float(np.max(off)) > ORTHONORMAL_TOL:
                raise ValueError('Subspace basis is not orthonormal')

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns, shape (d_a d_b, dim)."""
        if not self.basis:
            return np.zeros((self.dims.total, 0), dtype=complex)
        return np.column_stack([v.amplitudes for v in self.basis])

    def projector(self) -> np.ndarray:
        m = self.matrix()
        return m @ m.conj().T


@dataclass(frozen=True, eq=False)
class CesCertificate:
    is_ces: bool
    max_product_overlap: float
    witness_product_state: ProductState
    restarts_used: int
    tolerance: float
    subspace_dim: int
    decided_by: Literal['seesaw', 'dimension_bound']
    inconclusive: bool = False


@dataclass(frozen=True, eq=False)
class SchmidtData:
    coefficients: np.ndarray
    rank: int
    left_vectors: List[PureState]
    right_vectors: List[PureState]


@dataclass(frozen=True)
class ReferencePartition:
    classes: Tuple[Tuple[int, ...], ...]
    kinds: Tuple[ClassKind, ...]

    def class_of(self, i: int) -> int:
        for r, members in enumerate(self.classes):
            if i in members:
                return r
        raise IndexError(i)

    @property
    def has_mixed_class(self) -> bool:
        return 'mixed' in self.kinds


@dataclass(frozen=True)
class CssResult:
    is_css: bool
    side: Optional[Literal['A', 'B']]


def span_orthonormal_basis(states: Sequence[AnyState], dims: Optional[Dims] = None) -> Subspace:
    """Orthonormal basis of span(states) by modified Gram-Schmidt.

    Vectors whose residual norm falls below 1e-10 are linearly dependent on
    the earlier ones and are dropped.
    """
    if not states:
        raise ValueError('Cannot span an empty list of states')
    if dims is None:
        first = states[0]
        if not isinstance(first, ProductState):
            raise DimensionMismatch('dims are required when spanning non-product states')
        dims = first.dims

    basis: List[np.ndarray] = []
    for i, state in enumerate(states):
        w = np.array(state_vector(state), dtype=complex)
        if w.size != dims.total:
            raise DimensionMismatch(f'State {i} has dim {w.size}, expected {dims.total}')
        # two passes keep the basis orthogonal to working precision
        for _ in range(2):
            for q in basis:
                w = w - np.vdot(q, w) * q
        norm = float(np.linalg.norm(w))
        if norm < SPAN_DROP_TOL:
            logger.debug(f'Dropping state {i}: linearly dependent on the previous ones')
            continue
        basis.append(w / norm)

    return Subspace([normalize(v) for v in basis], dims)


def orthogonal_complement(s: Subspace) -> Subspace:
    total = s.dims.total
    if s.dim == 0:
        return Subspace([normalize(e) for e in np.eye(total, dtype=complex)], s.dims)
    if s.dim == total:
        return Subspace([], s.dims)

    eig = hermitian_eigensystem(np.eye(total, dtype=complex) - s.projector())
    basis = [v for v, value in zip(eig.eigenvectors, eig.eigenvalues) if value > 0.5]
    return Subspace(basis, s.dims)


def projector_onto(s: Subspace) -> HermitianOperator:
    return HermitianOperator(s.projector())


def max_ces_dimension(dims: Dims) -> int:
    dims.require_bipartite()
    return (dims.d_a - 1) * (dims.d_b - 1)


def max_css_dimension(dims: Dims) -> int:
    dims.require_bipartite()
    return max(dims.d_a, dims.d_b)


def schmidt_decompose(psi: AnyState, dims: Dims) -> SchmidtData:
    v = state_vector(psi)
    if v.size != dims.total:
        raise DimensionMismatch(f'State of dim {v.size} does not match dims {dims}')

    u, s, vh = np.linalg.svd(v.reshape(dims.d_a, dims.d_b))
    rank = int(np.sum(s > SCHMIDT_RANK_TOL))
    return SchmidtData(
        coefficients=s,
        rank=rank,
        left_vectors=[normalize(u[:, i]) for i in range(s.size)],
        right_vectors=[normalize(vh[i, :]) for i in range(s.size)],
    )


def max_product_overlap(
    s: Subspace,
    restarts: int = CES_RESTARTS,
    max_iters: int = SEESAW_MAX_ITERS,
    tol: float = 1e-12,
    seed: int = DEFAULT_SEED,
    keep_traces: bool = False
) -> SeesawResult:
    """Largest <a,b|P_S|a,b> over product states, by seesaw with restarts.

    Run 0 starts from the leading Schmidt vectors of the basis element with
    the largest Schmidt coefficient, followed by the structured starts of the
    projector and `restarts` random ones.
    """
    s.dims.require_bipartite()
    starts = []
    if s.dim > 0:
        schmidts = [schmidt_decompose(v, s.dims) for v in s.basis]
        best = max(range(len(schmidts)), key=lambda i: schmidts[i].coefficients[0])
        starts.append((
            schmidts[best].left_vectors[0].amplitudes,
            schmidts[best].right_vectors[0].amplitudes,
        ))
    return seesaw_maximize(
        s.projector(), s.dims, restarts,
        max_iters=max_iters, tol=tol, seed=seed, starts=starts, keep_traces=keep_traces
    )


def is_ces(
    s: Subspace,
    tol: float = CES_TOL,
    restarts: int = CES_RESTARTS,
    max_iters: int = SEESAW_MAX_ITERS,
    seed: int = DEFAULT_SEED
) -> CesCertificate:
    """Numerical certificate that s contains no product vector.

    A subspace above the (d_a - 1)(d_b - 1) dimension bound always contains a
    product vector; it is rejected without a search for the maximum.
    """
    if s.dim == 0:
        raise ValueError('The zero subspace has no CES certificate')
    bound = max_ces_dimension(s.dims)

    if s.dim > bound:
        witness, used = _product_vector_in(s, restarts, max_iters, seed)
        logger.info(f'Subspace of dim {s.dim} exceeds the CES bound {bound} for {s.dims}')
        return CesCertificate(
            is_ces=False,
            max_product_overlap=1.0,
            witness_product_state=witness,
            restarts_used=used,
            tolerance=tol,
            subspace_dim=s.dim,
            decided_by='dimension_bound',
        )

    result = max_product_overlap(s, restarts, max_iters, seed=seed)
    value = min(result.value, 1.0)
    ces = value < 1.0 - tol
    inconclusive = ces and value >= 1.0 - INCONCLUSIVE_BAND
    logger.info(
        f'CES check on a {s.dim}-dim subspace of {s.dims}: max product overlap {value:.9g}'
        f' -> {"CES" if ces else "not CES"}{" (inconclusive)" if inconclusive else ""}'
    )
    return CesCertificate(
        is_ces=ces,
        max_product_overlap=value,
        witness_product_state=result.maximizer,
        restarts_used=result.restarts_used,
        tolerance=tol,
        subspace_dim=s.dim,
        decided_by='seesaw',
        inconclusive=inconclusive,
    )


def _product_vector_in(
    s: Subspace,
    restarts: int,
    max_iters: int,
    seed: int
) -> Tuple[ProductState, int]:
    """A product vector inside a subspace known to contain one, and the
    number of seesaw runs spent finding it.

    When the codimension is below d_b, any |a> has a partner |b> with a x b in
    s, found exactly from the null space of (I - P)(|a> x I). Otherwise the
    seesaw maximizer is returned.
    """
    dims = s.dims
    complement = np.eye(dims.total, dtype=complex) - s.projector()
    codim = dims.total - s.dim

    if codim < dims.d_b:
        a = np.zeros(dims.d_a, dtype=complex)
        a[0] = 1.0
        lift = complement @ np.kron(a.reshape(-1, 1), np.eye(dims.d_b))
        _, _, vh = np.linalg.svd(lift)
        return ProductState(normalize(a), normalize(vh[-1].conj())), 0
    if codim < dims.d_a:
        b = np.zeros(dims.d_b, dtype=complex)
        b[0] = 1.0
        lift = complement @ np.kron(np.eye(dims.d_a), b.reshape(-1, 1))
        _, _, vh = np.linalg.svd(lift)
        return ProductState(normalize(vh[-1].conj()), normalize(b)), 0

    result = max_product_overlap(s, restarts, max_iters, seed=seed)
    return result.maximizer, result.restarts_used


def is_css(s: Subspace) -> CssResult:
    """Whether every vector of s is a product vector.

    A completely separable subspace has the form |a> x T_B or T_A x |b>, so
    one reduced operator of the projector onto s has rank one.
    """
    if s.dim == 0:
        return CssResult(False, None)
    d = s.dims
    p4 = s.projector().reshape(d.d_a, d.d_b, d.d_a, d.d_b)
    for side, reduced in (('A', np.einsum('ijkj->ik', p4)), ('B', np.einsum('ijil->jl', p4))):
        values, _, _ = jacobi_eigh(reduced)
        if int(np.sum(values > SCHMIDT_RANK_TOL * s.dim)) == 1:
            return CssResult(True, side)
    return CssResult(False, None)


def two_product_span_entangled(p1: ProductState, p2: ProductState) -> bool:
    """True when the two product states share no local factor, in which case
    every combination with both coefficients nonzero is entangled."""
    if p1.dims != p2.dims:
        raise DimensionMismatch(f'Product states of dims {p1.dims} and {p2.dims}')
    la = abs(overlap(p1.a, p2.a))
    lb = abs(overlap(p1.b, p2.b))
    return la < 1.0 - SHARED_FACTOR_TOL and lb < 1.0 - SHARED_FACTOR_TOL


def partition_reference_set(
    states: Sequence[ProductState],
    tol: float = SHARED_FACTOR_TOL
) -> ReferencePartition:
    """Classes of the nonorthogonality relation, closed under chaining."""
    k = len(states)
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(overlap(states[i], states[j])) > tol:
                parent[find(j)] = find(i)

    groups: dict = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])

    kinds = tuple(_class_kind([states[i] for i in members], tol) for members in classes)
    return ReferencePartition(tuple(classes), kinds)


def _class_kind(members: Sequence[ProductState], tol: float) -> ClassKind:
    if len(members) == 1:
        return 'singleton'

    pairs = [(p, q) for i, p in enumerate(members) for q in members[i + 1:]]
    if all(abs(overlap(p.a, q.a)) > 1.0 - tol for p, q in pairs):
        return 'A-shared'
    if all(abs(overlap(p.b, q.b)) > 1.0 - tol for p, q in pairs):
        return 'B-shared'
    return 'mixed'
