"""Alternating maximization of <a,b|M|a,b> over product states.

With b fixed the objective is the quadratic form of the d_a x d_a operator
(I x <b|) M (I x |b>), so the best a is its top eigenvector; the b step is the
mirror image. Every half step can only increase the objective.

A run that stops where a reduced operator has a degenerate top eigenvalue
tries the other vectors of that eigenspace before giving up, since the
eigensolver's choice inside it is arbitrary.
"""
import numpy as np
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
from .. import DEFAULT_SEED, SEESAW_MAX_ITERS, SEESAW_TOL
from . import logger
from .jacobi import jacobi_eigh, top_eigenpair
from .quantum import Dims, ProductState, normalize, random_pure_state

DEGENERACY_TOL = 1e-9
EIGENVECTOR_STARTS = 2

Start = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class SeesawResult:
    value: float
    maximizer: ProductState
    restarts_used: int
    iterations: int
    best_restart: int
    traces: List[List[float]] = field(default_factory=list)


def reduce_on_b(m4: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(I x <b|) M (I x |b>), a d_a x d_a operator."""
    return np.einsum('j,ijkl,l->ik', b.conj(), m4, b)


def reduce_on_a(m4: np.ndarray, a: np.ndarray) -> np.ndarray:
    """(<a| x I) M (|a> x I), a d_b x d_b operator."""
    return np.einsum('i,ijkl,k->jl', a.conj(), m4, a)


def product_objective(m4: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.einsum('i,j,ijkl,k,l->', a.conj(), b.conj(), m4, a, b).real)


def structured_starts(m4: np.ndarray) -> List[Start]:
    """Deterministic starting points derived from M itself.

    These are the leading Schmidt factors of the eigenvectors spanning the top
    eigenspace of M (at least EIGENVECTOR_STARTS of them), then every product
    of an eigenvector of Tr_B M with an eigenvector of Tr_A M.
    """
    d_a, d_b = m4.shape[0], m4.shape[1]
    values, vectors, _ = jacobi_eigh(m4.reshape(d_a * d_b, d_a * d_b))
    order = np.argsort(-values, kind='stable')
    top = values[order[0]]
    degenerate = int(np.sum(values >= top - DEGENERACY_TOL * max(1.0, abs(top))))

    starts = []
    for i in order[:max(degenerate, EIGENVECTOR_STARTS)]:
        u, _, vh = np.linalg.svd(vectors[:, i].reshape(d_a, d_b))
        starts.append((u[:, 0], vh[0].conj()))

    _, local_a, _ = jacobi_eigh(np.einsum('ijkj->ik', m4))
    _, local_b, _ = jacobi_eigh(np.einsum('ijil->jl', m4))
    for i in range(d_a):
        for j in range(d_b):
            starts.append((local_a[:, i], local_b[:, j]))
    return starts


def seesaw_maximize(
    m: np.ndarray,
    dims: Dims,
    restarts: int,
    max_iters: int = SEESAW_MAX_ITERS,
    tol: float = SEESAW_TOL,
    seed: int = DEFAULT_SEED,
    starts: Sequence[Start] = (),
    structured: bool = True,
    keep_traces: bool = False
) -> SeesawResult:
    """Best product state found over all seesaw runs.

    The caller's `starts` run first, then the structured starts of M (unless
    structured=False), then `restarts` runs from Haar random local states.
    Random run r draws from the generator seeded with (seed, r), so the result
    does not depend on the order in which runs are evaluated.
    """
    dims.require_bipartite()
    m = np.asarray(m, dtype=complex)
    if m.shape != (dims.total, dims.total):
        raise ValueError(f'Operator of shape {m.shape} does not match dims {dims}')
    m4 = m.reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)

    fixed = [(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)) for a, b in starts]
    if structured:
        fixed += structured_starts(m4)
    restarts = max(restarts, 0 if fixed else 1)

    best_value = -np.inf
    best: Optional[Start] = None
    best_run = 0
    iterations = 0
    traces = []

    for run in range(len(fixed) + restarts):
        if run < len(fixed):
            a, b = fixed[run]
        else:
            rng = np.random.default_rng([seed, run - len(fixed)])
            a = random_pure_state(dims.d_a, rng).amplitudes
            b = random_pure_state(dims.d_b, rng).amplitudes

        a, b, value, trace = _seesaw_run(m4, a, b, max_iters, tol)
        iterations += len(trace) - 1
        if keep_traces:
            traces.append(trace)
        if value > best_value:
            best_value = value
            best = (a, b)
            best_run = run

    runs = len(fixed) + restarts
    logger.debug(
        f'Seesaw on {dims}: best value {best_value:.12g} from run {best_run} '
        f'of {runs} ({len(fixed)} fixed starts, {iterations} iterations)'
    )

    return SeesawResult(
        value=float(best_value),
        maximizer=ProductState(normalize(best[0]), normalize(best[1])),
        restarts_used=runs,
        iterations=iterations,
        best_restart=best_run,
        traces=traces,
    )


def _seesaw_run(
    m4: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    max_iters: int,
    tol: float
) -> Tuple[np.ndarray, np.ndarray, float, List[float]]:
    value = product_objective(m4, a, b)
    trace = [value]
    for _ in range(max_iters):
        _, a = top_eigenpair(reduce_on_b(m4, b))
        new_value, b = top_eigenpair(reduce_on_a(m4, a))
        improvement = new_value - value
        value = new_value
        if improvement < tol:
            moved = _leave_plateau(m4, a, b, value, tol)
            if moved is None:
                trace.append(value)
                break
            a, b, value = moved
        trace.append(value)
    return a, b, value, trace


def _leave_plateau(
    m4: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    value: float,
    tol: float
) -> Optional[Tuple[np.ndarray, np.ndarray, float]]:
    """A better product state reached through a degenerate top eigenspace of
    either reduced operator, or None."""
    for b_try in _degenerate_top_vectors(reduce_on_a(m4, a)):
        new_value, a_try = top_eigenpair(reduce_on_b(m4, b_try))
        if new_value > value + tol:
            return a_try, b_try, new_value
    for a_try in _degenerate_top_vectors(reduce_on_b(m4, b)):
        new_value, b_try = top_eigenpair(reduce_on_a(m4, a_try))
        if new_value > value + tol:
            return a_try, b_try, new_value
    return None


def _degenerate_top_vectors(h: np.ndarray) -> List[np.ndarray]:
    """Basis vectors of the top eigenspace and their pairwise superpositions,
    empty when that eigenspace is one-dimensional."""
    values, vectors, _ = jacobi_eigh(h)
    top = float(np.max(values))
    idx = np.flatnonzero(values >= top - DEGENERACY_TOL * max(1.0, abs(top)))
    if idx.size < 2:
        return []
    basis = [vectors[:, i] for i in idx]
    mixed = [
        (u + phase * v) / np.sqrt(2)
        for i, u in enumerate(basis) for v in basis[i + 1:]
        for phase in (1, -1, 1j, -1j)
    ]
    return basis + mixed
