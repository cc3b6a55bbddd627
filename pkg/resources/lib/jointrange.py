"""Joint numerical ranges of two reference projectors.

For two pure states with fidelity c every state restricted to their span
reaches the filled ellipse E_c = {(x1 + x2 - (1 - c))^2 <= 4 c x1 x2}. A state
cos(t)|0> + e^{i phi} sin(t)|1>, written in a basis where psi1 = |0>, has
x1 = cos^2 t and
x2 = c cos^2 t + (1 - c) sin^2 t + 2 sqrt(c (1 - c)) cos t sin t cos(phi),
t in [0, pi/2]. cos(phi) = +1 and -1 trace the two halves of the boundary.

For product references the separable range is the convex hull of pointwise
products of the two local ranges, so it depends only on (c_A, c_B).
"""
import numpy as np
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence
from .. import CLASSIFY_TOL, DEFAULT_SEED, ELLIPSE_COSPHIS, ELLIPSE_THETAS, SWEEP_DIRECTIONS
from . import logger
from .effectiveness import ReferenceSet, global_support, separable_support, sweep_directions
from .errors import DimensionMismatch, InconsistentRegions, InvalidParameter
from .geometry import ConvexRegion2D, convex_hull, signed_distance, signed_distances
from .quantum import AnyState, ProductState, fidelity, state_vector

BOUNDARY_SAMPLES = 2000
SAMPLED_RESTARTS = 2
SAME_STATE_TOL = 1e-12

Mode = Literal['jnr', 'jsnr']
Verdict = Literal['Detected', 'Compatible', 'Infeasible']


@dataclass(frozen=True)
class EllipseRegion:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f'gamma must lie in [0, 1], got {self.gamma}')


@dataclass(frozen=True, eq=False)
class TupleClassification:
    tuple: np.ndarray
    verdict: Verdict
    distance_to_jsnr: Optional[float] = None
    distance_to_jnr: Optional[float] = None
    direction: Optional[np.ndarray] = None


def ellipse_contains(e: EllipseRegion, x: Sequence[float], tol: float = 1e-9) -> bool:
    x1, x2 = float(x[0]), float(x[1])
    if not (-tol <= x1 <= 1.0 + tol and -tol <= x2 <= 1.0 + tol):
        return False
    g = e.gamma
    return (x1 + x2 - (1.0 - g)) ** 2 <= 4.0 * g * x1 * x2 + tol


def _special_thetas(gamma: float) -> List[float]:
    # the axis intercept (1 - gamma, 0) and the point (gamma, 1)
    thetas = [0.0, np.pi / 2, float(np.arccos(np.sqrt(gamma)))]
    if gamma < 1.0:
        thetas.append(float(np.arctan(np.sqrt(gamma / (1.0 - gamma)))))
    return thetas


def _thetas(gamma: float, samples: int) -> np.ndarray:
    grid = np.linspace(0.0, np.pi / 2, samples)
    return np.unique(np.concatenate([grid, _special_thetas(gamma)]))


def _points(gamma: float, thetas: np.ndarray, cosphis: np.ndarray) -> np.ndarray:
    t, cp = np.meshgrid(thetas, cosphis, indexing='ij')
    c, s = np.cos(t), np.sin(t)
    x1 = c ** 2
    cross = 2.0 * np.sqrt(gamma * (1.0 - gamma)) * c * s * cp
    x2 = gamma * c ** 2 + (1.0 - gamma) * s ** 2 + cross
    return np.clip(np.stack([x1.ravel(), x2.ravel()], axis=1), 0.0, 1.0)


def ellipse_boundary(e: EllipseRegion, samples: int = BOUNDARY_SAMPLES) -> np.ndarray:
    """Boundary points of E_gamma as a closed loop: the cos(phi) = +1 branch
    for t from 0 to pi/2, then the cos(phi) = -1 branch back."""
    if samples < 4:
        raise InvalidParameter(f'At least 4 boundary samples are needed, got {samples}')
    thetas = _thetas(e.gamma, samples)
    upper = _points(e.gamma, thetas, np.array([1.0]))
    lower = _points(e.gamma, thetas[::-1], np.array([-1.0]))
    return np.concatenate([upper, lower])


def ellipse_samples(
    gamma: float,
    thetas: int = ELLIPSE_THETAS,
    cosphis: int = ELLIPSE_COSPHIS
) -> np.ndarray:
    """Grid over the whole of E_gamma, interior included."""
    return _points(gamma, _thetas(gamma, thetas), np.linspace(-1.0, 1.0, cosphis))


def jnr_two_pure(
    psi1: AnyState,
    psi2: AnyState,
    total_dim: Optional[int] = None,
    samples: int = BOUNDARY_SAMPLES
) -> ConvexRegion2D:
    """E_c when the two states span the whole space, otherwise its convex hull
    with the origin (states orthogonal to both)."""
    v1, v2 = state_vector(psi1), state_vector(psi2)
    if v1.size != v2.size:
        raise DimensionMismatch(f'States of dims {v1.size} and {v2.size}')
    total_dim = total_dim or v1.size
    if total_dim < 2:
        raise ValueError(f'total_dim must be at least 2, got {total_dim}')

    c = min(fidelity(psi1, psi2), 1.0)
    span_dim = 2
    if c > 1.0 - SAME_STATE_TOL:
        c, span_dim = 1.0, 1
    points = ellipse_boundary(EllipseRegion(c), samples)
    if total_dim > span_dim:
        points = np.concatenate([points, [[0.0, 0.0]]])
    return convex_hull(
        points, 'analytic_jnr', {'c': c, 'samples': samples, 'total_dim': total_dim})


def jsnr_two_product(
    p1: ProductState,
    p2: ProductState,
    density: int = ELLIPSE_THETAS,
    cosphis: int = ELLIPSE_COSPHIS
) -> ConvexRegion2D:
    """Convex hull of the pointwise products of the two local ranges.

    The product map is linear in each factor, so only the hull vertices of
    each local sample set contribute.
    """
    if p1.dims != p2.dims:
        raise DimensionMismatch(f'Product states of dims {p1.dims} and {p2.dims}')
    if density < 2 or cosphis < 2:
        raise InvalidParameter(f'Sample grid of {density} x {cosphis} is too coarse')
    c_a = min(fidelity(p1.a, p2.a), 1.0)
    c_b = min(fidelity(p1.b, p2.b), 1.0)

    local_a = convex_hull(ellipse_samples(c_a, density, cosphis)).vertices
    local_b = convex_hull(ellipse_samples(c_b, density, cosphis)).vertices
    products = (local_a[:, None, :] * local_b[None, :, :]).reshape(-1, 2)
    region = convex_hull(
        products, 'analytic_jsnr',
        {'c_a': c_a, 'c_b': c_b, 'density': density, 'cosphis': cosphis},
    )
    logger.debug(
        f'JSNR for c_A={c_a:.6g}, c_B={c_b:.6g}: {len(region)} vertices '
        f'from {products.shape[0]} products'
    )
    return region


def sampled_region(
    refs: ReferenceSet,
    mode: Mode,
    directions: int = SWEEP_DIRECTIONS,
    method: str = 'seesaw',
    restarts: int = SAMPLED_RESTARTS,
    seed: int = DEFAULT_SEED,
    **opts
) -> ConvexRegion2D:
    """Range rebuilt from its support function on `directions` unit vectors.

    The hull of the optimizing tuples is an inner approximation; the support
    lines are kept as the outer one. In JSNR mode every direction starts its
    seesaw from the optimizer of the previous direction.
    """
    if refs.k != 2:
        raise DimensionMismatch(f'Region sampling needs 2 references, got {refs.k}')
    if directions < 8:
        raise InvalidParameter(f'At least 8 directions are needed, got {directions}')

    angles = 2.0 * np.pi * np.arange(directions) / directions
    points = []
    halfplanes = []
    previous = []
    for angle in angles:
        n = np.array([np.cos(angle), np.sin(angle)])
        if mode == 'jnr':
            query = global_support(refs, n)
        elif mode == 'jsnr':
            query = separable_support(
                refs, n, method=method, restarts=restarts, seed=seed, starts=previous, **opts)
            previous = [(query.argmax_state.a.amplitudes, query.argmax_state.b.amplitudes)]
        else:
            raise ValueError(f'Unknown mode: {mode}')
        points.append(query.point)
        halfplanes.append([n[0], n[1], query.value])

    region = convex_hull(
        points, f'sampled_{mode}',
        {'directions': directions, 'method': 'eigen' if mode == 'jnr' else method},
    )
    region = region.with_halfplanes(np.array(halfplanes))
    logger.debug(
        f'Sampled {mode.upper()}: {len(region)} vertices, '
        f'support gap {region.support_gap():.3g}'
    )
    return region


def classify_tuple(
    x: Sequence[float],
    jnr: ConvexRegion2D,
    jsnr: ConvexRegion2D,
    tol: float = CLASSIFY_TOL
) -> TupleClassification:
    """Detected means the tuple is reachable but not by any separable state."""
    overshoot = float(np.max(signed_distances(jnr, jsnr.vertices)))
    if overshoot > tol:
        raise InconsistentRegions(f'JSNR leaves the JNR by {overshoot:.3g}')

    x = np.asarray(x, dtype=float)
    d_jnr = signed_distance(jnr, x)
    d_jsnr = signed_distance(jsnr, x)
    if d_jnr > tol:
        verdict = 'Infeasible'
    elif d_jsnr > tol:
        verdict = 'Detected'
    else:
        verdict = 'Compatible'
    return TupleClassification(x, verdict, distance_to_jsnr=d_jsnr, distance_to_jnr=d_jnr)


def classify_by_support(
    x: Sequence[float],
    refs: ReferenceSet,
    directions: Optional[np.ndarray] = None,
    tol: float = CLASSIFY_TOL,
    seed: int = DEFAULT_SEED,
    **opts
) -> TupleClassification:
    """Classification without polygons, for any number of references.

    A tuple with n . x above the global support for some n is infeasible;
    above the separable support it is detected, which is the same as
    Tr(rho W_n) < 0 for every state rho producing it.
    """
    x = np.asarray(x, dtype=float)
    if x.size != refs.k:
        raise DimensionMismatch(f'Tuple has {x.size} entries for {refs.k} references')
    if directions is None:
        directions = sweep_directions(refs.k, seed=seed)

    detected = None
    for n in directions:
        reach = float(np.dot(n, x))
        if reach > global_support(refs, n).value + tol:
            return TupleClassification(x, 'Infeasible', direction=np.asarray(n))
        if detected is None and reach > separable_support(refs, n, seed=seed, **opts).value + tol:
            detected = np.asarray(n)

    if detected is not None:
        return TupleClassification(x, 'Detected', direction=detected)
    return TupleClassification(x, 'Compatible')
