"""Convex polygons in the plane.

Regions are stored as counterclockwise vertex lists. One vertex is a point
and two are a segment; every query handles those degenerate cases.
"""
import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional, Sequence
from .errors import DimensionMismatch

COLLINEAR_TOL = 1e-12

Provenance = Literal['analytic_jnr', 'analytic_jsnr', 'sampled_jnr', 'sampled_jsnr', 'hull']


@dataclass(frozen=True, eq=False)
class ConvexRegion2D:
    vertices: np.ndarray
    provenance: Provenance = 'hull'
    parameters: Dict[str, Any] = field(default_factory=dict)
    # rows (n1, n2, h) of the outer description n . x <= h
    halfplanes: Optional[np.ndarray] = None

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        if v.shape[0] == 0:
            raise ValueError('A region needs at least one vertex')
        v.setflags(write=False)
        object.__setattr__(self, 'vertices', v)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    def support_gap(self) -> float:
        """How far the outer polygon cut out by the recorded support lines
        reaches beyond this one. Zero when fewer than three were recorded."""
        if self.halfplanes is None or len(self.halfplanes) < 3:
            return 0.0
        corners = outer_corners(self.halfplanes)
        if len(corners) == 0:
            return 0.0
        return float(np.max(np.maximum(signed_distances(self, corners), 0.0)))

    def with_halfplanes(self, halfplanes: np.ndarray) -> 'ConvexRegion2D':
        return ConvexRegion2D(self.vertices, self.provenance, self.parameters, halfplanes)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(
    points: Sequence[Sequence[float]],
    provenance: Provenance = 'hull',
    parameters: Optional[Dict[str, Any]] = None
) -> ConvexRegion2D:
    """Monotone-chain hull, counterclockwise from the lowest-leftmost point.

    Duplicates and points within 1e-12 of an edge line are dropped.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError('Cannot build the hull of no points')
    pts = np.unique(pts, axis=0)
    parameters = parameters or {}
    if pts.shape[0] == 1:
        return ConvexRegion2D(pts, provenance, parameters)

    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= COLLINEAR_TOL:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= COLLINEAR_TOL:
            upper.pop()
        upper.append(p)

    return ConvexRegion2D(np.array(lower[:-1] + upper[:-1]), provenance, parameters)


def outer_corners(halfplanes: np.ndarray) -> np.ndarray:
    """Intersections of angularly consecutive lines n . x = h."""
    h = np.asarray(halfplanes, dtype=float)
    h = h[np.argsort(np.arctan2(h[:, 1], h[:, 0]))]
    nxt = np.roll(h, -1, axis=0)
    det = h[:, 0] * nxt[:, 1] - h[:, 1] * nxt[:, 0]
    ok = np.abs(det) > COLLINEAR_TOL
    with np.errstate(invalid='ignore', divide='ignore'):
        x = (h[:, 2] * nxt[:, 1] - h[:, 1] * nxt[:, 2]) / det
        y = (h[:, 0] * nxt[:, 2] - h[:, 2] * nxt[:, 0]) / det
    return np.stack([x, y], axis=1)[ok]


def _segment_distances(points: np.ndarray, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Distance from every point to every segment, shape (points, segments)."""
    d = ends - starts
    length2 = np.sum(d * d, axis=1)
    rel = points[:, None, :] - starts[None, :, :]
    with np.errstate(invalid='ignore', divide='ignore'):
        t = np.where(length2 > 0, np.sum(rel * d[None], axis=2) / length2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    nearest = starts[None] + t[..., None] * d[None]
    return np.linalg.norm(points[:, None, :] - nearest, axis=2)


def _edges(vertices: np.ndarray):
    if len(vertices) == 1:
        return vertices, vertices
    if len(vertices) == 2:
        return vertices[:1], vertices[1:]
    return vertices, np.roll(vertices, -1, axis=0)


def _edge_offsets(vertices: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Signed distance of every point to every edge line, positive inside."""
    starts, ends = _edges(vertices)
    d = ends - starts
    rel = points[:, None, :] - starts[None, :, :]
    cross = d[None, :, 0] * rel[..., 1] - d[None, :, 1] * rel[..., 0]
    return cross / np.linalg.norm(d, axis=1)[None, :]


def _as_points(x) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != 2:
        raise DimensionMismatch(f'Expected 2-D points, got shape {pts.shape}')
    return pts.reshape(-1, 2)


def signed_distances(r: ConvexRegion2D, points) -> np.ndarray:
    """Distance to the region for outside points, minus the distance to the
    boundary for inside points."""
    pts = _as_points(points)
    starts, ends = _edges(r.vertices)
    outside = np.min(_segment_distances(pts, starts, ends), axis=1)
    if len(r) < 3:
        return outside
    offsets = _edge_offsets(r.vertices, pts)
    inside = np.all(offsets >= 0, axis=1)
    return np.where(inside, -np.min(offsets, axis=1), outside)


def signed_distance(r: ConvexRegion2D, x: Sequence[float]) -> float:
    return float(signed_distances(r, x)[0])


def region_contains(r: ConvexRegion2D, x: Sequence[float], tol: float = 1e-9) -> bool:
    """Half-plane test against every edge; a positive tol grows the region."""
    pts = _as_points(x)
    if len(r) < 3:
        starts, ends = _edges(r.vertices)
        return bool(np.min(_segment_distances(pts, starts, ends)) <= tol)
    return bool(np.all(_edge_offsets(r.vertices, pts) >= -tol))


def region_support(r: ConvexRegion2D, n: Sequence[float]) -> float:
    return float(np.max(r.vertices @ np.asarray(n, dtype=float)))


def hausdorff_distance(r1: ConvexRegion2D, r2: ConvexRegion2D) -> float:
    """Distance to a convex set is a convex function, so over a polygon it
    peaks at a vertex."""
    d12 = np.max(np.maximum(signed_distances(r2, r1.vertices), 0.0))
    d21 = np.max(np.maximum(signed_distances(r1, r2.vertices), 0.0))
    return float(max(d12, d21))


def swapped(r: ConvexRegion2D) -> ConvexRegion2D:
    """Mirror image under (x1, x2) -> (x2, x1)."""
    return convex_hull(r.vertices[:, ::-1], r.provenance, r.parameters)
