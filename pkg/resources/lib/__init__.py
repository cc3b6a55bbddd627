from .. import (
    CES_RESTARTS, CES_TOL, CLASSIFY_TOL, DEFAULT_SEED, ELLIPSE_COSPHIS, ELLIPSE_THETAS,
    GRID_RESOLUTION, INCONCLUSIVE_BAND, MARGIN_TOL, ORACLE_RESTARTS, SEESAW_MAX_ITERS,
    SEESAW_TOL, SUPPORT_RESTARTS, SWEEP_DIRECTIONS,
)

__all__ = [
    'CES_RESTARTS', 'CES_TOL', 'CLASSIFY_TOL', 'DEFAULT_SEED', 'ELLIPSE_COSPHIS',
    'ELLIPSE_THETAS', 'GRID_RESOLUTION', 'INCONCLUSIVE_BAND', 'MARGIN_TOL', 'ORACLE_RESTARTS',
    'SEESAW_MAX_ITERS', 'SEESAW_TOL', 'SUPPORT_RESTARTS', 'SWEEP_DIRECTIONS',
]
