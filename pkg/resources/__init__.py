import os


def _env_float(name: str, default: float) -> float:
    try:
        return float(os.environ.get(name, default))
    except ValueError:
        return default


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


# Defaults for the numerical routines. Each can be overridden from the environment.
DEFAULT_SEED = _env_int('JSNR_SEED', 7)

CES_TOL = _env_float('JSNR_CES_TOL', 1e-6)
CES_RESTARTS = _env_int('JSNR_CES_RESTARTS', 50)
SEESAW_MAX_ITERS = _env_int('JSNR_SEESAW_MAX_ITERS', 500)
SEESAW_TOL = _env_float('JSNR_SEESAW_TOL', 1e-12)
INCONCLUSIVE_BAND = _env_float('JSNR_INCONCLUSIVE_BAND', 1e-4)

MARGIN_TOL = _env_float('JSNR_MARGIN_TOL', 1e-6)
SUPPORT_RESTARTS = _env_int('JSNR_SUPPORT_RESTARTS', 10)
GRID_RESOLUTION = _env_int('JSNR_GRID_RESOLUTION', 200)
ORACLE_RESTARTS = _env_int('JSNR_ORACLE_RESTARTS', 200)

ELLIPSE_THETAS = _env_int('JSNR_ELLIPSE_THETAS', 120)
ELLIPSE_COSPHIS = _env_int('JSNR_ELLIPSE_COSPHIS', 41)
SWEEP_DIRECTIONS = _env_int('JSNR_SWEEP_DIRECTIONS', 360)
CLASSIFY_TOL = _env_float('JSNR_CLASSIFY_TOL', 1e-3)
