"""JSON, CSV and SVG output.

Floats are written with 9 significant digits and complex numbers as
[re, im] pairs. Every file is written to a temporary sibling first and moved
into place, so a reader never sees a half-written artifact.
"""
import json
import os
import numpy as np
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union
from src.documents import ReportRecord, to_pairs
from . import logger
from .effectiveness import EffectivenessVerdict, SupportQuery, Witness
from .geometry import ConvexRegion2D
from .jointrange import TupleClassification
from .oracle import InvarianceReport, OracleVerdict, PptReport
from .quantum import ProductState, PureState
from .subspace import CesCertificate

SIGNIFICANT_DIGITS = 9
SVG_SIZE = 480


def sig(x: float) -> float:
    return float(f'{float(x):.{SIGNIFICANT_DIGITS}g}')


def rounded(obj: Any) -> Any:
    """Copy of obj with every float cut to 9 significant digits."""
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return rounded(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [sig(obj.real), sig(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return sig(obj)
    return obj


def state_record(state: Union[ProductState, PureState, None]) -> Optional[Dict[str, Any]]:
    if state is None:
        return None
    if isinstance(state, ProductState):
        return {'a': to_pairs(state.a.amplitudes), 'b': to_pairs(state.b.amplitudes)}
    return {'amplitudes': to_pairs(state.amplitudes)}


def certificate_record(cert: Optional[CesCertificate]) -> Optional[Dict[str, Any]]:
    if cert is None:
        return None
    return {
        'is_ces': cert.is_ces,
        'max_product_overlap': cert.max_product_overlap,
        'witness_product_state': state_record(cert.witness_product_state),
        'restarts_used': cert.restarts_used,
        'tolerance': cert.tolerance,
        'subspace_dim': cert.subspace_dim,
        'decided_by': cert.decided_by,
        'inconclusive': cert.inconclusive,
    }


def verdict_record(v: EffectivenessVerdict) -> Dict[str, Any]:
    record = {
        'effective': v.effective,
        'reason': v.reason,
        'reason_text': v.describe(),
        'pair': list(v.pair) if v.pair else None,
        'direction': v.direction,
        'witness_margin': v.witness_margin,
        'evidence': certificate_record(v.evidence),
    }
    if v.partition is not None:
        record['partition'] = {
            'classes': [list(c) for c in v.partition.classes],
            'kinds': list(v.partition.kinds),
        }
    return record


def witness_record(w: Witness, tol: float) -> Dict[str, Any]:
    return {
        'direction': w.direction,
        'alpha': w.alpha,
        'lambda_max': w.lambda_max,
        'margin': w.margin,
        'effective': w.is_effective(tol),
        'method': w.method,
        'oracle': w.oracle,
        'maximizer': state_record(w.maximizer),
        'operator': to_pairs(w.operator.entries),
    }


def support_record(q: SupportQuery) -> Dict[str, Any]:
    return {
        'direction': q.direction,
        'method': q.method,
        'value': q.value,
        'point': q.point,
        'oracle': q.oracle,
        'restarts': q.restarts,
        'resolution': q.resolution,
    }


def region_record(r: ConvexRegion2D, path: Optional[Path] = None) -> Dict[str, Any]:
    record = {
        'provenance': r.provenance,
        'parameters': r.parameters,
        'vertex_count': len(r),
        'support_gap': r.support_gap(),
    }
    if path is not None:
        record['csv'] = str(path)
    return record


def classification_record(c: TupleClassification) -> Dict[str, Any]:
    return {
        'tuple': c.tuple,
        'verdict': c.verdict,
        'distance_to_jsnr': c.distance_to_jsnr,
        'distance_to_jnr': c.distance_to_jnr,
        'direction': c.direction,
    }


def ppt_record(p: PptReport) -> Dict[str, Any]:
    return {'min_eigenvalue': p.min_eigenvalue, 'is_npt': p.is_npt, 'subsystem': p.subsystem}


def oracle_record(o: OracleVerdict) -> Dict[str, Any]:
    return {
        'verdict': o.verdict,
        'reason': o.reason,
        'ppt': ppt_record(o.ppt),
        'certificate': certificate_record(o.certificate),
    }


def invariance_record(r: InvarianceReport) -> Dict[str, Any]:
    return {
        'unitary': r.unitary,
        'trials': r.trials,
        'seed': r.seed,
        'max_hausdorff': r.max_hausdorff,
        'tolerance': r.tolerance,
        'passed': r.passed,
    }


def build_report(
    command: str,
    config: Dict[str, Any],
    results: Dict[str, Any],
    wall_time: Optional[float] = None
) -> Dict[str, Any]:
    record = ReportRecord(
        command=command, config=rounded(config), results=rounded(results), wall_time=wall_time)
    dumped = record.model_dump()
    if wall_time is None:
        dumped.pop('wall_time')
    return dumped


def dumps(obj: Any) -> str:
    return json.dumps(rounded(obj), indent=2) + '\n'


def _atomic_write(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f'.{path.name}.tmp')
    tmp.write_text(text, encoding='utf-8')
    os.replace(tmp, path)
    logger.info(f'Wrote {path}')
    return path


def write_json(path: Union[str, Path], obj: Any) -> Path:
    return _atomic_write(path, dumps(obj))


def region_csv(r: ConvexRegion2D) -> str:
    lines = ['x1,x2']
    digits = SIGNIFICANT_DIGITS
    lines.extend(f'{x1:.{digits}g},{x2:.{digits}g}' for x1, x2 in r.vertices)
    return '\n'.join(lines) + '\n'


def write_csv(path: Union[str, Path], r: ConvexRegion2D) -> Path:
    return _atomic_write(path, region_csv(r))


def _svg_points(vertices: Iterable[Sequence[float]]) -> str:
    # y axis points down in SVG
    return ' '.join(f'{x1:.4f},{1.0 - x2:.4f}' for x1, x2 in vertices)


def region_svg(
    jnr: Optional[ConvexRegion2D],
    jsnr: Optional[ConvexRegion2D],
    markers: Sequence[TupleClassification] = ()
) -> str:
    """JNR outline over a filled JSNR on the unit square, with optional
    classified tuple markers."""
    colors = {'Detected': '#d62728', 'Compatible': '#2ca02c', 'Infeasible': '#7f7f7f'}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="-0.0500 -0.0500 1.1000 1.1000">',
        '<rect x="0.0000" y="0.0000" width="1.0000" height="1.0000" fill="none" '
        'stroke="#cccccc" stroke-width="0.0020"/>',
    ]
    if jsnr is not None:
        parts.append(
            f'<polygon class="jsnr" points="{_svg_points(jsnr.vertices)}" '
            'fill="#1f77b4" fill-opacity="0.35" stroke="#1f77b4" stroke-width="0.0030"/>')
    if jnr is not None:
        parts.append(
            f'<polygon class="jnr" points="{_svg_points(jnr.vertices)}" '
            'fill="none" stroke="#000000" stroke-width="0.0040"/>')
    for m in markers:
        x1, x2 = m.tuple
        parts.append(
            f'<circle class="tuple {m.verdict.lower()}" cx="{x1:.4f}" cy="{1.0 - x2:.4f}" '
            f'r="0.0120" fill="{colors[m.verdict]}"/>')
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'


def write_svg(path: Union[str, Path], svg: str) -> Path:
    return _atomic_write(path, svg)
