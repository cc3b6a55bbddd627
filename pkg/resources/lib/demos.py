"""The two end-to-end demonstrations: the two-qubit pair |00>, |++> and the
Tiles UPB in 3x3."""
import numpy as np
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List
from src.documents import CheckRecord
from .. import CES_TOL, DEFAULT_SEED, GRID_RESOLUTION, MARGIN_TOL
from . import logger
from .effectiveness import (
    build_witness, evaluate_witness, fidelity_tuple, global_support, pair_effective,
    separable_support, set_effective,
)
from .export import (
    certificate_record, classification_record, invariance_record, oracle_record, ppt_record,
    region_record, region_svg, support_record, verdict_record, write_csv, write_svg,
)
from .fixtures import example1_pair, tiles_upb, upb_bound_state
from .geometry import hausdorff_distance, region_contains, swapped
from .jointrange import (
    EllipseRegion, classify_tuple, ellipse_boundary, jnr_two_pure, jsnr_two_product,
    sampled_region,
)
from .oracle import entanglement_oracle, lu_invariance_harness, ppt_check
from .quantum import density_from_pure, normalize, state_vector
from .subspace import max_ces_dimension, orthogonal_complement, span_orthonormal_basis

EXAMPLE1_ALPHA = 0.75 + np.sqrt(2) / 2
ORACLE_TOL = 5e-3
DEMO_LU_TRIALS = 3

DEMOS = ('example1', 'tiles-upb')


class Checks:
    def __init__(self):
        self.entries: List[Dict[str, Any]] = []

    def add(self, name: str, passed: bool, value: Any = None) -> bool:
        passed = bool(passed)
        if not passed:
            logger.warning(f'Check failed: {name} (value {value})')
        self.entries.append(CheckRecord(name=name, passed=passed, value=value).model_dump())
        return passed

    @property
    def all_passed(self) -> bool:
        return all(e['passed'] for e in self.entries)


def example1(out_dir: Path, seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    refs = example1_pair()
    p1, p2 = refs.product_states()
    checks = Checks()

    boundary = ellipse_boundary(EllipseRegion(0.25))
    residual = np.abs((boundary.sum(axis=1) - 0.75) ** 2 - boundary[:, 0] * boundary[:, 1])
    checks.add('jnr_conic_residual', residual.max() < 1e-8, float(residual.max()))
    for name, point in (('intercept_x2', (0.0, 0.75)), ('intercept_x1', (0.75, 0.0))):
        gap = float(np.min(np.linalg.norm(boundary - np.array(point), axis=1)))
        checks.add(f'jnr_{name}', gap < 1e-6, gap)

    verdict = pair_effective(p1, p2, seed=seed)
    checks.add('pair_effective', verdict.effective, verdict.describe())

    top = global_support(refs, [1, 1])
    checks.add('lambda_max', abs(top.value - 1.5) < 1e-9, top.value)

    witness = build_witness(refs, [1, 1], seed=seed)
    grid_witness = build_witness(refs, [1, 1], method='grid', resolution=GRID_RESOLUTION)
    checks.add('alpha_seesaw', abs(witness.alpha - EXAMPLE1_ALPHA) < ORACLE_TOL, witness.alpha)
    checks.add('alpha_grid', abs(grid_witness.alpha - EXAMPLE1_ALPHA) < ORACLE_TOL,
               grid_witness.alpha)
    checks.add('seesaw_grid_agree', abs(witness.alpha - grid_witness.alpha) < ORACLE_TOL,
               witness.alpha - grid_witness.alpha)
    checks.add('margin', witness.is_effective(MARGIN_TOL), witness.margin)

    psi = normalize(state_vector(p1) + state_vector(p2))
    value = evaluate_witness(witness, density_from_pure(psi, refs.dims))
    checks.add('witness_detects_top_state', abs(value + witness.margin) < ORACLE_TOL, value)

    jnr = jnr_two_pure(p1, p2, refs.dims.total)
    jsnr = jsnr_two_product(p1, p2)
    for point in ((0.0, 0.5), (0.5, 0.0), (1.0, 0.25)):
        checks.add(f'jsnr_contains_{point[0]:g}_{point[1]:g}', region_contains(jsnr, point), point)
    checks.add('jsnr_excludes_0.75_0', not region_contains(jsnr, (0.75, 0.0)), (0.75, 0.0))
    checks.add('jsnr_symmetric', hausdorff_distance(jsnr, swapped(jsnr)) < ORACLE_TOL,
               hausdorff_distance(jsnr, swapped(jsnr)))

    sampled = sampled_region(refs, 'jsnr', seed=seed)
    drift = hausdorff_distance(jsnr, sampled)
    checks.add('jsnr_sampled_vs_products', drift < ORACLE_TOL, drift)
    sampled_jnr = sampled_region(refs, 'jnr')
    checks.add('jnr_sampled_vs_analytic', hausdorff_distance(jnr, sampled_jnr) < 1e-3,
               hausdorff_distance(jnr, sampled_jnr))

    invariance = lu_invariance_harness(refs, trials=DEMO_LU_TRIALS, seed=seed)
    checks.add('local_unitary_invariance', invariance.passed, invariance.max_hausdorff)

    expected = {(0.75, 0.0): 'Detected', (0.25, 0.25): 'Compatible', (0.9, 0.9): 'Infeasible'}
    classifications = []
    for point, verdict_name in expected.items():
        c = classify_tuple(point, jnr, jsnr)
        classifications.append(c)
        checks.add(f'classify_{point[0]:g}_{point[1]:g}', c.verdict == verdict_name, c.verdict)

    out_dir = Path(out_dir)
    jnr_csv = write_csv(out_dir / 'example1_jnr.csv', jnr)
    jsnr_csv = write_csv(out_dir / 'example1_jsnr.csv', jsnr)
    svg = write_svg(out_dir / 'fig_example1.svg', region_svg(jnr, jsnr, classifications))

    return {
        'verdict': verdict_record(verdict),
        'lambda_max': top.value,
        'alpha_seesaw': witness.alpha,
        'alpha_grid': grid_witness.alpha,
        'margin': witness.margin,
        'supports': [
            support_record(top),
            support_record(separable_support(refs, [1, 1], seed=seed)),
            support_record(separable_support(refs, [1, 1], method='grid')),
        ],
        'local_unitaries': invariance_record(invariance),
        'regions': {
            'jnr': region_record(jnr, jnr_csv),
            'jsnr': region_record(jsnr, jsnr_csv),
            'sampled_jsnr': region_record(sampled),
        },
        'classifications': [classification_record(c) for c in classifications],
        'svg': str(svg),
        'checks': checks.entries,
        'all_checks_passed': checks.all_passed,
    }


def tiles_upb_demo(seed: int = DEFAULT_SEED, tol: float = CES_TOL) -> Dict[str, Any]:
    refs = tiles_upb()
    checks = Checks()

    worst = max(abs(np.vdot(u, v)) for u, v in combinations(refs.vectors(), 2))
    checks.add('pairwise_orthogonal', worst < 1e-12, float(worst))

    complement = orthogonal_complement(span_orthonormal_basis(refs.states, refs.dims))
    bound = max_ces_dimension(refs.dims)
    checks.add('complement_dim', complement.dim == bound, complement.dim)

    full = set_effective(refs, tol=tol, verify=False, seed=seed)
    checks.add('full_set_effective', full.effective and full.reason == 'ComplementCES',
               full.describe())

    subsets = []
    for dropped in range(refs.k):
        keep = [i for i in range(refs.k) if i != dropped]
        verdict = set_effective(refs.subset(keep), tol=tol, verify=False, seed=seed)
        subsets.append({'dropped': dropped, 'verdict': verdict_record(verdict)})
        checks.add(f'subset_without_{dropped + 1}_ineffective', not verdict.effective,
                   verdict.describe())

    witness = build_witness(refs, -np.ones(refs.k), seed=seed)
    checks.add('witness_lambda_max_zero', abs(witness.lambda_max) < 1e-9, witness.lambda_max)
    checks.add('witness_alpha_negative', witness.alpha < -1e-3, witness.alpha)

    rho = upb_bound_state(refs)
    fidelities = fidelity_tuple(rho, refs)
    checks.add('bound_state_at_origin', np.max(np.abs(fidelities)) < 1e-10, fidelities)
    ppt = ppt_check(rho)
    checks.add('bound_state_ppt', not ppt.is_npt, ppt.min_eigenvalue)
    value = evaluate_witness(witness, rho)
    checks.add('bound_state_detected', value < 0 and abs(value - witness.alpha) < 1e-9, value)
    oracle = entanglement_oracle(rho, tol=tol, seed=seed)
    checks.add('oracle_ces_support', oracle.describe() == 'Entangled(CES-support)',
               oracle.describe())

    return {
        'full_set': verdict_record(full),
        'subsets': subsets,
        'complement_dim': complement.dim,
        'max_ces_dimension': bound,
        'certificate': certificate_record(full.evidence),
        'witness': {
            'alpha': witness.alpha,
            'lambda_max': witness.lambda_max,
            'margin': witness.margin,
        },
        'bound_state': {
            'fidelity_tuple': fidelities,
            'witness_value': value,
            'ppt': ppt_record(ppt),
            'oracle': oracle_record(oracle),
        },
        'checks': checks.entries,
        'all_checks_passed': checks.all_passed,
    }


def run_demo(name: str, out_dir: Path, seed: int = DEFAULT_SEED, tol: float = CES_TOL):
    if name == 'example1':
        return example1(out_dir, seed)
    elif name == 'tiles-upb':
        return tiles_upb_demo(seed, tol)
    raise ValueError(f'Unknown demo: {name}')
