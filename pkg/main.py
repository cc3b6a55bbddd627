"""Command line for multiple-fidelity entanglement detection.

    python3 main.py analyze resources/examples/example1.json
    python3 main.py range resources/examples/example1.json --mode both --svg fig.svg
    python3 main.py witness resources/examples/tiles_upb.json --direction=-1,-1,-1,-1,-1
    python3 main.py classify resources/examples/example1.json --tuple 0.75,0
    python3 main.py demo tiles-upb --out artifacts

Reports are JSON on stdout, or <command>.json under --out. Logging goes to
stderr.
"""
import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from pydantic import ValidationError
from resources.lib import (
    CES_RESTARTS, CES_TOL, CLASSIFY_TOL, DEFAULT_SEED, ELLIPSE_COSPHIS, ELLIPSE_THETAS,
    GRID_RESOLUTION, MARGIN_TOL, SUPPORT_RESTARTS, SWEEP_DIRECTIONS,
)
from resources.lib import logger
from resources.lib.demos import DEMOS, run_demo
from resources.lib.effectiveness import (
    ReferenceSet, build_witness, evaluate_witness, fidelity_tuple, pair_effective, set_effective,
)
from resources.lib.errors import (
    DimensionMismatch, InvalidDensityOperator, InvalidParameter, JsnrError, LinearlyDependent,
    NotProductState, ZeroVector,
)
from resources.lib.export import (
    build_report, classification_record, dumps, region_record, region_svg, verdict_record,
    witness_record, write_csv, write_json, write_svg,
)
from resources.lib.geometry import hausdorff_distance
from resources.lib.inputs import LoadedInput, load_input
from resources.lib.jointrange import (
    classify_by_support, classify_tuple, jnr_two_pure, jsnr_two_product, sampled_region,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SCHEMA = 2
EXIT_DEGENERATE = 3
EXIT_ARITY = 4

HAUSDORFF_TOL = 5e-3


def float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma separated numbers, got {text!r}')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='base random seed')
    common.add_argument('--tol', type=float, default=CES_TOL, help='CES tolerance')
    common.add_argument('--out', metavar='DIR', help='write reports and artifacts under DIR')
    common.add_argument('--quiet', action='store_true', help='log warnings and errors only')
    common.add_argument('--timing', action='store_true', help='add wall time to the report')

    parser = argparse.ArgumentParser(
        prog='jsnr', description='Entanglement detection with multiple fidelity measurements')
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', parents=[common], help='effectiveness of a set')
    analyze.add_argument('input')

    ranges = commands.add_parser('range', parents=[common], help='JNR and JSNR of a pair')
    ranges.add_argument('input')
    ranges.add_argument('--mode', choices=('jnr', 'jsnr', 'both'), default='both')
    ranges.add_argument('--directions', type=int, default=SWEEP_DIRECTIONS)
    ranges.add_argument('--density', type=int, default=ELLIPSE_THETAS,
                        help='angle samples per local ellipse')
    ranges.add_argument('--csv', metavar='PREFIX', help='write PREFIX_<region>.csv')
    ranges.add_argument('--svg', metavar='PATH', help='write an SVG overlay')

    witness = commands.add_parser('witness', parents=[common], help='build a witness')
    witness.add_argument('input')
    witness.add_argument('--direction', type=float_list, required=True,
                         help='n1,...,nk (use --direction=-1,... for negative values)')
    witness.add_argument('--method', choices=('seesaw', 'grid'), default='seesaw')

    classify = commands.add_parser('classify', parents=[common], help='classify fidelity tuples')
    classify.add_argument('input')
    classify.add_argument('--tuple', type=float_list, action='append', default=[],
                          help='x1,...,xk (repeatable; tuples in the input are added)')
    classify.add_argument('--by-support', action='store_true',
                          help='classify through support functions, for any number of states')

    demo = commands.add_parser('demo', parents=[common], help='run a bundled demonstration')
    demo.add_argument('name', choices=DEMOS)

    return parser


def require_pair(refs: ReferenceSet) -> None:
    if refs.k != 2:
        raise DimensionMismatch(f'This command needs exactly 2 reference states, got {refs.k}')


def cmd_analyze(args: argparse.Namespace, loaded: LoadedInput) -> Dict[str, Any]:
    refs = loaded.refs
    verdict = set_effective(refs, tol=args.tol, seed=args.seed)
    logger.info(f'{refs.k} references in {refs.dims}: {verdict.describe()}')

    pairs = []
    if refs.is_product:
        states = refs.product_states()
        for i in range(refs.k):
            for j in range(i + 1, refs.k):
                v = pair_effective(states[i], states[j], seed=args.seed)
                pairs.append({
                    'pair': [i + 1, j + 1],
                    'labels': [refs.label(i), refs.label(j)],
                    'verdict': verdict_record(v),
                })
    else:
        logger.warning('Some references are not product states, pair analysis skipped')

    return {
        'dims': [refs.dims.d_a, refs.dims.d_b],
        'labels': [refs.label(i) for i in range(refs.k)],
        'effective': verdict.effective,
        'verdict': verdict_record(verdict),
        'pairs': pairs,
    }


def _region_pair(analytic, sampled, name: str, prefix: Optional[str]) -> Dict[str, Any]:
    distance = hausdorff_distance(analytic, sampled)
    paths = {}
    if prefix:
        paths['analytic'] = write_csv(f'{prefix}_{name}.csv', analytic)
        paths['sampled'] = write_csv(f'{prefix}_{name}_sampled.csv', sampled)
    return {
        'analytic': region_record(analytic, paths.get('analytic')),
        'sampled': region_record(sampled, paths.get('sampled')),
        'hausdorff': distance,
        'hausdorff_within_tolerance': distance < HAUSDORFF_TOL,
    }


def cmd_range(args: argparse.Namespace, loaded: LoadedInput) -> Dict[str, Any]:
    refs = loaded.refs
    require_pair(refs)
    psi1, psi2 = refs.states

    jnr = jsnr = None
    regions = {}
    if args.mode in ('jnr', 'both'):
        jnr = jnr_two_pure(psi1, psi2, refs.dims.total)
        sampled = sampled_region(refs, 'jnr', directions=args.directions)
        regions['jnr'] = _region_pair(jnr, sampled, 'jnr', args.csv)
    if args.mode in ('jsnr', 'both'):
        p1, p2 = refs.product_states()
        jsnr = jsnr_two_product(p1, p2, density=args.density)
        sampled = sampled_region(refs, 'jsnr', directions=args.directions, seed=args.seed)
        regions['jsnr'] = _region_pair(jsnr, sampled, 'jsnr', args.csv)

    results: Dict[str, Any] = {'mode': args.mode, 'regions': regions}
    if args.svg:
        results['svg'] = str(write_svg(args.svg, region_svg(jnr, jsnr)))
    return results


def cmd_witness(args: argparse.Namespace, loaded: LoadedInput) -> Dict[str, Any]:
    refs = loaded.refs
    opts = {'seed': args.seed}
    if args.method == 'grid':
        opts['resolution'] = GRID_RESOLUTION
    w = build_witness(refs, args.direction, method=args.method, **opts)
    logger.info(f'alpha {w.alpha:.9g}, lambda_max {w.lambda_max:.9g}, margin {w.margin:.9g}')

    results: Dict[str, Any] = {
        'witness': witness_record(w, MARGIN_TOL),
        'verdict': 'witness' if w.is_effective(MARGIN_TOL) else 'not a witness',
    }
    if loaded.density is not None:
        value = evaluate_witness(w, loaded.density)
        results['state'] = {
            'value': value,
            'fidelity_tuple': fidelity_tuple(loaded.density, refs),
            'verdict': 'detected' if value < -MARGIN_TOL else 'not detected',
        }
    return results


def cmd_classify(args: argparse.Namespace, loaded: LoadedInput) -> Dict[str, Any]:
    refs = loaded.refs
    tuples = list(args.tuple) + [t.tolist() for t in loaded.tuples]
    if not tuples:
        raise DimensionMismatch('No tuple to classify, pass --tuple or add tuples to the input')
    for t in tuples:
        if len(t) != refs.k:
            raise DimensionMismatch(f'Tuple {t} has {len(t)} entries for {refs.k} references')

    if args.by_support:
        classified = [classify_by_support(t, refs, seed=args.seed) for t in tuples]
        return {'method': 'support', 'classifications': [
            classification_record(c) for c in classified]}

    require_pair(refs)
    p1, p2 = refs.product_states()
    jnr = jnr_two_pure(p1, p2, refs.dims.total)
    jsnr = jsnr_two_product(p1, p2)
    classified = [classify_tuple(t, jnr, jsnr) for t in tuples]
    for c in classified:
        logger.info(f'{c.tuple.tolist()}: {c.verdict}')

    results: Dict[str, Any] = {
        'method': 'regions',
        'classifications': [classification_record(c) for c in classified],
    }
    if args.out:
        results['svg'] = str(write_svg(
            Path(args.out) / 'classify.svg', region_svg(jnr, jsnr, classified)))
    return results


def config_echo(args: argparse.Namespace) -> Dict[str, Any]:
    config = {
        'seed': args.seed,
        'ces_tol': args.tol,
        'ces_restarts': CES_RESTARTS,
        'margin_tol': MARGIN_TOL,
        'support_restarts': SUPPORT_RESTARTS,
    }
    if args.command == 'range':
        config.update({
            'mode': args.mode,
            'directions': args.directions,
            'density': args.density,
            'cosphis': ELLIPSE_COSPHIS,
            'hausdorff_tol': HAUSDORFF_TOL,
        })
    elif args.command == 'witness':
        config.update({'direction': args.direction, 'method': args.method})
        if args.method == 'grid':
            config['grid_resolution'] = GRID_RESOLUTION
    elif args.command == 'classify':
        config.update({'classify_tol': CLASSIFY_TOL, 'by_support': args.by_support})
    elif args.command == 'demo':
        config.update({'demo': args.name, 'grid_resolution': GRID_RESOLUTION})
    if getattr(args, 'input', None):
        config['input'] = args.input
    return config


def emit(report: Dict[str, Any], args: argparse.Namespace, name: str) -> None:
    if args.out:
        write_json(Path(args.out) / f'{name}.json', report)
    else:
        sys.stdout.write(dumps(report))


def run(args: argparse.Namespace) -> Dict[str, Any]:
    started = time.perf_counter()
    if args.command == 'demo':
        results = run_demo(args.name, Path(args.out or '.'), seed=args.seed, tol=args.tol)
    else:
        loaded = load_input(args.input)
        if args.command == 'analyze':
            results = cmd_analyze(args, loaded)
        elif args.command == 'range':
            results = cmd_range(args, loaded)
        elif args.command == 'witness':
            results = cmd_witness(args, loaded)
        elif args.command == 'classify':
            results = cmd_classify(args, loaded)
        else:
            raise ValueError(f'Unknown command: {args.command}')

    wall_time = time.perf_counter() - started if args.timing else None
    return build_report(args.command, config_echo(args), results, wall_time)


def router(argv: Sequence[str]) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet:
        logger.set_level(logger.LOGWARNING)

    try:
        report = run(args)
    except (ValidationError, json.JSONDecodeError, FileNotFoundError, NotProductState,
            InvalidDensityOperator, InvalidParameter, ZeroVector) as e:
        logger.error(f'Invalid input: {e}')
        return EXIT_SCHEMA
    except LinearlyDependent as e:
        logger.error(f'Degenerate input: {e}')
        return EXIT_DEGENERATE
    except DimensionMismatch as e:
        logger.error(f'Arity mismatch: {e}')
        return EXIT_ARITY
    except JsnrError as e:
        logger.error(str(e))
        return EXIT_FAILURE

    name = f'demo_{args.name}' if args.command == 'demo' else args.command
    emit(report, args, name)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(router(sys.argv[1:]))
