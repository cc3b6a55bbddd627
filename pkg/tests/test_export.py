import json
import numpy as np
from resources.lib.effectiveness import global_support
from resources.lib.export import (
    build_report, dumps, invariance_record, oracle_record, ppt_record, region_csv, region_svg,
    rounded, sig, support_record, write_csv, write_json,
)
from resources.lib.fixtures import bell_state, example1_pair, tiles_upb, upb_bound_state
from resources.lib.geometry import convex_hull
from resources.lib.jointrange import TupleClassification
from resources.lib.oracle import entanglement_oracle, lu_invariance_harness, ppt_check
from resources.lib.quantum import Dims, density_from_pure

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_sig():
    assert sig(1 / 3) == 0.333333333
    assert sig(123456789012.0) == 123456789000.0
    assert sig(0.0) == 0.0


def test_rounded():
    obj = {'x': np.float64(2 / 3), 'flags': (np.bool_(True), 3), 'z': 1 + 1j / 3,
           'v': np.array([0.1, 1e-12]), 'label': 'tile1'}

    assert rounded(obj) == {
        'x': 0.666666667,
        'flags': [True, 3],
        'z': [1.0, 0.333333333],
        'v': [0.1, 1e-12],
        'label': 'tile1',
    }


def test_build_report():
    report = build_report('analyze', {'seed': 7, 'tol': 1e-6}, {'value': 2 / 3})

    assert report == {
        'schema_version': 1,
        'command': 'analyze',
        'config': {'seed': 7, 'tol': 1e-6},
        'results': {'value': 0.666666667},
    }
    assert build_report('analyze', {}, {}, wall_time=0.5)['wall_time'] == 0.5


def test_dumps_is_deterministic():
    obj = {'b': [1 / 7, 2], 'a': None}

    assert dumps(obj) == dumps(json.loads(dumps(obj)))
    assert dumps(obj).endswith('\n')


def test_region_csv():
    assert region_csv(convex_hull(SQUARE)) == 'x1,x2\n0,0\n1,0\n1,1\n0,1\n'


def test_writes_leave_no_temporary_files(tmp_path):
    json_path = write_json(tmp_path / 'out' / 'report.json', {'value': 1 / 3})
    csv_path = write_csv(tmp_path / 'out' / 'region.csv', convex_hull(SQUARE))

    assert json.loads(json_path.read_text()) == {'value': 0.333333333}
    assert csv_path.read_text().startswith('x1,x2\n')
    assert sorted(p.name for p in (tmp_path / 'out').iterdir()) == ['region.csv', 'report.json']


def test_region_svg():
    jnr = convex_hull(SQUARE)
    jsnr = convex_hull([(0, 0), (0.5, 0), (0.5, 0.5), (0, 0.5)])
    marker = TupleClassification(np.array([0.75, 0.1]), 'Detected')

    svg = region_svg(jnr, jsnr, [marker])

    assert svg.startswith('<svg')
    assert 'class="jsnr"' in svg
    assert 'class="jnr"' in svg
    assert 'class="tuple detected"' in svg
    assert 'cy="0.9000"' in svg


def test_support_record():
    record = support_record(global_support(example1_pair(), [1, 1]))

    assert record['method'] == 'eigen'
    assert abs(record['value'] - 1.5) < 1e-12
    assert record['restarts'] is None
    json.loads(dumps(record))


def test_oracle_records():
    bell = density_from_pure(bell_state(), Dims(2, 2))
    bound = upb_bound_state(tiles_upb())

    npt = oracle_record(entanglement_oracle(bell))
    ces = oracle_record(entanglement_oracle(bound))

    assert npt['verdict'] == 'Entangled' and npt['reason'] == 'NPT'
    assert npt['ppt'] == ppt_record(ppt_check(bell))
    assert npt['ppt']['is_npt']
    assert ces['reason'] == 'CES-support'
    assert ces['certificate']['is_ces']
    assert json.loads(dumps(ces))['ppt']['subsystem'] == 'B'


def test_invariance_record():
    report = lu_invariance_harness(example1_pair(), trials=1, seed=4, directions=24)

    record = invariance_record(report)

    assert record['unitary'] == 'local'
    assert record['trials'] == 1
    assert record['passed'] == report.passed
    assert 'distances' not in record
