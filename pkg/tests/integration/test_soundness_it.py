import numpy as np
import pytest
from resources.lib.effectiveness import (
    ReferenceSet, build_witness, evaluate_witness, fidelity_tuple, global_support,
)
from resources.lib.fixtures import example1_pair, tiles_upb
from resources.lib.geometry import signed_distance
from resources.lib.grid import grid_separable_max
from resources.lib.jointrange import classify_tuple, jnr_two_pure, jsnr_two_product
from resources.lib.oracle import (
    entanglement_oracle, lu_invariance_harness, ppt_check, random_separable_state,
)
from resources.lib.quantum import (
    Dims, density_from_mixture, expectation, random_product_state, random_pure_state,
)
from resources.lib.seesaw import seesaw_maximize


@pytest.mark.parametrize('refs_factory, direction, restarts, tol', [
    (example1_pair, [1, 1], 10, 1e-9),
    (tiles_upb, [-1] * 5, 200, 1e-7),
])
def test_witness_never_fires_on_separable_states(refs_factory, direction, restarts, tol):
    refs = refs_factory()
    w = build_witness(refs, direction, restarts=restarts)
    rng = np.random.default_rng(2024)

    values = [evaluate_witness(w, random_separable_state(refs.dims, rng)) for _ in range(1000)]

    assert min(values) >= -tol


def test_separable_fidelities_stay_in_jsnr():
    refs = example1_pair()
    p1, p2 = refs.product_states()
    jsnr = jsnr_two_product(p1, p2)
    rng = np.random.default_rng(5)

    for _ in range(500):
        rho = random_separable_state(refs.dims, rng)
        assert signed_distance(jsnr, fidelity_tuple(rho, refs)) <= 1e-3


def test_pure_state_fidelities_stay_in_jnr():
    refs = example1_pair()
    p1, p2 = refs.product_states()
    jnr = jnr_two_pure(p1, p2, refs.dims.total)
    rng = np.random.default_rng(6)

    for _ in range(500):
        psi = random_pure_state(refs.dims.total, rng)
        assert signed_distance(jnr, refs.fidelities(psi)) <= 1e-6


def test_local_unitaries_keep_jsnr_and_global_ones_move_it():
    refs = example1_pair()

    local = lu_invariance_harness(refs, trials=20, seed=11, unitary='local')
    moved = lu_invariance_harness(refs, trials=5, seed=11, unitary='global')

    assert local.passed
    assert moved.max_hausdorff > 5e-3


def test_grid_and_seesaw_agree_on_random_directions():
    refs = example1_pair()
    rng = np.random.default_rng(8)

    for _ in range(10):
        n = rng.standard_normal(2)
        m = refs.operator(n)
        grid = grid_separable_max(m, refs.dims, 200)
        seesaw = seesaw_maximize(m, refs.dims, 10, seed=int(rng.integers(1000)))
        assert grid.value <= seesaw.value + 1e-9
        assert abs(grid.value - seesaw.value) < 5e-3


def test_random_product_states_respect_separable_support():
    refs = example1_pair()
    w = build_witness(refs, [1, 1])
    rng = np.random.default_rng(9)

    for _ in range(200):
        point = refs.fidelities(random_product_state(refs.dims, rng))
        assert point.sum() <= w.alpha + 1e-9


def test_witness_alpha_is_never_below_the_grid():
    dims = Dims(2, 2)
    rng = np.random.default_rng(2025)

    for _ in range(200):
        refs = ReferenceSet(
            [random_product_state(dims, rng), random_product_state(dims, rng)], dims)
        n = rng.standard_normal(2)
        w = build_witness(refs, n)
        grid = grid_separable_max(refs.operator(n), dims)

        assert w.alpha >= grid.value - 1e-7
        assert expectation(w.operator, grid.maximizer) >= -1e-7


def test_two_qubit_separable_mixtures_are_ppt():
    rng = np.random.default_rng(12)

    for _ in range(1000):
        assert not ppt_check(random_separable_state(Dims(2, 2), rng)).is_npt


def test_oracle_never_calls_detected_states_separable():
    refs = example1_pair()
    w = build_witness(refs, [1, 1])
    top = global_support(refs, [1, 1]).argmax_state
    rng = np.random.default_rng(14)
    detected = 0

    for _ in range(200):
        p = rng.uniform(0.95, 1.0)
        noise = random_product_state(refs.dims, rng)
        rho = density_from_mixture([top, noise], [p, 1.0 - p], refs.dims)
        if evaluate_witness(w, rho) < -1e-9:
            detected += 1
            assert entanglement_oracle(rho).verdict != 'Separable'

    assert detected > 50


def test_separable_tuples_are_never_detected():
    refs = example1_pair()
    p1, p2 = refs.product_states()
    jnr = jnr_two_pure(p1, p2, refs.dims.total)
    jsnr = jsnr_two_product(p1, p2)
    rng = np.random.default_rng(15)

    for _ in range(500):
        x = fidelity_tuple(random_separable_state(refs.dims, rng), refs)
        assert classify_tuple(x, jnr, jsnr).verdict != 'Detected'
