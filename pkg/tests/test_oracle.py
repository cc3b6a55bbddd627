import pytest
from resources.lib.fixtures import bell_state, example1_pair, tiles_upb, upb_bound_state
from resources.lib.oracle import (
    entanglement_oracle, lu_invariance_harness, ppt_check, random_separable_state,
    separable_product_states,
)
from resources.lib.quantum import Dims, density_from_pure, maximally_mixed


def test_ppt_check():
    bell = ppt_check(density_from_pure(bell_state(), Dims(2, 2)))
    mixed = ppt_check(maximally_mixed(Dims(2, 2)))

    assert bell.is_npt
    assert bell.min_eigenvalue == pytest.approx(-0.5)
    assert not mixed.is_npt
    assert mixed.min_eigenvalue == pytest.approx(0.25)


def test_oracle_on_bell_state():
    verdict = entanglement_oracle(density_from_pure(bell_state(), Dims(2, 2)))

    assert verdict.describe() == 'Entangled(NPT)'


def test_oracle_on_two_qubit_mixture():
    verdict = entanglement_oracle(maximally_mixed(Dims(2, 2)))

    assert verdict.describe() == 'Separable'


def test_oracle_on_tiles_bound_state():
    rho = upb_bound_state(tiles_upb())

    verdict = entanglement_oracle(rho)

    assert not verdict.ppt.is_npt
    assert verdict.describe() == 'Entangled(CES-support)'
    assert verdict.certificate.is_ces
    assert verdict.certificate.subspace_dim == 4


def test_oracle_gives_up_on_full_rank_qutrits():
    verdict = entanglement_oracle(maximally_mixed(Dims(3, 3)))

    assert verdict.describe() == 'Unknown'


def test_random_separable_state():
    dims = Dims(3, 3)

    rho = random_separable_state(dims, seed=11)

    assert not ppt_check(rho).is_npt
    assert (rho.entries == random_separable_state(dims, seed=11).entries).all()


def test_separable_product_states():
    states = separable_product_states(Dims(2, 3), 5, seed=1)

    assert len(states) == 5
    assert all(p.dims == Dims(2, 3) for p in states)


def test_identity_leaves_sampled_region_in_place():
    report = lu_invariance_harness(example1_pair(), trials=1, unitary='identity')

    assert report.max_hausdorff == 0.0
    assert report.passed


def test_local_unitaries_keep_sampled_region():
    report = lu_invariance_harness(example1_pair(), trials=2, seed=3)

    assert report.unitary == 'local'
    assert len(report.distances) == 2
    assert report.passed
