import numpy as np
import pytest
from resources.lib.effectiveness import (
    ReferenceSet, build_witness, classes_block_operators, direction_sweep, evaluate_witness,
    fidelity_tuple, fidelity_witness, global_support, pair_effective, reference_set_from,
    separable_support, set_effective, single_observable_effective,
)
from resources.lib.errors import (
    DimensionMismatch, InvalidParameter, LinearlyDependent, NotProductState,
)
from resources.lib.fixtures import (
    KET_0, KET_1, KET_PLUS, bell_state, example1_pair, orthogonal_pair, shared_factor_pair,
    tiles_upb,
)
from resources.lib.grid import grid_separable_max
from resources.lib.quantum import (
    Dims, density_from_pure, expectation, maximally_mixed, normalize, overlap, product_state,
    projector, random_product_state, random_pure_state, state_vector,
)

EXAMPLE1_MARGIN = 1.5 - (0.75 + np.sqrt(2) / 2)


def test_reference_set_rejects_proportional_states():
    p = product_state(KET_0, KET_PLUS)
    q = product_state(KET_0, [-1, -1])

    with pytest.raises(LinearlyDependent):
        ReferenceSet([p, q], Dims(2, 2))


def test_reference_set_rejects_dependent_set():
    states = [
        product_state(KET_0, KET_0),
        product_state(KET_0, KET_1),
        product_state(KET_0, KET_PLUS),
        product_state(KET_PLUS, KET_PLUS),
    ]

    with pytest.raises(LinearlyDependent):
        ReferenceSet(states, Dims(2, 2))


def test_reference_set_rejects_wrong_dims():
    with pytest.raises(DimensionMismatch):
        ReferenceSet([product_state(KET_0, KET_0)], Dims(2, 3))


def test_example1_pair_is_effective():
    p1, p2 = example1_pair().product_states()

    verdict = pair_effective(p1, p2)

    assert verdict.effective
    assert verdict.describe() == 'EffectivePair(1,2)'
    assert verdict.witness_margin == pytest.approx(EXAMPLE1_MARGIN, abs=1e-6)


def test_orthogonal_pair():
    verdict = pair_effective(*orthogonal_pair().product_states())

    assert not verdict.effective
    assert verdict.reason == 'OrthogonalPair'


def test_shared_factor_pair():
    verdict = pair_effective(*shared_factor_pair().product_states())

    assert not verdict.effective
    assert verdict.reason == 'SharedFactorPair'


def test_orthogonality_is_reported_before_shared_factor():
    verdict = pair_effective(product_state(KET_0, KET_0), product_state(KET_0, KET_1))

    assert verdict.reason == 'OrthogonalPair'


def test_set_effective_on_pairs():
    assert set_effective(example1_pair()).describe() == 'EffectivePair(1,2)'
    assert set_effective(orthogonal_pair()).reason == 'OrthogonalPair'
    assert set_effective(shared_factor_pair()).reason == 'SharedFactorPair'


def test_set_effective_finds_pair_inside_larger_set():
    refs = ReferenceSet(
        [
            product_state(KET_0, KET_0),
            product_state(KET_1, KET_1),
            product_state(KET_PLUS, KET_PLUS),
        ],
        Dims(2, 2),
    )

    verdict = set_effective(refs, verify=False)

    assert verdict.effective
    assert verdict.pair == (0, 2)
    assert verdict.direction.tolist() == [1.0, 0.0, 1.0]


def test_tiles_upb_is_effective():
    verdict = set_effective(tiles_upb())

    assert verdict.effective
    assert verdict.reason == 'ComplementCES'
    assert verdict.evidence.is_ces
    assert verdict.direction.tolist() == [-1.0] * 5
    assert verdict.witness_margin > 1e-3


@pytest.mark.parametrize('dropped', range(5))
def test_tiles_subsets_are_not_effective(dropped):
    refs = tiles_upb()

    verdict = set_effective(refs.subset([i for i in range(5) if i != dropped]), verify=False)

    assert not verdict.effective
    assert verdict.reason == 'ComplementNotCES'
    assert verdict.evidence.decided_by == 'dimension_bound'
    assert verdict.evidence.restarts_used > 0


def test_spanning_set_has_empty_complement():
    refs = ReferenceSet(
        [product_state(a, b) for a in (KET_0, KET_1) for b in (KET_0, KET_1)], Dims(2, 2))

    verdict = set_effective(refs)

    assert not verdict.effective
    assert verdict.reason == 'ComplementNotCES'
    assert verdict.evidence is None


def test_single_observable_effective():
    bell = single_observable_effective(projector(bell_state()), Dims(2, 2))
    product = single_observable_effective(projector(product_state(KET_0, KET_0)), Dims(2, 2))
    local = single_observable_effective(np.diag([1.0, 1.0, 0.0, 0.0]), Dims(2, 2))

    assert bell.effective and bell.reason == 'MaxEigenspaceCES'
    assert product.reason == 'MaxEigenspaceNotCES'
    assert local.reason == 'MaxEigenspaceNotCES'
    assert local.evidence.decided_by == 'dimension_bound'


def test_global_support_of_example1():
    query = global_support(example1_pair(), [1, 1])

    assert query.value == pytest.approx(1.5)
    assert query.point.tolist() == pytest.approx([0.75, 0.75])
    assert query.method == 'eigen'


def test_separable_support_grid_fallback_for_qutrits():
    refs = tiles_upb()

    query = separable_support(refs.subset([0, 4]), [1, 1], method='grid', restarts=2)

    assert query.oracle == 'seesaw'
    assert query.restarts >= 2


def test_direction_arity_is_checked():
    with pytest.raises(DimensionMismatch):
        global_support(example1_pair(), [1, 1, 1])


def test_direction_must_be_finite():
    with pytest.raises(InvalidParameter):
        build_witness(example1_pair(), [float('nan'), 1])


def test_two_projectors_peak_at_one_plus_overlap():
    rng = np.random.default_rng(41)

    for _ in range(100):
        psi1, psi2 = random_pure_state(6, rng), random_pure_state(6, rng)
        refs = ReferenceSet([psi1, psi2], Dims(2, 3))
        expected = 1.0 + abs(overlap(psi1, psi2))
        assert global_support(refs, [1, 1]).value == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize('refs_factory', [example1_pair, lambda: tiles_upb().subset([0, 2])])
def test_separable_support_scales_with_direction(refs_factory):
    refs = refs_factory()
    n = np.array([0.8, -0.3])

    base = separable_support(refs, n).value
    scaled = separable_support(refs, 2.5 * n).value

    assert scaled == pytest.approx(2.5 * base, abs=1e-8)


@pytest.mark.parametrize('n', [[1, 1], [1, -0.5], [-1, 0.3], [0.2, 1]])
def test_supports_depend_only_on_fidelities(n):
    qubits = example1_pair()
    plus3 = [1, 1, 0]
    qutrits = ReferenceSet(
        [product_state([1, 0, 0], [1, 0, 0]), product_state(plus3, plus3)], Dims(3, 3))

    assert separable_support(qutrits, n).value == pytest.approx(
        separable_support(qubits, n).value, abs=1e-7)
    assert global_support(qutrits, n).value == pytest.approx(
        global_support(qubits, n).value, abs=1e-9)


def test_separable_support_is_never_below_the_grid():
    dims = Dims(2, 2)
    rng = np.random.default_rng(117)

    for _ in range(25):
        refs = ReferenceSet(
            [random_product_state(dims, rng), random_product_state(dims, rng)], dims)
        n = rng.standard_normal(2)
        w = build_witness(refs, n)
        grid = grid_separable_max(refs.operator(n), dims)

        assert w.alpha >= grid.value - 1e-7
        assert expectation(w.operator, grid.maximizer) >= -1e-7


def test_witness_is_nonnegative_on_product_states():
    refs = example1_pair()
    w = build_witness(refs, [1, 1])

    states = [random_product_state(refs.dims, seed) for seed in range(200)]
    values = [expectation(w.operator, p) for p in states]

    assert w.is_effective()
    assert w.margin == pytest.approx(w.lambda_max - w.alpha)
    assert min(values) > -1e-9


def test_witness_detects_top_state():
    refs = example1_pair()
    w = build_witness(refs, [1, 1])
    p1, p2 = refs.product_states()
    psi = normalize(state_vector(p1) + state_vector(p2))

    value = evaluate_witness(w, density_from_pure(psi, refs.dims))

    assert value == pytest.approx(-w.margin, abs=1e-9)


def test_single_reference_direction_is_not_a_witness():
    w = build_witness(example1_pair(), [1, 0])

    assert w.margin == pytest.approx(0.0, abs=1e-9)
    assert not w.is_effective()


def test_fidelity_tuple_of_maximally_mixed_state():
    refs = tiles_upb()

    assert fidelity_tuple(maximally_mixed(refs.dims), refs).tolist() == pytest.approx([1 / 9] * 5)


def test_classes_block_operators():
    refs = ReferenceSet(
        [
            product_state(KET_0, KET_0),
            product_state(KET_0, KET_PLUS),
            product_state(KET_1, KET_1),
        ],
        Dims(2, 2),
    )
    n = [0.7, -1.3, 2.0]

    blocks = classes_block_operators(refs, n)

    assert len(blocks) == 2
    assert np.allclose(sum(b.entries for b in blocks), refs.operator(n))
    assert np.allclose(blocks[0].entries @ blocks[1].entries, 0.0)


def test_direction_sweep():
    effective = direction_sweep(example1_pair())
    orthogonal = direction_sweep(orthogonal_pair())

    assert effective.directions_tested == 72
    assert effective.any_effective()
    assert not orthogonal.any_effective()
    assert orthogonal.best_margin < 1e-6


def test_direction_sweep_on_shared_factor_pair():
    report = direction_sweep(shared_factor_pair())

    assert not report.any_effective()
    assert max(report.margins) < 1e-6


def test_fidelity_witness_for_bell_state():
    w = fidelity_witness(bell_state(), Dims(2, 2))

    assert w.alpha == pytest.approx(0.5)
    assert w.margin == pytest.approx(0.5)
    assert expectation(w.operator, w.maximizer) == pytest.approx(0.0, abs=1e-12)


def test_reference_set_from():
    refs = reference_set_from([product_state(KET_0, KET_0), product_state(KET_1, KET_PLUS)])

    assert refs.dims == Dims(2, 2)
    with pytest.raises(NotProductState):
        reference_set_from([bell_state()])
