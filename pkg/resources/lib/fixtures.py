"""Bundled reference sets.

The Tiles UPB in 3x3 is five pairwise orthogonal product states whose
orthogonal complement holds no product vector. Its orthogonality is checked
whenever it is built; complete entanglement of the complement is checked by
the tiles-upb demo with the seesaw certificate.
"""
import numpy as np
from itertools import combinations
from typing import List
from .effectiveness import ReferenceSet
from .quantum import DensityOperator, Dims, ProductState, normalize, overlap, product_state
from .subspace import orthogonal_complement, span_orthonormal_basis

ORTHOGONALITY_TOL = 1e-12

_S = 1 / np.sqrt(2)

KET_0 = (1, 0)
KET_1 = (0, 1)
KET_PLUS = (_S, _S)
KET_MINUS = (_S, -_S)


def example1_pair() -> ReferenceSet:
    """|00> and |++>: c = 1/4, c_A = c_B = 1/2."""
    return ReferenceSet(
        [product_state(KET_0, KET_0), product_state(KET_PLUS, KET_PLUS)],
        Dims(2, 2),
        ['00', '++'],
    )


def orthogonal_pair() -> ReferenceSet:
    return ReferenceSet(
        [product_state(KET_0, KET_0), product_state(KET_1, KET_1)], Dims(2, 2), ['00', '11'])


def shared_factor_pair() -> ReferenceSet:
    return ReferenceSet(
        [product_state(KET_0, KET_0), product_state(KET_0, KET_PLUS)], Dims(2, 2), ['00', '0+'])


def bell_state():
    return normalize([1, 0, 0, 1])


def tiles_states() -> List[ProductState]:
    return [
        product_state((1, 0, 0), (1, -1, 0)),
        product_state((0, 0, 1), (0, 1, -1)),
        product_state((1, -1, 0), (0, 0, 1)),
        product_state((0, 1, -1), (1, 0, 0)),
        product_state((1, 1, 1), (1, 1, 1)),
    ]


def tiles_upb() -> ReferenceSet:
    states = tiles_states()
    for i, j in combinations(range(len(states)), 2):
        value = abs(overlap(states[i], states[j]))
        if value > ORTHOGONALITY_TOL:
            raise ValueError(f'Tiles states {i + 1} and {j + 1} overlap by {value:.3g}')
    return ReferenceSet(states, Dims(3, 3), [f'tile{i + 1}' for i in range(len(states))])


def upb_bound_state(refs: ReferenceSet) -> DensityOperator:
    """Normalized projector onto the orthogonal complement of the references."""
    complement = orthogonal_complement(span_orthonormal_basis(refs.states, refs.dims))
    if complement.dim == 0:
        raise ValueError('The references span the whole space')
    return DensityOperator(complement.projector() / complement.dim, refs.dims)
