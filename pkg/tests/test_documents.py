import json
import numpy as np
import pytest
from pathlib import Path
from pydantic import ValidationError
from resources.lib.effectiveness import build_witness
from resources.lib.export import certificate_record, rounded, witness_record
from resources.lib.fixtures import example1_pair, tiles_upb
from resources.lib.subspace import is_ces, orthogonal_complement, span_orthonormal_basis
from src.documents import (
    CertificateRecord, InputDocument, ProductRecord, WitnessRecord, from_pairs, to_pairs,
)

EXAMPLES = Path(__file__).parent.parent / 'resources' / 'examples'


def _document(**overrides):
    doc = {
        'dims': [2, 2],
        'states': [
            {'a': [[1, 0], [0, 0]], 'b': [[1, 0], [0, 0]]},
            {'a': [[0, 0], [1, 0]], 'b': [[0, 0], [1, 0]]},
        ],
    }
    doc.update(overrides)
    return doc


def test_parse_example1():
    doc = InputDocument.model_validate_json((EXAMPLES / 'example1.json').read_text())

    assert doc.dims == (2, 2)
    assert all(isinstance(s, ProductRecord) for s in doc.states)
    assert [s.label for s in doc.states] == ['00', '++']
    assert doc.tuples == [[0.75, 0.0], [0.25, 0.25], [0.9, 0.9]]


def test_pure_records():
    doc = InputDocument.model_validate(
        _document(states=[{'amplitudes': [[0.5, 0]] * 4, 'label': 'uniform'}]))

    assert doc.states[0].vector().tolist() == [0.5] * 4


@pytest.mark.parametrize('overrides', [
    {'dims': [1, 2]},
    {'states': [{'a': [[1, 0]], 'b': [[1, 0], [0, 0]]}]},
    {'states': [{'amplitudes': [[1, 0], [0, 0]]}]},
    {'states': []},
    {'tuples': [[0.5]]},
    {'density': [[[1, 0]]]},
    {'colour': 'blue'},
    {'schema_version': 2},
])
def test_invalid_documents(overrides):
    with pytest.raises(ValidationError):
        InputDocument.model_validate(_document(**overrides))


def test_complex_pairs():
    values = np.array([[1 + 2j, -0.5j], [3, 0]])

    assert to_pairs(values) == [[[1, 2], [0, -0.5]], [[3, 0], [0, 0]]]
    assert np.array_equal(from_pairs(to_pairs(values)), values)


def test_witness_record_validates():
    w = build_witness(example1_pair(), [1, 1])

    record = WitnessRecord.model_validate(json.loads(json.dumps(rounded(witness_record(w, 1e-6)))))

    assert record.effective
    assert record.alpha == pytest.approx(0.75 + np.sqrt(2) / 2, abs=1e-8)
    assert np.allclose(record.matrix(), w.operator.entries, atol=1e-8)


def test_certificate_record_validates():
    refs = tiles_upb()
    complement = orthogonal_complement(span_orthonormal_basis(refs.states, refs.dims))

    cert = CertificateRecord.model_validate(rounded(certificate_record(is_ces(complement))))

    assert cert.is_ces
    assert cert.subspace_dim == 4
    assert cert.decided_by == 'seesaw'
