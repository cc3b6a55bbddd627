import numpy as np
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union
from src.documents import InputDocument, ProductRecord, from_pairs
from . import logger
from .effectiveness import ReferenceSet
from .quantum import AnyState, DensityOperator, Dims, ProductState, PureState, normalize

RENORMALIZE_WARN = 1e-6


@dataclass(frozen=True, eq=False)
class LoadedInput:
    document: InputDocument
    refs: ReferenceSet
    density: Optional[DensityOperator] = None
    tuples: List[np.ndarray] = field(default_factory=list)


def read_document(path: Union[str, Path]) -> InputDocument:
    text = Path(path).read_text(encoding='utf-8')
    return InputDocument.model_validate_json(text)


def _normalized(v: np.ndarray, what: str) -> PureState:
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > RENORMALIZE_WARN:
        logger.warning(f'{what} had norm {norm:.9g} and was renormalized')
    return normalize(v)


def load_input(path: Union[str, Path]) -> LoadedInput:
    """Validate an input document and turn it into domain objects."""
    doc = read_document(path)
    dims = Dims(*doc.dims)

    states: List[AnyState] = []
    labels = []
    for i, record in enumerate(doc.states):
        label = record.label or f'psi{i + 1}'
        if isinstance(record, ProductRecord):
            a, b = record.vectors()
            states.append(ProductState(
                _normalized(a, f'{label} (A factor)'),
                _normalized(b, f'{label} (B factor)'),
            ))
        else:
            states.append(_normalized(record.vector(), label))
        labels.append(label)
    refs = ReferenceSet(states, dims, labels)

    density = None
    if doc.density is not None:
        density = DensityOperator(from_pairs(doc.density), dims)

    tuples = [np.asarray(t, dtype=float) for t in doc.tuples or []]
    logger.debug(f'Loaded {refs.k} references in {dims} from {path}')
    return LoadedInput(doc, refs, density, tuples)
