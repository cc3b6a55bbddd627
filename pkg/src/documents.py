from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

SCHEMA_VERSION = 1

ComplexPair = Tuple[float, float]


def to_pairs(values: Any) -> Any:
    """Nested lists of [re, im] pairs for a complex array of any rank."""
    arr = np.asarray(values, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def from_pairs(pairs: Any) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


class ProductRecord(BaseModel):
    a: List[ComplexPair] = Field(min_length=1)
    b: List[ComplexPair] = Field(min_length=1)
    label: Optional[str] = None

    model_config = ConfigDict(extra="forbid")

    def vectors(self) -> Tuple[np.ndarray, np.ndarray]:
        return from_pairs(self.a), from_pairs(self.b)


class PureRecord(BaseModel):
    amplitudes: List[ComplexPair] = Field(min_length=1)
    label: Optional[str] = None

    model_config = ConfigDict(extra="forbid")

    def vector(self) -> np.ndarray:
        return from_pairs(self.amplitudes)


StateRecord = Union[ProductRecord, PureRecord]


class InputDocument(BaseModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    dims: Tuple[int, int]
    states: List[StateRecord] = Field(min_length=1)
    density: Optional[List[List[ComplexPair]]] = None
    tuples: Optional[List[List[float]]] = None

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def check_dimensions(self) -> "InputDocument":
        d_a, d_b = self.dims
        if d_a < 2 or d_b < 2:
            raise ValueError(f"dims must both be at least 2, got {self.dims}")
        for i, state in enumerate(self.states):
            if isinstance(state, ProductRecord):
                if len(state.a) != d_a or len(state.b) != d_b:
                    raise ValueError(f"state {i}: factor lengths do not match dims {self.dims}")
            elif len(state.amplitudes) != d_a * d_b:
                raise ValueError(f"state {i}: expected {d_a * d_b} amplitudes")
        if self.density is not None:
            total = d_a * d_b
            if len(self.density) != total or any(len(row) != total for row in self.density):
                raise ValueError(f"density must be a {total}x{total} matrix")
        if self.tuples is not None:
            for t in self.tuples:
                if len(t) != len(self.states):
                    raise ValueError(f"tuple {t} does not have one entry per state")
        return self


class CertificateRecord(BaseModel):
    is_ces: bool
    max_product_overlap: float
    witness_product_state: ProductRecord
    restarts_used: int
    tolerance: float
    subspace_dim: int
    decided_by: Literal["seesaw", "dimension_bound"]
    inconclusive: bool = False


class WitnessRecord(BaseModel):
    direction: List[float]
    alpha: float
    lambda_max: float
    margin: float
    effective: bool
    method: str
    oracle: Optional[str] = None
    maximizer: Optional[StateRecord] = None
    operator: List[List[ComplexPair]]

    def matrix(self) -> np.ndarray:
        return from_pairs(self.operator)


class CheckRecord(BaseModel):
    name: str
    passed: bool
    value: Optional[Any] = None


class ReportRecord(BaseModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    command: str
    config: Dict[str, Any]
    results: Dict[str, Any]
    wall_time: Optional[float] = None

    model_config = ConfigDict(extra="forbid")
