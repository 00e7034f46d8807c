# state_io/files.py
"""JSON state files.

A pure state is stored as ``amplitudes``, one [re, im] pair per basis state in
lexicographic order (subsystem 1 most significant). A mixed state is stored
as ``matrix``, a list of rows of [re, im] pairs. Floats are written with
Python's shortest round-trip repr, so save followed by load reproduces every
amplitude bit for bit.
"""
import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from tensor_core.states import DensityMatrix, PureState
from utils.config import NORM_TOL
from utils.errors import InvalidFile
from utils.normalization import normalize_amplitudes, normalize_trace

Pair = Tuple[float, float]


def _to_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def _to_pairs(values: np.ndarray) -> list:
    values = np.asarray(values, dtype=np.complex128)
    return np.stack([values.real, values.imag], axis=-1).tolist()


def _check_dims(dims: List[int]) -> int:
    if len(dims) < 2 or any(d < 2 for d in dims):
        raise ValueError(f"dims must list at least two subsystems of dimension >= 2, got {dims}")
    return int(np.prod(dims))


class StateFile(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    version: Literal[1] = 1
    kind: Literal["pure", "mixed"]
    dims: List[int]
    amplitudes: Optional[List[Pair]] = None
    matrix: Optional[List[List[Pair]]] = None
    label: Optional[str] = None

    @model_validator(mode="after")
    def _check_shape(self):
        side = _check_dims(self.dims)
        if self.kind == "pure":
            if self.amplitudes is None or self.matrix is not None:
                raise ValueError("a pure state file carries 'amplitudes' and no 'matrix'")
            if len(self.amplitudes) != side:
                raise ValueError(f"expected {side} amplitudes for dims={self.dims}, got {len(self.amplitudes)}")
        else:
            if self.matrix is None or self.amplitudes is not None:
                raise ValueError("a mixed state file carries 'matrix' and no 'amplitudes'")
            if len(self.matrix) != side or any(len(row) != side for row in self.matrix):
                raise ValueError(f"expected a {side}x{side} matrix for dims={self.dims}")
        return self

    @classmethod
    def from_state(cls, state: Union[PureState, DensityMatrix], label: Optional[str] = None) -> "StateFile":
        if isinstance(state, PureState):
            return cls(kind="pure", dims=list(state.dims), amplitudes=_to_pairs(state.amps), label=label)
        return cls(kind="mixed", dims=list(state.dims), matrix=_to_pairs(state.mat), label=label)

    def to_state(self, source: str = "state file", allow_repair: bool = True) -> Union[PureState, DensityMatrix]:
        if self.kind == "pure":
            amps = normalize_amplitudes(source, _to_complex(self.amplitudes), allow_repair)
            return PureState(tuple(self.dims), amps)
        mat = normalize_trace(source, _to_complex(self.matrix), allow_repair)
        return DensityMatrix(tuple(self.dims), mat)


def _read_model(model, path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidFile(f"cannot read {path}: {e}")
    except UnicodeDecodeError as e:
        raise InvalidFile(f"{path} is not UTF-8 text: {e}")
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise InvalidFile(f"{path}: {where + ': ' if where else ''}{first['msg']}")


def load_state(path, allow_repair: bool = True) -> Union[PureState, DensityMatrix]:
    state = _read_model(StateFile, path).to_state(str(path), allow_repair)
    logging.info(f"Loaded {state!r} from {path}")
    return state


def save_state(path, state: Union[PureState, DensityMatrix], label: Optional[str] = None):
    record = StateFile.from_state(state, label).model_dump(exclude_none=True)
    Path(path).write_text(json.dumps(record) + "\n", encoding="utf-8")
    logging.info(f"Wrote {state!r} to {path}")


class SweepTemplateFile(BaseModel):
    """|psi(theta)> = sin(theta)|a> + cos(theta)|b> with |a>, |b> orthonormal."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    dims: List[int]
    sin_amplitudes: List[Pair]
    cos_amplitudes: List[Pair]
    label: Optional[str] = None

    @model_validator(mode="after")
    def _check_pair(self):
        side = _check_dims(self.dims)
        a, b = _to_complex(self.sin_amplitudes), _to_complex(self.cos_amplitudes)
        if a.size != side or b.size != side:
            raise ValueError(f"both amplitude lists need {side} entries for dims={self.dims}")
        for name, vec in (("sin_amplitudes", a), ("cos_amplitudes", b)):
            if abs(np.vdot(vec, vec).real - 1.0) > NORM_TOL:
                raise ValueError(f"{name} is not normalized")
        if abs(np.vdot(a, b)) > NORM_TOL:
            raise ValueError("sin_amplitudes and cos_amplitudes are not orthogonal")
        return self

    def state_at(self, theta: float) -> PureState:
        a, b = _to_complex(self.sin_amplitudes), _to_complex(self.cos_amplitudes)
        return PureState.normalized(self.dims, np.sin(theta) * a + np.cos(theta) * b)


def load_template(path) -> SweepTemplateFile:
    return _read_model(SweepTemplateFile, path)
