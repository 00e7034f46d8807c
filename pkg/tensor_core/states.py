# tensor_core/states.py
"""Value types shared by every other package.

Amplitudes are stored in lexicographic basis order with subsystem 1 the most
significant digit, so ``amps.reshape(dims)`` puts subsystem i on axis i-1.
Subsystem indices in the public API are 1-based.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from utils.config import HERMITIAN_TOL, NORM_TOL, PSD_TOL
from utils.errors import IncompatibleDims, InvalidState, InvalidSubset, NotPSD


def _check_dims(dims: Sequence[int]) -> Tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise IncompatibleDims(f"need at least two subsystems, got dims={list(dims)}")
    if any(d < 2 for d in dims):
        raise IncompatibleDims(f"every subsystem dimension must be >= 2, got dims={list(dims)}")
    return dims


@dataclass(frozen=True)
class IndexSubset:
    members: Tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if not members:
            raise InvalidSubset("subset must be non-empty")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise InvalidSubset(f"subset members must be strictly increasing, got {list(members)}")
        if members[0] < 1:
            raise InvalidSubset(f"subsystem indices start at 1, got {list(members)}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[int]) -> "IndexSubset":
        members = [int(m) for m in members]
        if len(set(members)) != len(members):
            raise InvalidSubset(f"duplicate subsystem index in {members}")
        return cls(tuple(sorted(members)))

    def validate(self, n: int, allow_full: bool = False) -> "IndexSubset":
        if self.members[-1] > n:
            raise InvalidSubset(f"index {self.members[-1]} out of range 1..{n}")
        if not allow_full and len(self.members) == n:
            raise InvalidSubset(f"subset {self} is the full system; a proper subset is required")
        return self

    def complement(self, n: int) -> "IndexSubset":
        keep = set(self.members)
        rest = tuple(i for i in range(1, n + 1) if i not in keep)
        if not rest:
            raise InvalidSubset(f"subset {self} has an empty complement")
        return IndexSubset(rest)

    def axes(self) -> Tuple[int, ...]:
        return tuple(m - 1 for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self) -> str:
        sep = "," if self.members[-1] > 9 else ""
        return sep.join(str(m) for m in self.members)


def as_subset(obj) -> IndexSubset:
    if isinstance(obj, IndexSubset):
        return obj
    if isinstance(obj, int):
        return IndexSubset((obj,))
    return IndexSubset.of(obj)


@dataclass(frozen=True, eq=False)
class PureState:
    dims: Tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise InvalidState(f"expected {int(np.prod(dims))} amplitudes for dims={list(dims)}, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise InvalidState("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidState(f"state is not normalized: sum |a|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def normalized(cls, dims: Sequence[int], amps) -> "PureState":
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidState("cannot normalize the zero vector")
        return cls(tuple(dims), amps / norm)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.amps.size

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, np.outer(self.amps, self.amps.conj()))

    def __repr__(self) -> str:
        return f"PureState(dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: Tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise IncompatibleDims(f"every subsystem dimension must be >= 2, got dims={list(dims)}")
        side = int(np.prod(dims))
        mat = np.array(self.mat, dtype=np.complex128)
        if mat.shape != (side, side):
            raise InvalidState(f"expected a {side}x{side} matrix for dims={list(dims)}, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise InvalidState("density matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian")
        trace = float(np.trace(mat).real)
        if abs(trace - 1.0) > NORM_TOL:
            raise InvalidState(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(mat)[0])
        if smallest < -PSD_TOL:
            raise NotPSD(f"density matrix has eigenvalue {smallest!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_ensemble(cls, probabilities: Sequence[float], states: Sequence[PureState]) -> "DensityMatrix":
        if not states:
            raise InvalidState("an ensemble needs at least one member")
        dims = states[0].dims
        mat = np.zeros((states[0].dim, states[0].dim), dtype=np.complex128)
        for p, state in zip(probabilities, states):
            if state.dims != dims:
                raise IncompatibleDims("ensemble members have different dims")
            mat += p * np.outer(state.amps, state.amps.conj())
        return cls(dims, mat)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eigh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues in descending order with matching eigenvector columns."""
        w, v = np.linalg.eigh(self.mat)
        return w[::-1], v[:, ::-1]

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size == 0:
            raise InvalidState("spectrum is empty")
        if values.min() < -PSD_TOL:
            raise NotPSD(f"spectrum has negative entry {values.min()!r}")
        values = np.clip(values, 0.0, 1.0)
        values = np.sort(values)[::-1].copy()
        total = float(values.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidState(f"spectrum sums to {total!r}, expected 1")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"Spectrum({np.array2string(self.values, precision=6)})"
