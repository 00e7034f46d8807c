# tensor_core/library.py
# Named states used by the examples, sweeps and test suites.
from typing import Mapping, Sequence

import numpy as np

from tensor_core.states import PureState
from utils.errors import IncompatibleDims, InvalidState


def basis_state(dims: Sequence[int], digits: Sequence[int]) -> PureState:
    dims = tuple(dims)
    if len(digits) != len(dims) or any(not 0 <= d < dim for d, dim in zip(digits, dims)):
        raise InvalidState(f"digits {list(digits)} do not fit dims {list(dims)}")
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    amps[np.ravel_multi_index(tuple(digits), dims)] = 1.0
    return PureState(dims, amps)


def state_from_terms(dims: Sequence[int], terms: Mapping[str, complex], normalize: bool = True) -> PureState:
    """Build a state from {"0011": amplitude, ...}; one character per subsystem digit."""
    dims = tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    for label, amplitude in terms.items():
        digits = [int(ch) for ch in label]
        if len(digits) != len(dims):
            raise InvalidState(f"basis label {label!r} does not match {len(dims)} subsystems")
        amps[np.ravel_multi_index(tuple(digits), dims)] += amplitude
    if normalize:
        return PureState.normalized(dims, amps)
    return PureState(dims, amps)


def ghz_state(n: int, d: int = 2) -> PureState:
    amps = np.zeros(d ** n, dtype=np.complex128)
    for level in range(d):
        amps[np.ravel_multi_index((level,) * n, (d,) * n)] = 1.0
    return PureState.normalized((d,) * n, amps)


def w_state(n: int) -> PureState:
    amps = np.zeros(2 ** n, dtype=np.complex128)
    for i in range(n):
        amps[1 << (n - 1 - i)] = 1.0
    return PureState.normalized((2,) * n, amps)


def product_across(blocks, block_vectors: Sequence[np.ndarray], dims: Sequence[int]) -> PureState:
    """Tensor product of one normalized vector per block, subsystems put back in index order.

    ``blocks`` is a KPartition or any sequence of index collections covering 1..n.
    A block's vector is ordered like a PureState over that block's subsystems.
    """
    dims = tuple(dims)
    blocks = [tuple(block) for block in getattr(blocks, "blocks", blocks)]
    order = [i for block in blocks for i in block]
    if sorted(order) != list(range(1, len(dims) + 1)):
        raise IncompatibleDims(f"blocks {blocks} do not cover 1..{len(dims)}")
    if len(block_vectors) != len(blocks):
        raise IncompatibleDims(f"got {len(block_vectors)} block vectors for {len(blocks)} blocks")
    amps = np.ones(1, dtype=np.complex128)
    for block, vector in zip(blocks, block_vectors):
        vector = np.asarray(getattr(vector, "amps", vector), dtype=np.complex128).reshape(-1)
        expected = int(np.prod([dims[i - 1] for i in block]))
        if vector.size != expected:
            raise IncompatibleDims(f"block {block} expects a vector of length {expected}, got {vector.size}")
        amps = np.kron(amps, vector)
    ordered = amps.reshape([dims[i - 1] for i in order])
    return PureState(dims, np.transpose(ordered, np.argsort(order)).reshape(-1))


def _sin_cos_template(theta: float, sin_terms: Mapping[str, float], cos_terms: Mapping[str, float]) -> PureState:
    amps = np.zeros(16, dtype=np.complex128)
    for label, c in sin_terms.items():
        amps[int(label, 2)] += np.sin(theta) * c
    for label, c in cos_terms.items():
        amps[int(label, 2)] += np.cos(theta) * c
    return PureState((2, 2, 2, 2), amps)


def fig1_state(theta: float) -> PureState:
    """sin(t)(|0001>/3 + sqrt2/3 |0100> + sqrt6/3 |1000>) + cos(t)|0011>."""
    return _sin_cos_template(
        theta,
        {"0001": 1 / 3, "0100": np.sqrt(2) / 3, "1000": np.sqrt(6) / 3},
        {"0011": 1.0},
    )


def fig2_state(theta: float) -> PureState:
    """sqrt3/3 sin(t)(|0001> + |0100> + |1000>) + cos(t)|0011>."""
    c = np.sqrt(3) / 3
    return _sin_cos_template(theta, {"0001": c, "0100": c, "1000": c}, {"0011": 1.0})


def psi1_state() -> PureState:
    return state_from_terms((2, 2, 2, 2), {"0000": 0.5, "1011": 0.5, "1101": 0.5, "1111": 0.5}, normalize=False)


def psi2_state() -> PureState:
    return state_from_terms((2, 2, 2, 2), {"0000": 0.5, "1001": 0.5, "1110": 0.5, "1111": 0.5}, normalize=False)
