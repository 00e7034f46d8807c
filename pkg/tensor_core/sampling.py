# tensor_core/sampling.py
"""Seeded Haar sampling of states, local unitaries and isometries."""
from typing import List, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from partitions.enumeration import KPartition, enumerate_k_partitions
from tensor_core.library import product_across
from tensor_core.states import PureState
from utils.errors import IncompatibleDims


def crandn(rng: np.random.Generator, size) -> np.ndarray:
    """Standard complex normal samples."""
    return (rng.normal(size=size) + 1j * rng.normal(size=size)) / np.sqrt(2)


def haar_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = crandn(rng, dim)
    return v / np.linalg.norm(v)


def haar_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    dims = tuple(dims)
    return PureState(dims, haar_vector(int(np.prod(dims)), rng))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(d, random_state=rng)


def haar_isometry(r: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """r x m matrix with orthonormal rows (r <= m): the first r rows of a Haar unitary."""
    if r > m:
        raise IncompatibleDims(f"an isometry with {r} orthonormal rows needs m >= {r}, got m={m}")
    return haar_unitary(m, rng)[:r, :]


def local_unitaries(dims: Sequence[int], rng: np.random.Generator) -> List[np.ndarray]:
    return [haar_unitary(d, rng) for d in dims]


def apply_local_unitaries(state: PureState, unitaries: Sequence[np.ndarray]) -> PureState:
    """(U_1 x U_2 x ... x U_n)|psi>."""
    if len(unitaries) != state.n:
        raise IncompatibleDims(f"need {state.n} local unitaries, got {len(unitaries)}")
    t = state.tensor()
    for axis, u in enumerate(unitaries):
        if u.shape != (state.dims[axis], state.dims[axis]):
            raise IncompatibleDims(f"unitary for subsystem {axis + 1} has shape {u.shape}")
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [axis])), 0, axis)
    return PureState(state.dims, t.reshape(-1))


def random_k_separable(dims: Sequence[int], k: int, rng: np.random.Generator) -> Tuple[PureState, KPartition]:
    """Haar-random block states multiplied across a uniformly chosen k-partition."""
    dims = tuple(dims)
    candidates = enumerate_k_partitions(len(dims), k)
    partition = candidates[int(rng.integers(len(candidates)))]
    vectors = [haar_vector(int(np.prod([dims[i - 1] for i in block])), rng) for block in partition.blocks]
    return product_across(partition, vectors, dims), partition
