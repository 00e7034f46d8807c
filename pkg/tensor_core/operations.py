# tensor_core/operations.py
import itertools
import logging
import math
from typing import Sequence, Tuple

import numpy as np

from tensor_core.states import DensityMatrix, IndexSubset, PureState, Spectrum, as_subset
from utils.config import PI_PART_BUDGET, RANK_TOL, SCHMIDT_RTOL
from utils.errors import BudgetExceeded, IncompatibleDims, InvalidParam


def _cut_matrix(state: PureState, cut: IndexSubset) -> np.ndarray:
    """Amplitudes reshaped to (dim of cut) x (dim of complement)."""
    keep = cut.axes()
    rest = tuple(i for i in range(state.n) if i not in keep)
    dim_keep = int(np.prod([state.dims[i] for i in keep]))
    return np.transpose(state.tensor(), keep + rest).reshape(dim_keep, -1)


def reduced_density(state: PureState, keep) -> DensityMatrix:
    """Partial trace of |psi><psi| over the complement of ``keep``."""
    keep = as_subset(keep).validate(state.n)
    m = _cut_matrix(state, keep)
    return DensityMatrix(tuple(state.dims[i] for i in keep.axes()), m @ m.conj().T)


def schmidt_spectrum(state: PureState, cut) -> Spectrum:
    """Eigenvalues of the reduced state on ``cut``, from the SVD of the cut matrix.

    Singular values at or below SCHMIDT_RTOL times the largest are set to zero
    and the rest renormalized, so a cut that is an exact product gives [1, 0, ...].
    The result is padded with zeros to the dimension of the cut.
    """
    cut = as_subset(cut).validate(state.n)
    m = _cut_matrix(state, cut)
    s = np.linalg.svd(m, compute_uv=False)
    s[s <= s[0] * SCHMIDT_RTOL] = 0.0
    values = s ** 2
    values /= values.sum()
    padded = np.zeros(m.shape[0])
    padded[: values.size] = values
    return Spectrum(padded)


def trace_power(spec, e: float) -> float:
    """Sum of lambda**e over the spectrum; e = 0 counts entries >= RANK_TOL (the rank)."""
    if e < 0:
        raise InvalidParam(f"trace power exponent must be >= 0, got {e}")
    if not isinstance(spec, Spectrum):
        spec = Spectrum(spec)
    values = spec.values
    if e == 0:
        return float(np.count_nonzero(values >= RANK_TOL))
    return float(np.sum(values[values > 0] ** e))


def _check_permutation(perm: Sequence[int], n: int) -> Tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise InvalidParam(f"{list(perm)} is not a permutation of 1..{n}")
    return perm


def permute_subsystems(state: PureState, perm: Sequence[int]) -> PureState:
    """Move subsystem i to position perm[i-1].

    Every subsystem must land on a position of the same dimension, so the
    dims of the result equal the dims of the input.
    """
    perm = _check_permutation(perm, state.n)
    for source, target in enumerate(perm, start=1):
        if state.dims[source - 1] != state.dims[target - 1]:
            raise IncompatibleDims(
                f"subsystem {source} (dim {state.dims[source - 1]}) cannot move to "
                f"position {target} (dim {state.dims[target - 1]})"
            )
    # output axis perm[i]-1 reads input axis i
    axes = [0] * state.n
    for source, target in enumerate(perm):
        axes[target - 1] = source
    return PureState(state.dims, np.transpose(state.tensor(), axes).reshape(-1))


def subsystem_permutations(n: int):
    """All n! permutations of 1..n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def pi_part(rho: DensityMatrix, budget: int = PI_PART_BUDGET) -> DensityMatrix:
    """Average of rho over all subsystem permutations (explicit n!-term sum)."""
    if len(set(rho.dims)) != 1:
        raise IncompatibleDims(f"pi_part needs equal subsystem dimensions, got {list(rho.dims)}")
    n = rho.n
    cost = math.factorial(n) * rho.dim ** 2
    if cost > budget:
        raise BudgetExceeded(f"pi_part on dims={list(rho.dims)} costs {cost} > budget {budget}")
    logging.debug(f"pi_part: summing {math.factorial(n)} permuted copies of a {rho.dim}x{rho.dim} matrix")
    index = np.arange(rho.dim).reshape(rho.dims)
    acc = np.zeros_like(rho.mat)
    for axes in itertools.permutations(range(n)):
        idx = np.transpose(index, axes).reshape(-1)
        acc += rho.mat[np.ix_(idx, idx)]
    acc /= math.factorial(n)
    return DensityMatrix(rho.dims, acc)
