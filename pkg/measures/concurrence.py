# measures/concurrence.py
import logging
import math
from typing import Dict, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from measures.spec import Family, MeasureResult, MeasureSpec
from partitions.enumeration import KPartition, enumerate_k_partitions
from tensor_core.operations import schmidt_spectrum, trace_power
from tensor_core.states import IndexSubset, PureState
from utils.config import ENTHIER_THREADS, SCORE_FLOOR
from utils.errors import InvalidParam, InvalidPartition


def cut_q_concurrence(state: PureState, cut, q: float) -> float:
    """1 - Tr(rho_A^q) for the reduced state on ``cut``."""
    if not q > 1:
        raise InvalidParam(f"q-concurrence needs q > 1, got {q}")
    return max(0.0, 1.0 - trace_power(schmidt_spectrum(state, cut), q))


def cut_alpha_concurrence(state: PureState, cut, alpha: float) -> float:
    """Tr(rho_A^alpha) - 1; at alpha = 0 this is rank - 1."""
    if not 0 <= alpha < 1:
        raise InvalidParam(f"alpha-concurrence needs 0 <= alpha < 1, got {alpha}")
    return max(0.0, trace_power(schmidt_spectrum(state, cut), alpha) - 1.0)


def cut_concurrence(state: PureState, cut) -> float:
    """Bipartite concurrence sqrt(2(1 - Tr rho_A^2))."""
    return math.sqrt(2.0 * cut_q_concurrence(state, cut, 2.0))


def _cut_value(state: PureState, cut: IndexSubset, spec: MeasureSpec) -> float:
    if spec.family == Family.ALPHAKGM:
        return cut_alpha_concurrence(state, cut, spec.exponent)
    return cut_q_concurrence(state, cut, spec.exponent)


def _canonical(block: IndexSubset, n: int) -> IndexSubset:
    # A cut and its complement share the nonzero spectrum, so key on the side holding index 1.
    return block if block.members[0] == 1 else block.complement(n)


def _score(cut_values: Sequence[float], spec: MeasureSpec) -> float:
    total = math.fsum(cut_values)
    if spec.family == Family.QKME:
        return total / spec.k
    return math.sqrt(2.0 * total / spec.k)


def partition_score(state: PureState, part: KPartition, spec: MeasureSpec) -> float:
    """Entanglement value of one k-partition under ``spec``."""
    if part.k != spec.k:
        raise InvalidPartition(f"partition {part} has {part.k} blocks, the measure needs k={spec.k}")
    part.validate(state.n)
    return _score([_cut_value(state, block, spec) for block in part.blocks], spec)


def _cut_values(state: PureState, cuts: Sequence[IndexSubset], spec: MeasureSpec, n_jobs: int) -> Dict[IndexSubset, float]:
    if n_jobs == 1 or len(cuts) < 2:
        values = [_cut_value(state, cut, spec) for cut in cuts]
    else:
        values = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(_cut_value)(state, cut, spec) for cut in cuts)
    return dict(zip(cuts, values))


def evaluate(state: PureState, spec: MeasureSpec, with_scores: bool = False, n_jobs: Optional[int] = None) -> MeasureResult:
    """Evaluate a measure family on a pure state.

    GM families take the geometric mean of the partition scores over all of
    T_k (in the log domain); ME families take the minimum and report the first
    partition attaining it. Cut values are computed once per distinct cut
    before any score is formed.
    """
    n = state.n
    spec.validate(n)
    notes = spec.notes()
    partitions = enumerate_k_partitions(n, spec.k)

    cuts = list(dict.fromkeys(_canonical(block, n) for part in partitions for block in part.blocks))
    cache = _cut_values(state, cuts, spec, n_jobs or ENTHIER_THREADS)
    scores = np.array([_score([cache[_canonical(block, n)] for block in part.blocks], spec) for part in partitions])
    logging.debug(f"evaluate {spec}: {len(partitions)} partitions over {len(cuts)} distinct cuts")

    attaining = None
    if spec.family.is_geometric:
        if scores.size == 1:
            value = float(scores[0])
        elif scores.min() <= SCORE_FLOOR:
            value = 0.0
        else:
            value = float(np.exp(np.mean(np.log(scores))))
    else:
        best = int(np.argmin(scores))
        value = float(scores[best])
        attaining = partitions[best]

    per_partition = tuple(zip(partitions, scores.tolist())) if with_scores else None
    return MeasureResult(value=value, attaining_partition=attaining, per_partition_scores=per_partition, notes=notes)


def measure_value(state: PureState, spec: MeasureSpec) -> float:
    return evaluate(state, spec).value
