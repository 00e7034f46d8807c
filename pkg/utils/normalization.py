# utils/normalization.py
import logging

import numpy as np

from utils.config import LOAD_REPAIR_TOL, NORM_TOL
from utils.errors import InvalidState


def _repair(source: str, what: str, total: float, allow_repair: bool) -> float:
    """Scale factor bringing ``total`` to 1, or raise when it is too far off."""
    deviation = abs(total - 1.0)
    if deviation <= NORM_TOL:
        return 1.0
    if allow_repair and deviation <= LOAD_REPAIR_TOL:
        logging.warning(f"{source}: {what} is {total!r}; renormalizing (deviation {deviation:.3g})")
        return 1.0 / total
    limit = LOAD_REPAIR_TOL if allow_repair else NORM_TOL
    raise InvalidState(f"{source}: {what} is {total!r}, more than {limit:g} away from 1")


def normalize_amplitudes(source: str, amps, allow_repair: bool = True) -> np.ndarray:
    amps = np.asarray(amps, dtype=np.complex128)
    norm2 = float(np.vdot(amps, amps).real)
    return amps * np.sqrt(_repair(source, "sum |a|^2", norm2, allow_repair))


def normalize_trace(source: str, mat, allow_repair: bool = True) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.complex128)
    trace = float(np.trace(mat).real)
    return mat * _repair(source, "trace", trace, allow_repair)
