# sweeps/detection.py
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from utils.config import DEFAULT_KINK_FACTOR


class KinkDetector:
    def __init__(self, factor=DEFAULT_KINK_FACTOR, abs_floor=1e-12):
        """
        Parameters:
          - factor: A grid point is a kink if |second difference| > factor * median |second difference|.
          - abs_floor: Second differences at or below this are never kinks (rounding noise on flat curves).
        """
        if factor <= 0:
            raise ValueError(f"kink factor must be positive, got {factor}")
        self.factor = factor
        self.abs_floor = abs_floor

    @staticmethod
    def second_differences(values: Sequence[float]) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        return values[2:] - 2.0 * values[1:-1] + values[:-2]

    def detect(self, values: Sequence[float]) -> np.ndarray:
        """Indices of interior grid points flagged as kinks."""
        d2 = np.abs(self.second_differences(values))
        if d2.size == 0:
            return np.array([], dtype=int)
        threshold = max(self.factor * float(np.median(d2)), self.abs_floor)
        kinks = np.flatnonzero(d2 > threshold) + 1
        logging.debug(f"kink threshold {threshold:.3g}: {kinks.size} of {len(values)} points flagged")
        return kinks


@dataclass(frozen=True)
class OrderReversal:
    """Two grid points ranked one way by the ME curve and the other way by the GM curve."""

    theta_1: float
    theta_2: float
    gm_1: float
    gm_2: float
    me_1: float
    me_2: float


def find_order_reversal(thetas: Sequence[float], gm: Sequence[float], me: Sequence[float],
                        tol: float = 1e-12) -> Optional[OrderReversal]:
    """A pair with me_1 > me_2 and gm_1 < gm_2 (both by more than ``tol``), or None.

    Points are visited in increasing ME; for each one the largest GM among
    points with strictly smaller ME is the only candidate that needs checking.
    """
    thetas, gm, me = (np.asarray(a, dtype=float) for a in (thetas, gm, me))
    order = np.argsort(me, kind="stable")
    best = None
    lo = 0
    for i in order:
        while me[order[lo]] < me[i] - tol:
            j = order[lo]
            if best is None or gm[j] > gm[best]:
                best = j
            lo += 1
        if best is not None and gm[i] < gm[best] - tol:
            return OrderReversal(float(thetas[i]), float(thetas[best]), float(gm[i]), float(gm[best]),
                                 float(me[i]), float(me[best]))
    return None
