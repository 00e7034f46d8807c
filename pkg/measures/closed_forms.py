# measures/closed_forms.py
"""GBC conversion factor and the GHZ/W alpha-2-GM closed forms."""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from partitions.enumeration import bipartitions
from utils.errors import InvalidK, InvalidParam


def gbc_factor(dims: Sequence[int], n: Optional[int] = None) -> float:
    """(prod_i 2(D_i - 1)/D_i)^(1/|T_2|), D_i the smaller side dimension of bipartition i."""
    dims = tuple(dims)
    n = len(dims) if n is None else n
    if n < 2 or n != len(dims):
        raise InvalidK(f"gbc_factor needs n >= 2 matching dims, got n={n}, dims={list(dims)}")
    total = math.prod(dims)
    logs = []
    for cut in bipartitions(n):
        side = math.prod(dims[i - 1] for i in cut)
        d = min(side, total // side)
        logs.append(math.log(2.0 * (d - 1) / d))
    return math.exp(math.fsum(logs) / len(logs))


def gbc_from_2gm(value: float, dims: Sequence[int]) -> float:
    return value / gbc_factor(dims)


def _check_alpha(alpha: float):
    if not 0 <= alpha < 1:
        raise InvalidParam(f"alpha must lie in [0, 1), got {alpha}")


def _positive(value: float, what: str, alpha: float) -> float:
    if not value > 0:
        raise InvalidParam(f"{what} closed form underflows to {value!r} at alpha={alpha!r}")
    return value


def ghz_alpha2(n: int, alpha: float) -> float:
    """alpha-2-GM concurrence of GHZ_n: every cut has spectrum {1/2, 1/2}."""
    if n < 2:
        raise InvalidK(f"GHZ needs n >= 2, got {n}")
    _check_alpha(alpha)
    # 2^(1-alpha) - 1 without cancellation as alpha -> 1
    return math.sqrt(2.0 * _positive(math.expm1((1.0 - alpha) * math.log(2.0)), "GHZ", alpha))


def w_cut_alpha(n: int, p: int, alpha: float) -> float:
    """alpha-concurrence of W_n across a p-vs-(n-p) cut.

    x^alpha + y^alpha - 1 with x = p/n, y = 1 - x, written as
    x(x^(alpha-1) - 1) + y(y^(alpha-1) - 1) so both terms stay positive.
    """
    x = p / n
    y = (n - p) / n
    return x * math.expm1((alpha - 1.0) * math.log(x)) + y * math.expm1((alpha - 1.0) * math.log(y))


def w_alpha2(n: int, alpha: float) -> float:
    """alpha-2-GM concurrence of W_n.

    C(n, p) cuts of size p for p < n/2; for even n the balanced cuts count
    C(n, n/2)/2 times. Computed as exp of the weighted mean log score.
    """
    if n < 3:
        raise InvalidK(f"W closed form needs n >= 3, got {n}")
    _check_alpha(alpha)
    if alpha == 0:
        return math.sqrt(2.0)
    terms = []
    count = 0
    for p in range(1, n // 2 + 1):
        weight = math.comb(n, p) // 2 if 2 * p == n else math.comb(n, p)
        cut = _positive(w_cut_alpha(n, p, alpha), "W", alpha)
        terms.append(weight * 0.5 * math.log(2.0 * cut))
        count += weight
    return math.exp(math.fsum(terms) / count)


def ghz_w_ratio(n: int, alpha: float) -> float:
    if n < 3:
        raise InvalidK(f"ratio needs n >= 3, got {n}")
    _check_alpha(alpha)
    if alpha == 0:
        logging.warning("alpha = 0 is degenerate: W and GHZ both give sqrt(2), ratio is exactly 1")
        return 1.0
    return w_alpha2(n, alpha) / ghz_alpha2(n, alpha)


def ratio_table(alpha: float, n_min: int, n_max: int):
    """Rows (n, w_value, ghz_value, ratio) for n_min..n_max."""
    if not 3 <= n_min <= n_max <= 64:
        raise InvalidK(f"need 3 <= n_min <= n_max <= 64, got n_min={n_min}, n_max={n_max}")
    rows = [(n, w_alpha2(n, alpha), ghz_alpha2(n, alpha), ghz_w_ratio(n, alpha)) for n in range(n_min, n_max + 1)]
    ratios = np.array([row[3] for row in rows])
    drops = np.flatnonzero(np.diff(ratios) <= 0)
    if alpha > 0 and drops.size:
        logging.warning(f"ratio does not increase at n = {[rows[i + 1][0] for i in drops]} (alpha={alpha})")
    return rows
