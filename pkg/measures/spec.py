# measures/spec.py
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple

from partitions.enumeration import KPartition
from utils.errors import InvalidK, InvalidParam


class Family(str, Enum):
    KGM = "kgm"
    QKGM = "qkgm"
    ALPHAKGM = "alphakgm"
    KME = "kme"
    QKME = "qkme"

    @property
    def is_geometric(self) -> bool:
        return self in (Family.KGM, Family.QKGM, Family.ALPHAKGM)


EXTRAPOLATED_NOTE = "extrapolated regime: q-concurrence is established for q >= 2"


@lru_cache(maxsize=None)
def _warn_extrapolated(q: float):
    logging.warning(f"q={q} lies in the extrapolated regime 1 < q < 2")


@dataclass(frozen=True)
class MeasureSpec:
    """Measure family, hierarchy level k and the q or alpha parameter."""

    family: Family
    k: int
    param: Optional[float] = None

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise InvalidParam(f"unknown measure family {self.family!r}") from None
        object.__setattr__(self, "family", family)
        if self.k < 2:
            raise InvalidK(f"k must be >= 2, got {self.k}")
        if family in (Family.KGM, Family.KME):
            if self.param is not None:
                raise InvalidParam(f"{family.value} takes no parameter, got {self.param}")
        elif family in (Family.QKGM, Family.QKME):
            if self.param is None or not self.param > 1:
                raise InvalidParam(f"{family.value} needs q > 1, got {self.param}")
        elif self.param is None or not 0 <= self.param < 1:
            raise InvalidParam(f"{family.value} needs 0 <= alpha < 1, got {self.param}")

    @property
    def exponent(self) -> float:
        """Trace-power exponent of the per-cut quantity."""
        if self.family in (Family.KGM, Family.KME):
            return 2.0
        return float(self.param)

    def validate(self, n: int) -> "MeasureSpec":
        if self.k > n:
            raise InvalidK(f"k={self.k} exceeds the number of subsystems n={n}")
        return self

    def notes(self) -> Tuple[str, ...]:
        if self.family in (Family.QKGM, Family.QKME) and self.param < 2:
            _warn_extrapolated(float(self.param))
            return (EXTRAPOLATED_NOTE,)
        return ()

    def __str__(self) -> str:
        if self.param is None:
            return f"{self.family.value}(k={self.k})"
        return f"{self.family.value}(k={self.k}, param={self.param:g})"


def me_counterpart(spec: MeasureSpec) -> Optional[MeasureSpec]:
    """The minimum-based family paired with a GM family; None for the alpha family."""
    if spec.family == Family.KGM:
        return MeasureSpec(Family.KME, spec.k)
    if spec.family == Family.QKGM:
        return MeasureSpec(Family.QKME, spec.k, spec.param)
    return None


@dataclass(frozen=True)
class MeasureResult:
    value: float
    attaining_partition: Optional[KPartition] = None
    per_partition_scores: Optional[Tuple[Tuple[KPartition, float], ...]] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_record(self) -> dict:
        record = {"value": self.value}
        if self.attaining_partition is not None:
            record["attaining_partition"] = str(self.attaining_partition)
        if self.per_partition_scores is not None:
            record["per_partition_scores"] = [[str(p), s] for p, s in self.per_partition_scores]
        if self.notes:
            record["notes"] = list(self.notes)
        return record
