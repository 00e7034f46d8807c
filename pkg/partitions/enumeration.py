# partitions/enumeration.py
"""k-partitions of {1..n} generated from restricted growth strings.

A restricted growth string a_1..a_n has a_1 = 0 and a_i <= 1 + max(a_1..a_{i-1});
index i goes to block a_i. Strings are produced in lexicographic order, and
because block labels appear in order of first use the blocks come out already
sorted by smallest element.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

from tensor_core.states import IndexSubset
from utils.errors import InvalidK, InvalidPartition


@dataclass(frozen=True)
class KPartition:
    blocks: Tuple[IndexSubset, ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.blocks)

    def validate(self, n: int) -> "KPartition":
        seen = [i for block in self.blocks for i in block]
        if len(seen) != len(set(seen)):
            raise InvalidPartition(f"blocks of {self} overlap")
        if sorted(seen) != list(range(1, n + 1)):
            raise InvalidPartition(f"blocks of {self} do not cover 1..{n}")
        return self

    @classmethod
    def parse(cls, text: str) -> "KPartition":
        """Parse "12|3" (or "1,10|2,...,9" when indices exceed 9) into canonical form."""
        blocks = []
        wide = "," in text
        for chunk in text.split("|"):
            chunk = chunk.strip()
            if not chunk:
                raise InvalidPartition(f"empty block in {text!r}")
            members = chunk.split(",") if wide else list(chunk)
            try:
                blocks.append(IndexSubset.of(int(m) for m in members))
            except ValueError as e:
                raise InvalidPartition(f"cannot parse partition {text!r}: {e}") from e
        blocks.sort(key=lambda block: block.members[0])
        partition = cls(tuple(blocks))
        return partition.validate(partition.n)

    def __str__(self) -> str:
        wide = any(block.members[-1] > 9 for block in self.blocks)
        if wide:
            return "|".join(",".join(str(m) for m in block) for block in self.blocks)
        return "|".join(str(block) for block in self.blocks)


def _check_k(n: int, k: int):
    if not 2 <= k <= n:
        raise InvalidK(f"k must satisfy 2 <= k <= n, got n={n}, k={k}")


def _restricted_growth_strings(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Strings with exactly k distinct labels, lexicographic order."""
    a = [0] * n

    def extend(i: int, used: int):
        if i == n:
            if used == k:
                yield tuple(a)
            return
        # the remaining positions must still be able to open the missing blocks
        if k - used > n - i:
            return
        for label in range(min(used + 1, k)):
            a[i] = label
            yield from extend(i + 1, max(used, label + 1))

    yield from extend(1, 1)


def _to_partition(rgs: Tuple[int, ...], k: int) -> KPartition:
    members = [[] for _ in range(k)]
    for index, label in enumerate(rgs, start=1):
        members[label].append(index)
    return KPartition(tuple(IndexSubset(tuple(block)) for block in members))


def iter_k_partitions(n: int, k: int) -> Iterator[KPartition]:
    _check_k(n, k)
    for rgs in _restricted_growth_strings(n, k):
        yield _to_partition(rgs, k)


@lru_cache(maxsize=64)
def enumerate_k_partitions(n: int, k: int) -> Tuple[KPartition, ...]:
    """All k-partitions of {1..n}, each once, in restricted-growth-string order."""
    return tuple(iter_k_partitions(n, k))


def stirling2(n: int, k: int) -> int:
    """|T_k| = sum_t (-1)^(k-t) t^(n-1) / ((t-1)! (k-t)!), in exact integers.

    Multiplying through by (k-1)! turns each term into t^(n-1) * C(k-1, t-1);
    the final division is exact.
    """
    _check_k(n, k)
    total = sum((-1) ** (k - t) * t ** (n - 1) * math.comb(k - 1, t - 1) for t in range(1, k + 1))
    count, remainder = divmod(total, math.factorial(k - 1))
    assert remainder == 0
    return count


def bipartitions(n: int) -> Tuple[IndexSubset, ...]:
    """One representative per unordered bipartition: the block containing index 1."""
    if n < 2:
        raise InvalidK(f"bipartitions need n >= 2, got n={n}")
    return tuple(partition.blocks[0] for partition in enumerate_k_partitions(n, 2))
