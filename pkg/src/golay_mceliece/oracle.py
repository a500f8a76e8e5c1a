"""Brute-force reference implementations.

Nothing here shares code with the arithmetic decoder in :mod:`golay`: codewords
are enumerated outright and decoding is a table lookup over all 4096 cosets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .gf2 import BitMatrix, BitVector, DimensionError, rank


class RankDeficient(ValueError):
    pass


def _check_full_rank(g: BitMatrix) -> None:
    if rank(g) != g.nrows:
        raise RankDeficient(f"generator has rank {rank(g)} < {g.nrows}")


def enumerate_codewords(g: BitMatrix) -> set[int]:
    """All ``m @ g`` for every message ``m``, iterating the message space."""
    _check_full_rank(g)
    k = g.nrows
    out = set()
    for m in range(1 << k):
        acc = 0
        for i in range(k):
            if (m >> i) & 1:
                acc ^= g.rows[i]
        out.add(acc)
    return out


def enumerate_codewords_gray(g: BitMatrix) -> list[int]:
    """Same set as :func:`enumerate_codewords`, built by toggling one row per step."""
    _check_full_rank(g)
    acc = 0
    words = [0]
    for step in range(1, 1 << g.nrows):
        acc ^= g.rows[(step & -step).bit_length() - 1]
        words.append(acc)
    return words


def weight_histogram(words) -> dict[int, int]:
    return dict(sorted(Counter(w.bit_count() for w in words).items()))


def min_distance(g: BitMatrix) -> int:
    return min(w.bit_count() for w in enumerate_codewords(g) if w)


def error_patterns(n: int, max_weight: int):
    """Yield packed error vectors by increasing weight, supports in lexicographic order."""
    for w in range(max_weight + 1):
        for support in combinations(range(n), w):
            yield sum(1 << p for p in support)


def _syndrome_int(e: int, g: BitMatrix) -> int:
    s = 0
    for i, r in enumerate(g.rows):
        s |= ((e & r).bit_count() & 1) << i
    return s


@dataclass(frozen=True)
class CosetTable:
    """Minimum-weight coset leader for every syndrome of ``e @ G.T``."""

    leaders: tuple[int, ...]  # indexed by packed syndrome
    code_generator: BitMatrix

    def leader(self, s: BitVector | int) -> BitVector:
        idx = s.value if isinstance(s, BitVector) else s
        return BitVector(self.leaders[idx], self.code_generator.ncols)

    def __len__(self) -> int:
        return len(self.leaders)

    def census(self) -> dict[int, int]:
        return weight_histogram(self.leaders)


def build_coset_table(g: BitMatrix) -> CosetTable:
    if not (g @ g.T).is_zero():
        raise ValueError("coset table needs a self-dual generator")
    k, n = g.shape
    size = 1 << k
    leaders: list[int | None] = [None] * size
    filled = 0
    for e in error_patterns(n, n):
        s = _syndrome_int(e, g)
        if leaders[s] is None:
            leaders[s] = e
            filled += 1
            if filled == size:
                break
    return CosetTable(tuple(leaders), g)  # type: ignore[arg-type]


def ml_decode(c: BitVector, table: CosetTable) -> BitVector:
    g = table.code_generator
    if c.length != g.ncols:
        raise DimensionError(f"word length {c.length} vs code length {g.ncols}")
    return table.leader(_syndrome_int(c.value, g))


def dump_table(table: CosetTable) -> str:
    """One ``syndrome leader`` line per coset, ordered by the printed syndrome."""
    k = table.code_generator.nrows
    lines = sorted(
        f"{BitVector(s, k)} {table.leader(s)}" for s in range(len(table.leaders))
    )
    return "\n".join(lines) + "\n"
