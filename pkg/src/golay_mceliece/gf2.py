"""Dense bit-packed linear algebra over GF(2).

Vectors and matrix rows are Python ints. Position ``i`` (0-based, leftmost
bit as printed) lives at bit ``i`` of the int, so ``"1100"`` packs to ``0b0011``.
Everything here is an immutable value except :class:`Rng`.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class Singular(ArithmeticError):
    """Matrix is not invertible over GF(2)."""


class NotSystematizable(ArithmeticError):
    """Leading k x k block of a generator matrix is singular."""


def popcount(x: int) -> int:
    return x.bit_count()


def _parse_bits(text: str) -> tuple[int, int]:
    text = "".join(text.split())
    value = 0
    for i, ch in enumerate(text):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} at position {i}")
    return value, len(text)


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2)."""

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("length must be positive")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        value, n = _parse_bits(text)
        return cls(value, n)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitVector:
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(value, len(bits))

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(0, n)

    @classmethod
    def unit(cls, n: int, i: int) -> BitVector:
        """Indicator vector with a single 1 at 0-based position ``i``."""
        if not 0 <= i < n:
            raise IndexError(i)
        return cls(1 << i, n)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __xor__(self, other: BitVector) -> BitVector:
        if not isinstance(other, BitVector):
            return NotImplemented
        if other.length != self.length:
            raise DimensionError(f"length {self.length} vs {other.length}")
        return BitVector(self.value ^ other.value, self.length)

    __add__ = __xor__

    def __str__(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    @property
    def weight(self) -> int:
        return popcount(self.value)

    def concat(self, other: BitVector) -> BitVector:
        return BitVector(self.value | (other.value << self.length), self.length + other.length)

    def slice(self, start: int, stop: int) -> BitVector:
        n = stop - start
        return BitVector((self.value >> start) & ((1 << n) - 1), n)

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.value >> i) & 1]

    def to_matrix(self) -> BitMatrix:
        return BitMatrix((self.value,), self.length)

    def __matmul__(self, m: BitMatrix) -> BitVector:
        return vec_mat(self, m)


def hamming_weight(v: BitVector) -> int:
    return popcount(v.value)


def hamming_distance(x: BitVector, y: BitVector) -> int:
    if x.length != y.length:
        raise DimensionError(f"length {x.length} vs {y.length}")
    return popcount(x.value ^ y.value)


@dataclass(frozen=True)
class BitMatrix:
    """Dense k x n matrix over GF(2), stored as a tuple of packed rows."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        if not self.rows or self.ncols < 1:
            raise DimensionError("matrix must be at least 1 x 1")
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row value does not fit in {self.ncols} columns")

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> BitMatrix:
        rows = []
        width = None
        for line in lines:
            value, n = _parse_bits(line)
            if width is None:
                width = n
            elif n != width:
                raise DimensionError(f"ragged rows: {width} vs {n}")
            rows.append(value)
        if width is None:
            raise DimensionError("no rows")
        return cls(tuple(rows), width)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> BitMatrix:
        return cls.from_vectors([BitVector.from_bits(r) for r in data])

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> BitMatrix:
        widths = {v.length for v in vectors}
        if len(widths) != 1:
            raise DimensionError("vectors must share one length")
        return cls(tuple(v.value for v in vectors), widths.pop())

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, k: int, n: int) -> BitMatrix:
        return cls((0,) * k, n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def row(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.ncols)

    def column(self, j: int) -> BitVector:
        return BitVector(sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)), self.nrows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.nrows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    @property
    def T(self) -> BitMatrix:
        return transpose(self)

    def hconcat(self, other: BitMatrix) -> BitMatrix:
        if other.nrows != self.nrows:
            raise DimensionError(f"row counts {self.nrows} vs {other.nrows}")
        return BitMatrix(
            tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows)),
            self.ncols + other.ncols,
        )

    def column_block(self, start: int, stop: int) -> BitMatrix:
        mask = (1 << (stop - start)) - 1
        return BitMatrix(tuple((r >> start) & mask for r in self.rows), stop - start)

    def is_zero(self) -> bool:
        return not any(self.rows)


def vec_mat(v: BitVector, m: BitMatrix) -> BitVector:
    """Row vector times matrix: XOR of the rows selected by ``v``."""
    if v.length != m.nrows:
        raise DimensionError(f"vector length {v.length} vs matrix rows {m.nrows}")
    acc = 0
    x = v.value
    i = 0
    while x:
        if x & 1:
            acc ^= m.rows[i]
        x >>= 1
        i += 1
    return BitVector(acc, m.ncols)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    out = []
    for r in a.rows:
        acc = 0
        i = 0
        while r:
            if r & 1:
                acc ^= b.rows[i]
            r >>= 1
            i += 1
        out.append(acc)
    return BitMatrix(tuple(out), b.ncols)


def transpose(m: BitMatrix) -> BitMatrix:
    return BitMatrix(tuple(m.column(j).value for j in range(m.ncols)), m.nrows)


def rank(m: BitMatrix) -> int:
    rows = list(m.rows)
    r = 0
    for col in range(m.ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        r += 1
        if r == len(rows):
            break
    return r


def row_reduce_systematic(m: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """Gauss-Jordan on the leading k columns, no column swaps.

    Returns ``(T, Msys)`` with ``Msys = T @ m`` and ``Msys[:, :k] = I_k``.
    Raises :class:`NotSystematizable` if the leading k x k block is singular.
    """
    k, n = m.shape
    if k > n:
        raise DimensionError(f"need k <= n, got {k}x{n}")
    rows = list(m.rows)
    # track T by augmenting each row with its row-operation history
    track = [1 << i for i in range(k)]
    for col in range(k):
        bit = 1 << col
        pivot = next((i for i in range(col, k) if rows[i] & bit), None)
        if pivot is None:
            raise NotSystematizable(f"leading block is singular at column {col + 1}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        track[col], track[pivot] = track[pivot], track[col]
        for i in range(k):
            if i != col and rows[i] & bit:
                rows[i] ^= rows[col]
                track[i] ^= track[col]
    return BitMatrix(tuple(track), k), BitMatrix(tuple(rows), n)


def invert(s: BitMatrix) -> BitMatrix:
    k, n = s.shape
    if k != n:
        raise DimensionError(f"cannot invert non-square {k}x{n} matrix")
    try:
        t, _ = row_reduce_systematic(s)
    except NotSystematizable as exc:
        raise Singular(str(exc)) from None
    return t


def solve_left(m: BitMatrix, y: BitVector) -> BitVector:
    """Find ``x`` with ``x @ m = y`` by row reducing ``[m^T | y^T]``.

    Raises :class:`InconsistentSystem` if ``y`` is not in the row space of ``m``.
    """
    k, n = m.shape
    if y.length != n:
        raise DimensionError(f"target length {y.length} vs matrix width {n}")
    # equations: one per column j of m, unknowns x_0..x_{k-1}, rhs y_j
    eqs = [m.column(j).value | (((y.value >> j) & 1) << k) for j in range(n)]
    rhs_bit = 1 << k
    r = 0
    pivots = []
    for col in range(k):
        bit = 1 << col
        pivot = next((i for i in range(r, n) if eqs[i] & bit), None)
        if pivot is None:
            continue
        eqs[r], eqs[pivot] = eqs[pivot], eqs[r]
        for i in range(n):
            if i != r and eqs[i] & bit:
                eqs[i] ^= eqs[r]
        pivots.append(col)
        r += 1
    if any(e == rhs_bit for e in eqs[r:]):
        raise InconsistentSystem("target vector is not in the row space")
    x = 0
    for i, col in enumerate(pivots):
        if eqs[i] & rhs_bit:
            x |= 1 << col
    return BitVector(x, k)


class InconsistentSystem(ArithmeticError):
    """Linear system has no solution."""


class Rng:
    """Deterministic bit stream seeded by a 64-bit integer.

    Backed by the stdlib Mersenne Twister (MT19937) seeded with the integer
    seed; only ``getrandbits`` is used, whose output is stable across Python
    releases. Child streams are derived from SHA-256 of (seed, label).
    """

    def __init__(self, seed: int):
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed
        self._mt = random.Random(seed)

    def bits(self, n: int) -> int:
        return self._mt.getrandbits(n) if n > 0 else 0

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n < 1:
            raise ValueError("n must be positive")
        width = (n - 1).bit_length()
        while True:
            x = self.bits(width)
            if x < n:
                return x

    def spawn(self, label: int) -> Rng:
        digest = hashlib.sha256(f"{self.seed}:{label}".encode()).digest()
        return Rng(int.from_bytes(digest[:8], "little"))


def random_matrix(k: int, n: int, rng: Rng) -> BitMatrix:
    return BitMatrix(tuple(rng.bits(n) for _ in range(k)), n)


def random_invertible(k: int, rng: Rng) -> BitMatrix:
    """Uniform over invertible k x k matrices via rejection sampling."""
    if k < 1:
        raise ValueError("k must be positive")
    while True:
        m = random_matrix(k, k, rng)
        if rank(m) == k:
            return m


def random_permutation_indices(n: int, rng: Rng) -> list[int]:
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def permutation_matrix(perm: Sequence[int]) -> BitMatrix:
    """Row ``i`` has its single 1 in column ``perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    return BitMatrix(tuple(1 << p for p in perm), n)


def random_permutation(n: int, rng: Rng) -> BitMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    return permutation_matrix(random_permutation_indices(n, rng))
