"""Binary Golay codes: the perfect [23,12,7] code and the extended [24,12,8] code.

The extended code is generated by ``G = [I12 | A]`` with the fixed 12x12
matrix ``A`` below. ``A`` is symmetric and ``A @ A.T = I``, so the code is
self-dual and ``G`` doubles as its own parity-check matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Final

from .gf2 import (
    BitMatrix,
    BitVector,
    DimensionError,
    hamming_weight,
    row_reduce_systematic,
    transpose,
    vec_mat,
)

N: Final = 24
K: Final = 12
D: Final = 8
T: Final = 3

A_ROWS: Final = (
    "110111000101",
    "101110001011",
    "011100010111",
    "111000101101",
    "110001011011",
    "100010110111",
    "000101101111",
    "001011011101",
    "010110111001",
    "101101110001",
    "011011100011",
    "111111111110",
)

# Generator polynomials of the [23,12,7] cyclic code, constant term first.
# x^23 + 1 = (x + 1) g1(x) g2(x) over GF(2).
G1_COEFFS: Final = "110001110101"  # x^11 + x^9 + x^7 + x^6 + x^5 + x + 1
G2_COEFFS: Final = "101011100011"  # x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1

# Coordinate map taking the parity-extended systematic g1 code onto span([I|A]):
# position i of the former becomes position G1_TO_CANONICAL[i] of the latter.
# Found once by octad-incidence graph isomorphism; verified in the test suite.
G1_TO_CANONICAL: Final = (
    0, 18, 21, 10, 8, 4, 19, 23, 11, 6, 1, 16,
    13, 5, 14, 9, 15, 2, 20, 12, 7, 3, 22, 17,
)


class RetransmissionRequested:
    """Decoder outcome when no error pattern of weight <= 3 explains the word.

    This is a protocol value, not a fault. Use the module-level ``RETRANSMIT``.
    """

    _instance: RetransmissionRequested | None = None

    def __new__(cls) -> RetransmissionRequested:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "RETRANSMIT"

    def __bool__(self) -> bool:
        return False


RETRANSMIT: Final = RetransmissionRequested()

DecodeOutcome = BitVector | RetransmissionRequested


def build_A(rows: tuple[str, ...] = A_ROWS) -> BitMatrix:
    return BitMatrix.from_strings(rows)


@dataclass(frozen=True)
class GolayCodec:
    """The extended Golay code with generator ``G = [I12 | A]``."""

    A: BitMatrix
    G: BitMatrix = field(init=False)
    n: int = N
    k: int = K
    d: int = D
    t: int = T

    def __post_init__(self) -> None:
        if self.A.shape != (K, K):
            raise DimensionError(f"A must be 12x12, got {self.A.shape}")
        object.__setattr__(self, "G", BitMatrix.identity(K).hconcat(self.A))

    @property
    def H(self) -> BitMatrix:
        """Parity-check matrix ``[A | I12]``."""
        return self.A.hconcat(BitMatrix.identity(K))

    def is_self_dual(self) -> bool:
        return (self.G @ self.G.T).is_zero()


def build_codec(A: BitMatrix | None = None) -> GolayCodec:
    return GolayCodec(build_A() if A is None else A)


# -- polynomial construction of the perfect code ---------------------------------


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of GF(2) polynomials packed with x^i at bit i."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def build_g23_from_polynomial(g: BitVector) -> BitMatrix:
    """Systematic 12x23 generator of the cyclic code generated by ``g``.

    ``g`` holds the 12 coefficients of a degree-11 polynomial, constant term
    first. Rows ``x^i g(x)`` for ``i = 0..11`` are row reduced to ``[I12 | A23']``.
    """
    if g.length != K:
        raise DimensionError(f"generator polynomial needs 12 coefficients, got {g.length}")
    if not g[K - 1]:
        raise ValueError("generator polynomial must have degree exactly 11")
    if poly_mod((1 << 23) | 1, g.value):
        raise ValueError("polynomial does not divide x^23 - 1")
    cyclic = BitMatrix(tuple(g.value << i for i in range(K)), 23)
    _, sys = row_reduce_systematic(cyclic)
    return sys


def extend_parity(c23: BitVector) -> BitVector:
    if c23.length != 23:
        raise DimensionError(f"expected a 23-bit word, got {c23.length}")
    return BitVector(c23.value | ((hamming_weight(c23) & 1) << 23), N)


def extend_parity_matrix(g23: BitMatrix) -> BitMatrix:
    return BitMatrix.from_vectors([extend_parity(g23.row(i)) for i in range(g23.nrows)])


def permute_coordinates(v: BitVector, mapping: tuple[int, ...]) -> BitVector:
    """Move bit ``i`` of ``v`` to position ``mapping[i]``."""
    out = 0
    for i, j in enumerate(mapping):
        out |= ((v.value >> i) & 1) << j
    return BitVector(out, v.length)


# -- encoding and decoding --------------------------------------------------------


def encode(m: BitVector, codec: GolayCodec) -> BitVector:
    if m.length != K:
        raise DimensionError(f"message must be 12 bits, got {m.length}")
    return vec_mat(m, codec.G)


def syndrome(c: BitVector, gdec: BitMatrix) -> BitVector:
    """``c @ gdec.T``; a valid syndrome because the code is self-dual."""
    if c.length != gdec.ncols:
        raise DimensionError(f"word length {c.length} vs generator width {gdec.ncols}")
    s = 0
    for i, r in enumerate(gdec.rows):
        s |= ((c.value & r).bit_count() & 1) << i
    return BitVector(s, gdec.nrows)


@dataclass(frozen=True)
class _Tables:
    gen_rows: tuple[int, ...]  # rows of Gdec, 24-bit
    right_rows: tuple[int, ...]  # rows of A'
    right_cols: tuple[int, ...]  # columns of A' (= rows of A'^T)


@lru_cache(maxsize=256)
def _tables(gdec: BitMatrix) -> _Tables:
    if gdec.shape != (K, N):
        raise DimensionError(f"decoding generator must be 12x24, got {gdec.shape}")
    if gdec.column_block(0, K) != BitMatrix.identity(K):
        raise ValueError("decoding generator must be systematic [I12 | A']")
    if not (gdec @ gdec.T).is_zero():
        raise ValueError("decoding generator must span a self-dual code")
    right = gdec.column_block(K, N)
    return _Tables(gdec.rows, right.rows, transpose(right).rows)


def _mul_rows(x: int, rows: tuple[int, ...]) -> int:
    acc = 0
    i = 0
    while x:
        if x & 1:
            acc ^= rows[i]
        x >>= 1
        i += 1
    return acc


def _decode_int(c: int, tab: _Tables, literal_rows: bool) -> int | None:
    s1 = 0
    for i, r in enumerate(tab.gen_rows):
        s1 |= ((c & r).bit_count() & 1) << i
    if s1.bit_count() <= T:
        return s1
    # s1 = e_left + e_right @ A'^T, so a single right-half error j_i adds column i of A'
    step2 = tab.right_rows if literal_rows else tab.right_cols
    for i, a in enumerate(step2):
        if (s1 ^ a).bit_count() <= 2:
            return (s1 ^ a) | (1 << (K + i))
    s2 = _mul_rows(s1, tab.right_rows)
    if s2.bit_count() <= T:
        return s2 << K
    for i, a in enumerate(tab.right_rows):
        if (s2 ^ a).bit_count() <= 2:
            return (1 << i) | ((s2 ^ a) << K)
    return None


def decode_error(c: BitVector, gdec: BitMatrix, *, literal_rows: bool = False) -> DecodeOutcome:
    """Arithmetic syndrome decoder for a systematic self-dual ``gdec = [I12 | A']``.

    Returns the error vector of weight <= 3, or ``RETRANSMIT``. The second
    step compares ``s1`` against columns of ``A'``; for the canonical symmetric
    ``A`` these are its rows. ``literal_rows=True`` compares against rows of
    ``A'`` instead, which only decodes correctly when ``A'`` is symmetric and is
    kept for measuring that difference. Ties resolve to the smallest index.
    """
    if c.length != N:
        raise DimensionError(f"word must be 24 bits, got {c.length}")
    e = _decode_int(c.value, _tables(gdec), literal_rows)
    return RETRANSMIT if e is None else BitVector(e, N)


def correct(c: BitVector, codec: GolayCodec) -> tuple[BitVector, BitVector] | RetransmissionRequested:
    e = decode_error(c, codec.G)
    if e is RETRANSMIT:
        return RETRANSMIT
    codeword = c ^ e
    return codeword, codeword.slice(0, K)
