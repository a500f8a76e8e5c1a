"""Byte strings to 12-bit blocks and the block file format.

Bits are taken most significant first within each byte. The last block is
zero padded; the exact bit count is kept in the file header so the padding
can be stripped unambiguously.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final

from .gf2 import BitVector
from .mceliece import KeyFormatError

CIPHERTEXT_HEADER: Final = "GOLAY-MCELIECE CT v1"
CODEC_HEADER: Final = "GOLAY24 FEC v1"


@dataclass(frozen=True)
class MessageFraming:
    original_bit_length: int
    blocks: tuple[BitVector, ...]

    @classmethod
    def from_bytes(cls, data: bytes, block_bits: int = 12) -> MessageFraming:
        nbits = 8 * len(data)
        bits = "".join(f"{b:08b}" for b in data)
        bits += "0" * (-nbits % block_bits)
        blocks = tuple(
            BitVector.from_str(bits[i : i + block_bits]) for i in range(0, len(bits), block_bits)
        )
        return cls(nbits, blocks)

    def to_bytes(self) -> bytes:
        bits = "".join(str(b) for b in self.blocks)
        if len(bits) < self.original_bit_length:
            raise ValueError("blocks hold fewer bits than the recorded length")
        bits = bits[: self.original_bit_length]
        if len(bits) % 8:
            raise ValueError("bit length is not a whole number of bytes")
        return bytes(int(bits[i : i + 8], 2) for i in range(0, len(bits), 8))


def write_blocks(header: str, nbits: int, blocks) -> str:
    return "\n".join([header, f"bits={nbits}", *(str(b) for b in blocks)]) + "\n"


def read_blocks(text: str, header: str, width: int = 24, block_bits: int = 12) -> tuple[int, list[BitVector]]:
    """Parse a block file; errors carry line and column."""
    if not text.endswith("\n"):
        raise KeyFormatError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    if lines[0] != header:
        raise KeyFormatError(f"expected header {header!r}", 1)
    if len(lines) < 2 or not lines[1].startswith("bits="):
        raise KeyFormatError("expected 'bits=<n>'", 2)
    digits = lines[1][5:]
    if not digits.isdigit() or (len(digits) > 1 and digits[0] == "0"):
        raise KeyFormatError("bit count must be a decimal integer", 2, 6)
    nbits = int(digits)
    blocks = []
    for lineno, line in enumerate(lines[2:], 3):
        for col, ch in enumerate(line, 1):
            if ch not in "01":
                raise KeyFormatError(f"invalid character {ch!r}", lineno, col)
        if len(line) != width:
            raise KeyFormatError(f"expected {width} bits, found {len(line)}", lineno, min(len(line), width) + 1)
        blocks.append(BitVector.from_str(line))
    expected = -(-nbits // block_bits)
    if len(blocks) != expected:
        raise KeyFormatError(
            f"bits={nbits} needs {expected} blocks, file has {len(blocks)}", len(lines) + 1
        )
    return nbits, blocks
