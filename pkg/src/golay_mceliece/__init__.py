"""McEliece encryption over the extended binary Golay code [24,12,8]."""

from .gf2 import BitMatrix, BitVector, Rng
from .golay import RETRANSMIT, GolayCodec, build_codec, correct, decode_error, encode, syndrome
from .mceliece import PrivateKey, PublicKey, decrypt, encrypt, keygen

__all__ = [
    "RETRANSMIT",
    "BitMatrix",
    "BitVector",
    "GolayCodec",
    "PrivateKey",
    "PublicKey",
    "Rng",
    "build_codec",
    "correct",
    "decode_error",
    "decrypt",
    "encode",
    "encrypt",
    "keygen",
    "syndrome",
]
