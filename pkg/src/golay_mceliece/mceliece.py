"""McEliece public-key encryption over the extended Golay code.

Key generation scrambles the canonical generator ``G = [I12 | A]`` with a
random column permutation ``P``, brings ``G @ P`` back to systematic form
``G2 = [I12 | A']`` and hides it behind an invertible ``S``: the public key is
``Gm = S @ G2``. Decryption strips a weight-3 error with the Golay syndrome
decoder run against ``G2`` and undoes ``S``.

At n = 24 every one of the 2^12 messages can be tried by hand, so this is a
teaching instance with no security to speak of.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Final

from . import golay
from .gf2 import (
    BitMatrix,
    BitVector,
    DimensionError,
    NotSystematizable,
    Rng,
    Singular,
    invert,
    permutation_matrix,
    random_invertible,
    random_permutation,
    rank,
    row_reduce_systematic,
    solve_left,
    vec_mat,
)
from .golay import K, N, RETRANSMIT, T, RetransmissionRequested

log = logging.getLogger(__name__)

MAX_KEYGEN_ATTEMPTS: Final = 64
PROBE_MESSAGE: Final = BitVector.from_str("101100111000")

PUBLIC_HEADER: Final = "GOLAY-MCELIECE PUBLIC v1"
PRIVATE_HEADER: Final = "GOLAY-MCELIECE PRIVATE v1"


class KeyGenerationExhausted(RuntimeError):
    def __init__(self, stats: KeygenStats):
        super().__init__(
            f"no usable key after {stats.attempts} attempts "
            f"({stats.systematization_failures} systematization failures, "
            f"{stats.certification_failures} certification failures)"
        )
        self.stats = stats


class KeyFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PublicKey:
    Gm: BitMatrix
    t: int = T

    def __post_init__(self) -> None:
        if self.Gm.shape != (K, N):
            raise DimensionError(f"public matrix must be 12x24, got {self.Gm.shape}")


@dataclass(frozen=True)
class PrivateKey:
    S: BitMatrix
    G2: BitMatrix
    P: BitMatrix
    S_inv: BitMatrix = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.S.shape != (K, K) or self.G2.shape != (K, N) or self.P.shape != (N, N):
            raise DimensionError("private key matrices must be 12x12, 12x24, 24x24")
        object.__setattr__(self, "S_inv", invert(self.S))

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.S @ self.G2)


@dataclass
class KeygenStats:
    attempts: int = 0
    systematization_failures: int = 0
    certification_failures: int = 0
    # keys where the row-indexed reading of the decoder would have failed
    literal_row_failures: int = 0
    systematized: int = 0


def low_weight_errors(max_weight: int = T, n: int = N) -> list[BitVector]:
    """Every error vector of weight <= ``max_weight``; 2325 of them for n=24, w=3."""
    return [
        BitVector(sum(1 << p for p in support), n)
        for w in range(max_weight + 1)
        for support in combinations(range(n), w)
    ]


_CERT_ERRORS: Final = tuple(e.value for e in low_weight_errors())


def _certify(G2: BitMatrix, *, literal_rows: bool = False) -> bool:
    """Check the syndrome decoder against every weight <= 3 error for ``G2``.

    Syndromes depend only on the error, so one codeword probes all of them.
    """
    tab = golay._tables(G2)
    return all(golay._decode_int(e, tab, literal_rows) == e for e in _CERT_ERRORS)


def certify_keypair(pk: PublicKey, sk: PrivateKey, probe: BitVector = PROBE_MESSAGE) -> bool:
    y = vec_mat(probe, pk.Gm)
    for e in _CERT_ERRORS:
        if decrypt(sk, BitVector(y.value ^ e, N)) != probe:
            return False
    return True


def keygen(
    rng: Rng,
    *,
    codec: golay.GolayCodec | None = None,
    max_attempts: int = MAX_KEYGEN_ATTEMPTS,
    stats: KeygenStats | None = None,
) -> tuple[PublicKey, PrivateKey]:
    """Generate and certify a keypair, resampling only ``P`` on failure."""
    codec = codec or golay.build_codec()
    stats = stats if stats is not None else KeygenStats()
    S = None
    for _ in range(max_attempts):
        stats.attempts += 1
        P = random_permutation(N, rng)
        try:
            _, G2 = row_reduce_systematic(codec.G @ P)
        except NotSystematizable:
            stats.systematization_failures += 1
            continue
        stats.systematized += 1
        if not (G2 @ G2.T).is_zero():
            # only possible with a corrupted A
            stats.certification_failures += 1
            continue
        if not _certify(G2, literal_rows=True):
            stats.literal_row_failures += 1
        if S is None:
            S = random_invertible(K, rng)
        sk = PrivateKey(S, G2, P)
        pk = sk.public
        if _certify(G2) and certify_keypair(pk, sk):
            log.debug("key certified after %d attempts", stats.attempts)
            return pk, sk
        stats.certification_failures += 1
    raise KeyGenerationExhausted(stats)


def keypair_from(S: BitMatrix, P: BitMatrix, codec: golay.GolayCodec | None = None) -> tuple[PublicKey, PrivateKey]:
    """Build a keypair from explicit ``S`` and ``P`` without certification."""
    codec = codec or golay.build_codec()
    _, G2 = row_reduce_systematic(codec.G @ P)
    sk = PrivateKey(S, G2, P)
    return sk.public, sk


def random_error_vector(rng: Rng, t: int = T, n: int = N) -> BitVector:
    """Uniform over the C(n, t) supports (partial Fisher-Yates)."""
    if not 0 <= t <= n:
        raise ValueError(f"weight must be in [0, {n}], got {t}")
    pos = list(range(n))
    for i in range(t):
        j = i + rng.below(n - i)
        pos[i], pos[j] = pos[j], pos[i]
    return BitVector(sum(1 << p for p in pos[:t]), n)


def encrypt(
    pk: PublicKey, m: BitVector, rng: Rng, *, error: BitVector | None = None
) -> tuple[BitVector, BitVector]:
    """Return ``(c, e)`` with ``c = m @ Gm + e``.

    ``e`` has weight exactly ``pk.t`` unless ``error`` forces it (tests only).
    The caller must not publish ``e``.
    """
    if m.length != K:
        raise DimensionError(f"plaintext must be 12 bits, got {m.length}")
    e = random_error_vector(rng, pk.t) if error is None else error
    return vec_mat(m, pk.Gm) ^ e, e


def solve_mS(G2: BitMatrix, y1: BitVector, *, audit: bool = False) -> BitVector:
    """Recover ``x`` with ``x @ G2 = y1``.

    The fast path reads the first 12 bits, valid since ``G2 = [I12 | A']``.
    ``audit=True`` instead row reduces ``[G2^T | y1^T]`` and also detects
    ``y1`` outside the code (:class:`~golay_mceliece.gf2.InconsistentSystem`).
    """
    if audit:
        return solve_left(G2, y1)
    x = y1.slice(0, K)
    return x


def decrypt(sk: PrivateKey, c: BitVector, *, audit: bool = False) -> BitVector | RetransmissionRequested:
    if c.length != N:
        raise DimensionError(f"ciphertext must be 24 bits, got {c.length}")
    e = golay.decode_error(c, sk.G2)
    if e is RETRANSMIT:
        return RETRANSMIT
    mS = solve_mS(sk.G2, c ^ e, audit=audit)
    return vec_mat(mS, sk.S_inv)


def decrypt_canonical(
    sk: PrivateKey, c: BitVector, codec: golay.GolayCodec | None = None
) -> BitVector | RetransmissionRequested:
    """Audit path: decode ``c @ P^T`` with the canonical code, then map ``e`` back."""
    codec = codec or golay.build_codec()
    e_canon = golay.decode_error(vec_mat(c, sk.P.T), codec.G)
    if e_canon is RETRANSMIT:
        return RETRANSMIT
    e = vec_mat(e_canon, sk.P)
    return vec_mat(solve_mS(sk.G2, c ^ e, audit=True), sk.S_inv)


# -- serialization ----------------------------------------------------------------


def _matrix_lines(m: BitMatrix) -> list[str]:
    return [str(m.row(i)) for i in range(m.nrows)]


def serialize_public(pk: PublicKey) -> str:
    return "\n".join([PUBLIC_HEADER, f"t={pk.t}", *_matrix_lines(pk.Gm)]) + "\n"


def serialize_private(sk: PrivateKey) -> str:
    lines = [
        PRIVATE_HEADER,
        f"t={T}",
        *_matrix_lines(sk.S),
        "",
        *_matrix_lines(sk.G2),
        "",
        *_matrix_lines(sk.P),
    ]
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str):
        if not text.endswith("\n"):
            nlines = text.count("\n") + 1
            raise KeyFormatError("missing trailing newline", nlines, len(text) - text.rfind("\n"))
        self.lines = text[:-1].split("\n")
        self.pos = 0

    def take(self) -> tuple[int, str]:
        if self.pos >= len(self.lines):
            raise KeyFormatError("unexpected end of file", self.pos + 1)
        self.pos += 1
        return self.pos, self.lines[self.pos - 1]

    def literal(self, expected: str) -> None:
        lineno, line = self.take()
        if line != expected:
            col = next(
                (i + 1 for i, (a, b) in enumerate(zip(line, expected)) if a != b),
                min(len(line), len(expected)) + 1,
            )
            raise KeyFormatError(f"expected {expected!r}", lineno, col)

    def bitrows(self, count: int, width: int) -> BitMatrix:
        rows = []
        for _ in range(count):
            lineno, line = self.take()
            for col, ch in enumerate(line, 1):
                if ch not in "01":
                    raise KeyFormatError(f"invalid character {ch!r}", lineno, col)
            if len(line) != width:
                raise KeyFormatError(f"expected {width} bits, found {len(line)}", lineno, min(len(line), width) + 1)
            rows.append(line)
        return BitMatrix.from_strings(rows)

    def end(self) -> None:
        if self.pos != len(self.lines):
            raise KeyFormatError("trailing content", self.pos + 1)


def parse_key_text(text: str) -> tuple[str, dict[str, BitMatrix]]:
    """Syntactic parse of a key file: ``("public", {"Gm"})`` or ``("private", {"S", "G2", "P"})``.

    No algebraic checks are made here.
    """
    src = _Lines(text)
    lineno, header = src.take()
    if header == PUBLIC_HEADER:
        kind = "public"
    elif header == PRIVATE_HEADER:
        kind = "private"
    else:
        raise KeyFormatError(f"unknown header {header!r}", lineno)
    src.literal(f"t={T}")
    if kind == "public":
        mats = {"Gm": src.bitrows(K, N)}
    else:
        S = src.bitrows(K, K)
        src.literal("")
        G2 = src.bitrows(K, N)
        src.literal("")
        mats = {"S": S, "G2": G2, "P": src.bitrows(N, N)}
    src.end()
    return kind, mats


def parse_public(text: str) -> PublicKey:
    kind, mats = parse_key_text(text)
    if kind != "public":
        raise KeyFormatError("expected a public key", 1)
    return PublicKey(mats["Gm"])


def parse_private(text: str) -> PrivateKey:
    kind, mats = parse_key_text(text)
    if kind != "private":
        raise KeyFormatError("expected a private key", 1)
    try:
        return PrivateKey(mats["S"], mats["G2"], mats["P"])
    except Singular:
        raise KeyFormatError("scrambler S is singular", 3) from None


def is_permutation_matrix(P: BitMatrix) -> bool:
    n = P.nrows
    return P.ncols == n and all(r.bit_count() == 1 for r in P.rows) and sum(P.rows) == (1 << n) - 1


def key_report(kind: str, mats: dict[str, BitMatrix]) -> dict[str, object]:
    """Facts about a parsed key, for ``inspect``."""
    if kind == "public":
        Gm = mats["Gm"]
        return {"type": kind, "shape": Gm.shape, "rank": rank(Gm), "t": T,
                "self_dual": (Gm @ Gm.T).is_zero()}
    S, G2, P = mats["S"], mats["G2"], mats["P"]
    s_ok = rank(S) == K
    systematic = G2.column_block(0, K) == BitMatrix.identity(K)
    self_dual = (G2 @ G2.T).is_zero()
    report: dict[str, object] = {
        "type": kind, "rank_S": rank(S), "rank_G2": rank(G2), "t": T,
        "S_invertible": s_ok, "G2_systematic": systematic, "G2_self_dual": self_dual,
        "P_permutation": is_permutation_matrix(P),
    }
    certified = False
    if s_ok and systematic and self_dual:
        sk = PrivateKey(S, G2, P)
        certified = _certify(G2) and certify_keypair(sk.public, sk)
    report["certified"] = certified
    return report


__all__ = [
    "KeyFormatError",
    "KeyGenerationExhausted",
    "KeygenStats",
    "PrivateKey",
    "PublicKey",
    "certify_keypair",
    "decrypt",
    "decrypt_canonical",
    "encrypt",
    "keygen",
    "keypair_from",
    "parse_private",
    "parse_public",
    "permutation_matrix",
    "random_error_vector",
    "serialize_private",
    "serialize_public",
    "solve_mS",
]
