import math

import pytest

from golay_mceliece import golay, mceliece, oracle
from golay_mceliece.gf2 import (
    BitMatrix,
    BitVector,
    InconsistentSystem,
    Rng,
    hamming_distance,
    invert,
    rank,
    vec_mat,
)
from golay_mceliece.golay import RETRANSMIT
from golay_mceliece.mceliece import KeyFormatError

I12 = BitMatrix.identity(12)
I24 = BitMatrix.identity(24)


@pytest.fixture(scope="module")
def pair(keys):
    return keys[0]


# -- key generation -------------------------------------------------------------


def test_keygen_deterministic():
    a = mceliece.keygen(Rng(1234))
    b = mceliece.keygen(Rng(1234))
    assert a == b
    assert mceliece.serialize_private(a[1]) == mceliece.serialize_private(b[1])
    assert mceliece.keygen(Rng(1235)) != a


def test_key_invariants(keys):
    for pk, sk in keys:
        assert pk.t == 3
        assert rank(pk.Gm) == 12
        assert pk.Gm == sk.S @ sk.G2
        assert sk.S @ sk.S_inv == I12
        assert sk.G2.column_block(0, 12) == I12
        assert (sk.G2 @ sk.G2.T).is_zero()
        assert mceliece.is_permutation_matrix(sk.P)
        assert sk.P @ sk.P.T == I24
        assert mceliece.certify_keypair(pk, sk)


def test_degenerate_key_is_plain_golay(codec):
    pk, sk = mceliece.keypair_from(I12, I24)
    assert pk.Gm == codec.G and sk.G2 == codec.G
    m = BitVector.from_str("010011100101")
    y = golay.encode(m, codec)
    for e in mceliece.low_weight_errors():
        assert mceliece.decrypt(sk, y ^ e) == m
        assert golay.correct(y ^ e, codec)[1] == m


def test_keygen_exhaustion_reports_counts():
    broken = golay.build_codec(BitMatrix.identity(12))  # [I|I]: self-dual but d = 2
    stats = mceliece.KeygenStats()
    with pytest.raises(mceliece.KeyGenerationExhausted) as info:
        mceliece.keygen(Rng(0), codec=broken, max_attempts=8, stats=stats)
    assert info.value.stats.attempts == 8
    assert stats.systematization_failures + stats.certification_failures == 8
    assert "certification failures" in str(info.value)


def test_keygen_stats_accumulate():
    stats = mceliece.KeygenStats()
    mceliece.keygen(Rng(77), stats=stats)
    assert stats.attempts == stats.systematization_failures + stats.certification_failures + 1
    assert stats.systematized >= 1


def test_row_indexed_decoder_fails_on_permuted_keys(keys):
    # A' is not symmetric after permutation, so reading step 2 by rows breaks
    for _, sk in keys[:5]:
        Ap = sk.G2.column_block(12, 24)
        assert Ap != Ap.T
        assert not mceliece._certify(sk.G2, literal_rows=True)
        assert mceliece._certify(sk.G2)


# -- errors and encryption ------------------------------------------------------


def test_random_error_vector_weights():
    rng = Rng(5)
    assert mceliece.random_error_vector(rng, 0) == BitVector.zeros(24)
    for _ in range(1000):
        assert mceliece.random_error_vector(rng, 3).weight == 3
    with pytest.raises(ValueError):
        mceliece.random_error_vector(rng, 25)


def test_random_error_vector_uniform_positions():
    rng = Rng(314)
    draws = 100_000
    counts = [0] * 24
    for _ in range(draws):
        counts[mceliece.random_error_vector(rng, 1).value.bit_length() - 1] += 1
    p = 1 / 24
    sigma = math.sqrt(draws * p * (1 - p))
    assert all(abs(c - draws * p) <= 5 * sigma for c in counts)


def test_encrypt_forced_zero():
    pk, _ = mceliece.keypair_from(I12, I24)
    c, e = mceliece.encrypt(pk, BitVector.zeros(12), Rng(0), error=BitVector.zeros(24))
    assert c == BitVector.zeros(24) and e == BitVector.zeros(24)


def test_encrypt_distance_three(pair):
    pk, _ = pair
    rng = Rng(9)
    for _ in range(300):
        m = BitVector(rng.bits(12), 12)
        c, e = mceliece.encrypt(pk, m, rng)
        assert hamming_distance(c, vec_mat(m, pk.Gm)) == 3
        assert e.weight == 3


def test_round_trip_1000_messages(pair):
    pk, sk = pair
    rng = Rng(2024)
    for _ in range(1000):
        m = BitVector(rng.bits(12), 12)
        c, _ = mceliece.encrypt(pk, m, rng)
        assert mceliece.decrypt(sk, c) == m


def test_round_trip_every_error_pattern(keys):
    rng = Rng(6)
    for pk, sk in keys[:3]:
        for _ in range(5):
            m = BitVector(rng.bits(12), 12)
            y = vec_mat(m, pk.Gm)
            for e in mceliece.low_weight_errors():
                assert mceliece.decrypt(sk, y ^ e) == m


def test_encryption_deterministic_given_seed(pair):
    pk, _ = pair
    m = BitVector.from_str("111000111000")
    assert mceliece.encrypt(pk, m, Rng(5)) == mceliece.encrypt(pk, m, Rng(5))


# -- solving and decryption -----------------------------------------------------


def test_solve_mS_examples(pair):
    _, sk = pair
    assert mceliece.solve_mS(sk.G2, BitVector.zeros(24)) == BitVector.zeros(12)
    for i in range(12):
        assert mceliece.solve_mS(sk.G2, sk.G2.row(i)) == BitVector.unit(12, i)
        assert mceliece.solve_mS(sk.G2, sk.G2.row(i), audit=True) == BitVector.unit(12, i)


def test_solve_mS_paths_agree(pair):
    _, sk = pair
    rng = Rng(17)
    for _ in range(1000):
        x = BitVector(rng.bits(12), 12)
        y1 = vec_mat(x, sk.G2)
        assert mceliece.solve_mS(sk.G2, y1) == x
        assert mceliece.solve_mS(sk.G2, y1, audit=True) == x


def test_solve_mS_rejects_non_codeword(pair):
    _, sk = pair
    with pytest.raises(InconsistentSystem):
        mceliece.solve_mS(sk.G2, BitVector.unit(24, 5), audit=True)


def test_decrypt_audit_paths_agree(keys):
    rng = Rng(41)
    for pk, sk in keys:
        for _ in range(50):
            m = BitVector(rng.bits(12), 12)
            c, _ = mceliece.encrypt(pk, m, rng)
            assert mceliece.decrypt(sk, c, audit=True) == m
            assert mceliece.decrypt_canonical(sk, c) == m


def _uncorrectable_flips(sk, e):
    """Extra flips f of weight 5 so that e ^ f has weight 8 and a weight-4 coset leader."""
    table = oracle.build_coset_table(sk.G2)
    octads = [w for w in oracle.enumerate_codewords(sk.G2) if w.bit_count() == 8]
    for s, leader in enumerate(table.leaders):
        if leader.bit_count() != 4:
            continue
        for w in octads:
            dev = leader ^ w
            if dev.bit_count() == 8 and dev & e.value == e.value:
                return BitVector(dev ^ e.value, 24)
    raise AssertionError("no suitable deviation")


def test_decrypt_beyond_radius_requests_retransmission(pair):
    pk, sk = pair
    m = BitVector.from_str("001011100110")
    c, e = mceliece.encrypt(pk, m, Rng(3))
    f = _uncorrectable_flips(sk, e)
    assert f.weight == 5
    dev = e ^ f
    assert dev.weight == 8
    assert mceliece.decrypt(sk, c ^ f) is RETRANSMIT
    assert mceliece.decrypt_canonical(sk, c ^ f) is RETRANSMIT


def test_degenerate_decrypt_matches_correct(codec):
    _, sk = mceliece.keypair_from(I12, I24)
    rng = Rng(12)
    for _ in range(200):
        c = BitVector(rng.bits(24), 24)
        got = mceliece.decrypt(sk, c)
        want = golay.correct(c, codec)
        assert got == (RETRANSMIT if want is RETRANSMIT else want[1])


def test_single_bit_flip_behaviour(pair):
    """Flipping a bit inside the error support still decrypts; outside it makes a weight-4 coset."""
    pk, sk = pair
    m = BitVector.from_str("110100010011")
    c, e = mceliece.encrypt(pk, m, Rng(21))
    outcomes = {p: mceliece.decrypt(sk, c ^ BitVector.unit(24, p)) for p in range(24)}
    for p, out in outcomes.items():
        if e[p]:
            assert out == m
        else:
            assert out is RETRANSMIT
    assert sum(out is RETRANSMIT for out in outcomes.values()) == 21


def test_zero_plaintext_accepted(pair):
    pk, sk = pair
    c, e = mceliece.encrypt(pk, BitVector.zeros(12), Rng(1))
    assert c == e
    assert mceliece.decrypt(sk, c) == BitVector.zeros(12)


# -- serialization --------------------------------------------------------------


def test_public_serialization_round_trip(pair):
    pk, _ = pair
    text = mceliece.serialize_public(pk)
    lines = text.split("\n")
    assert lines[0] == "GOLAY-MCELIECE PUBLIC v1" and lines[1] == "t=3"
    assert len(lines) == 15 and lines[-1] == ""
    assert all(len(l) == 24 for l in lines[2:14])
    assert mceliece.parse_public(text) == pk


def test_private_serialization_round_trip(pair):
    _, sk = pair
    text = mceliece.serialize_private(sk)
    lines = text[:-1].split("\n")
    assert lines[0] == "GOLAY-MCELIECE PRIVATE v1"
    assert [len(l) for l in lines[2:]] == [12] * 12 + [0] + [24] * 12 + [0] + [24] * 24
    back = mceliece.parse_private(text)
    assert back == sk and back.S_inv == invert(sk.S)


@pytest.mark.parametrize(
    "mutate, line, column",
    [
        (lambda t: t[:-1], 14, 25),  # no trailing newline
        (lambda t: t.replace("PUBLIC", "PUBLIK"), 1, 1),
        (lambda t: t.replace("t=3", "t=4"), 2, 3),
        (lambda t: t.replace("\n", "\n2", 3).replace("\n2", "\n", 2), 4, 1),
        (lambda t: t + "extra\n", 15, 1),
        (lambda t: "\n".join(t.split("\n")[:10]) + "\n", 11, 1),
    ],
)
def test_public_parse_errors(pair, mutate, line, column):
    text = mutate(mceliece.serialize_public(pair[0]))
    with pytest.raises(KeyFormatError) as info:
        mceliece.parse_public(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_short_row_reports_column(pair):
    lines = mceliece.serialize_public(pair[0]).split("\n")
    lines[5] = lines[5][:20]
    with pytest.raises(KeyFormatError) as info:
        mceliece.parse_public("\n".join(lines))
    assert (info.value.line, info.value.column) == (6, 21)


def test_private_parse_requires_blank_separator(pair):
    lines = mceliece.serialize_private(pair[1]).split("\n")
    lines[14] = "0"
    with pytest.raises(KeyFormatError) as info:
        mceliece.parse_private("\n".join(lines))
    assert info.value.line == 15


def test_parse_rejects_singular_S(pair):
    _, sk = pair
    lines = mceliece.serialize_private(sk).split("\n")
    lines[2:14] = ["0" * 12] * 12
    with pytest.raises(KeyFormatError):
        mceliece.parse_private("\n".join(lines))


def test_wrong_key_kind(pair):
    pk, sk = pair
    with pytest.raises(KeyFormatError):
        mceliece.parse_private(mceliece.serialize_public(pk))
    with pytest.raises(KeyFormatError):
        mceliece.parse_public(mceliece.serialize_private(sk))
