"""Exit criteria. Run with ``pytest tests/test_acceptance.py -v`` to see one line per criterion."""

import time
from contextlib import contextmanager
from itertools import combinations

import pytest

from golay_mceliece import golay, mceliece, oracle, selftest
from golay_mceliece.cli import main
from golay_mceliece.gf2 import BitMatrix, BitVector, Rng, vec_mat

pytestmark = pytest.mark.acceptance

SEED = 20190426
ERRORS = [BitVector(sum(1 << p for p in s), 24) for w in range(4) for s in combinations(range(24), w)]


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, budget=None):
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - t0
            if budget is not None:
                assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - t0
            with capsys.disabled():
                limit = f" (< {budget}s)" if budget else ""
                print(f"\n[criterion {number}] {status} {title}: {elapsed:.3f}s{limit}")

    return run


def _fresh_keys(count=20, seed=SEED):
    master = Rng(seed)
    return [mceliece.keygen(master.spawn(i)) for i in range(count)]


def test_1_code_parameters(criterion, codec):
    with criterion(1, "code parameters [24,12,8]", budget=1.0):
        words = oracle.enumerate_codewords(codec.G)
        gray = oracle.enumerate_codewords_gray(codec.G)
        assert len(words) == 4096
        assert set(gray) == words and len(gray) == 4096
        weights = [w.bit_count() for w in words]
        assert min(w for w in weights if w) == 8
        assert all(w % 4 == 0 for w in weights)
        hist = oracle.weight_histogram(words)
        assert hist == oracle.weight_histogram(gray)
        assert hist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_2_self_duality(criterion, codec):
    with criterion(2, "self-duality"):
        I12 = BitMatrix.identity(12)
        assert (codec.G @ codec.G.T).is_zero()
        H = codec.A.hconcat(I12)
        assert (codec.G @ H.T).is_zero()
        assert codec.A == codec.A.T
        assert codec.A @ codec.A.T == I12


def test_3_correction_radius(criterion, codec):
    with criterion(3, "correction radius, canonical + 20 certified keys", budget=5.0):
        assert len(ERRORS) == 2325
        c = golay.encode(BitVector.from_str("100111010010"), codec)
        assert all(golay.decode_error(c ^ e, codec.G) == e for e in ERRORS)
        for pk, sk in _fresh_keys():
            y = vec_mat(BitVector.from_str("011101101001"), sk.G2)
            assert all(golay.decode_error(y ^ e, sk.G2) == e for e in ERRORS)


def test_4_detection(criterion, codec):
    with criterion(4, "detection of 1..7 errors"):
        rng = Rng(SEED)
        cases = 0
        for _ in range(14_000):
            c = golay.encode(BitVector(rng.bits(12), 12), codec)
            e = mceliece.random_error_vector(rng, 1 + rng.below(7))
            assert golay.syndrome(c ^ e, codec.G).value != 0
            cases += 1
        assert cases >= 10_000


def test_5_oracle_equivalence(criterion, codec):
    with criterion(5, "coset-leader oracle equivalence", budget=2.0):
        table = oracle.build_coset_table(codec.G)
        assert table.census() == {0: 1, 1: 24, 2: 276, 3: 2024, 4: 1771}
        retransmit = 0
        for s in range(4096):
            leader = table.leader(s)
            got = golay.decode_error(leader, codec.G)
            if leader.weight <= 3:
                assert got == oracle.ml_decode(leader, table) == leader
            else:
                assert got is golay.RETRANSMIT
                retransmit += 1
        assert retransmit == 1771


def test_6_end_to_end(criterion, tmp_path):
    with criterion(6, "end-to-end: 20 keys x 1000 messages + 1 KiB file", budget=10.0):
        rng = Rng(SEED + 6)
        for pk, sk in _fresh_keys(seed=SEED + 6):
            for _ in range(1000):
                m = BitVector(rng.bits(12), 12)
                c, _ = mceliece.encrypt(pk, m, rng)
                assert mceliece.decrypt(sk, c) == m
        data = rng.bits(8192).to_bytes(1024, "little")
        pub, priv = tmp_path / "k.pub", tmp_path / "k.priv"
        src, ct, out = tmp_path / "p", tmp_path / "ct", tmp_path / "out"
        src.write_bytes(data)
        assert main(["keygen", "--seed", "6", "--pub", str(pub), "--priv", str(priv)]) == 0
        assert main(["encrypt", "--pub", str(pub), "--in", str(src), "--out", str(ct), "--seed", "6"]) == 0
        assert main(["decrypt", "--priv", str(priv), "--in", str(ct), "--out", str(out)]) == 0
        assert out.read_bytes() == data


def test_7_solve_consistency(criterion):
    with criterion(7, "row-reduction solve vs systematic truncation"):
        _, sk = mceliece.keygen(Rng(SEED + 7))
        rng = Rng(7)
        for _ in range(10_000):
            x = BitVector(rng.bits(12), 12)
            y1 = vec_mat(x, sk.G2)
            assert mceliece.solve_mS(sk.G2, y1, audit=True) == mceliece.solve_mS(sk.G2, y1) == x


def test_8_keygen_telemetry(criterion, capsys):
    with criterion(8, "keygen certification telemetry"):
        report = selftest.run_selftest(seed=SEED)
        text = selftest.format_report(report)
        st = report.keygen
        assert st.attempts > 0
        assert "not systematizable" in text and "failed decoder certification" in text
        assert report.passed
        rate = st.systematization_failures / st.attempts
        with capsys.disabled():
            print(f"\n  systematization failure rate {rate:.1%} over {st.attempts} permutations; "
                  f"decoder certification failures {st.certification_failures}/{st.systematized}; "
                  f"row-indexed variant failures {st.literal_row_failures}/{st.systematized}")
        for pk, sk in _fresh_keys(count=5, seed=SEED + 8):
            assert mceliece._certify(sk.G2) and mceliece.certify_keypair(pk, sk)
