"""End-to-end self-test battery run by ``golay-mceliece selftest``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import golay, mceliece, oracle
from .gf2 import BitMatrix, BitVector, Rng

CODEWORD_HISTOGRAM = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
LEADER_CENSUS = {0: 1, 1: 24, 2: 276, 3: 2024, 4: 1771}


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class SelftestReport:
    results: list[CheckResult] = field(default_factory=list)
    keygen: mceliece.KeygenStats = field(default_factory=mceliece.KeygenStats)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _fmt_hist(h: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(h.items()))


def check_census(codec: golay.GolayCodec) -> tuple[bool, str]:
    words = oracle.enumerate_codewords(codec.G)
    hist = oracle.weight_histogram(words)
    ok = len(words) == 4096 and hist == CODEWORD_HISTOGRAM
    return ok, f"weights {_fmt_hist(hist)}"


def check_self_duality(codec: golay.GolayCodec) -> tuple[bool, str]:
    A, I = codec.A, BitMatrix.identity(12)
    ok = (
        (codec.G @ codec.G.T).is_zero()
        and (codec.G @ codec.H.T).is_zero()
        and A == A.T
        and A @ A.T == I
    )
    return ok, "G G^T = 0, G H^T = 0, A = A^T, A A^T = I"


def check_correction_radius(codec: golay.GolayCodec) -> tuple[bool, str]:
    errors = mceliece.low_weight_errors()
    c0 = golay.encode(BitVector.from_str("110010100111"), codec)
    bad = sum(golay.decode_error(c0 ^ e, codec.G) != e for e in errors)
    return bad == 0, f"{len(errors) - bad}/{len(errors)} patterns recovered"


def check_oracle(codec: golay.GolayCodec) -> tuple[bool, str]:
    table = oracle.build_coset_table(codec.G)
    census = table.census()
    mismatches = 0
    for s in range(len(table)):
        leader = table.leader(s)
        got = golay.decode_error(leader, codec.G)
        want = leader if leader.weight <= 3 else golay.RETRANSMIT
        mismatches += got != want
    ok = census == LEADER_CENSUS and mismatches == 0
    return ok, f"leaders {_fmt_hist(census)}; {mismatches} mismatches"


def check_round_trip(
    codec: golay.GolayCodec, stats: mceliece.KeygenStats, seed: int, keys: int, messages: int
) -> tuple[bool, str]:
    master = Rng(seed)
    failures = 0
    for k in range(keys):
        rng = master.spawn(k)
        pk, sk = mceliece.keygen(rng, codec=codec, stats=stats)
        for _ in range(messages):
            m = BitVector(rng.bits(12), 12)
            c, _ = mceliece.encrypt(pk, m, rng)
            failures += mceliece.decrypt(sk, c) != m
    return failures == 0, f"{keys} keys x {messages} messages, {failures} failures"


def run_selftest(
    A: BitMatrix | None = None, *, seed: int = 2019, keys: int = 20, messages: int = 100
) -> SelftestReport:
    """Run every check; ``A`` substitutes the embedded matrix (sensitivity hook)."""
    codec = golay.build_codec(A)
    report = SelftestReport()
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("codeword census", lambda: check_census(codec)),
        ("self-duality", lambda: check_self_duality(codec)),
        ("correction radius", lambda: check_correction_radius(codec)),
        ("oracle equivalence", lambda: check_oracle(codec)),
        ("round trip", lambda: check_round_trip(codec, report.keygen, seed, keys, messages)),
    ]
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a broken A can make keygen or the decoder raise
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append(CheckResult(name, ok, time.perf_counter() - t0, detail))
    return report


def format_report(report: SelftestReport) -> str:
    lines = [f"{'check':<20} {'result':<6} {'time':>8}  detail"]
    for r in report.results:
        lines.append(f"{r.name:<20} {'PASS' if r.passed else 'FAIL':<6} {r.seconds:7.3f}s  {r.detail}")
    st = report.keygen
    lines.append("")
    if st.attempts:
        lines.append(
            f"keygen: {st.attempts} permutations sampled, "
            f"{st.systematization_failures} not systematizable "
            f"({st.systematization_failures / st.attempts:.1%}), "
            f"{st.certification_failures} failed decoder certification "
            f"({st.certification_failures / max(st.systematized, 1):.1%} of systematized)"
        )
        lines.append(
            f"row-indexed decoder variant: {st.literal_row_failures}/{st.systematized} "
            f"systematized keys would fail certification"
        )
    lines.append("overall: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines)
