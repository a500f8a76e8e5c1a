"""Command-line interface: ``golay-mceliece <command> ...``."""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from . import framing, golay, mceliece, oracle, selftest
from .gf2 import BitVector, Rng, hamming_weight


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise mceliece.KeyFormatError("non-ASCII byte", 1 + exc.object[: exc.start].count(b"\n")) from None


def _seed(args: argparse.Namespace, what: str) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(64)
    print(f"{what} seed: {seed}", file=sys.stderr)
    return seed


def cmd_keygen(args: argparse.Namespace) -> int:
    seed = _seed(args, "keygen")
    stats = mceliece.KeygenStats()
    pk, sk = mceliece.keygen(Rng(seed), stats=stats)
    Path(args.pub).write_text(mceliece.serialize_public(pk))
    Path(args.priv).write_text(mceliece.serialize_private(sk))
    print(
        f"seed={seed} attempts={stats.attempts} resamples={stats.attempts - 1} "
        f"systematization_failures={stats.systematization_failures} "
        f"certification_failures={stats.certification_failures}"
    )
    return 0


def cmd_encrypt(args: argparse.Namespace) -> int:
    pk = mceliece.parse_public(_read_text(args.pub))
    frame = framing.MessageFraming.from_bytes(Path(args.infile).read_bytes())
    if any(b.value == 0 for b in frame.blocks):
        print("warning: all-zero block encrypts to its bare error vector", file=sys.stderr)
    master = Rng(_seed(args, "encrypt"))
    out = []
    for i, m in enumerate(frame.blocks):
        c, e = mceliece.encrypt(pk, m, master.spawn(i))
        if args.audit:
            print(f"block {i} error {e}", file=sys.stderr)
        out.append(c)
    Path(args.outfile).write_text(
        framing.write_blocks(framing.CIPHERTEXT_HEADER, frame.original_bit_length, out)
    )
    return 0


def cmd_decrypt(args: argparse.Namespace) -> int:
    sk = mceliece.parse_private(_read_text(args.priv))
    nbits, blocks = framing.read_blocks(_read_text(args.infile), framing.CIPHERTEXT_HEADER)
    plain = []
    failed = []
    for i, c in enumerate(blocks):
        m = mceliece.decrypt(sk, c)
        if m is golay.RETRANSMIT:
            failed.append(i)
            m = BitVector.zeros(12)
        plain.append(m)
    if failed:
        for i in failed:
            print(f"block {i}: retransmission requested", file=sys.stderr)
        return 1
    Path(args.outfile).write_bytes(framing.MessageFraming(nbits, tuple(plain)).to_bytes())
    return 0


def cmd_codec(args: argparse.Namespace) -> int:
    codec = golay.build_codec()
    if args.mode == "encode":
        frame = framing.MessageFraming.from_bytes(Path(args.infile).read_bytes())
        words = [golay.encode(m, codec) for m in frame.blocks]
        Path(args.outfile).write_text(
            framing.write_blocks(framing.CODEC_HEADER, frame.original_bit_length, words)
        )
        return 0
    nbits, blocks = framing.read_blocks(_read_text(args.infile), framing.CODEC_HEADER)
    msgs = []
    status = 0
    for i, c in enumerate(blocks):
        res = golay.correct(c, codec)
        if res is golay.RETRANSMIT:
            print(f"block {i}: retransmission requested", file=sys.stderr)
            status = 1
            msgs.append(BitVector.zeros(12))
            continue
        word, m = res
        print(f"block {i}: corrected {hamming_weight(word ^ c)} errors", file=sys.stderr)
        msgs.append(m)
    if status == 0:
        Path(args.outfile).write_bytes(framing.MessageFraming(nbits, tuple(msgs)).to_bytes())
    return status


def cmd_selftest(args: argparse.Namespace) -> int:
    report = selftest.run_selftest(seed=args.seed if args.seed is not None else 2019)
    print(selftest.format_report(report))
    return 0 if report.passed else 1


def _yes(flag: object) -> str:
    return "yes" if flag else "no"


def cmd_inspect(args: argparse.Namespace) -> int:
    kind, mats = mceliece.parse_key_text(_read_text(args.keyfile))
    info = mceliece.key_report(kind, mats)
    if kind == "public":
        print("type: public")
        print("dimensions: 12x24")
        print(f"rank={info['rank']} t={info['t']}")
        print(f"self-dual: {_yes(info['self_dual'])}")
        return 0
    print("type: private")
    print("dimensions: S 12x12, G2 12x24, P 24x24")
    print(f"rank S={info['rank_S']} rank G2={info['rank_G2']} t={info['t']}")
    print(f"S invertible: {_yes(info['S_invertible'])}, G2 self-dual: {_yes(info['G2_self_dual'])}")
    print(f"G2 systematic: {_yes(info['G2_systematic'])}, P permutation: {_yes(info['P_permutation'])}")
    print(f"certified: {_yes(info['certified'])}")
    return 0


def cmd_dump_table(args: argparse.Namespace) -> int:
    if args.priv:
        G = mceliece.parse_private(_read_text(args.priv)).G2
    else:
        G = golay.build_codec().G
    text = oracle.dump_table(oracle.build_coset_table(G))
    if args.outfile:
        Path(args.outfile).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="golay-mceliece", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("keygen", cmd_keygen, "generate and certify a keypair")
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--pub", required=True)
    sp.add_argument("--priv", required=True)

    sp = add("encrypt", cmd_encrypt, "encrypt a file block by block")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", required=True)
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--audit", action="store_true", help="print per-block error vectors to stderr")

    sp = add("decrypt", cmd_decrypt, "decrypt a ciphertext file")
    sp.add_argument("--priv", required=True)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", required=True)

    sp = add("codec", cmd_codec, "plain Golay forward error correction")
    sp.add_argument("mode", choices=["encode", "decode"])
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", required=True)

    sp = add("selftest", cmd_selftest, "run the invariant battery")
    sp.add_argument("--seed", type=_u64)

    sp = add("inspect", cmd_inspect, "describe a key file")
    sp.add_argument("keyfile")

    sp = add("dump-table", cmd_dump_table, "print the 4096-entry coset leader table")
    sp.add_argument("--priv", help="use this private key's G2 instead of the canonical code")
    sp.add_argument("--out", dest="outfile")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except mceliece.KeyFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except mceliece.KeyGenerationExhausted as exc:
        print(f"keygen failed: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
