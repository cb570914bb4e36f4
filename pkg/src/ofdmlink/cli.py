"""Command-line front end: sweep / point / audio / selftest.

Defaults reproduce the full simulated grid (4 modulations x 2 code rates x
3 channels) over 0..25 dB in 1 dB steps. Every profile parameter lands in
the output rows, so a CSV is self-describing and reproducible from its own
header plus the seed column.

Option precedence: command-line flags > --config key=value file > defaults.
Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .audio import (
    audio_to_bits,
    bits_to_audio,
    load_chirp_fixture,
    reconstruction_snr_db,
    wav_read,
    wav_write,
)
from .channel import apply_channel
from .convcode import ConvParams
from .errors import LinkError, UsageError
from .gf256 import DEFAULT_FIELD, DEFAULT_PRIMITIVE_POLY
from .interleave import ConvInterleaverParams
from .ofdm import OfdmParams, default_data_carriers
from .simulator import (
    CHANNELS,
    MODULATIONS,
    RATE_PATTERNS,
    LinkPipeline,
    LinkProfile,
    StopRule,
    SweepPlan,
    run_sweep,
    table1_profiles,
)

GENERATORS_BY_M = {3: (0o7, 0o5), 5: (0o23, 0o35), 7: (0o171, 0o133)}

CSV_COLUMNS = (
    "modulation",
    "cc_rate",
    "constraint_length",
    "channel",
    "rician_k_db",
    "snr_mode",
    "snr_db",
    "rs_n",
    "rs_k",
    "conv_interleaver",
    "block_interleaver",
    "fft_size",
    "cp_ratio",
    "coding_enabled",
    "bits_sent",
    "bit_errors",
    "ber",
    "seed",
    "elapsed_s",
)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    profiles: tuple[LinkProfile, ...]
    snr_points: tuple[float, ...]
    stop_rule: StopRule
    base_seed: int
    workers: int
    output: str
    fmt: str
    audio_in: str | None = None
    audio_out: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _snr_spec(spec: str) -> tuple[float, ...]:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"--snr range must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise UsageError("--snr step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(start + i * step for i in range(max(n, 0)))
    return tuple(float(p) for p in spec.split(","))


def _interleaver_spec(spec: str) -> tuple[int, int]:
    try:
        b, m = spec.lower().split("x")
        return int(b), int(m)
    except ValueError:
        raise UsageError(f"--conv-interleaver must look like 12x17, got {spec!r}") from None


def _add_shared_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file supplying flag defaults")
    p.add_argument("--modulation", choices=(*MODULATIONS, "all"))
    p.add_argument("--rate", choices=("1/2", "2/3", "all"))
    p.add_argument("--channel", choices=(*CHANNELS, "all"))
    p.add_argument("--constraint-length", type=int, choices=sorted(GENERATORS_BY_M), default=7)
    p.add_argument("--conv-interleaver", default="12x17", metavar="BxM")
    p.add_argument("--block-rows", type=int, default=16)
    p.add_argument("--fft-size", type=int, default=256)
    p.add_argument("--cp-ratio", choices=("1/4", "1/8", "1/16", "1/32"), default="1/4")
    p.add_argument("--snr-mode", choices=("es", "eb"), default="es")
    p.add_argument("--k-factor", type=float, default=6.0, help="Rician K in dB")
    p.add_argument("--uncoded", action="store_true", help="bypass FEC and interleaving")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-bits", type=int, default=10_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default="-", help="output path, - for stdout")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv", dest="fmt")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ofdmlink", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="run a BER sweep over profiles x SNR points")
    _add_shared_options(sweep)
    sweep.add_argument("--snr", default="0:25:1", help="range start:stop:step or comma list")

    point = sub.add_parser("point", help="run a single BER point")
    _add_shared_options(point)
    point.add_argument("--snr-db", type=float, required=True)

    audio = sub.add_parser("audio", help="send a WAV file through the link")
    _add_shared_options(audio)
    audio.add_argument("--snr-db", type=float, default=15.0)
    audio.add_argument("--in", dest="audio_in", help="input WAV (default: bundled chirp)")
    audio.add_argument("--out", dest="audio_out", help="write the reconstructed WAV here")

    selftest = sub.add_parser("selftest", help="field axioms and noiseless roundtrip checks")
    _add_shared_options(selftest)
    return parser


def _inject_config(argv: list[str]) -> list[str]:
    if "--config" in argv:
        path = argv[argv.index("--config") + 1 : argv.index("--config") + 2]
    else:
        path = [a.split("=", 1)[1] for a in argv if a.startswith("--config=")]
    if not path:
        return argv
    try:
        text = Path(path[0]).read_text()
    except OSError as e:
        raise UsageError(f"--config: {e}") from None
    injected = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"--config line {line!r} is not key=value")
        key, value = line.split("=", 1)
        injected.append(f"--{key.strip()}={value.strip()}")
    # config entries go right after the subcommand so explicit flags win
    return argv[:1] + injected + argv[1:]


def _base_profile(args) -> LinkProfile:
    m = args.constraint_length
    branches, delay = _interleaver_spec(args.conv_interleaver)
    ofdm = OfdmParams(
        fft_size=args.fft_size,
        data_carriers=default_data_carriers(args.fft_size),
        cp_ratio=Fraction(args.cp_ratio),
    )
    return LinkProfile(
        conv=ConvParams(m, GENERATORS_BY_M[m]),
        conv_interleaver=ConvInterleaverParams(branches=branches, delay_step=delay),
        block_rows=args.block_rows,
        ofdm=ofdm,
        snr_mode=args.snr_mode,
        rician_k_db=args.k_factor,
        coding_enabled=not args.uncoded,
    )


def _axis(value, all_values, flag, require_single=False):
    if value in (None, "all"):
        if require_single:
            raise UsageError(f"{flag} must name a single value for this subcommand")
        return all_values
    return (value,)


def parse_args(argv) -> CliConfig:
    argv = list(argv)
    if not argv:
        raise UsageError("missing subcommand (sweep, point, audio, selftest)")
    args = _build_parser().parse_args(_inject_config(argv))

    single = args.subcommand in ("point", "audio")
    if args.subcommand == "audio":
        for field, fallback in (("modulation", "bpsk"), ("rate", "1/2"), ("channel", "awgn")):
            if getattr(args, field) is None:
                setattr(args, field, fallback)
    try:
        base = _base_profile(args)
        profiles = table1_profiles(
            modulations=_axis(args.modulation, MODULATIONS, "--modulation", single),
            rates=_axis(args.rate, ("1/2", "2/3"), "--rate", single),
            channels=_axis(args.channel, CHANNELS, "--channel", single),
            base=base,
        )
        stop = StopRule(min_errors=args.min_errors, max_info_bits=args.max_bits)
    except ValueError as e:
        raise UsageError(str(e)) from None

    if args.subcommand == "sweep":
        snr_points = _snr_spec(args.snr)
    else:
        snr_points = (getattr(args, "snr_db", 0.0),)

    return CliConfig(
        subcommand=args.subcommand,
        profiles=tuple(profiles),
        snr_points=snr_points,
        stop_rule=stop,
        base_seed=args.seed,
        workers=args.workers,
        output=args.output,
        fmt=args.fmt,
        audio_in=getattr(args, "audio_in", None),
        audio_out=getattr(args, "audio_out", None),
    )


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def emit_records(records, fmt: str, path) -> None:
    """Write records as CSV or JSONL; identical inputs give identical bytes."""
    records = list(records)
    if not records:
        raise ValueError("no records to emit")
    lines = []
    if fmt == "csv":
        lines.append(",".join(CSV_COLUMNS))
        for r in records:
            lines.append(",".join(_format_value(getattr(r, c)) for c in CSV_COLUMNS))
    elif fmt == "jsonl":
        for r in records:
            lines.append(json.dumps({c: getattr(r, c) for c in CSV_COLUMNS}))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    text = "\n".join(lines) + "\n"
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _run_audio(cfg: CliConfig) -> int:
    seg = wav_read(cfg.audio_in) if cfg.audio_in else load_chirp_fixture()
    profile = cfg.profiles[0]
    bits = audio_to_bits(seg)
    pipeline = LinkPipeline(profile)
    start = time.perf_counter()
    tx = pipeline.transmit(bits)
    rx_samples, gains = apply_channel(
        tx, profile.channel_config(cfg.snr_points[0]), seed=cfg.base_seed
    )
    rx_bits = pipeline.receive(rx_samples, gains, bits.size)
    elapsed = time.perf_counter() - start
    errors = int((rx_bits != bits).sum())
    recon = bits_to_audio(rx_bits, seg.sample_rate)
    snr = reconstruction_snr_db(seg.samples, recon.samples)
    print(
        f"samples={seg.samples.size} bits={bits.size} bit_errors={errors} "
        f"residual_ber={_format_value(errors / bits.size)} "
        f"reconstruction_snr_db={_format_value(snr)} elapsed_s={_format_value(elapsed)}"
    )
    if cfg.audio_out:
        wav_write(cfg.audio_out, recon)
    return 0


def _selftest_field() -> bool:
    a = np.repeat(np.arange(256, dtype=np.uint32), 256)
    b = np.tile(np.arange(256, dtype=np.uint32), 256)
    acc = np.zeros_like(a)
    aa, bb = a.copy(), b.copy()
    for _ in range(8):
        acc ^= np.where(bb & 1, aa, 0)
        bb >>= 1
        aa <<= 1
        aa = np.where(aa & 0x100, aa ^ DEFAULT_PRIMITIVE_POLY, aa)
    exp, log = DEFAULT_FIELD.exp, DEFAULT_FIELD.log
    table = np.zeros((256, 256), dtype=np.uint32)
    nz = np.arange(1, 256)
    table[1:, 1:] = exp[log[nz][:, None] + log[nz][None, :]]
    if not np.array_equal(table, acc.reshape(256, 256)):
        return False
    return all(DEFAULT_FIELD.mul(x, DEFAULT_FIELD.inv(x)) == 1 for x in range(1, 256))


def selftest() -> bool:
    """Field arithmetic plus the noiseless full-matrix roundtrip; True if all pass."""
    ok = True
    passed = _selftest_field()
    print(f"{'PASS' if passed else 'FAIL'} gf256 field arithmetic")
    ok &= passed
    rng = np.random.default_rng(0)
    for profile in table1_profiles():
        bits = rng.integers(0, 2, 10_000, dtype=np.uint8)
        pipeline = LinkPipeline(profile)
        tx = pipeline.transmit(bits)
        rx, gains = apply_channel(tx, profile.channel_config(math.inf), seed=1)
        passed = bool(np.array_equal(pipeline.receive(rx, gains, bits.size), bits))
        name = f"{profile.modulation}-{profile.cc_rate}-{profile.channel_kind}"
        print(f"{'PASS' if passed else 'FAIL'} noiseless roundtrip {name}")
        ok &= passed
    return ok


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    try:
        if cfg.subcommand == "selftest":
            return 0 if selftest() else 2
        if cfg.subcommand == "audio":
            return _run_audio(cfg)
        plan = SweepPlan(
            profiles=cfg.profiles,
            snr_points=cfg.snr_points,
            stop_rule=cfg.stop_rule,
            base_seed=cfg.base_seed,
        )
        records = run_sweep(plan, workers=cfg.workers)
        emit_records(records, cfg.fmt, cfg.output)
        return 0
    except (LinkError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
