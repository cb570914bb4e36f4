"""End-to-end link assembly and the Monte Carlo BER harness.

Transmit chain: RS encode -> convolutional interleave -> convolutional
encode (+puncture) -> block interleave -> constellation mapping -> OFDM.
Receive runs the exact inverses with genie equalization. With coding
disabled only the modulator and OFDM stages run.

Framing is deterministic: every pad size is a pure function of the profile
and the information bit count, so the receiver only needs that count to
strip padding. One frame is one RS block (1912 information bits); streams
shorter than a frame are zero-padded up to it and empty input still emits
one minimal frame.

BER accounting covers information bits only. Pads, interleaver flush and
trellis tails are transmitted but never counted.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelConfig, apply_channel, equalize
from .convcode import ConvolutionalCode, ConvParams, RATE_HALF, RATE_TWO_THIRDS, depuncture
from .errors import BadLength
from .interleave import (
    BlockInterleaverParams,
    ConvInterleaverParams,
    block_deinterleave,
    block_interleave,
    conv_deinterleave,
    conv_interleave,
)
from .modem import Constellation, demodulate, get_constellation, modulate
from .ofdm import OfdmParams, ofdm_demodulate, ofdm_modulate
from .rs import ReedSolomon, RsParams

SYMBOL_BITS = 8
CHUNK_FRAMES = 16

RATE_PATTERNS = {"1/2": RATE_HALF, "2/3": RATE_TWO_THIRDS}
MODULATIONS = ("bpsk", "qpsk", "4qam", "16qam")
CHANNELS = ("awgn", "rayleigh", "rician")


@dataclass(frozen=True)
class LinkProfile:
    """One sweep row: modulation x code x interleaving x OFDM x channel."""

    modulation: str = "bpsk"
    rs: RsParams = RsParams()
    conv: ConvParams = ConvParams()
    conv_interleaver: ConvInterleaverParams = ConvInterleaverParams()
    block_rows: int = 16
    ofdm: OfdmParams = OfdmParams()
    channel_kind: str = "awgn"
    snr_mode: str = "es"
    rician_k_db: float = 6.0
    coding_enabled: bool = True

    def __post_init__(self):
        if self.modulation not in MODULATIONS:
            raise ValueError(f"modulation must be one of {MODULATIONS}, got {self.modulation!r}")
        if self.channel_kind not in CHANNELS:
            raise ValueError(f"channel must be one of {CHANNELS}, got {self.channel_kind!r}")
        if self.bits_per_ofdm_symbol % self.block_rows:
            raise ValueError(
                f"{self.bits_per_ofdm_symbol} coded bits per OFDM symbol do not fill "
                f"{self.block_rows} interleaver rows evenly"
            )

    @property
    def constellation(self) -> Constellation:
        return get_constellation(self.modulation)

    @property
    def bits_per_ofdm_symbol(self) -> int:
        return len(self.ofdm.data_carriers) * self.constellation.bits_per_symbol

    @property
    def block_interleaver(self) -> BlockInterleaverParams:
        return BlockInterleaverParams(
            rows=self.block_rows, cols=self.bits_per_ofdm_symbol // self.block_rows
        )

    @property
    def cc_rate(self) -> str:
        num, den = self.conv.puncture.rate
        return f"{num}/{den}"

    @property
    def overall_code_rate(self) -> float:
        if not self.coding_enabled:
            return 1.0
        num, den = self.conv.puncture.rate
        return (self.rs.k / self.rs.n) * (num / den)

    @property
    def frame_info_bits(self) -> int:
        return self.rs.k * SYMBOL_BITS

    def channel_config(self, snr_db: float) -> ChannelConfig:
        return ChannelConfig(
            kind=self.channel_kind,
            snr_db=snr_db,
            snr_mode=self.snr_mode,
            rician_k_db=self.rician_k_db,
            block_len=self.ofdm.block_len,
            info_bits_per_symbol=self.constellation.bits_per_symbol * self.overall_code_rate,
        )


@dataclass(frozen=True)
class FrameLayout:
    """Every stage size for a given information bit count."""

    info_bits: int
    info_bits_padded: int
    rs_out_symbols: int
    interleaved_symbols: int
    conv_in_bits: int
    coded_bits: int
    coded_bits_padded: int
    mod_symbols: int
    ofdm_blocks: int
    samples: int


def frame_layout(profile: LinkProfile, n_info_bits: int) -> FrameLayout:
    bits_per_ofdm = profile.bits_per_ofdm_symbol
    bps = profile.constellation.bits_per_symbol
    if profile.coding_enabled:
        frame = profile.frame_info_bits
        n_frames = max(1, -(-n_info_bits // frame))
        padded = n_frames * frame
        rs_out = n_frames * profile.rs.n
        interleaved = rs_out + profile.conv_interleaver.latency
        conv_in = interleaved * SYMBOL_BITS
        pattern = profile.conv.puncture
        steps = conv_in + profile.conv.constraint_length - 1
        steps += (-steps) % pattern.period
        coded = (steps // pattern.period) * pattern.kept_per_period
    else:
        padded = max(1, -(-n_info_bits // bits_per_ofdm)) * bits_per_ofdm
        interleaved = rs_out = 0
        conv_in = 0
        coded = padded
    coded_padded = -(-coded // bits_per_ofdm) * bits_per_ofdm
    mod_symbols = coded_padded // bps
    ofdm_blocks = mod_symbols // len(profile.ofdm.data_carriers)
    return FrameLayout(
        info_bits=n_info_bits,
        info_bits_padded=padded,
        rs_out_symbols=rs_out,
        interleaved_symbols=interleaved,
        conv_in_bits=conv_in,
        coded_bits=coded,
        coded_bits_padded=coded_padded,
        mod_symbols=mod_symbols,
        ofdm_blocks=ofdm_blocks,
        samples=ofdm_blocks * profile.ofdm.block_len,
    )


def _pack_symbols(bits: np.ndarray) -> np.ndarray:
    """8 stream bits -> one byte symbol, LSB first."""
    return np.packbits(bits, bitorder="little")


def _unpack_symbols(symbols: np.ndarray) -> np.ndarray:
    return np.unpackbits(np.asarray(symbols, dtype=np.uint8), bitorder="little")


class LinkPipeline:
    """Caches the per-profile codec objects; profiles themselves stay frozen."""

    def __init__(self, profile: LinkProfile):
        self.profile = profile
        self.rs = ReedSolomon(profile.rs)
        self.conv = ConvolutionalCode(profile.conv)

    def transmit(self, bits: np.ndarray) -> np.ndarray:
        p = self.profile
        bits = np.asarray(bits, dtype=np.uint8)
        layout = frame_layout(p, bits.size)
        padded = np.zeros(layout.info_bits_padded, dtype=np.uint8)
        padded[: bits.size] = bits
        if p.coding_enabled:
            coded_symbols = self.rs.encode_stream(_pack_symbols(padded))
            flushed = np.concatenate(
                [coded_symbols, np.zeros(p.conv_interleaver.latency, dtype=np.uint8)]
            )
            interleaved = conv_interleave(flushed, p.conv_interleaver)
            coded = self.conv.encode(_unpack_symbols(interleaved))
            stream = np.zeros(layout.coded_bits_padded, dtype=np.uint8)
            stream[: coded.size] = coded
            stream = block_interleave(stream, p.block_interleaver)
        else:
            stream = padded
        return ofdm_modulate(modulate(stream, p.constellation), p.ofdm)

    def receive(self, samples: np.ndarray, gains: np.ndarray, n_info_bits: int) -> np.ndarray:
        p = self.profile
        layout = frame_layout(p, n_info_bits)
        samples = np.asarray(samples, dtype=complex)
        if samples.size != layout.samples:
            raise BadLength(
                f"got {samples.size} samples, expected {layout.samples} for "
                f"{n_info_bits} information bits"
            )
        symbols = equalize(ofdm_demodulate(samples, p.ofdm), gains)
        stream = demodulate(symbols, p.constellation)
        if p.coding_enabled:
            stream = block_deinterleave(stream, p.block_interleaver)[: layout.coded_bits]
            trinary = depuncture(stream, p.conv.puncture)
            conv_out = self.conv.decode(trinary, message_length=layout.conv_in_bits)
            deinterleaved = conv_deinterleave(_pack_symbols(conv_out), p.conv_interleaver)
            rs_in = deinterleaved[p.conv_interleaver.latency :]
            decoded, _reports = self.rs.decode_stream(rs_in)
            stream = _unpack_symbols(decoded)
        return stream[:n_info_bits]


def transmit(bits: np.ndarray, profile: LinkProfile) -> np.ndarray:
    return LinkPipeline(profile).transmit(bits)


def receive(
    samples: np.ndarray, gains: np.ndarray, profile: LinkProfile, n_info_bits: int
) -> np.ndarray:
    return LinkPipeline(profile).receive(samples, gains, n_info_bits)


@dataclass(frozen=True)
class StopRule:
    min_errors: int = 100
    max_info_bits: int = 10_000_000

    def __post_init__(self):
        if self.min_errors < 1:
            raise ValueError("min_errors must be positive")
        if self.max_info_bits < RsParams().k * SYMBOL_BITS:
            raise ValueError("max_info_bits must cover at least one RS block of payload")


@dataclass(frozen=True)
class BerRecord:
    """One measured sweep point, flat enough to be a CSV row."""

    modulation: str
    cc_rate: str
    constraint_length: int
    channel: str
    rician_k_db: float | None
    snr_mode: str
    snr_db: float
    rs_n: int
    rs_k: int
    conv_interleaver: str
    block_interleaver: str
    fft_size: int
    cp_ratio: str
    coding_enabled: bool
    bits_sent: int
    bit_errors: int
    ber: float
    seed: int
    elapsed_s: float


def run_ber_point(
    profile: LinkProfile, snr_db: float, stop_rule: StopRule, seed: int
) -> BerRecord:
    """Stream whole-frame chunks through the link until the stop rule fires."""
    start = time.perf_counter()
    pipeline = LinkPipeline(profile)
    cfg = profile.channel_config(snr_db)
    rng = np.random.default_rng(seed)
    chunk = CHUNK_FRAMES * (
        profile.frame_info_bits if profile.coding_enabled else profile.bits_per_ofdm_symbol
    )
    bits_sent = 0
    bit_errors = 0
    while bits_sent < stop_rule.max_info_bits and bit_errors < stop_rule.min_errors:
        n = min(chunk, stop_rule.max_info_bits - bits_sent)
        bits = rng.integers(0, 2, n, dtype=np.uint8)
        tx = pipeline.transmit(bits)
        rx_samples, gains = apply_channel(tx, cfg, rng)
        rx = pipeline.receive(rx_samples, gains, n)
        bit_errors += int((rx != bits).sum())
        bits_sent += n
    bi = profile.block_interleaver
    ci = profile.conv_interleaver
    return BerRecord(
        modulation=profile.modulation,
        cc_rate=profile.cc_rate,
        constraint_length=profile.conv.constraint_length,
        channel=profile.channel_kind,
        rician_k_db=profile.rician_k_db if profile.channel_kind == "rician" else None,
        snr_mode=profile.snr_mode,
        snr_db=snr_db,
        rs_n=profile.rs.n,
        rs_k=profile.rs.k,
        conv_interleaver=f"{ci.branches}x{ci.delay_step}",
        block_interleaver=f"{bi.rows}x{bi.cols}",
        fft_size=profile.ofdm.fft_size,
        cp_ratio=str(profile.ofdm.cp_ratio),
        coding_enabled=profile.coding_enabled,
        bits_sent=bits_sent,
        bit_errors=bit_errors,
        ber=bit_errors / bits_sent if bits_sent else 0.0,
        seed=seed,
        elapsed_s=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class SweepPlan:
    profiles: tuple[LinkProfile, ...]
    snr_points: tuple[float, ...]
    stop_rule: StopRule = StopRule()
    base_seed: int = 0

    def __post_init__(self):
        if not self.profiles or not self.snr_points:
            raise ValueError("plan needs at least one profile and one SNR point")
        if any(b <= a for a, b in zip(self.snr_points, self.snr_points[1:])):
            raise ValueError("snr points must be strictly increasing")

    def __len__(self):
        return len(self.profiles) * len(self.snr_points)


def _run_point(args) -> BerRecord:
    profile, snr, stop_rule, seed = args
    return run_ber_point(profile, snr, stop_rule, seed)


def run_sweep(plan: SweepPlan, workers: int = 1) -> list[BerRecord]:
    """All profile x SNR points, in plan order regardless of parallelism."""
    jobs = []
    idx = 0
    for profile in plan.profiles:
        for snr in plan.snr_points:
            jobs.append((profile, snr, plan.stop_rule, plan.base_seed ^ idx))
            idx += 1
    if workers <= 1:
        return [_run_point(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, jobs, chunksize=1))


def table1_profiles(
    modulations=MODULATIONS,
    rates=("1/2", "2/3"),
    channels=CHANNELS,
    base: LinkProfile = LinkProfile(),
) -> list[LinkProfile]:
    """The full simulated grid: every modulation x code rate x channel."""
    out = []
    for channel in channels:
        for modulation in modulations:
            for rate in rates:
                out.append(
                    replace(
                        base,
                        modulation=modulation,
                        conv=replace(base.conv, puncture=RATE_PATTERNS[rate]),
                        channel_kind=channel,
                    )
                )
    return out
