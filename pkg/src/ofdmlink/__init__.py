"""Baseband link simulator: concatenated RS + convolutional FEC over OFDM.

Transmit chain: Reed-Solomon (255,239) -> convolutional interleaver ->
rate-1/2 convolutional code (optionally punctured to 2/3) -> block
interleaver -> BPSK/QPSK/4-QAM/16-QAM -> 256-carrier OFDM with cyclic
prefix. Channels: AWGN, flat Rayleigh, flat Rician, with genie zero-forcing
equalization at the receiver. A Monte Carlo harness sweeps BER over SNR
and emits reproducible CSV/JSONL records.
"""

from .audio import AudioSegment, audio_to_bits, bits_to_audio, make_chirp, wav_read, wav_write
from .channel import ChannelConfig, apply_channel, equalize
from .convcode import (
    ConvolutionalCode,
    ConvParams,
    PuncturePattern,
    RATE_HALF,
    RATE_TWO_THIRDS,
    depuncture,
    puncture,
)
from .errors import (
    BadLength,
    CorruptHeader,
    LinkError,
    SingularGain,
    UnsupportedFormat,
    UsageError,
    ZeroInverse,
)
from .gf256 import GF256, DEFAULT_FIELD
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
from .rs import DecodeReport, ReedSolomon, RsParams
from .simulator import (
    BerRecord,
    FrameLayout,
    LinkPipeline,
    LinkProfile,
    StopRule,
    SweepPlan,
    frame_layout,
    receive,
    run_ber_point,
    run_sweep,
    table1_profiles,
    transmit,
)

__version__ = "0.1.0"

__all__ = [
    "AudioSegment",
    "BadLength",
    "BerRecord",
    "BlockInterleaverParams",
    "ChannelConfig",
    "Constellation",
    "ConvInterleaverParams",
    "ConvParams",
    "ConvolutionalCode",
    "CorruptHeader",
    "DecodeReport",
    "DEFAULT_FIELD",
    "FrameLayout",
    "GF256",
    "LinkError",
    "LinkPipeline",
    "LinkProfile",
    "OfdmParams",
    "PuncturePattern",
    "RATE_HALF",
    "RATE_TWO_THIRDS",
    "ReedSolomon",
    "RsParams",
    "SingularGain",
    "StopRule",
    "SweepPlan",
    "UnsupportedFormat",
    "UsageError",
    "ZeroInverse",
    "apply_channel",
    "audio_to_bits",
    "bits_to_audio",
    "block_deinterleave",
    "block_interleave",
    "conv_deinterleave",
    "conv_interleave",
    "demodulate",
    "depuncture",
    "equalize",
    "frame_layout",
    "get_constellation",
    "make_chirp",
    "modulate",
    "ofdm_demodulate",
    "ofdm_modulate",
    "puncture",
    "receive",
    "run_ber_point",
    "run_sweep",
    "table1_profiles",
    "transmit",
    "wav_read",
    "wav_write",
]
