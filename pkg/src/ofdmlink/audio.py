"""16-bit PCM WAV handling and the audio <-> bit-stream serialization.

Serialization is fixed for cross-run golden files: little-endian byte
order, LSB-first bits within each byte, 16 bits per mono sample. Stereo
files are downmixed by averaging; anything that is not integer PCM at
16 bits per sample is rejected rather than converted.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import BadLength, CorruptHeader, UnsupportedFormat

_PCM = 1


@dataclass
class AudioSegment:
    sample_rate: int
    samples: np.ndarray  # int16, mono

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate}")
        self.samples = np.asarray(self.samples, dtype=np.int16)


def _read_exact(buf: bytes, offset: int, n: int, what: str) -> bytes:
    if offset + n > len(buf):
        raise CorruptHeader(f"file ends inside {what}")
    return buf[offset : offset + n]


def wav_read(path) -> AudioSegment:
    raw = Path(path).read_bytes()
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise CorruptHeader("not a RIFF/WAVE file")
    fmt = None
    data = None
    offset = 12
    while offset < len(raw) and (fmt is None or data is None):
        header = _read_exact(raw, offset, 8, "chunk header")
        tag, size = header[:4], struct.unpack("<I", header[4:])[0]
        body_off = offset + 8
        if tag == b"fmt ":
            fmt = _read_exact(raw, body_off, max(size, 16), "fmt chunk")
        elif tag == b"data":
            data = _read_exact(raw, body_off, size, "data chunk")
        offset = body_off + size + (size & 1)  # chunks are word-aligned
    if fmt is None or data is None:
        raise CorruptHeader("missing fmt or data chunk")
    fmt_tag, channels, rate, _byte_rate, _align, bits = struct.unpack("<HHIIHH", fmt[:16])
    if fmt_tag != _PCM or bits != 16:
        raise UnsupportedFormat(f"need 16-bit PCM, got format {fmt_tag} at {bits} bits")
    if channels not in (1, 2):
        raise UnsupportedFormat(f"need mono or stereo, got {channels} channels")
    if len(data) % (2 * channels):
        raise CorruptHeader("data chunk does not hold whole frames")
    samples = np.frombuffer(data, dtype="<i2")
    if channels == 2:
        frames = samples.reshape(-1, 2).astype(np.int32)
        samples = (frames.sum(axis=1) // 2).astype(np.int16)
    return AudioSegment(sample_rate=rate, samples=samples)


def wav_write(path, seg: AudioSegment) -> None:
    payload = seg.samples.astype("<i2").tobytes()
    fmt = struct.pack("<HHIIHH", _PCM, 1, seg.sample_rate, seg.sample_rate * 2, 2, 16)
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    body += b"data" + struct.pack("<I", len(payload)) + payload
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)


def audio_to_bits(seg: AudioSegment) -> np.ndarray:
    """16 bits per sample: little-endian bytes, LSB-first within each byte."""
    raw = np.frombuffer(seg.samples.astype("<i2").tobytes(), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")


def bits_to_audio(bits: np.ndarray, sample_rate: int) -> AudioSegment:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 16:
        raise BadLength(f"{bits.size} bits do not form whole 16-bit samples")
    raw = np.packbits(bits, bitorder="little")
    return AudioSegment(sample_rate=sample_rate, samples=np.frombuffer(raw, dtype="<i2"))


def reconstruction_snr_db(reference: np.ndarray, received: np.ndarray) -> float:
    """Sample-domain SNR of a reconstruction; inf when bit-exact."""
    reference = np.asarray(reference, dtype=np.float64)
    received = np.asarray(received, dtype=np.float64)
    err = np.sum((reference - received) ** 2)
    if err == 0:
        return np.inf
    return float(10 * np.log10(np.sum(reference**2) / err))


def make_chirp(duration: float = 2.0, sample_rate: int = 8000) -> AudioSegment:
    """Deterministic linear 200->3200 Hz sweep used as the demo payload."""
    t = np.arange(int(duration * sample_rate)) / sample_rate
    f0, f1 = 200.0, 3200.0
    phase = 2 * np.pi * (f0 * t + (f1 - f0) / (2 * duration) * t**2)
    samples = np.round(0.6 * 32767 * np.sin(phase)).astype(np.int16)
    return AudioSegment(sample_rate=sample_rate, samples=samples)


def load_chirp_fixture() -> AudioSegment:
    """The chirp WAV shipped inside the package."""
    with resources.as_file(resources.files("ofdmlink").joinpath("data/chirp.wav")) as p:
        return wav_read(p)
