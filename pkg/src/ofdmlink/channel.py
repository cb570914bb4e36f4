"""AWGN, flat Rayleigh and flat Rician channels over OFDM-symbol blocks.

Fading is block-constant: one complex gain per OFDM symbol, unit average
power, drawn independently per block. Noise is circular complex Gaussian
with per-sample variance N0 split evenly across the real and imaginary
parts. Since the OFDM transforms are unitary, N0 is also the per-subcarrier
noise variance, and with unit-energy constellations Es/N0 = 1/N0.

In Eb mode the configured SNR refers to one information bit:
Es/N0 = Eb/N0 * info_bits_per_symbol, where info_bits_per_symbol is
bits-per-constellation-symbol times the overall code rate. This keeps the
uncoded BPSK reference at exactly Q(sqrt(2 Eb/N0)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadLength, SingularGain

_KINDS = ("awgn", "rayleigh", "rician")
_MIN_GAIN = 1e-12


@dataclass(frozen=True)
class ChannelConfig:
    kind: str = "awgn"
    snr_db: float = math.inf
    snr_mode: str = "es"
    rician_k_db: float = 6.0
    block_fading: bool = True
    block_len: int = 320
    info_bits_per_symbol: float = 1.0  # used by eb mode only

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"channel kind must be one of {_KINDS}, got {self.kind!r}")
        if self.snr_mode not in ("es", "eb"):
            raise ValueError(f"snr mode must be 'es' or 'eb', got {self.snr_mode!r}")
        if not self.block_fading:
            raise ValueError("only block-constant fading is modeled")
        if self.block_len < 1:
            raise ValueError(f"block length must be positive, got {self.block_len}")
        if self.info_bits_per_symbol <= 0:
            raise ValueError("info_bits_per_symbol must be positive")

    def noise_variance(self) -> float:
        """Per-complex-sample N0 for unit-energy constellation symbols."""
        if math.isinf(self.snr_db):
            return 0.0
        es_n0 = 10 ** (self.snr_db / 10)
        if self.snr_mode == "eb":
            es_n0 *= self.info_bits_per_symbol
        return 1.0 / es_n0


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _draw_gains(kind: str, n_blocks: int, k_db: float, rng: np.random.Generator) -> np.ndarray:
    if kind == "awgn":
        return np.ones(n_blocks, dtype=complex)
    scatter = rng.standard_normal((n_blocks, 2)) @ np.array([1.0, 1.0j])
    if kind == "rayleigh":
        gains = scatter / np.sqrt(2)
    else:
        k = 10 ** (k_db / 10)
        gains = np.sqrt(k / (k + 1)) + scatter * np.sqrt(1 / (2 * (k + 1)))
    # a numerically dead gain cannot be equalized; redraw that block
    while True:
        dead = np.abs(gains) < _MIN_GAIN
        if not dead.any():
            return gains
        gains[dead] = _draw_gains(kind, int(dead.sum()), k_db, rng)


def apply_channel(samples: np.ndarray, cfg: ChannelConfig, seed) -> tuple[np.ndarray, np.ndarray]:
    """Per-block gain plus white noise; returns (output, per-block gains)."""
    samples = np.asarray(samples, dtype=complex)
    if samples.size % cfg.block_len:
        raise BadLength(f"{samples.size} samples not a multiple of block length {cfg.block_len}")
    n_blocks = samples.size // cfg.block_len
    rng = _as_rng(seed)
    gains = _draw_gains(cfg.kind, n_blocks, cfg.rician_k_db, rng)
    out = samples * np.repeat(gains, cfg.block_len)
    n0 = cfg.noise_variance()
    if n0 > 0:
        noise = rng.standard_normal((samples.size, 2)) @ np.array([1.0, 1.0j])
        out = out + noise * np.sqrt(n0 / 2)
    return out, gains


def equalize(symbols: np.ndarray, gains: np.ndarray) -> np.ndarray:
    """Zero-forcing with exact channel knowledge; identity under AWGN."""
    symbols = np.asarray(symbols, dtype=complex)
    gains = np.asarray(gains, dtype=complex)
    flat = symbols.reshape(-1)
    if gains.size == 0:
        if flat.size:
            raise BadLength("symbols present but no channel realizations")
        return flat
    if flat.size % gains.size:
        raise BadLength(f"{flat.size} symbols do not split over {gains.size} realizations")
    if (np.abs(gains) < _MIN_GAIN).any():
        raise SingularGain("channel gain magnitude below 1e-12")
    per_block = flat.size // gains.size
    return (flat.reshape(gains.size, per_block) / gains[:, None]).reshape(symbols.shape)
