"""OFDM framing: subcarrier mapping, unitary IFFT/FFT, cyclic prefix.

Both transforms use the 1/sqrt(N) scaling so per-subcarrier symbol energy
equals per-time-sample energy and SNR accounting survives the transform.
Data subcarriers default to the 192 offsets +-1..+-96 of a 256-point grid;
DC and the outer guard bands stay empty, and no pilots are inserted since
the receiver equalizes with exact channel knowledge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BadLength

_ALLOWED_CP = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32))

def default_data_carriers(fft_size: int) -> tuple[int, ...]:
    """3N/4 data carriers at offsets +-1..+-3N/8; DC and outer guards stay null."""
    span = (3 * fft_size) // 8
    return tuple(range(-span, 0)) + tuple(range(1, span + 1))


_DEFAULT_CARRIERS = default_data_carriers(256)


@dataclass(frozen=True)
class OfdmParams:
    fft_size: int = 256
    data_carriers: tuple[int, ...] = field(default=_DEFAULT_CARRIERS)
    cp_ratio: Fraction = Fraction(1, 4)

    def __post_init__(self):
        n = self.fft_size
        if n < 2 or n & (n - 1):
            raise ValueError(f"fft size must be a power of two, got {n}")
        if self.cp_ratio not in _ALLOWED_CP:
            raise ValueError(f"cp ratio {self.cp_ratio} not in {_ALLOWED_CP}")
        if (n * self.cp_ratio).denominator != 1:
            raise ValueError(f"cp length {n * self.cp_ratio} is fractional")
        carriers = self.data_carriers
        if len(set(carriers)) != len(carriers):
            raise ValueError("duplicate data carriers")
        for k in carriers:
            if k == 0:
                raise ValueError("DC carrier cannot carry data")
            if not -n // 2 < k < n // 2:
                raise ValueError(f"carrier {k} outside (-{n // 2}, {n // 2})")

    @property
    def cp_len(self) -> int:
        return int(self.fft_size * self.cp_ratio)

    @property
    def block_len(self) -> int:
        """Time-domain samples per OFDM symbol including the prefix."""
        return self.fft_size + self.cp_len

    @property
    def bins(self) -> np.ndarray:
        return np.array(self.data_carriers) % self.fft_size


def ofdm_modulate(symbols: np.ndarray, p: OfdmParams) -> np.ndarray:
    """Map symbols onto the data carriers, IFFT, prepend the cyclic prefix."""
    symbols = np.asarray(symbols, dtype=complex)
    d = len(p.data_carriers)
    if symbols.size % d:
        raise BadLength(f"{symbols.size} symbols do not fill whole {d}-carrier blocks")
    blocks = symbols.reshape(-1, d)
    spectrum = np.zeros((blocks.shape[0], p.fft_size), dtype=complex)
    spectrum[:, p.bins] = blocks
    core = np.fft.ifft(spectrum, norm="ortho")
    out = np.concatenate([core[:, p.fft_size - p.cp_len :], core], axis=1)
    return out.reshape(-1)


def ofdm_demodulate(samples: np.ndarray, p: OfdmParams) -> np.ndarray:
    """Strip the prefix, FFT, extract the data carriers in mapping order."""
    samples = np.asarray(samples, dtype=complex)
    if samples.size % p.block_len:
        raise BadLength(f"{samples.size} samples not a multiple of block length {p.block_len}")
    blocks = samples.reshape(-1, p.block_len)[:, p.cp_len :]
    spectrum = np.fft.fft(blocks, norm="ortho")
    return spectrum[:, p.bins].reshape(-1)
