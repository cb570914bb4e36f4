"""Bit <-> constellation symbol mapping for BPSK, QPSK, 4-QAM and 16-QAM.

Every constellation is normalized to unit mean symbol energy. Bit groups are
read MSB-first into a point index. QPSK and 4-QAM share the same point set;
QPSK labels the quadrants with a Gray code while 4-QAM numbers them in
rotation order, which is what separates their error rates.

Demapping is hard-decision minimum Euclidean distance with ties going to the
lowest label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadLength

_GRAY_PAM4 = {0b00: -3, 0b01: -1, 0b11: 1, 0b10: 3}


@dataclass(frozen=True)
class Constellation:
    scheme: str
    points: np.ndarray  # complex, indexed by bit label
    bits_per_symbol: int


def _build() -> dict[str, Constellation]:
    bpsk = np.array([1 + 0j, -1 + 0j])

    qpsk = np.empty(4, dtype=complex)
    for idx in range(4):
        i_bit, q_bit = idx >> 1, idx & 1
        qpsk[idx] = ((1 - 2 * i_bit) + 1j * (1 - 2 * q_bit)) / np.sqrt(2)

    # natural binary around the circle: 00 -> 01 -> 10 -> 11 counterclockwise
    qam4 = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2)

    qam16 = np.empty(16, dtype=complex)
    for idx in range(16):
        i_level = _GRAY_PAM4[idx >> 2]
        q_level = _GRAY_PAM4[idx & 3]
        qam16[idx] = (i_level + 1j * q_level) / np.sqrt(10)

    table = {
        "bpsk": Constellation("bpsk", bpsk, 1),
        "qpsk": Constellation("qpsk", qpsk, 2),
        "4qam": Constellation("4qam", qam4, 2),
        "16qam": Constellation("16qam", qam16, 4),
    }
    for c in table.values():
        c.points.setflags(write=False)
    return table


SCHEMES = _build()


def get_constellation(scheme: str) -> Constellation:
    return SCHEMES[scheme]


def modulate(bits: np.ndarray, c: Constellation) -> np.ndarray:
    """Map a bit stream (MSB-first groups) onto constellation points."""
    bits = np.asarray(bits, dtype=np.uint8)
    bps = c.bits_per_symbol
    if bits.size % bps:
        raise BadLength(f"{bits.size} bits do not fill whole {bps}-bit symbols")
    weights = 1 << np.arange(bps - 1, -1, -1)
    idx = bits.reshape(-1, bps) @ weights
    return c.points[idx]


def demodulate(symbols: np.ndarray, c: Constellation) -> np.ndarray:
    """Nearest-point hard decisions, returned as a bit stream."""
    symbols = np.asarray(symbols, dtype=complex)
    bps = c.bits_per_symbol
    idx = np.empty(symbols.size, dtype=np.int64)
    # chunked so the distance matrix stays small
    for start in range(0, symbols.size, 1 << 16):
        chunk = symbols[start : start + (1 << 16)]
        d = np.abs(chunk[:, None] - c.points[None, :])
        idx[start : start + chunk.size] = np.argmin(d, axis=1)
    shifts = np.arange(bps - 1, -1, -1)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
