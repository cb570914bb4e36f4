"""Convolutional (Forney) and row/column block interleavers.

The convolutional stage is symbol-granular: input symbol t enters branch
t mod B, whose FIFO holds (branch index) * delay_step symbols; the
deinterleaver uses the complementary depths. Both directions are realized
as closed-form index permutations, so a whole stream is one numpy gather.

The block stage writes bits row-wise into a rows x cols matrix and reads
column-wise, spreading a burst of up to `rows` adjacent errors at least
`cols` positions apart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadLength


@dataclass(frozen=True)
class ConvInterleaverParams:
    branches: int = 12
    delay_step: int = 17
    fill: int = 0

    def __post_init__(self):
        if self.branches < 1:
            raise ValueError(f"need at least one branch, got {self.branches}")
        if self.delay_step < 0:
            raise ValueError(f"delay step must be non-negative, got {self.delay_step}")

    @property
    def latency(self) -> int:
        """Symbols of end-to-end interleave/deinterleave delay."""
        return self.branches * (self.branches - 1) * self.delay_step


@dataclass(frozen=True)
class BlockInterleaverParams:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"rows and cols must be positive, got {self.rows}x{self.cols}")

    @property
    def block_size(self) -> int:
        return self.rows * self.cols


def _conv_permute(symbols: np.ndarray, p: ConvInterleaverParams, inverse: bool) -> np.ndarray:
    symbols = np.asarray(symbols)
    n = symbols.size
    if n == 0 or p.latency == 0:
        return symbols.copy()
    pos = np.arange(n)
    branch = pos % p.branches
    slot = pos // p.branches
    depth = (p.branches - 1 - branch if inverse else branch) * p.delay_step
    src = (slot - depth) * p.branches + branch
    live = slot >= depth
    out = np.full(n, p.fill, dtype=symbols.dtype)
    out[live] = symbols[src[live]]
    return out


def conv_interleave(symbols: np.ndarray, p: ConvInterleaverParams) -> np.ndarray:
    """Causal branch-delay permutation; emits fill until each FIFO charges."""
    return _conv_permute(symbols, p, inverse=False)


def conv_deinterleave(symbols: np.ndarray, p: ConvInterleaverParams) -> np.ndarray:
    """Complementary delays; the first `latency` outputs are flush symbols."""
    return _conv_permute(symbols, p, inverse=True)


def block_interleave(bits: np.ndarray, p: BlockInterleaverParams) -> np.ndarray:
    bits = np.asarray(bits)
    if bits.size % p.block_size:
        raise BadLength(f"input of {bits.size} not a multiple of block size {p.block_size}")
    return bits.reshape(-1, p.rows, p.cols).transpose(0, 2, 1).reshape(-1)


def block_deinterleave(bits: np.ndarray, p: BlockInterleaverParams) -> np.ndarray:
    bits = np.asarray(bits)
    if bits.size % p.block_size:
        raise BadLength(f"input of {bits.size} not a multiple of block size {p.block_size}")
    return bits.reshape(-1, p.cols, p.rows).transpose(0, 2, 1).reshape(-1)
