"""Rate-1/2 convolutional encoding, puncturing and hard-decision Viterbi.

Generators are octal with the most significant bit tapping the newest
register bit. The encoder always flushes constraint_length - 1 zeros so the
trellis terminates in the zero state; punctured encodes pad with further
zeros until the step count divides the puncture period.

Depunctured streams are trinary: 0, 1, or 2 for an erased slot. Erasures
cost nothing against either branch hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import BadLength

_SUPPORTED_M = (3, 5, 7)
_ERASE = 2


@dataclass(frozen=True)
class PuncturePattern:
    """Periodic keep-masks for the X and Y encoder outputs."""

    period: int
    keep_x: tuple[int, ...]
    keep_y: tuple[int, ...]

    def __post_init__(self):
        if self.period < 1 or len(self.keep_x) != self.period or len(self.keep_y) != self.period:
            raise ValueError("keep masks must both have `period` entries")
        if self.kept_per_period == 0:
            raise ValueError("pattern drops every bit")

    @property
    def kept_per_period(self) -> int:
        return int(sum(self.keep_x) + sum(self.keep_y))

    @property
    def rate(self) -> tuple[int, int]:
        """Code rate (input bits, output bits) per period, reduced."""
        from math import gcd

        g = gcd(self.period, self.kept_per_period)
        return self.period // g, self.kept_per_period // g

    def mask(self) -> np.ndarray:
        """Keep-mask over one period of the serialized X1 Y1 X2 Y2 ... stream."""
        m = np.empty(2 * self.period, dtype=bool)
        m[0::2] = self.keep_x
        m[1::2] = self.keep_y
        return m


RATE_HALF = PuncturePattern(period=1, keep_x=(1,), keep_y=(1,))
RATE_TWO_THIRDS = PuncturePattern(period=2, keep_x=(1, 0), keep_y=(1, 1))


@dataclass(frozen=True)
class ConvParams:
    """Mother-code definition plus the active puncture pattern."""

    constraint_length: int = 7
    generators: tuple[int, int] = (0o171, 0o133)
    puncture: PuncturePattern = field(default=RATE_HALF)

    def __post_init__(self):
        m = self.constraint_length
        if m not in _SUPPORTED_M:
            raise ValueError(f"constraint length must be one of {_SUPPORTED_M}, got {m}")
        if len(self.generators) != 2:
            raise ValueError("exactly two generators (mother rate 1/2)")
        for g in self.generators:
            if not 0 < g < (1 << m):
                raise ValueError(f"generator {g:#o} has degree >= constraint length {m}")
            if not g & 1:
                raise ValueError(f"generator {g:#o} must have its low bit set")


def puncture(bits: np.ndarray, pattern: PuncturePattern) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    span = 2 * pattern.period
    if bits.size % span:
        raise BadLength(f"puncture input length {bits.size} not a multiple of {span}")
    mask = np.tile(pattern.mask(), bits.size // span)
    return bits[mask]


def depuncture(bits: np.ndarray, pattern: PuncturePattern) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    kept = pattern.kept_per_period
    if bits.size % kept:
        raise BadLength(f"depuncture input length {bits.size} not a multiple of {kept}")
    periods = bits.size // kept
    out = np.full(periods * 2 * pattern.period, _ERASE, dtype=np.uint8)
    mask = np.tile(pattern.mask(), periods)
    out[mask] = bits
    return out


@njit(cache=True)
def _encode_kernel(bits, m, g0, g1):
    out = np.empty(2 * bits.size, dtype=np.uint8)
    state = 0
    top = m - 1
    for i in range(bits.size):
        full = (bits[i] << top) | state
        x = 0
        y = 0
        v = full & g0
        while v:
            x ^= v & 1
            v >>= 1
        v = full & g1
        while v:
            y ^= v & 1
            v >>= 1
        out[2 * i] = x
        out[2 * i + 1] = y
        state = full >> 1
    return out


@njit(cache=True)
def _viterbi_kernel(symbols, next_state, out_x, out_y, n_states):
    n_steps = symbols.size // 2
    INF = np.int64(1) << 60
    metric = np.full(n_states, INF, dtype=np.int64)
    metric[0] = 0
    new_metric = np.empty(n_states, dtype=np.int64)
    prev = np.zeros((n_steps, n_states), dtype=np.uint8)
    for t in range(n_steps):
        xa = symbols[2 * t]
        yb = symbols[2 * t + 1]
        new_metric[:] = INF
        for s in range(n_states):
            pm = metric[s]
            if pm >= INF:
                continue
            for u in range(2):
                bm = 0
                if xa != _ERASE and xa != out_x[s, u]:
                    bm += 1
                if yb != _ERASE and yb != out_y[s, u]:
                    bm += 1
                ns = next_state[s, u]
                cand = pm + bm
                if cand < new_metric[ns]:
                    new_metric[ns] = cand
                    prev[t, ns] = s
        metric[:] = new_metric
    # traceback pinned to the zero state; the input bit is the MSB of each state
    bits = np.empty(n_steps, dtype=np.uint8)
    cur = 0
    shift = int(np.log2(n_states)) - 1
    for t in range(n_steps - 1, -1, -1):
        bits[t] = cur >> shift
        cur = prev[t, cur]
    return bits


class ConvolutionalCode:
    """Encoder/decoder pair for one ConvParams."""

    def __init__(self, params: ConvParams = ConvParams()):
        self.params = params
        m = params.constraint_length
        g0, g1 = params.generators
        n_states = 1 << (m - 1)
        self.n_states = n_states
        self._next = np.zeros((n_states, 2), dtype=np.int64)
        self._out_x = np.zeros((n_states, 2), dtype=np.uint8)
        self._out_y = np.zeros((n_states, 2), dtype=np.uint8)
        for s in range(n_states):
            for u in (0, 1):
                full = (u << (m - 1)) | s
                self._out_x[s, u] = bin(full & g0).count("1") & 1
                self._out_y[s, u] = bin(full & g1).count("1") & 1
                self._next[s, u] = full >> 1

    def _padded_steps(self, n_bits: int) -> int:
        m = self.params.constraint_length
        period = self.params.puncture.period
        steps = n_bits + m - 1
        return steps + (-steps) % period

    def encode(self, bits: np.ndarray) -> np.ndarray:
        """Encode, flush to the zero state, pad to the puncture period, puncture."""
        bits = np.asarray(bits, dtype=np.uint8)
        steps = self._padded_steps(bits.size)
        padded = np.zeros(steps, dtype=np.uint8)
        padded[: bits.size] = bits
        g0, g1 = self.params.generators
        mother = _encode_kernel(padded, self.params.constraint_length, g0, g1)
        return puncture(mother, self.params.puncture)

    def decode(self, symbols: np.ndarray, message_length: int | None = None) -> np.ndarray:
        """Maximum-likelihood bits from a depunctured trinary stream."""
        symbols = np.asarray(symbols, dtype=np.uint8)
        if symbols.size % 2:
            raise BadLength(f"trellis input of {symbols.size} symbols is not step-aligned")
        n_steps = symbols.size // 2
        tail = self.params.constraint_length - 1
        if message_length is None:
            message_length = n_steps - tail
        if not 0 <= message_length <= n_steps - tail:
            raise BadLength(
                f"message length {message_length} impossible for {n_steps} trellis steps"
            )
        decoded = _viterbi_kernel(symbols, self._next, self._out_x, self._out_y, self.n_states)
        return decoded[:message_length]


def conv_encode(bits: np.ndarray, params: ConvParams) -> np.ndarray:
    return ConvolutionalCode(params).encode(bits)


def viterbi_decode(
    symbols: np.ndarray, params: ConvParams, message_length: int | None = None
) -> np.ndarray:
    return ConvolutionalCode(params).decode(symbols, message_length)
