"""Reed-Solomon (255,239) codec over GF(2^8).

Systematic encoding by LFSR division; decoding via syndromes,
Berlekamp-Massey, Chien search and the Forney formula. Codewords use the
descending-power convention: stream index i holds the coefficient of
x^(n-1-i), so the first k symbols are the message.

Block kernels are JIT-compiled; one decode touches a few thousand table
lookups and sits inside every Monte Carlo trial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BadLength
from .gf256 import DEFAULT_FIELD, GF256, ORDER


@dataclass(frozen=True)
class RsParams:
    """Code geometry: n total symbols, k message symbols, roots at alpha^(first_root+i)."""

    n: int = 255
    k: int = 239
    first_root: int = 0

    def __post_init__(self):
        if self.n != ORDER:
            raise ValueError(f"only full-length n={ORDER} blocks supported, got n={self.n}")
        if not 0 < self.k < self.n:
            raise ValueError(f"k={self.k} out of range")
        if (self.n - self.k) % 2:
            raise ValueError(f"n-k={self.n - self.k} parity symbols must be even")

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2


@dataclass(frozen=True)
class DecodeReport:
    corrected_symbols: int
    decode_failure: bool


@njit(cache=True)
def _encode_blocks(msgs, gen_tail, exp, log):
    nb, k = msgs.shape
    two_t = gen_tail.shape[0]
    parity = np.zeros((nb, two_t), dtype=np.int64)
    for b in range(nb):
        par = parity[b]
        for i in range(k):
            fb = msgs[b, i] ^ par[0]
            for j in range(two_t - 1):
                par[j] = par[j + 1]
            par[two_t - 1] = 0
            if fb != 0:
                lf = log[fb]
                for j in range(two_t):
                    g = gen_tail[j]
                    if g != 0:
                        par[j] ^= exp[log[g] + lf]
    return parity


@njit(cache=True)
def _decode_block(rx, out, exp, log, t, first_root):
    """Correct rx in place into out; returns (corrected, failure)."""
    n = rx.shape[0]
    two_t = 2 * t
    out[:] = rx[:]

    # syndromes S_j = r(alpha^(first_root+j)), Horner with descending powers
    synd = np.zeros(two_t, dtype=np.int64)
    any_nonzero = False
    for j in range(two_t):
        lx = (first_root + j) % ORDER
        acc = 0
        for i in range(n):
            if acc != 0:
                acc = exp[log[acc] + lx]
            acc ^= rx[i]
        synd[j] = acc
        if acc != 0:
            any_nonzero = True
    if not any_nonzero:
        return 0, False

    # Berlekamp-Massey, ascending-power locator C(x)
    C = np.zeros(two_t + 1, dtype=np.int64)
    B = np.zeros(two_t + 1, dtype=np.int64)
    C[0] = 1
    B[0] = 1
    L = 0
    m = 1
    b = 1
    for step in range(two_t):
        d = synd[step]
        for i in range(1, L + 1):
            if C[i] != 0 and synd[step - i] != 0:
                d ^= exp[log[C[i]] + log[synd[step - i]]]
        if d == 0:
            m += 1
            continue
        lcoef = (log[d] - log[b]) % ORDER
        if 2 * L <= step:
            T = C.copy()
            for i in range(m, two_t + 1):
                if B[i - m] != 0:
                    C[i] ^= exp[log[B[i - m]] + lcoef]
            L = step + 1 - L
            B = T
            b = d
            m = 1
        else:
            for i in range(m, two_t + 1):
                if B[i - m] != 0:
                    C[i] ^= exp[log[B[i - m]] + lcoef]
            m += 1
    if L > t:
        return 0, True

    # Chien search over alpha^j; root at alpha^j puts an error at degree 255-j
    positions = np.empty(L, dtype=np.int64)
    root_logs = np.empty(L, dtype=np.int64)
    found = 0
    for j in range(ORDER):
        acc = 0
        for i in range(L, -1, -1):
            if acc != 0:
                acc = exp[log[acc] + j]
            acc ^= C[i]
        if acc == 0:
            if found == L:
                return 0, True
            degree = (ORDER - j) % ORDER
            positions[found] = n - 1 - degree
            root_logs[found] = j
            found += 1
    if found != L:
        return 0, True

    # Forney: e = X^(1-first_root) * Omega(X^-1) / C'(X^-1)
    omega = np.zeros(two_t, dtype=np.int64)
    for i in range(two_t):
        acc = 0
        for j in range(i + 1):
            if i - j <= two_t and synd[j] != 0 and C[i - j] != 0:
                acc ^= exp[log[synd[j]] + log[C[i - j]]]
        omega[i] = acc
    for idx in range(L):
        jroot = root_logs[idx]
        num = 0
        for i in range(two_t - 1, -1, -1):
            if num != 0:
                num = exp[log[num] + jroot]
            num ^= omega[i]
        den = 0
        for i in range(1, L + 1, 2):
            term = C[i]
            if term != 0 and ((i - 1) * jroot) % ORDER != 0:
                term = exp[log[term] + ((i - 1) * jroot) % ORDER]
            den ^= term
        if den == 0 or num == 0:
            return 0, True
        mag = exp[(log[num] - log[den]) % ORDER]
        xlog = (ORDER - jroot) % ORDER  # X = alpha^xlog
        scale = (xlog * (1 - first_root)) % ORDER
        mag = exp[(log[mag] + scale) % ORDER]
        out[positions[idx]] ^= mag

    # verify; anything nonzero means the pattern was uncorrectable after all
    for j in range(two_t):
        lx = (first_root + j) % ORDER
        acc = 0
        for i in range(n):
            if acc != 0:
                acc = exp[log[acc] + lx]
            acc ^= out[i]
        if acc != 0:
            out[:] = rx[:]
            return 0, True
    return L, False


class ReedSolomon:
    """Encoder/decoder bound to one parameter set and field."""

    def __init__(self, params: RsParams = RsParams(), field: GF256 = DEFAULT_FIELD):
        self.params = params
        self.field = field
        gen = [1]
        for i in range(2 * params.t):
            root = field.alpha_pow(params.first_root + i)
            gen = field.poly_mul(gen, [1, root])
        self.generator = np.array(gen, dtype=np.int64)
        self._gen_tail = self.generator[1:].copy()
        self._exp = field.exp.astype(np.int64)
        self._log = field.log

    def encode(self, message: np.ndarray) -> np.ndarray:
        """Systematic codeword for one k-symbol message."""
        message = np.asarray(message)
        if message.shape != (self.params.k,):
            raise BadLength(f"message must have {self.params.k} symbols, got {message.shape}")
        return self.encode_stream(message)

    def encode_stream(self, symbols: np.ndarray) -> np.ndarray:
        """Encode a concatenation of whole k-symbol blocks."""
        symbols = np.asarray(symbols, dtype=np.int64)
        k, n = self.params.k, self.params.n
        if symbols.ndim != 1 or symbols.size % k:
            raise BadLength(f"stream length {symbols.size} is not a multiple of k={k}")
        msgs = symbols.reshape(-1, k)
        parity = _encode_blocks(msgs, self._gen_tail, self._exp, self._log)
        out = np.concatenate([msgs, parity], axis=1)
        return out.reshape(-1).astype(np.uint8)

    def decode(self, received: np.ndarray) -> tuple[np.ndarray, DecodeReport]:
        """Decode one n-symbol block; failures return the systematic prefix unmodified."""
        received = np.asarray(received)
        if received.shape != (self.params.n,):
            raise BadLength(f"received must have {self.params.n} symbols, got {received.shape}")
        decoded, reports = self.decode_stream(received)
        return decoded, reports[0]

    def decode_stream(self, symbols: np.ndarray) -> tuple[np.ndarray, list[DecodeReport]]:
        symbols = np.asarray(symbols, dtype=np.int64)
        k, n, t = self.params.k, self.params.n, self.params.t
        if symbols.ndim != 1 or symbols.size % n:
            raise BadLength(f"stream length {symbols.size} is not a multiple of n={n}")
        blocks = symbols.reshape(-1, n)
        out = np.empty_like(blocks)
        reports = []
        for i in range(blocks.shape[0]):
            corrected, failed = _decode_block(
                blocks[i], out[i], self._exp, self._log, t, self.params.first_root
            )
            reports.append(DecodeReport(int(corrected), bool(failed)))
        return out[:, :k].reshape(-1).astype(np.uint8), reports
