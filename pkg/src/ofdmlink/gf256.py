"""Arithmetic over GF(2^8) with log/antilog lookup tables.

Elements are ints in [0, 255] read as polynomials over GF(2) of degree < 8.
Addition is XOR; multiplication reduces modulo a primitive polynomial.
The exp table is doubled to 510 live entries so products of two logs never
need an explicit ``% 255``.
"""

from __future__ import annotations

import numpy as np

from .errors import ZeroInverse

DEFAULT_PRIMITIVE_POLY = 0x11D  # x^8 + x^4 + x^3 + x^2 + 1
GENERATOR = 2
ORDER = 255  # multiplicative group order


class GF256:
    """GF(2^8) field tables for one primitive polynomial.

    Tables are built once in the constructor and never mutated, so a single
    instance can be shared freely across threads.
    """

    def __init__(self, primitive_poly: int = DEFAULT_PRIMITIVE_POLY):
        if not (0x100 <= primitive_poly <= 0x1FF):
            raise ValueError(f"primitive polynomial must be 9 bits, got {primitive_poly:#x}")
        self.primitive_poly = primitive_poly
        exp = np.zeros(512, dtype=np.uint8)
        log = np.zeros(256, dtype=np.int64)
        seen = 0
        x = 1
        for i in range(ORDER):
            exp[i] = x
            if log[x] == 0 and x != 1:
                seen += 1
            log[x] = i
            x <<= 1
            if x & 0x100:
                x ^= primitive_poly
        if x != 1 or seen != ORDER - 1:
            raise ValueError(f"{primitive_poly:#x} is not primitive over GF(2^8)")
        exp[ORDER : 2 * ORDER] = exp[:ORDER]
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroInverse("division by zero in GF(2^8)")
        if a == 0:
            return 0
        return int(self.exp[(self.log[a] - self.log[b]) % ORDER])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return int(self.exp[ORDER - self.log[a]])

    def pow(self, a: int, n: int) -> int:
        """a**n, with 0**0 = 1 by convention."""
        if a == 0:
            return 1 if n == 0 else 0
        return int(self.exp[(self.log[a] * n) % ORDER])

    def alpha_pow(self, n: int) -> int:
        """Power of the generator element alpha = 2."""
        return int(self.exp[n % ORDER])

    def poly_eval(self, coeffs, x: int) -> int:
        """Horner evaluation of a polynomial given highest-degree coefficient first."""
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("empty coefficient sequence")
        acc = 0
        for c in coeffs:
            acc = self.mul(acc, x) ^ int(c)
        return acc

    def poly_mul(self, p, q):
        """Product of two coefficient sequences (highest degree first)."""
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a == 0:
                continue
            for j, b in enumerate(q):
                out[i + j] ^= self.mul(a, int(b))
        return out


DEFAULT_FIELD = GF256()
