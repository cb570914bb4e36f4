"""Field arithmetic checks against independent bit-twiddling oracles."""

import numpy as np
import pytest

from ofdmlink.errors import ZeroInverse
from ofdmlink.gf256 import DEFAULT_PRIMITIVE_POLY, GF256, DEFAULT_FIELD


def peasant_mul(a: int, b: int, poly: int = DEFAULT_PRIMITIVE_POLY) -> int:
    """Shift-and-XOR multiplication, independent of the lookup tables."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= poly
    return acc


def peasant_mul_grid() -> np.ndarray:
    """All 256x256 products via vectorized shift-and-XOR."""
    a = np.repeat(np.arange(256, dtype=np.uint32), 256)
    b = np.tile(np.arange(256, dtype=np.uint32), 256)
    acc = np.zeros_like(a)
    for _ in range(8):
        acc ^= np.where(b & 1, a, 0)
        b >>= 1
        a <<= 1
        a = np.where(a & 0x100, a ^ DEFAULT_PRIMITIVE_POLY, a)
    return acc.reshape(256, 256)


class TestAdd:
    def test_identity(self):
        for x in (0, 1, 0x53, 255):
            assert DEFAULT_FIELD.add(0, x) == x

    def test_characteristic_two(self):
        for x in (0, 1, 37, 255):
            assert DEFAULT_FIELD.add(x, x) == 0

    def test_xor_oracle(self):
        assert DEFAULT_FIELD.add(0x53, 0xCA) == 0x99


class TestMul:
    def test_absorbing_zero(self):
        assert DEFAULT_FIELD.mul(0, 37) == 0
        assert DEFAULT_FIELD.mul(37, 0) == 0

    def test_identity(self):
        assert DEFAULT_FIELD.mul(1, 37) == 37

    def test_known_product(self):
        # peasant oracle: 2*128 = 0x100 -> reduce by 0x11D -> 0x1D
        assert DEFAULT_FIELD.mul(2, 128) == 29

    def test_exhaustive_against_peasant_oracle(self):
        grid = peasant_mul_grid()
        exp, log = DEFAULT_FIELD.exp, DEFAULT_FIELD.log
        a = np.arange(256)
        table = np.zeros((256, 256), dtype=np.uint32)
        nz = a[1:]
        table[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :])]
        assert np.array_equal(table, grid)

    def test_commutative_scalar_path(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a, b = rng.integers(0, 256, 2)
            assert DEFAULT_FIELD.mul(int(a), int(b)) == DEFAULT_FIELD.mul(int(b), int(a))


class TestInv:
    def test_one_is_self_inverse(self):
        assert DEFAULT_FIELD.inv(1) == 1

    def test_zero_rejected(self):
        with pytest.raises(ZeroInverse):
            DEFAULT_FIELD.inv(0)

    def test_all_inverses(self):
        for a in range(1, 256):
            assert DEFAULT_FIELD.mul(a, DEFAULT_FIELD.inv(a)) == 1

    def test_div_matches_inv(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            a = int(rng.integers(0, 256))
            b = int(rng.integers(1, 256))
            assert DEFAULT_FIELD.div(a, b) == DEFAULT_FIELD.mul(a, DEFAULT_FIELD.inv(b))


class TestFieldAxioms:
    """Sampled axiom checks plus the generator-orbit primitivity test."""

    def test_axioms_on_random_triples(self):
        rng = np.random.default_rng(1234)
        f = DEFAULT_FIELD
        trips = rng.integers(0, 256, size=(10_000, 3))
        for a, b, c in trips:
            a, b, c = int(a), int(b), int(c)
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(a, 1) == a
            assert f.add(a, 0) == a

    def test_generator_orbit_covers_field(self):
        seen = set()
        x = 1
        for _ in range(255):
            seen.add(x)
            x = DEFAULT_FIELD.mul(2, x)
        assert x == 1
        assert seen == set(range(1, 256))

    def test_exp_log_roundtrip(self):
        for a in range(1, 256):
            assert int(DEFAULT_FIELD.exp[DEFAULT_FIELD.log[a]]) == a

    def test_exp_table_periodic(self):
        exp = DEFAULT_FIELD.exp
        assert np.array_equal(exp[:255], exp[255:510])


class TestPolyEval:
    def test_constant(self):
        for x in (0, 1, 200):
            assert DEFAULT_FIELD.poly_eval([42], x) == 42

    def test_degree_one(self):
        f = DEFAULT_FIELD
        for x in (0, 1, 7, 255):
            assert f.poly_eval([1, 1], x) == f.add(f.mul(1, x), 1)

    def test_against_power_sum_oracle(self):
        f = DEFAULT_FIELD
        rng = np.random.default_rng(99)
        for _ in range(200):
            deg = int(rng.integers(0, 5))
            coeffs = [int(v) for v in rng.integers(0, 256, deg + 1)]
            x = int(rng.integers(0, 256))
            expect = 0
            n = len(coeffs) - 1
            for i, c in enumerate(coeffs):
                expect ^= peasant_pow_mul(c, x, n - i)
            assert f.poly_eval(coeffs, x) == expect

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            DEFAULT_FIELD.poly_eval([], 3)


def peasant_pow_mul(c: int, x: int, k: int) -> int:
    """c * x^k via repeated peasant multiplication."""
    acc = c
    for _ in range(k):
        acc = peasant_mul(acc, x)
    return acc


class TestAlternatePolynomial:
    def test_other_primitive_polynomial_builds(self):
        f = GF256(0x187)
        for a in range(1, 256):
            assert f.mul(a, f.inv(a)) == 1

    def test_non_primitive_rejected(self):
        # x^8 + x^4 + x^3 + x + 1 is irreducible but not primitive
        with pytest.raises(ValueError):
            GF256(0x11B)

    def test_short_polynomial_rejected(self):
        with pytest.raises(ValueError):
            GF256(0x1D)
