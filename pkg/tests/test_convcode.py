"""Convolutional encoder / puncturing / Viterbi checks."""

import numpy as np
import pytest

from ofdmlink.convcode import (
    ConvolutionalCode,
    ConvParams,
    PuncturePattern,
    RATE_HALF,
    RATE_TWO_THIRDS,
    depuncture,
    puncture,
)
from ofdmlink.errors import BadLength

M3 = ConvParams(constraint_length=3, generators=(0o7, 0o5))
M5 = ConvParams(constraint_length=5, generators=(0o23, 0o35))
M7 = ConvParams()  # (171,133) octal


def shift_register_oracle(bits, m, g0, g1):
    """Bit-list reference encoder: explicit register, taps MSB=newest."""
    reg = [0] * m
    out = []
    for u in list(bits) + [0] * (m - 1):
        reg = [u] + reg[:-1]
        taps0 = [(g0 >> (m - 1 - i)) & 1 for i in range(m)]
        taps1 = [(g1 >> (m - 1 - i)) & 1 for i in range(m)]
        out.append(sum(r * t for r, t in zip(reg, taps0)) % 2)
        out.append(sum(r * t for r, t in zip(reg, taps1)) % 2)
    return out


class TestEncode:
    def test_all_zero_input(self):
        code = ConvolutionalCode(M3)
        out = code.encode(np.zeros(20, dtype=np.uint8))
        assert out.shape == (2 * 22,)
        assert not out.any()

    def test_hand_trace_single_one(self):
        code = ConvolutionalCode(M3)
        out = code.encode(np.array([1], dtype=np.uint8))
        assert list(out) == [1, 1, 1, 0, 1, 1]

    def test_matches_register_oracle(self):
        rng = np.random.default_rng(42)
        for params in (M3, M5, M7):
            bits = rng.integers(0, 2, 97).astype(np.uint8)
            got = ConvolutionalCode(params).encode(bits)
            want = shift_register_oracle(bits, params.constraint_length, *params.generators)
            assert list(got) == want

    def test_punctured_single_one(self):
        # 4 trellis steps after flush+alignment: 11 10 11 00 -> keep X1 Y1 Y2 ...
        code = ConvolutionalCode(ConvParams(3, (0o7, 0o5), RATE_TWO_THIRDS))
        out = code.encode(np.array([1], dtype=np.uint8))
        assert list(out) == [1, 1, 0, 1, 1, 0]

    def test_identity_length_formula(self):
        for params, n in ((M3, 11), (M5, 64), (M7, 1)):
            out = ConvolutionalCode(params).encode(np.zeros(n, dtype=np.uint8))
            assert out.size == 2 * (n + params.constraint_length - 1)

    def test_linearity(self):
        rng = np.random.default_rng(5)
        code = ConvolutionalCode(M7)
        a = rng.integers(0, 2, 200).astype(np.uint8)
        b = rng.integers(0, 2, 200).astype(np.uint8)
        assert np.array_equal(code.encode(a ^ b), code.encode(a) ^ code.encode(b))

    def test_empty_input(self):
        out = ConvolutionalCode(M3).encode(np.zeros(0, dtype=np.uint8))
        assert out.size == 2 * 2  # flush only
        assert not out.any()


class TestPuncture:
    def test_identity_pattern(self):
        bits = np.array([1, 0, 1, 1], dtype=np.uint8)
        assert np.array_equal(puncture(bits, RATE_HALF), bits)
        back = depuncture(bits, RATE_HALF)
        assert np.array_equal(back, bits)
        assert not (back == 2).any()

    def test_two_thirds_mask(self):
        bits = np.array([1, 0, 1, 1], dtype=np.uint8)  # X1 Y1 X2 Y2
        kept = puncture(bits, RATE_TWO_THIRDS)
        assert list(kept) == [1, 0, 1]  # X1 Y1 Y2
        back = depuncture(kept, RATE_TWO_THIRDS)
        assert list(back) == [1, 0, 2, 1]  # erasure where X2 was dropped

    def test_empty(self):
        empty = np.zeros(0, dtype=np.uint8)
        assert puncture(empty, RATE_TWO_THIRDS).size == 0
        assert depuncture(empty, RATE_TWO_THIRDS).size == 0

    def test_roundtrip_marks_all_punctured_slots(self):
        rng = np.random.default_rng(8)
        bits = rng.integers(0, 2, 48).astype(np.uint8)
        back = depuncture(puncture(bits, RATE_TWO_THIRDS), RATE_TWO_THIRDS)
        mask = np.tile([True, True, False, True], 12)
        assert np.array_equal(back[mask], bits[mask])
        assert (back[~mask] == 2).all()

    def test_misaligned_rejected(self):
        with pytest.raises(BadLength):
            puncture(np.zeros(6, dtype=np.uint8), RATE_TWO_THIRDS)
        with pytest.raises(BadLength):
            depuncture(np.zeros(4, dtype=np.uint8), RATE_TWO_THIRDS)

    def test_rates(self):
        assert RATE_HALF.rate == (1, 2)
        assert RATE_TWO_THIRDS.rate == (2, 3)


class TestViterbi:
    @pytest.mark.parametrize("params", [M3, M5, M7], ids=["m3", "m5", "m7"])
    def test_noiseless_roundtrip_rate_half(self, params):
        rng = np.random.default_rng(11)
        code = ConvolutionalCode(params)
        bits = rng.integers(0, 2, 1000).astype(np.uint8)
        coded = code.encode(bits)
        assert np.array_equal(code.decode(depuncture(coded, RATE_HALF)), bits)

    @pytest.mark.parametrize("m,gens", [(3, (0o7, 0o5)), (5, (0o23, 0o35)), (7, (0o171, 0o133))])
    def test_noiseless_roundtrip_punctured(self, m, gens):
        rng = np.random.default_rng(13)
        code = ConvolutionalCode(ConvParams(m, gens, RATE_TWO_THIRDS))
        bits = rng.integers(0, 2, 1000).astype(np.uint8)
        coded = code.encode(bits)
        decoded = code.decode(depuncture(coded, RATE_TWO_THIRDS), message_length=1000)
        assert np.array_equal(decoded, bits)

    @pytest.mark.parametrize("params", [M3, M5, M7], ids=["m3", "m5", "m7"])
    def test_single_flip_always_corrected(self, params):
        rng = np.random.default_rng(17)
        code = ConvolutionalCode(params)
        bits = rng.integers(0, 2, 64).astype(np.uint8)
        coded = code.encode(bits)
        for i in range(coded.size):
            corrupted = coded.copy()
            corrupted[i] ^= 1
            assert np.array_equal(code.decode(depuncture(corrupted, RATE_HALF)), bits), i

    def test_all_erasures(self):
        code = ConvolutionalCode(M3)
        symbols = np.full(20, 2, dtype=np.uint8)
        first = code.decode(symbols)
        assert first.size == 10 - 2
        assert np.array_equal(first, code.decode(symbols))
        assert not first.any()  # ties resolve toward the zero branch

    def test_erasures_from_puncturing_recoverable(self):
        rng = np.random.default_rng(23)
        code = ConvolutionalCode(ConvParams(7, (0o171, 0o133), RATE_TWO_THIRDS))
        bits = rng.integers(0, 2, 500).astype(np.uint8)
        trinary = depuncture(code.encode(bits), RATE_TWO_THIRDS)
        assert (trinary == 2).sum() == trinary.size // 4
        assert np.array_equal(code.decode(trinary, message_length=500), bits)

    def test_length_errors(self):
        code = ConvolutionalCode(M3)
        with pytest.raises(BadLength):
            code.decode(np.zeros(7, dtype=np.uint8))
        with pytest.raises(BadLength):
            code.decode(np.zeros(8, dtype=np.uint8), message_length=5)

    def test_monotone_degradation_with_error_weight(self):
        rng = np.random.default_rng(31)
        code = ConvolutionalCode(M7)
        n_msg, trials = 128, 1000
        ber = []
        for w in range(13):
            errs = 0
            for _ in range(trials):
                bits = rng.integers(0, 2, n_msg).astype(np.uint8)
                coded = code.encode(bits)
                pos = rng.choice(coded.size, size=w, replace=False)
                coded[pos] ^= 1
                errs += int((code.decode(depuncture(coded, RATE_HALF)) != bits).sum())
            ber.append(errs / (n_msg * trials))
        assert ber[0] == 0.0
        assert all(b - a >= -1e-9 for a, b in zip(ber, ber[1:])), ber


class TestParams:
    def test_generator_validation(self):
        with pytest.raises(ValueError):
            ConvParams(3, (0o7, 0o4))  # low bit clear
        with pytest.raises(ValueError):
            ConvParams(3, (0o17, 0o5))  # degree too high
        with pytest.raises(ValueError):
            ConvParams(4, (0o17, 0o13))  # unsupported constraint length

    def test_pattern_validation(self):
        with pytest.raises(ValueError):
            PuncturePattern(period=2, keep_x=(1,), keep_y=(1, 1))
        with pytest.raises(ValueError):
            PuncturePattern(period=1, keep_x=(0,), keep_y=(0,))
