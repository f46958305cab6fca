"""Staircase encoding, sliding-window decoding, and complexity accounting."""

import numpy as np
import pytest

from feclab.bch import build_code, is_codeword
from feclab.pc import SabmParams
from feclab.scc import (
    ComplexityStats,
    SccCode,
    decode_chain,
    eta,
    scc_encode,
    scc_window_decode,
)


@pytest.fixture(scope="module")
def scc32(ecc32_code):
    return SccCode(ecc32_code)


def random_chain(code, rng, num_blocks):
    info = rng.integers(0, 2, size=(num_blocks, code.w, code.info_cols),
                        dtype=np.uint8)
    return info, scc_encode(code, info)


# ---------------------------------------------------------------- encoding

def test_scc_code_geometry(scc32):
    assert scc32.w == 16
    assert scc32.component.n == 2 * scc32.w
    assert scc32.info_cols == scc32.component.k - scc32.w == 5


def test_scc_code_validation():
    with pytest.raises(ValueError):
        SccCode(build_code(4, 2, extended=False))  # odd n
    with pytest.raises(ValueError):
        SccCode(build_code(4, 2, extended=True))  # k = 7 <= w = 8


def test_scc_encode_zero_info(scc32):
    blocks = scc_encode(scc32, np.zeros((4, scc32.w, scc32.info_cols),
                                        dtype=np.uint8))
    assert len(blocks) == 4
    for b in blocks:
        assert not b.any()


def test_scc_encode_rows_of_pairs_are_codewords(scc32, rng):
    info, blocks = random_chain(scc32, rng, 6)
    w = scc32.w
    prev = np.zeros((w, w), dtype=np.uint8)
    for b in blocks:
        pair = np.concatenate([prev.T, b], axis=1)
        for i in range(w):
            assert is_codeword(scc32.component, pair[i])
        prev = b


def test_scc_encode_preserves_info_region(scc32, rng):
    info, blocks = random_chain(scc32, rng, 5)
    for i, b in enumerate(blocks):
        assert np.array_equal(b[:, : scc32.info_cols], info[i])


def test_scc_encode_single_bit_propagates(scc32):
    # flipping one info bit changes the parity of its block and, through the
    # stair coupling, the later blocks too
    zero = np.zeros((3, scc32.w, scc32.info_cols), dtype=np.uint8)
    one = zero.copy()
    one[0, 4, 2] = 1
    b0 = scc_encode(scc32, zero)
    b1 = scc_encode(scc32, one)
    assert not np.array_equal(b0[0], b1[0])
    assert not np.array_equal(b0[1], b1[1])


def test_scc_encode_rejects_bad_shape(scc32):
    with pytest.raises(ValueError):
        scc_encode(scc32, np.zeros((2, 4, 4), dtype=np.uint8))


# ----------------------------------------------------------- window decode

def test_window_decode_noiseless(scc32, rng):
    _, blocks = random_chain(scc32, rng, 4)
    buf = [np.zeros((scc32.w, scc32.w), dtype=np.uint8)] + \
          [b.copy() for b in blocks]
    oldest, calls = scc_window_decode(scc32, buf, ell=3)
    assert calls == scc32.w * (len(buf) - 1) * 3
    assert not oldest.any()
    for got, want in zip(buf[1:], blocks):
        assert np.array_equal(got, want)


def test_window_decode_fixes_scattered_errors(scc32, rng):
    _, blocks = random_chain(scc32, rng, 4)
    noisy = [b.copy() for b in blocks]
    noisy[1][3, 7] ^= 1
    noisy[2][9, 0] ^= 1
    noisy[2][9, 4] ^= 1
    buf = [np.zeros((scc32.w, scc32.w), dtype=np.uint8)] + noisy
    scc_window_decode(scc32, buf, ell=4)
    for got, want in zip(buf[1:], blocks):
        assert np.array_equal(got, want)


def test_window_decode_mode_validation(scc32):
    buf = [np.zeros((scc32.w, scc32.w), dtype=np.uint8)] * 2
    with pytest.raises(ValueError):
        scc_window_decode(scc32, buf, ell=1, mode="nope")
    with pytest.raises(ValueError):
        scc_window_decode(scc32, buf, ell=1, mode="sabm")  # no LLRs


def test_sabm_degenerate_matches_standard(scc32, rng):
    _, blocks = random_chain(scc32, rng, 5)
    noisy = [b.copy() for b in blocks]
    for b in noisy:
        r, c = rng.integers(0, scc32.w, size=2)
        b[r, c] ^= 1
    zero = np.zeros((scc32.w, scc32.w), dtype=np.uint8)
    buf_std = [zero.copy()] + [b.copy() for b in noisy]
    buf_deg = [zero.copy()] + [b.copy() for b in noisy]
    scc_window_decode(scc32, buf_std, ell=3, mode="standard")
    llr = np.where(noisy[-1] == 0, 2.0, -2.0)
    scc_window_decode(scc32, buf_deg, ell=3, mode="sabm", llr_newest=llr,
                      params=SabmParams(md_iters=0, total_iters=3))
    for a, b in zip(buf_std, buf_deg):
        assert np.array_equal(a, b)


def test_sabm_window_recovers_three_error_row(scc32, rng):
    _, blocks = random_chain(scc32, rng, 3)
    noisy = [b.copy() for b in blocks]
    errs = [1, 6, 12]
    noisy[-1][5, errs] ^= 1
    llr = np.where(noisy[-1] == 0, 8.0, -8.0)
    llr[5, errs] = np.where(noisy[-1][5, errs] == 0, 0.4, -0.4)
    buf = [np.zeros((scc32.w, scc32.w), dtype=np.uint8)] + noisy
    scc_window_decode(scc32, buf, ell=4, mode="sabm", llr_newest=llr,
                      params=SabmParams(delta=5.0, total_iters=4, md_iters=4))
    for got, want in zip(buf[1:], blocks):
        assert np.array_equal(got, want)


# ---------------------------------------------------------------- chains

def test_decode_chain_roundtrip(scc32, rng):
    _, blocks = random_chain(scc32, rng, 10)
    noisy = [b.copy() for b in blocks]
    for b in noisy[2:]:
        r, c = rng.integers(0, scc32.w, size=2)
        b[r, c] ^= 1
    out, cx, stats = decode_chain(scc32, noisy, None, "standard", None,
                                  window=4, ell=3)
    assert len(out) == 10
    for got, want in zip(out, blocks):
        assert np.array_equal(got, want)
    assert cx.windows > 0
    assert stats.bdd_calls == cx.total_calls


def test_decode_chain_sabm_roundtrip(scc32, rng):
    _, blocks = random_chain(scc32, rng, 8)
    noisy = [b.copy() for b in blocks]
    noisy[3][2, 9] ^= 1
    noisy[5][11, 1] ^= 1
    llrs = [np.where(b == 0, 8.0, -8.0) for b in noisy]
    out, cx, stats = decode_chain(scc32, noisy, llrs, "sabm", SabmParams(),
                                  window=4, ell=3)
    for got, want in zip(out, blocks):
        assert np.array_equal(got, want)


def test_decode_chain_input_not_mutated(scc32, rng):
    _, blocks = random_chain(scc32, rng, 4)
    noisy = [b.copy() for b in blocks]
    noisy[1][0, 0] ^= 1
    snap = [b.copy() for b in noisy]
    decode_chain(scc32, noisy, None, "standard", None, window=3, ell=2)
    for a, b in zip(noisy, snap):
        assert np.array_equal(a, b)


def test_decode_chain_window_validation(scc32):
    with pytest.raises(ValueError):
        decode_chain(scc32, [], None, "standard", None, window=1, ell=1)


# ------------------------------------------------------------- complexity

def test_eta_arithmetic():
    assert eta(ComplexityStats(n_bar=18.0, n_sd=16.0)) == pytest.approx(0.125)
    assert eta(ComplexityStats(n_bar=16.0, n_sd=16.0)) == 0.0
    with pytest.raises(ValueError):
        eta(ComplexityStats(n_bar=1.0, n_sd=0.0))


def test_standard_chain_counts_match_baseline(scc32, rng):
    # plain sliding-window decoding always spends exactly w*(L-1)*ell calls
    _, blocks = random_chain(scc32, rng, 7)
    _, cx, _ = decode_chain(scc32, blocks, None, "standard", None,
                            window=4, ell=3)
    assert cx.total_calls == cx.baseline_calls
    assert eta(cx) == 0.0


def test_sabm_chain_extra_calls_only_from_flips(scc32, rng):
    _, blocks = random_chain(scc32, rng, 6)
    noisy = [b.copy() for b in blocks]
    errs = [2, 8, 13]
    noisy[4][6, errs] ^= 1
    llrs = [np.where(b == 0, 8.0, -8.0) for b in noisy]
    llrs[4][6, errs] = np.where(noisy[4][6, errs] == 0, 0.4, -0.4)
    out, cx, stats = decode_chain(scc32, noisy, llrs, "sabm", SabmParams(),
                                  window=4, ell=3)
    for got, want in zip(out, blocks):
        assert np.array_equal(got, want)
    assert cx.total_calls == cx.baseline_calls + stats.flips_attempted
    assert eta(cx) >= 0.0
