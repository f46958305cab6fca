"""Staircase codes: encoding, sliding-window iBDD, SABM on the newest
block, and the relative-complexity metric eta.

Block geometry: every row of [transpose(B_{i-1}) | B_i] is a component
codeword with n = 2w. Within B_i, columns 0..k-w-1 carry fresh information
and the remaining columns the parity (overall-parity bit in the last
column). B_0 is the all-zero reference block known to both ends.
"""

from dataclasses import dataclass

import numpy as np

from .bch import BchCode, BddOutcome, bdd_propose_block, encode_many, is_codeword
from .pc import DecodeStats, SabmParams, bit_flip_recover


@dataclass(frozen=True)
class SccCode:
    component: BchCode

    def __post_init__(self):
        if self.component.n % 2:
            raise ValueError("staircase component needs even n = 2w")
        if self.component.k <= self.w:
            raise ValueError("component k must exceed w to carry information")

    @property
    def w(self) -> int:
        return self.component.n // 2

    @property
    def info_cols(self) -> int:
        return self.component.k - self.w


@dataclass
class ComplexityStats:
    """BDD-call accounting: eta = (n_bar - n_sd) / n_sd, with n_sd the
    standard-decoding call count w*(L-1)*ell per window."""

    n_bar: float = 0.0
    n_sd: float = 0.0
    total_calls: int = 0
    baseline_calls: int = 0
    windows: int = 0

    def finalize(self):
        if self.windows:
            self.n_bar = self.total_calls / self.windows
            self.n_sd = self.baseline_calls / self.windows


def eta(stats: ComplexityStats) -> float:
    if stats.n_sd <= 0:
        raise ValueError("n_sd must be positive")
    return (stats.n_bar - stats.n_sd) / stats.n_sd


def scc_encode(code: SccCode, info_blocks) -> list[np.ndarray]:
    """Encode a chain; info_blocks has shape (num_blocks, w, k - w)."""
    info = np.asarray(info_blocks, dtype=np.uint8)
    w = code.w
    if info.ndim != 3 or info.shape[1:] != (w, code.info_cols):
        raise ValueError(f"info blocks must be (N, {w}, {code.info_cols})")
    prev = np.zeros((w, w), dtype=np.uint8)
    out = []
    for i in range(info.shape[0]):
        msgs = np.concatenate([prev.T, info[i]], axis=1)  # (w, k)
        words = encode_many(code.component, msgs)
        block = words[:, w:]
        out.append(np.ascontiguousarray(block))
        prev = block
    return out


def _pair_words(blocks: list[np.ndarray], p: int) -> np.ndarray:
    return np.concatenate([blocks[p].T, blocks[p + 1]], axis=1)


class _SccSabm:
    """SABM state for the newest window block: HRB mask and per-word flip
    order cover only positions w..2w-1; older-block bits are unmarked."""

    def __init__(self, code: SccCode, llr: np.ndarray, params: SabmParams,
                 stats: DecodeStats):
        self.code = code
        self.params = params
        self.stats = stats
        a = np.abs(llr)
        self.hrb = a > params.delta
        w = code.w
        self.order = []
        for r in range(w):
            srt = np.argsort(a[r], kind="stable")
            self.order.append(w + srt[~self.hrb[r][srt]])

    def suspicious(self, pattern, word_index, blocks) -> bool:
        w = self.code.w
        comp = self.code.component
        last = len(blocks) - 1
        for p in pattern:
            if p >= w and self.hrb[word_index, p - w]:
                return True
        for p in pattern:
            # orthogonal word of an older-half bit lives in the previous
            # pair; newest-half bits have no successor word in the window
            if p < w and last >= 2:
                orth = np.concatenate([blocks[last - 2][:, p],
                                       blocks[last - 1][p, :]])
                if is_codeword(comp, orth):
                    return True
        return False

    def resolve(self, blocks, word_index, word, proposal) -> tuple[int, ...]:
        stats = self.stats

        def suspicious(pattern):
            return self.suspicious(pattern, word_index, blocks)

        order = self.order[word_index]
        shim = _CodeShim(self.code.component)
        if proposal is not None:
            if len(proposal) == 0:
                return ()
            if not suspicious(proposal):
                return proposal
            stats.miscorrections_detected += 1
            outcome = BddOutcome(success=True, error_pattern=proposal)
            return bit_flip_recover(shim, word, outcome, "miscorrection",
                                    order, self.params.failure_flip_attempts,
                                    stats, suspicious)
        return bit_flip_recover(shim, word, BddOutcome(success=False),
                                "failure", order,
                                self.params.failure_flip_attempts, stats,
                                suspicious)


@dataclass(frozen=True)
class _CodeShim:
    """Adapter so bit_flip_recover's component accessor works here."""

    component: BchCode


def scc_window_decode(code: SccCode, blocks: list[np.ndarray], ell: int,
                      mode: str = "standard",
                      llr_newest: np.ndarray | None = None,
                      params: SabmParams | None = None,
                      stats: DecodeStats | None = None) -> tuple[np.ndarray, int]:
    """Run ell iterations over one window (oldest..newest, mutated in
    place) and return (oldest block, number of BDD calls made)."""
    w = code.w
    comp = code.component
    L = len(blocks)
    if L < 1:
        raise ValueError("window must hold at least one block")
    if stats is None:
        stats = DecodeStats()
    sabm = None
    if mode == "sabm":
        if params is None:
            params = SabmParams()
        if llr_newest is None:
            raise ValueError("sabm mode requires LLRs for the newest block")
        sabm = _SccSabm(code, llr_newest, params, stats)
    elif mode != "standard":
        raise ValueError(f"unknown mode {mode!r}")

    calls_before = stats.bdd_calls
    for it in range(ell):
        for p in range(L - 1):
            words = _pair_words(blocks, p)
            props = bdd_propose_block(comp, words)
            stats.bdd_calls += w
            use_sabm = (sabm is not None and p == L - 2
                        and (params is None or it < params.md_iters))
            for i in range(w):
                pat = props.full_pattern(i, comp.n)
                if use_sabm:
                    pat = sabm.resolve(blocks, i, words[i].copy(), pat)
                elif pat is None:
                    pat = ()
                if pat:
                    pos = np.fromiter(pat, dtype=np.int64)
                    older = pos[pos < w]
                    newer = pos[pos >= w]
                    blocks[p][older, i] ^= 1
                    blocks[p + 1][i, newer - w] ^= 1
                    words[i, pos] ^= 1
    return blocks[0], stats.bdd_calls - calls_before


def decode_chain(code: SccCode, received: list[np.ndarray],
                 llr_grids: list[np.ndarray] | None, mode: str,
                 params: SabmParams | None, window: int, ell: int
                 ) -> tuple[list[np.ndarray], ComplexityStats, DecodeStats]:
    """Sliding-window decode of a whole chain (leading zero block is
    handled internally); returns the decoded blocks in order."""
    if window < 2:
        raise ValueError("window size must be >= 2")
    w = code.w
    stats = DecodeStats()
    cx = ComplexityStats()
    buf: list[np.ndarray] = [np.zeros((w, w), dtype=np.uint8)]
    decoded: list[np.ndarray] = []

    def run_window():
        llr = llr_grids[_newest_idx()] if (mode == "sabm" and llr_grids) else None
        _, _ = scc_window_decode(code, buf, ell, mode=mode, llr_newest=llr,
                                 params=params, stats=stats)
        cx.windows += 1
        cx.baseline_calls += w * (len(buf) - 1) * ell
        decoded.append(buf.pop(0))

    newest = -1

    def _newest_idx():
        return newest

    for i, blk in enumerate(received):
        buf.append(np.array(blk, dtype=np.uint8, copy=True))
        newest = i
        if len(buf) == window:
            run_window()
    while len(buf) > 1:
        run_window()
    decoded.extend(buf)
    cx.total_calls = stats.bdd_calls
    cx.finalize()
    # drop the bootstrap zero block from the output
    return decoded[1:], cx, stats
