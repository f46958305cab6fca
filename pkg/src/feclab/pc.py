"""Product codes: construction, iterative BDD, and the soft-aided
bit-marking (SABM) decoder.

SABM augments iBDD with a channel-LLR mask: bits with |llr| > delta are
highly reliable (HRBs), and per component word the d0-t-1 smallest-|llr|
non-HRB positions are the flip candidates (HUBs). During the first
md_iters iterations every BDD success is screened for miscorrection and
failures/miscorrections trigger deliberate bit flips followed by a retry.
"""

from dataclasses import dataclass, field

import numpy as np

from .bch import BchCode, BddOutcome, bdd_propose_block, decode_syndromes, syndromes
from .bch import encode_many, is_codeword
from .modem import ReliabilityGrid


@dataclass(frozen=True)
class PcCode:
    component: BchCode

    @property
    def w(self) -> int:
        return self.component.n

    @property
    def k(self) -> int:
        return self.component.k


@dataclass(frozen=True)
class SabmParams:
    delta: float = 5.0
    total_iters: int = 10
    md_iters: int = 5
    failure_flip_attempts: int = 1

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if not 0 <= self.md_iters <= self.total_iters:
            raise ValueError("need 0 <= md_iters <= total_iters")
        if self.failure_flip_attempts < 0:
            raise ValueError("failure_flip_attempts must be non-negative")


@dataclass
class DecodeStats:
    bdd_calls: int = 0
    miscorrections_detected: int = 0
    flips_attempted: int = 0
    flips_accepted: int = 0


@dataclass(frozen=True)
class MarkState:
    """Flip mask frozen at channel time: HRB flags plus, per row and per
    column, the non-HRB positions sorted by ascending |llr| (ties broken by
    lowest index). The HUB list of a word is the first d0-t-1 entries."""

    hrb: np.ndarray
    row_order: list = field(repr=False, default=None)
    col_order: list = field(repr=False, default=None)
    hub_len: int = 0

    def order_for(self, axis: int, index: int) -> np.ndarray:
        return (self.row_order if axis == 0 else self.col_order)[index]


def pc_encode(code: PcCode, data) -> np.ndarray:
    d = np.asarray(data, dtype=np.uint8)
    k = code.k
    if d.shape != (k, k):
        raise ValueError(f"data must be ({k}, {k})")
    rows = encode_many(code.component, d)          # (k, w): data rows encoded
    block = encode_many(code.component, rows.T).T  # every column encoded
    return block


def mark_bits(llrs: ReliabilityGrid, params: SabmParams, code: PcCode) -> MarkState:
    a = np.abs(llrs.llr)
    w = code.w
    if a.shape != (w, w):
        raise ValueError(f"LLR grid must be ({w}, {w})")
    hrb = a > params.delta
    hub_len = code.component.d0 - code.component.t - 1
    row_order = []
    col_order = []
    for i in range(w):
        order = np.argsort(a[i], kind="stable")
        row_order.append(order[~hrb[i][order]])
    at = a.T
    hrbt = hrb.T
    for j in range(w):
        order = np.argsort(at[j], kind="stable")
        col_order.append(order[~hrbt[j][order]])
    hrb.setflags(write=False)
    return MarkState(hrb=hrb, row_order=row_order, col_order=col_order,
                     hub_len=hub_len)


def detect_miscorrection(outcome: BddOutcome, axis: int, index: int,
                         marks: MarkState, block: np.ndarray,
                         code: PcCode) -> bool:
    """True iff a successful correction touches an HRB or a currently
    zero-syndrome orthogonal word (column for a row decode and vice versa)."""
    return _pattern_suspicious(outcome.error_pattern, axis, index, marks,
                               block, code.component)


def _pattern_suspicious(pattern, axis, index, marks, block, comp) -> bool:
    for p in pattern:
        hrb = marks.hrb[index, p] if axis == 0 else marks.hrb[p, index]
        if hrb:
            return True
    for p in pattern:
        orth = block[:, p] if axis == 0 else block[p, :]
        if is_codeword(comp, orth):
            return True
    return False


def _word_bdd(comp, word) -> tuple[int, ...] | None:
    s1, s3, parity = syndromes(comp, word)
    return decode_syndromes(comp, s1, s3, parity)


def bit_flip_recover(code: PcCode, word: np.ndarray, outcome: BddOutcome,
                     reason: str, order: np.ndarray, flip_attempts: int,
                     stats: DecodeStats, suspicious) -> tuple[int, ...]:
    """Flip unreliable bits and retry BDD; returns the accepted total flip
    pattern relative to `word`, or () when every retry fails (revert).

    reason="failure": flip single HUBs sequentially (up to flip_attempts).
    reason="miscorrection": flip the d0 - w_H(e) - 1 least reliable non-HRB
    positions at once, operating on the pre-BDD word. Every new success must
    survive the final miscorrection check `suspicious(pattern)`.
    """
    comp = code.component
    if reason == "miscorrection":
        nflip = comp.d0 - outcome.weight - 1
        flips = [int(p) for p in order[:nflip]]
        attempts = [flips] if flips else []
    elif reason == "failure":
        hubs = order[: marks_hub_len(code)]
        attempts = [[int(h)] for h in hubs[:flip_attempts]]
    else:
        raise ValueError(f"unknown recovery reason {reason!r}")

    for flips in attempts:
        stats.flips_attempted += 1
        trial = word.copy()
        trial[flips] ^= 1
        pat = _word_bdd(comp, trial)
        stats.bdd_calls += 1
        if pat is None:
            continue
        total = tuple(sorted(set(flips).symmetric_difference(pat)))
        if not total or suspicious(total):
            # empty net pattern cannot happen for a non-codeword input;
            # treat it like a failed retry rather than a silent accept
            continue
        stats.flips_accepted += 1
        return total
    return ()


def marks_hub_len(code: PcCode) -> int:
    return code.component.d0 - code.component.t - 1


class _SabmContext:
    """Per-block SABM state shared by the row/column passes."""

    def __init__(self, code: PcCode, marks: MarkState, params: SabmParams,
                 stats: DecodeStats):
        self.code = code
        self.marks = marks
        self.params = params
        self.stats = stats

    def resolve(self, block, axis, index, proposal) -> tuple[int, ...]:
        """Decide the final flip pattern for one component word."""
        marks, stats, code = self.marks, self.stats, self.code
        comp = code.component
        word = (block[index, :] if axis == 0 else block[:, index]).copy()

        def suspicious(pattern):
            return _pattern_suspicious(pattern, axis, index, marks, block, comp)

        order = marks.order_for(axis, index)
        if proposal is not None:
            if len(proposal) == 0:
                return ()
            if not suspicious(proposal):
                return proposal
            stats.miscorrections_detected += 1
            outcome = BddOutcome(success=True, error_pattern=proposal)
            return bit_flip_recover(code, word, outcome, "miscorrection",
                                    order, self.params.failure_flip_attempts,
                                    stats, suspicious)
        outcome = BddOutcome(success=False)
        return bit_flip_recover(code, word, outcome, "failure", order,
                                self.params.failure_flip_attempts, stats,
                                suspicious)


def _apply(block, axis, index, pattern) -> bool:
    if not pattern:
        return False
    pos = list(pattern)
    if axis == 0:
        block[index, pos] ^= 1
    else:
        block[pos, index] ^= 1
    return True


def _decode_core(code: PcCode, block, iters: int, sabm: _SabmContext | None,
                 md_iters: int, early_exit: bool) -> tuple[np.ndarray, DecodeStats]:
    blk = np.array(block, dtype=np.uint8, copy=True)
    w = code.w
    if blk.shape != (w, w):
        raise ValueError(f"block must be ({w}, {w})")
    stats = sabm.stats if sabm is not None else DecodeStats()
    comp = code.component
    it = 0
    while it < iters:
        changed = False
        suppressed = False
        sabm_active = sabm is not None and it < md_iters
        for axis in (0, 1):
            words = blk if axis == 0 else np.ascontiguousarray(blk.T)
            props = bdd_propose_block(comp, words)
            stats.bdd_calls += w
            for i in range(w):
                pat = props.full_pattern(i, comp.n)
                if sabm_active:
                    resolved = sabm.resolve(blk, axis, i, pat)
                    if not resolved and (pat is None or len(pat) > 0):
                        suppressed = True
                    pat = resolved
                elif pat is None:
                    pat = ()
                if _apply(blk, axis, i, pat):
                    changed = True
        it += 1
        if early_exit and not changed:
            if not sabm_active or not suppressed:
                break
            # a stalled marking phase cannot make progress with the same
            # vetoes in place; hand the block to the plain iterations
            it = max(it, md_iters)
    return blk, stats


def ibdd_decode(code: PcCode, block, iters: int,
                early_exit: bool = True) -> tuple[np.ndarray, DecodeStats]:
    if iters < 1:
        raise ValueError("iters must be >= 1")
    return _decode_core(code, block, iters, sabm=None, md_iters=0,
                        early_exit=early_exit)


def sabm_decode(code: PcCode, block, llrs: ReliabilityGrid,
                params: SabmParams,
                early_exit: bool = True) -> tuple[np.ndarray, DecodeStats]:
    marks = mark_bits(llrs, params, code)
    ctx = _SabmContext(code, marks, params, DecodeStats())
    return _decode_core(code, block, params.total_iters, sabm=ctx,
                        md_iters=params.md_iters, early_exit=early_exit)
