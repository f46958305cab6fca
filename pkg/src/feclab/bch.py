"""Extended BCH component codes with t=2 bounded-distance decoding.

Codeword layout (bit index = polynomial degree): message at positions
0..k-1, parity at k..k+deg(g)-1, and for extended codes one overall-parity
bit at position n-1. A single flipped bit at unextended position j shows up
as S1 = alpha^j.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .gf2m import GaloisField, build_field, gf_mul, poly_degree, poly_mul, poly_rem


@dataclass(frozen=True)
class BchCode:
    field: GaloisField
    n: int
    k: int
    t: int
    d0: int
    extended: bool
    generator: int
    # decode/encode tables, derived once in build_code
    alpha1: np.ndarray = field(repr=False, default=None)
    alpha3: np.ndarray = field(repr=False, default=None)
    cube: np.ndarray = field(repr=False, default=None)
    qroot: np.ndarray = field(repr=False, default=None)
    parity_matrix: np.ndarray = field(repr=False, default=None)

    @property
    def n_unext(self) -> int:
        return self.n - (1 if self.extended else 0)

    @property
    def num_parity(self) -> int:
        return self.n_unext - self.k


@dataclass(frozen=True)
class BddOutcome:
    """One bounded-distance decoding attempt.

    success=False implies an empty error pattern; on success the pattern
    lists the flipped positions and weight = len(error_pattern).
    """

    success: bool
    error_pattern: tuple[int, ...] = ()

    @property
    def weight(self) -> int:
        return len(self.error_pattern)


def _minimal_poly(f: GaloisField, power: int) -> int:
    """Minimal polynomial over GF(2) of alpha^power, bit-packed."""
    order = f.order
    conj = set()
    e = power % order
    while e not in conj:
        conj.add(e)
        e = (e * 2) % order
    # multiply out prod (x + alpha^e) with coefficients in GF(2^m)
    coeffs = [1]
    for e in sorted(conj):
        root = int(f.exp_table[e])
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= gf_mul(f, c, root)
        coeffs = nxt
    packed = 0
    for i, c in enumerate(coeffs):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial has non-binary coefficient")
        packed |= c << i
    return packed


def build_code(m: int, t: int, extended: bool) -> BchCode:
    if t != 2:
        raise ConfigError(f"only t=2 component codes are supported, got t={t}")
    if not 4 <= m <= 8:
        raise ConfigError(f"component code needs 4 <= m <= 8, got m={m}")
    f = build_field(m)
    gen = poly_mul(_minimal_poly(f, 1), _minimal_poly(f, 3))
    n_unext = f.order
    k = n_unext - poly_degree(gen)
    n = n_unext + (1 if extended else 0)
    d0 = 2 * t + 1 + (1 if extended else 0)

    order = f.order
    size = 1 << m
    exp = f.exp_table
    log = f.log_table
    alpha1 = exp[:n_unext].copy()
    alpha3 = exp[(3 * np.arange(n_unext)) % order].copy()
    # elementwise cube over the field
    cube = np.zeros(size, dtype=np.int64)
    nz = np.arange(1, size)
    cube[nz] = exp[(3 * log[nz]) % order]
    # smallest root z of z^2 + z = c per c, -1 when no root exists
    qroot = np.full(size, -1, dtype=np.int64)
    for z in range(size - 1, -1, -1):
        c = gf_mul(f, z, z) ^ z
        qroot[c] = z
    # parity_matrix[i] = bits of x^(i+deg g) mod g, so that the parity of a
    # message m(x) placed at positions 0..k-1 is m @ parity_matrix (mod 2)
    d = poly_degree(gen)
    pm = np.zeros((k, d), dtype=np.uint8)
    for i in range(k):
        r = poly_rem(1 << (i + d), gen)
        for j in range(d):
            pm[i, j] = (r >> j) & 1
    for arr in (alpha1, alpha3, cube, qroot, pm):
        arr.setflags(write=False)
    return BchCode(field=f, n=n, k=k, t=t, d0=d0, extended=extended,
                   generator=gen, alpha1=alpha1, alpha3=alpha3, cube=cube,
                   qroot=qroot, parity_matrix=pm)


def encode_many(code: BchCode, messages: np.ndarray) -> np.ndarray:
    """Systematically encode a (R, k) batch of messages into (R, n) words."""
    msgs = np.asarray(messages, dtype=np.uint8)
    if msgs.ndim != 2 or msgs.shape[1] != code.k:
        raise ValueError(f"message batch must be (R, {code.k})")
    parity = (msgs @ code.parity_matrix) & 1
    words = np.concatenate([msgs, parity.astype(np.uint8)], axis=1)
    if code.extended:
        ext = (words.sum(axis=1, dtype=np.int64) & 1).astype(np.uint8)
        words = np.concatenate([words, ext[:, None]], axis=1)
    return words


def encode(code: BchCode, message) -> np.ndarray:
    msg = np.asarray(message, dtype=np.uint8)
    if msg.shape != (code.k,):
        raise ValueError(f"message must have length k={code.k}")
    return encode_many(code, msg[None, :])[0]


def syndromes(code: BchCode, word) -> tuple[int, int, int]:
    w = np.asarray(word, dtype=np.uint8)
    if w.shape != (code.n,):
        raise ValueError(f"word must have length n={code.n}")
    u = w[: code.n_unext].astype(bool)
    s1 = int(np.bitwise_xor.reduce(code.alpha1[u])) if u.any() else 0
    s3 = int(np.bitwise_xor.reduce(code.alpha3[u])) if u.any() else 0
    parity = int(w.sum() & 1) if code.extended else 0
    return s1, s3, parity


def is_codeword(code: BchCode, word) -> bool:
    s1, s3, parity = syndromes(code, word)
    return s1 == 0 and s3 == 0 and parity == 0


def _unext_pattern(code: BchCode, s1: int, s3: int):
    """Error positions on the unextended bits implied by (S1, S3), or None."""
    if s1 == 0 and s3 == 0:
        return ()
    log = code.field.log_table
    exp = code.field.exp_table
    order = code.field.order
    if s1 != 0 and s3 == int(code.cube[s1]):
        return (int(log[s1]),)
    if s1 == 0:
        return None
    # locator x^2 + S1 x + (S3/S1 + S1^2); substitute x = S1 z
    ls1 = int(log[s1])
    inv_s1_cubed = int(exp[(-3 * ls1) % order])
    c = (int(exp[(int(log[s3]) + int(log[inv_s1_cubed])) % order]) if s3 else 0) ^ 1
    z = int(code.qroot[c])
    if z < 2:  # no root, or roots {0,1} which map to a zero locator root
        return None
    x1 = int(exp[(int(log[z]) + ls1) % order])
    x2 = x1 ^ s1
    p1, p2 = int(log[x1]), int(log[x2])
    return (p1, p2) if p1 < p2 else (p2, p1)


def decode_syndromes(code: BchCode, s1: int, s3: int, parity: int):
    """Bounded-distance decode from syndromes; returns a pattern tuple or None.

    Extended codes must stay within radius t: the overall-parity bit can
    absorb one extra flip only while the total weight stays <= t.
    """
    pat = _unext_pattern(code, s1, s3)
    if pat is None:
        return None
    if not code.extended:
        return pat
    if parity == (len(pat) & 1):
        return pat
    if len(pat) < code.t:
        return pat + (code.n - 1,)
    return None


def bdd_decode(code: BchCode, word) -> BddOutcome:
    s1, s3, parity = syndromes(code, word)
    pat = decode_syndromes(code, s1, s3, parity)
    if pat is None:
        return BddOutcome(success=False)
    return BddOutcome(success=True, error_pattern=pat)


class BlockProposals:
    """Vectorized BDD over a batch of words (one decode per row)."""

    __slots__ = ("nerr", "p0", "p1", "extflip")

    def __init__(self, nerr, p0, p1, extflip):
        self.nerr = nerr        # -1 failure, else unextended error count 0..2
        self.p0 = p0
        self.p1 = p1
        self.extflip = extflip  # overall-parity bit must also flip

    def full_pattern(self, i: int, n: int) -> tuple[int, ...] | None:
        """Complete flip pattern for row i, or None on decoding failure."""
        if self.nerr[i] < 0:
            return None
        pat = ()
        if self.nerr[i] >= 1:
            pat += (int(self.p0[i]),)
        if self.nerr[i] == 2:
            pat += (int(self.p1[i]),)
        if self.extflip[i]:
            pat += (n - 1,)
        return pat


def bdd_propose_block(code: BchCode, words: np.ndarray) -> BlockProposals:
    """Decode every row of a (R, n) bit matrix in one vectorized pass."""
    w = np.asarray(words, dtype=np.uint8)
    R = w.shape[0]
    nu = code.n_unext
    order = code.field.order
    exp = code.field.exp_table
    log = code.field.log_table

    bits = w[:, :nu].astype(bool)
    s1 = np.bitwise_xor.reduce(np.where(bits, code.alpha1[None, :], 0), axis=1)
    s3 = np.bitwise_xor.reduce(np.where(bits, code.alpha3[None, :], 0), axis=1)
    parity = (w.sum(axis=1, dtype=np.int64) & 1) if code.extended else np.zeros(R, dtype=np.int64)

    nerr = np.full(R, -1, dtype=np.int64)
    p0 = np.full(R, -1, dtype=np.int64)
    p1 = np.full(R, -1, dtype=np.int64)

    clean = (s1 == 0) & (s3 == 0)
    nerr[clean] = 0

    s1nz = s1 != 0
    single = s1nz & ~clean & (s3 == code.cube[s1])
    nerr[single] = 1
    p0[single] = log[s1[single]]

    dbl = s1nz & ~clean & ~single
    if dbl.any():
        ls1 = log[s1[dbl]]
        c = np.zeros(dbl.sum(), dtype=np.int64)
        s3d = s3[dbl]
        nz3 = s3d != 0
        c[nz3] = exp[(log[s3d[nz3]] - 3 * ls1[nz3]) % order]
        c ^= 1
        z = code.qroot[c]
        ok = z >= 2
        x1 = np.zeros_like(z)
        x1[ok] = exp[(log[z[ok]] + ls1[ok]) % order]
        x2 = x1 ^ s1[dbl]
        q0 = np.full(dbl.sum(), -1, dtype=np.int64)
        q1 = np.full(dbl.sum(), -1, dtype=np.int64)
        q0[ok] = log[x1[ok]]
        q1[ok] = log[x2[ok]]
        lo = np.minimum(q0, q1)
        hi = np.maximum(q0, q1)
        sub = np.full(dbl.sum(), -1, dtype=np.int64)
        sub[ok] = 2
        idx = np.flatnonzero(dbl)
        nerr[idx] = sub
        p0[idx] = lo
        p1[idx] = hi

    extflip = np.zeros(R, dtype=bool)
    if code.extended:
        valid = nerr >= 0
        mismatch = valid & (parity != (nerr & 1))
        absorb = mismatch & (nerr < code.t)
        extflip[absorb] = True
        nerr[mismatch & ~absorb] = -1
    return BlockProposals(nerr=nerr, p0=p0, p1=p1, extflip=extflip)
