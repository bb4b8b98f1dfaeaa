"""Karp-Rabin fingerprints modulo the Mersenne prime 2^61-1.

A fingerprint function is a deterministic function of its seed; equal
strings always fingerprint equally, and the fingerprint of a
concatenation is computable from the parts in O(1).  Prefix tables give
O(1) fingerprints of arbitrary substrings of a fixed text.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .grammar import mix64

MODULUS = (1 << 61) - 1


def _mulmod_vec(a, b):
    a1 = a >> 31
    a0 = a & 0x7FFFFFFF
    b1 = b >> 31
    b0 = b & 0x7FFFFFFF
    mid = a1 * b0 + a0 * b1
    lo = a0 * b0
    t = ((a1 * b1) << 1) + (mid >> 30) + ((mid & 0x3FFFFFFF) << 31) \
        + (lo >> 61) + (lo & MODULUS)
    t = (t >> 61) + (t & MODULUS)
    return np.where(t >= MODULUS, t - MODULUS, t)


@dataclass(frozen=True)
class FingerprintFn:
    """Polynomial string hash with a seed-derived base."""

    seed: int
    base: int
    modulus: int = MODULUS
    degenerate: bool = field(default=False)  # test hook: every value is 0

    def empty(self) -> int:
        return 0

    def extend(self, fp: int, byte: int) -> int:
        if self.degenerate:
            return 0
        return (fp * self.base + byte) % self.modulus

    def concat(self, fa: int, fb: int, len_b: int) -> int:
        """Fingerprint of AB from the fingerprints of A and B."""
        if self.degenerate:
            return 0
        return (fa * self.power(len_b) + fb) % self.modulus

    def power(self, l: int) -> int:
        return pow(self.base, l, self.modulus)

    def of(self, data: bytes) -> int:
        fp = 0
        for b in bytes(data):
            fp = self.extend(fp, b)
        return fp


def make_fn(seed: int) -> FingerprintFn:
    """Fingerprint function with base drawn uniformly in [2, modulus-2]."""
    base = 2 + mix64(seed, 0x5EEDF00D) % (MODULUS - 3)
    return FingerprintFn(seed=seed, base=base)


def make_adversarial_fn() -> FingerprintFn:
    """Constant-zero fingerprints: every pair of strings collides."""
    return FingerprintFn(seed=-1, base=1, degenerate=True)


class PrefixFingerprints:
    """O(1) substring fingerprints of one fixed text."""

    def __init__(self, fn: FingerprintFn, values: np.ndarray, powers: np.ndarray):
        self.fn = fn
        self.values = values
        self.powers = powers
        self.n = len(values) - 1

    def substring(self, i: int, j: int) -> int:
        """Fingerprint of text[i..j], 1-based inclusive; 0 when j < i."""
        if j < i:
            if not (1 <= i <= self.n + 1 and 0 <= j <= self.n):
                raise ValueError("substring range out of bounds")
            return 0
        if not (1 <= i and j <= self.n):
            raise ValueError("substring range out of bounds")
        head = K.mulmod61(int(self.values[i - 1]), int(self.powers[j - i + 1]))
        return int(K.submod61(int(self.values[j]), head))

    def substring_many(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """Vectorized substring(); ranges must be non-empty and in bounds."""
        head = _mulmod_vec(self.values[i - 1], self.powers[j - i + 1])
        t = self.values[j] - head
        return np.where(t < 0, t + MODULUS, t)


def prefix_table(data: bytes, fn: FingerprintFn,
                 powers: np.ndarray | None = None) -> PrefixFingerprints:
    arr = np.frombuffer(bytes(data), np.uint8)
    n = len(arr)
    values = np.zeros(n + 1, np.int64)
    if powers is None:
        powers = np.empty(n + 2, np.int64)
        K.pow_table_fill(fn.base, powers)
    if not fn.degenerate:
        K.fp_prefix_fill(arr, fn.base, values)
    return PrefixFingerprints(fn, values, powers)


def substring_fp(table: PrefixFingerprints, i: int, j: int) -> int:
    return table.substring(i, j)


def verify_collision_free(fn: FingerprintFn, strings) -> bool:
    """True iff no two distinct strings in the set share a fingerprint."""
    seen: dict[int, bytes] = {}
    for s in strings:
        s = bytes(s)
        fp = fn.of(s)
        prev = seen.get(fp)
        if prev is None:
            seen[fp] = s
        elif prev != s:
            return False
    return True


class PatternFingerprints:
    """Query-side preprocessing: forward and reversed prefix tables."""

    def __init__(self, fn: FingerprintFn, data: bytes):
        self.fn = fn
        self.data = np.frombuffer(bytes(data), np.uint8)
        self.m = len(self.data)
        self.fwd = np.zeros(self.m + 1, np.int64)
        self.rev = np.zeros(self.m + 1, np.int64)
        if not fn.degenerate:
            K.fp_prefix_fill(self.data, fn.base, self.fwd)
            K.fp_prefix_fill(self.data[::-1].copy(), fn.base, self.rev)

    @property
    def full(self) -> int:
        return int(self.fwd[self.m])
