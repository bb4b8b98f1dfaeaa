"""Query facade: route patterns by length band, merge primary+secondary.

Modes trade build size against query routing, never semantics:

    full      short / semi-short / long structures, every band exact
    expected  a one-bit membership filter gates patterns short enough to
              be border-crossing substrings; filter negatives answer
              empty immediately, positives go to the long path
    lean      long path for m >= 2, minimal short index for m = 1

All three return identical occurrence sets for every pattern.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import index_long, index_semishort, index_short, lz77, secondary
from .fingerprints import (FingerprintFn, PatternFingerprints, make_fn,
                           prefix_table, verify_collision_free)
from .grammar import build as grammar_build
from .grammar import mix64
from .index_semishort import FingerprintCollision, SemiShortIndex
from .suffixes import SuffixOrder

MODES = ("full", "expected", "lean")


@dataclass(frozen=True)
class PlannerConfig:
    mode: str = "full"
    epsilon: float = 1.0 / 3.0
    seed: int = 0
    k_short: int | None = None       # override of max(4, ceil(lg lg z))
    L_semishort: int | None = None   # override of max(k_short, ceil(lg^eps z))

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (0.0 < self.epsilon <= 1.0 / 3.0):
            raise ValueError("epsilon must be in (0, 1/3]")

    def resolve(self, z: int) -> tuple[int, int]:
        """(k_short, L_semishort) band caps for a parse of size z."""
        lgz = math.log2(max(z, 2))
        k_short = self.k_short
        if k_short is None:
            k_short = max(4, math.ceil(math.log2(max(lgz, 2))))
        L = self.L_semishort
        if L is None:
            L = max(k_short, math.ceil(lgz ** self.epsilon))
        if L < k_short:
            raise ValueError("semi-short cap below the short cap")
        return int(k_short), int(L)


class BitFilter:
    """One-bit membership table over the border-crossing substrings.

    No false negatives; false positives at rate |B| / table size.
    """

    def __init__(self, fps, z: int, epsilon: float, n_strings: int):
        want = max(64, math.ceil(z * math.log2(max(z, 2)) ** (3 * epsilon)))
        size = 1
        while size < want:
            size *= 2
        self.size = size
        self.n_strings = n_strings
        self.words = np.zeros(size // 63 + 1, np.int64)
        for fp in fps:
            self._set(int(fp) & (size - 1))

    def _set(self, h: int):
        self.words[h // 63] |= np.int64(1) << np.int64(h % 63)

    def member(self, fp: int) -> bool:
        h = int(fp) & (self.size - 1)
        return bool((int(self.words[h // 63]) >> (h % 63)) & 1)

    @property
    def occupancy(self) -> int:
        return int(np.bitwise_count(self.words).sum())


class CompressedIndex:
    """Facade owning the parse, the grammar and the mode's sub-indexes."""

    def __init__(self, config, parse, dag, fn, k_short, L_semishort,
                 short, long_, semishort, bitfilter, expander):
        self.config = config
        self.parse = parse
        self.dag = dag
        self.fn = fn
        self.k_short = k_short
        self.L_semishort = L_semishort
        self.short = short
        self.long = long_
        self.semishort = semishort
        self.bitfilter = bitfilter
        self.expander = expander

    @property
    def mode(self) -> str:
        return self.config.mode

    @property
    def n(self) -> int:
        return self.parse.n

    @property
    def z(self) -> int:
        return self.parse.z

    def locate(self, P: bytes) -> np.ndarray:
        """All occurrence start positions of P (1-based, sorted, unique)."""
        P = bytes(P)
        m = len(P)
        if m < 1:
            raise ValueError("empty pattern")
        if m > self.n:
            return np.empty(0, np.int64)
        mode = self.mode
        if mode == "full":
            if m <= self.k_short:
                return self.expander.expand(
                    self.short.primary_occurrences(P), m)
            if m <= self.L_semishort:
                pat = PatternFingerprints(self.fn, P)
                return self.expander.expand(
                    self.semishort.query(P, pat), m)
            return self.long.query(P)
        if mode == "expected":
            if m <= self.L_semishort:
                pat = PatternFingerprints(self.fn, P)
                if not self.bitfilter.member(pat.full):
                    return np.empty(0, np.int64)
                if m == 1:
                    return self.expander.expand(
                        self.short.primary_occurrences(P), m)
                return self.long.query(P, pat=pat)
            return self.long.query(P)
        # lean
        if m == 1:
            return self.expander.expand(self.short.primary_occurrences(P), m)
        return self.long.query(P)

    def stats(self) -> dict:
        g = self.dag.stats()
        out = {
            "mode": self.mode,
            "n": self.n,
            "z": self.z,
            "k_short": self.k_short,
            "L_semishort": self.L_semishort,
            "dag_nodes": g["nodes"],
            "dag_edges": g["edges"],
            "dag_height": g["height"],
            "long_points": self.long.n_points,
            "short_chars": self.short.indexed_chars,
            "source_points": self.expander.n_points,
            "semishort_entries": len(self.semishort.H) if self.semishort else 0,
            "filter_bits": self.bitfilter.size if self.bitfilter else 0,
            "filter_set": self.bitfilter.occupancy if self.bitfilter else 0,
        }
        return out


def build_all(S: bytes, config: PlannerConfig | None = None,
              _fingerprint_fn: FingerprintFn | None = None) -> CompressedIndex:
    """Build the index for one mode.

    Draws fingerprint seeds until the function is collision-free over the
    border-crossing substrings and the long-index key strings; passing
    ``_fingerprint_fn`` pins the function and skips the retry loop (test
    hook, used for the adversarial-fingerprint robustness checks).
    """
    S = bytes(S)
    if len(S) == 0:
        raise ValueError("cannot index an empty string")
    if config is None:
        config = PlannerConfig()
    parse = lz77.parse(S)
    dag = grammar_build(S, mix64(config.seed, 0x6772616D))
    k_short, L_semi = config.resolve(parse.z)

    arr = np.frombuffer(S, np.uint8)
    sorder_fwd = SuffixOrder(arr)
    sorder_rev = SuffixOrder(arr[::-1].copy())

    mode = config.mode
    short_k = k_short if mode == "full" else 4
    short = index_short.build(S, parse, short_k)
    expander = secondary.build(parse)
    long_ = index_long.build(dag, sorder_fwd, sorder_rev)

    semishort = None
    bitfilter = None
    attempt = 0
    while True:
        if _fingerprint_fn is not None:
            fn = _fingerprint_fn
        else:
            fn = make_fn(mix64(config.seed, 0xF1B0 + attempt))
        dag.set_fingerprint_fn(fn)
        try:
            if mode == "full":
                table = prefix_table(S, fn)
                semishort = index_semishort.build(
                    S, parse, dag, table, L_semi, sorder_fwd, sorder_rev)
            elif mode == "expected":
                table = prefix_table(S, fn)
                starts, lens, _splits = index_semishort.border_windows(
                    S, parse, L_semi)
                fps, n_strings = _window_fps(S, table, starts, lens)
                bitfilter = BitFilter(fps, parse.z, config.epsilon, n_strings)
            if _fingerprint_fn is None and not _long_keys_collision_free(
                    dag, long_, fn):
                raise FingerprintCollision("long-index keys collide")
            break
        except FingerprintCollision:
            if _fingerprint_fn is not None:
                break  # pinned function: accept collisions, queries verify
            attempt += 1
            if attempt > 32:
                raise RuntimeError(
                    "could not find a collision-free fingerprint seed")

    return CompressedIndex(config, parse, dag, fn, k_short, L_semi,
                           short, long_, semishort, bitfilter, expander)


def _window_fps(S, table, starts, lens):
    """Distinct border-crossing substrings as fingerprints; collision-checked."""
    if len(starts) == 0:
        return [], 0
    fps = table.substring_many(starts, starts + lens - 1)
    first: dict[int, tuple[int, int]] = {}
    for t in range(len(starts)):
        fp = int(fps[t])
        ref = first.get(fp)
        if ref is None:
            first[fp] = (int(starts[t]), int(lens[t]))
        else:
            a, b = ref
            s, l = int(starts[t]), int(lens[t])
            if S[a - 1:a - 1 + b] != S[s - 1:s - 1 + l]:
                raise FingerprintCollision("filter strings collide")
    return list(first.keys()), len(first)


def _long_keys_collision_free(dag, long_, fn) -> bool:
    """Keys in each set are pairwise distinct strings, so any repeated
    full-key fingerprint within a set is a collision."""
    for trie in (long_.t1, long_.t2):
        seen = set()
        for r in range(len(trie)):
            s = int(trie.starts[r])
            l = int(trie.lens[r])
            if l == 0:
                fp = 0
            elif trie.reverse:
                fp = dag.range_fp_rev(s, s + l - 1)
            else:
                fp = dag.range_fp(s, s + l - 1)
            if fp in seen:
                return False
            seen.add(fp)
    return True


def locate(index: CompressedIndex, P: bytes) -> np.ndarray:
    return index.locate(P)
