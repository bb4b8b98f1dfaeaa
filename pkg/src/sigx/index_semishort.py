"""Primary-occurrence search for mid-length patterns via border anchors.

Every substring of length <= L_max that crosses a parse border is mapped
(by fingerprint) to the offsets at which the leftmost border sits inside
its occurrences.  A query looks its fingerprint up, splits the pattern at
each stored offset, weak-prefix-searches the part left of the border
(reversed) against the phrase bodies and the rest against the texts
starting at each border, and range-reports the border points in the rank
rectangle; each reported border is one primary occurrence.  The first
reported occurrence is verified by grammar extraction, which rejects
fingerprint false positives.
"""

import numpy as np

from .fingerprints import PatternFingerprints, PrefixFingerprints, prefix_table
from .lz77 import Lz77Parse
from .range_report import RangePointSet
from .weak_prefix import WeakPrefixSet


class FingerprintCollision(Exception):
    """Two distinct border-crossing substrings share a fingerprint."""


def border_windows(S: bytes, parse: Lz77Parse, L_max: int):
    """All (start, length, split) windows crossing a border at its
    leftmost border, as flat arrays (1-based starts; split = border offset
    inside the window)."""
    n = parse.n
    borders = parse.borders
    starts_all = []
    lens_all = []
    splits_all = []
    prev = np.concatenate(([0], borders[:-1]))
    for length in range(1, L_max + 1):
        p_lo = np.maximum(borders - length + 1, prev + 1)
        p_lo = np.maximum(p_lo, 1)
        p_hi = np.minimum(borders, n - length + 1)
        cnt = np.maximum(p_hi - p_lo + 1, 0)
        total = int(cnt.sum())
        if total == 0:
            continue
        reps = np.repeat(np.arange(len(borders)), cnt)
        offsets = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        p = p_lo[reps] + offsets
        starts_all.append(p)
        lens_all.append(np.full(total, length, np.int64))
        splits_all.append(borders[reps] - p + 1)
    if not starts_all:
        empty = np.empty(0, np.int64)
        return empty, empty, empty
    return (np.concatenate(starts_all), np.concatenate(lens_all),
            np.concatenate(splits_all))


def build_window_map(S: bytes, table: PrefixFingerprints,
                     starts, lens, splits) -> dict[int, int]:
    """fingerprint -> bitmask of split offsets; raises on any collision."""
    H: dict[int, int] = {}
    first_seen: dict[int, tuple[int, int]] = {}
    data = bytes(S)
    if len(starts) == 0:
        return H
    fps = table.substring_many(starts, starts + lens - 1)
    for t in range(len(starts)):
        fp = int(fps[t])
        s = int(starts[t])
        l = int(lens[t])
        ref = first_seen.get(fp)
        if ref is None:
            first_seen[fp] = (s, l)
        elif data[ref[0] - 1:ref[0] - 1 + ref[1]] != data[s - 1:s - 1 + l]:
            raise FingerprintCollision(
                "border-crossing substrings collide under this seed")
        H[fp] = H.get(fp, 0) | (1 << (int(splits[t]) - 1))
    return H


class SemiShortIndex:
    def __init__(self, dag, L_max, H, t1, t2, points):
        self.dag = dag
        self.L_max = int(L_max)
        self.H = H
        self.t1 = t1
        self.t2 = t2
        self.points = points
        self.verify_count = 0

    def query(self, P: bytes, pat: PatternFingerprints | None = None) -> np.ndarray:
        """Primary occurrences of P (sorted, unique); requires m <= L_max."""
        m = len(P)
        if not (1 <= m <= self.L_max):
            raise ValueError("pattern outside the indexed length band")
        dag = self.dag
        if pat is None:
            pat = PatternFingerprints(dag.fn, P)
        mask = self.H.get(pat.full)
        if mask is None:
            return np.empty(0, np.int64)
        out = []
        verified = False
        s = 1
        while mask:
            if (mask & 1) and s <= m:
                r1 = self.t1.query(pat, s - 1, 1)
                r2 = self.t2.query(pat, s - 1, 0) if r1 is not None else None
                if r2 is not None:
                    hits = self.points.report(r1[0], r1[1], r2[0], r2[1])
                    for b in hits:
                        pos = int(b) - s + 1
                        if not verified:
                            self.verify_count += 1
                            if dag.extract(pos, pos + m - 1) != bytes(P):
                                return np.empty(0, np.int64)
                            verified = True
                        out.append(pos)
            mask >>= 1
            s += 1
        if not out:
            return np.empty(0, np.int64)
        return np.unique(np.array(out, np.int64))


def build(S: bytes, parse: Lz77Parse, dag, table: PrefixFingerprints,
          L_max: int, sorder_fwd, sorder_rev) -> SemiShortIndex:
    """Raises FingerprintCollision when the fingerprint function is not
    collision-free over the border-crossing substrings; the caller
    redraws the function and retries."""
    if L_max < 2:
        raise ValueError("length cap must be at least 2")
    n = parse.n
    borders = parse.borders
    # left key: phrase body before the border (suffix of it, capped);
    # right key: text from the border on (capped)
    body_len = np.minimum(borders - parse.phrase_starts[parse.literals >= 0],
                          L_max)
    l_starts = borders - body_len
    r_lens = np.minimum(n - borders + 1, L_max)
    t1 = WeakPrefixSet(dag, l_starts, body_len, True, sorder_rev)
    t2 = WeakPrefixSet(dag, borders, r_lens, False, sorder_fwd)
    points = RangePointSet(t1.rank_of_input, t2.rank_of_input,
                           payloads=borders)
    starts, lens, splits = border_windows(S, parse, L_max)
    H = build_window_map(S, table, starts, lens, splits)
    return SemiShortIndex(dag, L_max, H, t1, t2, points)
