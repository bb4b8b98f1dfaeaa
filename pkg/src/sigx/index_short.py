"""Primary-occurrence search for short patterns (m <= k).

Indexes the text windows of width 2k around every parse border in one
suffix array.  Any occurrence of length <= k that touches a border lies
fully inside the window of that border, so a plain suffix-array search
over the concatenated windows, mapped back to text positions and filtered
through the border test, yields exactly the primary occurrences.
Overlapping windows are deduplicated by start position, keeping the
suffix from the latest window (the longest one).
"""

import numpy as np

from . import _kernels as K
from .lz77 import Lz77Parse, is_primary
from .suffixes import suffix_array

_SEP = 256  # above any byte value; patterns cannot match across it


class ShortIndex:
    def __init__(self, k: int, piece_starts, piece_ends, concat, sa, borders, n):
        self.k = int(k)
        self.piece_starts = piece_starts   # absolute 1-based window starts
        self.piece_ends = piece_ends       # absolute inclusive window ends
        self.concat = concat               # int32, windows joined by _SEP
        self.sa = sa
        self.borders = borders
        self.n = int(n)
        self.abs_pos = _position_map(piece_starts, piece_ends, len(concat))

    @property
    def indexed_chars(self) -> int:
        return int((self.concat != _SEP).sum())

    def primary_occurrences(self, P: bytes) -> np.ndarray:
        m = len(P)
        if m < 1:
            raise ValueError("empty pattern")
        if m > self.k:
            raise ValueError("pattern longer than the indexed context width")
        lo, hi = K.sa_find_range(self.concat, self.sa,
                                 np.frombuffer(bytes(P), np.uint8))
        if lo < 0:
            return np.empty(0, np.int64)
        pos = self.abs_pos[self.sa[lo:hi + 1]]
        pos = pos[pos > 0]
        if len(pos) == 0:
            return pos
        idx = np.searchsorted(self.borders, pos, side="left")
        ok = idx < len(self.borders)
        ok[ok] &= self.borders[idx[ok]] <= pos[ok] + m - 1
        return np.unique(pos[ok])


def _position_map(piece_starts, piece_ends, total: int) -> np.ndarray:
    # absolute text position per concat index; separators and positions
    # re-indexed by a later window map to 0
    abs_pos = np.zeros(total, np.int64)
    off = 0
    Z = len(piece_starts)
    for i in range(Z):
        a, e = int(piece_starts[i]), int(piece_ends[i])
        width = e - a + 1
        keep_end = e
        if i + 1 < Z:
            keep_end = min(e, int(piece_starts[i + 1]) - 1)
        kept = keep_end - a + 1
        if kept > 0:
            abs_pos[off:off + kept] = np.arange(a, keep_end + 1)
        off += width + 1
    return abs_pos


def build(S: bytes, parse: Lz77Parse, k: int) -> ShortIndex:
    if k < 1:
        raise ValueError("context width must be positive")
    n = parse.n
    borders = parse.borders
    starts = np.maximum(borders - k, 1)
    ends = np.minimum(borders + k - 1, n)
    pieces = []
    arr = np.frombuffer(bytes(S), np.uint8).astype(np.int32)
    for a, e in zip(starts, ends):
        pieces.append(arr[a - 1:e])
        pieces.append(np.array([_SEP], np.int32))
    concat = np.concatenate(pieces) if pieces else np.array([_SEP], np.int32)
    sa = suffix_array(concat)
    return ShortIndex(k, starts, ends, concat, sa, borders, n)
