"""Static 2D orthogonal range reporting over rank-space points.

A wavelet matrix over the y values in x order: one 63-bit-packed
bitvector per y bit, msb first, with each level stably partitioned by
that bit.  Queries descend the matrix, reporting whole covered nodes by
tracking positions down to the final permutation.  Exact: reports each
point inside the closed rectangle exactly once.
"""

import numpy as np

from . import _kernels as K

_POWERS63 = (np.int64(1) << np.arange(63, dtype=np.int64))


def _pack63(bits: np.ndarray, nwords: int) -> np.ndarray:
    padded = np.zeros(nwords * 63, np.int64)
    padded[: len(bits)] = bits
    return (padded.reshape(nwords, 63) * _POWERS63).sum(axis=1)


class RangePointSet:
    """Immutable point set answering closed-rectangle reporting queries."""

    def __init__(self, xs, ys, payloads=None):
        xs = np.asarray(xs, np.int64)
        ys = np.asarray(ys, np.int64)
        if len(xs) != len(ys):
            raise ValueError("coordinate arrays must align")
        if len(xs) and (xs.min() < 0 or ys.min() < 0):
            raise ValueError("rank-space coordinates must be non-negative")
        self.n_points = len(xs)
        if payloads is None:
            payloads = np.arange(self.n_points, dtype=np.int64)
        self.payloads = np.asarray(payloads, np.int64)
        order = np.argsort(xs, kind="stable")
        self.xs_sorted = xs[order]
        self.ys = ys
        n = self.n_points
        maxy = int(ys.max()) if n else 0
        self.nbits = max(1, maxy.bit_length())
        self.nwords = max(1, -(-n // 63))
        self.words = np.zeros((self.nbits, self.nwords), np.int64)
        self.cums = np.zeros((self.nbits, self.nwords + 1), np.int64)
        self.zcnt = np.zeros(self.nbits, np.int64)
        cur = ys[order]
        perm = order.astype(np.int64)
        for lev in range(self.nbits):
            bit = (cur >> (self.nbits - 1 - lev)) & 1
            self.words[lev] = _pack63(bit, self.nwords)
            self.cums[lev, 1:] = np.cumsum(
                np.bitwise_count(self.words[lev]).astype(np.int64))
            zero = bit == 0
            self.zcnt[lev] = int(zero.sum())
            cur = np.concatenate([cur[zero], cur[~zero]])
            perm = np.concatenate([perm[zero], perm[~zero]])
        self.final_perm = perm

    def _pos_range(self, x1: int, x2: int) -> tuple[int, int]:
        s = int(np.searchsorted(self.xs_sorted, x1, side="left"))
        e = int(np.searchsorted(self.xs_sorted, x2, side="right"))
        return s, e

    def report_ids(self, x1: int, x2: int, y1: int, y2: int) -> np.ndarray:
        """Input indices of the points inside [x1,x2] x [y1,y2]."""
        if self.n_points == 0 or x1 > x2 or y1 > y2:
            return np.empty(0, np.int64)
        s, e = self._pos_range(x1, x2)
        if s >= e:
            return np.empty(0, np.int64)
        y1 = max(0, y1)
        y2 = min(y2, (1 << self.nbits) - 1)
        if y1 > y2:
            return np.empty(0, np.int64)
        out = np.empty(e - s, np.int64)
        cnt = K.wm_report(self.words, self.cums, self.zcnt, self.nbits,
                          self.final_perm, s, e, y1, y2, out)
        return out[:cnt]

    def report(self, x1: int, x2: int, y1: int, y2: int) -> np.ndarray:
        """Payloads of the points inside the closed rectangle."""
        return self.payloads[self.report_ids(x1, x2, y1, y2)]


def build(points) -> RangePointSet:
    """Build from an iterable of (x, y) or (x, y, payload) tuples."""
    pts = list(points)
    if not pts:
        return RangePointSet(np.empty(0, np.int64), np.empty(0, np.int64))
    if len(pts[0]) == 3:
        xs, ys, pay = zip(*pts)
        return RangePointSet(np.array(xs), np.array(ys), np.array(pay))
    xs, ys = zip(*pts)
    return RangePointSet(np.array(xs), np.array(ys))


def report(s: RangePointSet, x1: int, x2: int, y1: int, y2: int) -> list:
    return list(s.report(x1, x2, y1, y2))
