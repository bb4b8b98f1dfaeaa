"""Closure of primary occurrences under phrase-source copying.

A phrase whose source interval fully contains an occurrence copies it
into the phrase body.  One dominance-style range query per worklist item
finds all containing sources; every copy lands strictly to the right, so
the closure terminates after one step per distinct occurrence.
"""

import numpy as np

from . import _kernels as K
from .lz77 import Lz77Parse
from .range_report import RangePointSet


class SourceIntervalSet:
    """One 2D point per copying phrase: (source start, source end)."""

    def __init__(self, parse: Lz77Parse):
        self.n = parse.n
        sel = parse.copy_lens > 0
        xs = parse.sources[sel]
        ends = parse.sources[sel] + parse.copy_lens[sel] - 1
        self.deltas = (parse.phrase_starts[sel] - parse.sources[sel]).astype(np.int64)
        self.ys_unique = np.unique(ends)
        yr = np.searchsorted(self.ys_unique, ends)
        self.points = RangePointSet(xs, yr)

    @property
    def n_points(self) -> int:
        return self.points.n_points

    def expand(self, primaries, m: int) -> np.ndarray:
        """primaries plus all secondary occurrences, sorted and unique."""
        prim = np.asarray(primaries, np.int64)
        if len(prim) == 0:
            return np.empty(0, np.int64)
        if m < 1:
            raise ValueError("empty pattern")
        p = self.points
        out = K.expand_worklist(p.words, p.cums, p.zcnt, p.nbits,
                                p.final_perm, p.xs_sorted, self.ys_unique,
                                self.deltas, prim, m, self.n)
        return np.sort(out)


def build(parse: Lz77Parse) -> SourceIntervalSet:
    return SourceIntervalSet(parse)


def expand(srcset: SourceIntervalSet, primaries, m: int) -> np.ndarray:
    return srcset.expand(primaries, m)
