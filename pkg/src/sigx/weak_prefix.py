"""Weak prefix search over a sorted static key set.

Keys are substrings of the indexed text (optionally reversed), referenced
as (start, length) and extracted from the grammar on demand; they are
never stored flat.  A query returns the exact maximal rank range of keys
having the searched pattern piece as a prefix, or None.  The search is
fingerprint-guided, but every returned boundary is certified by true byte
comparisons (with an exact-comparison fallback), so answers stay correct
even under fingerprint collisions; they are just slower then.
"""

import numpy as np

from . import _kernels as K


class WeakPrefixSet:
    """Rank-ordered deduplicated key set over one grammar."""

    def __init__(self, dag, starts, lens, reverse: bool, sorder):
        """Sort and deduplicate keys.

        starts/lens are 1-based text descriptors; when ``reverse`` is
        true the key is the reversed substring.  ``sorder`` must be the
        SuffixOrder of the text (forward keys) or of the reversed text
        (reversed keys); it is only used here, not at query time.
        """
        self.dag = dag
        self.reverse = reverse
        starts = np.asarray(starts, np.int64)
        lens = np.asarray(lens, np.int64)
        kin = len(starts)
        if kin == 0:
            self.starts = np.empty(0, np.int64)
            self.lens = np.empty(0, np.int64)
            self.rank_of_input = np.empty(0, np.int64)
            return
        n = dag.n
        if reverse:
            dom_starts = n - (starts - 1) - lens
        else:
            dom_starts = starts - 1
        order = sorder.sort_ranges(dom_starts, lens)
        keep = np.empty(kin, bool)
        K.mark_distinct_ranges(dom_starts, lens, order, sorder.data,
                               sorder.rank, sorder.lcp_tree, sorder.base, keep)
        ranks_sorted = np.cumsum(keep) - 1
        self.rank_of_input = np.empty(kin, np.int64)
        self.rank_of_input[order] = ranks_sorted
        kept = order[keep]
        self.starts = starts[kept]
        self.lens = lens[kept]

    def __len__(self):
        return len(self.starts)

    def query(self, pat, p0: int, side: int):
        """Rank range of keys prefixed by the pattern piece, or None.

        side 0 searches pattern[p0+1..m], side 1 searches the reverse of
        pattern[1..p0] (both 1-based).
        """
        dag = self.dag
        lo, hi = K.wp_search(*dag.k_args(), dag.fps, dag.fprev,
                             dag.fn.base, dag.root, dag.n,
                             self.starts, self.lens,
                             1 if self.reverse else 0,
                             pat.data, pat.fwd, pat.rev, pat.m, p0, side)
        if lo < 0:
            return None
        return int(lo), int(hi)

    def key_bytes(self, rank: int) -> bytes:
        s = int(self.starts[rank])
        l = int(self.lens[rank])
        if l == 0:
            return b""
        raw = self.dag.extract(s, s + l - 1)
        return raw[::-1] if self.reverse else raw


def build(dag, starts, lens, reverse, sorder) -> WeakPrefixSet:
    return WeakPrefixSet(dag, starts, lens, reverse, sorder)


def query(s: WeakPrefixSet, pat, p0: int, side: int):
    return s.query(pat, p0, side)
