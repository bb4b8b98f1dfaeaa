"""Suffix order over a text: suffix array, LCP array and range-min trees.

Build-time helper shared by the LZ77 parser (longest previous factors,
leftmost sources) and the search-key sorting of the prefix-search sets.
Nothing here is kept in the serialized index.
"""

import numpy as np

from . import _kernels as K


def suffix_array(data: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling over numpy lexsort (O(n lg n))."""
    n = len(data)
    if n == 0:
        return np.empty(0, np.int32)
    if n == 1:
        return np.zeros(1, np.int32)
    rank = np.asarray(data, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    k = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - k] = rank[k:]
        order = np.lexsort((key2, rank))
        new_rank = np.empty(n, dtype=np.int64)
        r_o = rank[order]
        k_o = key2[order]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (r_o[1:] != r_o[:-1]) | (k_o[1:] != k_o[:-1])
        new_rank[order] = np.cumsum(changed)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order.astype(np.int32)
        k *= 2
        if k >= n:
            return order.astype(np.int32)


def _min_tree(values: np.ndarray) -> tuple[np.ndarray, int]:
    n = len(values)
    base = 1
    while base < max(n, 1):
        base *= 2
    tree = np.full(2 * base, np.int64(1) << 62, dtype=np.int64)
    tree[base : base + n] = values
    for lvl_lo in _level_slices(base):
        a, b = lvl_lo
        tree[a:b] = np.minimum(tree[2 * a : 2 * b : 2], tree[2 * a + 1 : 2 * b : 2])
    return tree, base


def _level_slices(base: int):
    a = base // 2
    while a >= 1:
        yield a, 2 * a
        a //= 2


class SuffixOrder:
    """Lexicographic machinery for substrings of one fixed text."""

    def __init__(self, data):
        self.data = np.ascontiguousarray(np.asarray(data)).astype(np.int64)
        n = len(self.data)
        self.n = n
        self.sa = suffix_array(self.data)
        self.rank = np.empty(n, dtype=np.int32)
        self.rank[self.sa] = np.arange(n, dtype=np.int32)
        self.lcp = np.zeros(n, dtype=np.int64)
        if n:
            K.kasai_fill(self.data, self.sa.astype(np.int64),
                         self.rank.astype(np.int64), self.lcp)
        self.lcp_tree, self.base = _min_tree(self.lcp)
        self.sa_tree, base2 = _min_tree(self.sa.astype(np.int64))
        assert base2 == self.base

    def lce(self, i: int, j: int) -> int:
        """Longest common extension of the suffixes at 0-based i and j."""
        if i == j:
            return self.n - i
        r1, r2 = int(self.rank[i]), int(self.rank[j])
        if r1 > r2:
            r1, r2 = r2, r1
        return int(K.st_min(self.lcp_tree, self.base, r1 + 1, r2))

    def compare_ranges(self, s1: int, l1: int, s2: int, l2: int) -> int:
        """Order of data[s1:s1+l1] vs data[s2:s2+l2]; -1/0/+1."""
        return int(K.substr_compare(self.data, self.rank, self.lcp_tree,
                                    self.base, s1, l1, s2, l2))

    def sort_ranges(self, starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
        """Stable lexicographic order of substring descriptors."""
        if len(starts) == 0:
            return np.empty(0, np.int64)
        return K.sort_ranges(np.asarray(starts, np.int64),
                             np.asarray(lens, np.int64),
                             self.data, self.rank, self.lcp_tree, self.base)
