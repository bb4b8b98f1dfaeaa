"""Occurrence search through the grammar's child-split anchor points.

Every non-leaf DAG node v contributes, per internal child boundary i, an
anchor: the reversed prefix of str(v) up to the boundary goes into one
weak-prefix set, the suffix after it into another, and the rank pair
becomes a 2D point carrying (v, prefix length).  A pattern occurrence
anywhere in the text is stabbed by one such boundary, so searching a
logarithmic set of split positions of the pattern, range-reporting the
rank rectangle and pushing matches up the reverse edges of the DAG yields
every occurrence.  Results are exact for any pattern of length >= 2.
"""

import heapq

import numpy as np

from .fingerprints import PatternFingerprints
from .grammar import KIND_RUN, KIND_TERMINAL
from .range_report import RangePointSet
from .weak_prefix import WeakPrefixSet


class LongIndex:
    def __init__(self, dag, t1, t2, points, vertex, pre_len):
        self.dag = dag
        self.t1 = t1
        self.t2 = t2
        self.points = points
        self.vertex = vertex
        self.pre_len = pre_len
        self.probe_count = 0  # queries answered; watched by the planner tests

    @property
    def n_points(self):
        return len(self.vertex)

    # -- query ---------------------------------------------------------------

    def split_points(self, P: bytes, parsed=None) -> np.ndarray:
        return split_points(P, self.dag, parsed)

    def query(self, P: bytes, pat: PatternFingerprints | None = None,
              splits=None) -> np.ndarray:
        """All occurrences of P (sorted, unique); requires len(P) >= 2."""
        m = len(P)
        if m < 2:
            raise ValueError("patterns shorter than 2 take the short path")
        self.probe_count += 1
        dag = self.dag
        if m > dag.n:
            return np.empty(0, np.int64)
        if pat is None:
            pat = PatternFingerprints(dag.fn, P)
        if splits is None:
            splits = split_points(P, dag)
        cand: dict[int, set] = {}
        for p in splits:
            p = int(p)
            r1 = self.t1.query(pat, p, 1)
            if r1 is None:
                continue
            r2 = self.t2.query(pat, p, 0)
            if r2 is None:
                continue
            ids = self.points.report_ids(r1[0], r1[1], r2[0], r2[1])
            for pid in ids:
                v = int(self.vertex[pid])
                off = int(self.pre_len[pid]) - p + 1
                offs = cand.setdefault(v, set())
                offs.add(off)
                if dag.kind[v] == KIND_RUN:
                    wl = int(dag.slen[dag.run_child[v]])
                    top = int(dag.slen[v]) - m + 1
                    q = off + wl
                    while q <= top:
                        offs.add(q)
                        q += wl
        if not cand:
            return np.empty(0, np.int64)
        return self._ascend_all(cand, m)

    def ascend(self, v: int, off: int, m: int) -> np.ndarray:
        """Text occurrences of a verified match at offset off in str(v)."""
        return self._ascend_all({int(v): {int(off)}}, m)

    def _ascend_all(self, cand: dict[int, set], m: int) -> np.ndarray:
        dag = self.dag
        frontier = {v: np.array(sorted(offs), np.int64)
                    for v, offs in cand.items()}
        heap = list(frontier.keys())
        heapq.heapify(heap)
        out = []
        while heap:
            v = heapq.heappop(heap)
            offs = frontier.pop(v)
            if v == dag.root:
                out.append(offs)
                continue
            for ei in range(int(dag.roff[v]), int(dag.roff[v + 1])):
                par = int(dag.rev_parent[ei])
                if dag.kind[par] == KIND_RUN:
                    wl = int(dag.slen[v])
                    cnt = int(dag.run_count[par])
                    top = int(dag.slen[par]) - m + 1
                    k_reps = min(cnt, (top - int(offs.min())) // wl + 1)
                    if k_reps <= 0:
                        continue
                    reps = np.arange(k_reps, dtype=np.int64) * wl
                    new = (offs[:, None] + reps).ravel()
                    new = new[new <= top]
                else:
                    o = int(dag.rev_ordinal[ei])
                    base = dag.off[par] + o
                    shift = int(dag.chcum[base - 1]) if o > 0 else 0
                    new = offs + shift
                if len(new) == 0:
                    continue
                prev = frontier.get(par)
                if prev is None:
                    frontier[par] = np.unique(new)
                    heapq.heappush(heap, par)
                else:
                    frontier[par] = np.unique(np.concatenate([prev, new]))
        if not out:
            return np.empty(0, np.int64)
        return np.unique(np.concatenate(out))


def split_points(P: bytes, dag, parsed=None) -> np.ndarray:
    """Candidate split positions of P: boundaries adjacent to the first
    two and last two forest nodes of every parse level, clipped to
    [1, m-1].  O(lg m) positions."""
    m = len(P)
    if m < 2:
        raise ValueError("no split points for patterns shorter than 2")
    if parsed is None:
        parsed = dag.parse_pattern(P)
    vals = set()
    for _labels, lens in parsed.levels:
        k = len(lens)
        vals.add(int(lens[0]))
        if k >= 2:
            vals.add(int(lens[0] + lens[1]))
            vals.add(m - int(lens[-1]) - int(lens[-2]))
        vals.add(m - int(lens[-1]))
    return np.array(sorted(v for v in vals if 1 <= v <= m - 1), np.int64)


def build(dag, sorder_fwd, sorder_rev) -> LongIndex:
    """Index every internal child boundary of every non-leaf node."""
    l_start = []
    l_len = []
    r_start = []
    r_len = []
    vertex = []
    pre_len = []
    for v in range(256, dag.node_count):
        a = int(dag.leftmost[v])
        total = int(dag.slen[v])
        if dag.kind[v] == KIND_RUN:
            pres = [int(dag.slen[dag.run_child[v]])]
        else:
            lo, hi = int(dag.off[v]), int(dag.off[v + 1])
            pres = [int(dag.chcum[ci]) for ci in range(lo, hi - 1)]
        for pre in pres:
            l_start.append(a)
            l_len.append(pre)
            r_start.append(a + pre)
            r_len.append(total - pre)
            vertex.append(v)
            pre_len.append(pre)
    t1 = WeakPrefixSet(dag, np.array(l_start, np.int64),
                       np.array(l_len, np.int64), True, sorder_rev)
    t2 = WeakPrefixSet(dag, np.array(r_start, np.int64),
                       np.array(r_len, np.int64), False, sorder_fwd)
    points = RangePointSet(t1.rank_of_input, t2.rank_of_input)
    return LongIndex(dag, t1, t2, points,
                     np.array(vertex, np.int64), np.array(pre_len, np.int64))
