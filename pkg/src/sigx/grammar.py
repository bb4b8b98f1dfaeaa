"""Signature grammar: run-collapsing + random-block parse of a string,
merged into a DAG that doubles as a run-length grammar.

Construction alternates two passes over a forest of trees until a single
tree remains: maximal groups of equal labels collapse into run nodes, then
the run-free label sequence is cut into blocks starting at position 1 and
at every strict local minimum of a pseudorandom per-label priority.
Identical runs/blocks get identical labels (content-addressed), which is
what merges the parse tree into a DAG.  Patterns are parsed at query time
with the same priorities and the same naming, so equal substrings of text
and pattern agree on all labels except near the margins.
"""

import numpy as np

from . import _kernels as K

_M64 = (1 << 64) - 1
_M63 = (1 << 63) - 1

TERMINALS = 256  # labels 0..255 are reserved for byte terminals

KIND_TERMINAL = 0
KIND_RUN = 1
KIND_BLOCK = 2


def mix64(seed: int, x: int) -> int:
    """splitmix64-style keyed mix; deterministic function of (seed, x)."""
    v = (x * 0x9E3779B97F4A7C15 + seed) & _M64
    v ^= v >> 30
    v = (v * 0xBF58476D1CE4E5B9) & _M64
    v ^= v >> 27
    v = (v * 0x94D049BB133111EB) & _M64
    v ^= v >> 31
    return v


def priority_of(seed: int, label: int) -> int:
    """63-bit priority of one label (ties broken by label id by callers)."""
    return mix64(seed, label) & _M63


def priorities_of(seed: int, labels: np.ndarray) -> np.ndarray:
    """Vectorized priority_of."""
    v = labels.astype(np.uint64) * np.uint64(0x9E3779B97F4A7C15) + np.uint64(seed & _M64)
    v ^= v >> np.uint64(30)
    v *= np.uint64(0xBF58476D1CE4E5B9)
    v ^= v >> np.uint64(27)
    v *= np.uint64(0x94D049BB133111EB)
    v ^= v >> np.uint64(31)
    return (v & np.uint64(_M63)).astype(np.int64)


def local_minima(labels, priorities) -> np.ndarray:
    """Block start indices (0-based) of a run-free label sequence.

    A block starts at position 0 and at every strict interior local
    minimum of the priorities; ties between equal priorities fall back to
    the label ids (equal adjacent labels are rejected, the input must be
    run-free).
    """
    lab = np.asarray(labels, np.int64)
    pr = np.asarray(priorities, np.int64)
    if len(lab) != len(pr):
        raise ValueError("labels and priorities must align")
    if len(lab) == 0:
        raise ValueError("empty sequence")
    if len(lab) > 1 and (lab[1:] == lab[:-1]).any():
        raise ValueError("input must be run-free (no adjacent equal labels)")
    if len(lab) <= 2:
        return np.zeros(1, np.int64)
    c, l_, r_ = pr[1:-1], pr[:-2], pr[2:]
    cl, ll, rl = lab[1:-1], lab[:-2], lab[2:]
    lt_left = (c < l_) | ((c == l_) & (cl < ll))
    lt_right = (c < r_) | ((c == r_) & (cl < rl))
    minima = np.flatnonzero(lt_left & lt_right) + 1
    return np.concatenate(([0], minima))


def _collapse_runs(seq, lens, namer):
    n = len(seq)
    change = np.empty(n, bool)
    change[0] = True
    np.not_equal(seq[1:], seq[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    if len(starts) == n:
        return seq, lens
    counts = np.diff(np.append(starts, n))
    out = seq[starts].copy()
    outlens = np.add.reduceat(lens, starts)
    multi = np.flatnonzero(counts >= 2)
    pairs = np.stack([out[multi], counts[multi]], axis=1)
    uniq, inv = np.unique(pairs, axis=0, return_inverse=True)
    labs = np.empty(len(uniq), np.int64)
    for t in range(len(uniq)):
        labs[t] = namer.run_label(int(uniq[t, 0]), int(uniq[t, 1]))
    out[multi] = labs[inv.ravel()]
    return out, outlens


def _block_pass(seq, lens, seed, namer):
    starts = local_minima(seq, priorities_of(seed, seq))
    n = len(seq)
    ends = np.append(starts[1:], n)
    blen = ends - starts
    out = np.empty(len(starts), np.int64)
    outlens = np.add.reduceat(lens, starts)
    single = blen == 1
    out[single] = seq[starts[single]]
    rest = np.flatnonzero(~single)
    for L in np.unique(blen[rest]):
        sel = rest[blen[rest] == L]
        mat = seq[starts[sel][:, None] + np.arange(L)]
        order = np.lexsort(tuple(mat.T[::-1]))
        sm = mat[order]
        new = np.empty(len(sel), bool)
        new[0] = True
        np.any(sm[1:] != sm[:-1], axis=1, out=new[1:])
        gid = np.cumsum(new) - 1
        reps = sm[new]
        labs = np.empty(reps.shape[0], np.int64)
        for t in range(reps.shape[0]):
            labs[t] = namer.block_label(tuple(int(x) for x in reps[t]))
        out[sel[order]] = labs[gid]
    return out, outlens


class _DagBuilder:
    """Content-addressed node store populated during construction."""

    def __init__(self):
        self.naming: dict[tuple, int] = {}
        self.kind = bytearray(TERMINALS)
        self.run_child = [-1] * TERMINALS
        self.run_count = [0] * TERMINALS
        self.slen = [1] * TERMINALS
        self.children: list[tuple[int, ...]] = [()] * TERMINALS
        self.level = [0] * TERMINALS
        self.round = 0

    def run_label(self, child: int, count: int) -> int:
        key = (KIND_RUN, child, count)
        lab = self.naming.get(key)
        if lab is None:
            lab = len(self.kind)
            self.naming[key] = lab
            self.kind.append(KIND_RUN)
            self.run_child.append(child)
            self.run_count.append(count)
            self.slen.append(count * self.slen[child])
            self.children.append(())
            self.level.append(self.round)
        return lab

    def block_label(self, labs: tuple[int, ...]) -> int:
        key = (KIND_BLOCK,) + labs
        lab = self.naming.get(key)
        if lab is None:
            lab = len(self.kind)
            self.naming[key] = lab
            self.kind.append(KIND_BLOCK)
            self.run_child.append(-1)
            self.run_count.append(0)
            self.slen.append(sum(self.slen[c] for c in labs))
            self.children.append(labs)
            self.level.append(self.round)
        return lab


class SignatureDag:
    """Merged parse DAG of one string; immutable after construction."""

    def __init__(self, builder: _DagBuilder, root: int, seed: int, n: int):
        N = len(builder.kind)
        self.node_count = N
        self.root = int(root)
        self.seed = int(seed)
        self.n = int(n)
        self.naming = builder.naming
        self.kind = np.frombuffer(bytes(builder.kind), np.uint8).copy()
        self.run_child = np.asarray(builder.run_child, np.int32)
        self.run_count = np.asarray(builder.run_count, np.int64)
        self.slen = np.asarray(builder.slen, np.int64)
        self.level = np.asarray(builder.level, np.int32)
        degs = np.fromiter((len(c) for c in builder.children), np.int64, N)
        self.off = np.zeros(N + 1, np.int64)
        np.cumsum(degs, out=self.off[1:])
        if self.off[-1] > 0:
            self.chlab = np.fromiter(
                (c for cs in builder.children for c in cs), np.int32, self.off[-1])
        else:
            self.chlab = np.empty(0, np.int32)
        lens = self.slen[self.chlab].astype(np.int64)
        self.chcum = np.cumsum(lens)
        if len(lens):
            bases = np.repeat(self.chcum[self.off[:-1][degs > 0]] - lens[self.off[:-1][degs > 0]], degs[degs > 0])
            self.chcum -= bases
        self._finalize_reverse()
        self.max_degree = int(degs.max()) if N > TERMINALS else 1
        self.height = int(self.level[self.root])
        self.fn = None
        self.fps = np.zeros(N, np.int64)
        self.fprev = np.zeros(N, np.int64)
        self.leftmost = np.zeros(N, np.int64)
        K.dag_leftmost_fill(self.kind, self.run_child, self.off, self.chlab,
                            self.chcum, self.root, self.leftmost)

    def _finalize_reverse(self):
        # reverse edges: child -> (parent, ordinal); run edges get ordinal 0
        N = self.node_count
        runs = np.flatnonzero(self.kind == KIND_RUN)
        pb = np.repeat(np.arange(N, dtype=np.int32), np.diff(self.off).astype(np.int64))
        ob = (np.arange(len(self.chlab), dtype=np.int32)
              - np.repeat(self.off[:-1], np.diff(self.off).astype(np.int64)).astype(np.int32))
        cb = self.chlab
        par = np.concatenate([pb, runs.astype(np.int32)])
        ord_ = np.concatenate([ob, np.zeros(len(runs), np.int32)])
        ch = np.concatenate([cb, self.run_child[runs]])
        order = np.argsort(ch, kind="stable")
        self.rev_parent = par[order]
        self.rev_ordinal = ord_[order]
        self.roff = np.zeros(N + 1, np.int64)
        np.cumsum(np.bincount(ch, minlength=N), out=self.roff[1:])
        self.edge_count = len(ch)

    # -- kernel plumbing ----------------------------------------------------

    def k_args(self):
        return (self.kind, self.run_child, self.run_count, self.slen,
                self.off, self.chlab, self.chcum)

    # -- queries ------------------------------------------------------------

    def extract(self, i: int, j: int) -> bytes:
        if not (1 <= i <= j <= self.n):
            if i == j + 1 and 1 <= i <= self.n + 1:
                return b""
            raise ValueError("extract range out of bounds")
        out = np.empty(j - i + 1, np.uint8)
        K.dag_extract(*self.k_args(), self.root, i, j, out)
        return out.tobytes()

    def node_extract(self, v: int, lo: int, hi: int) -> bytes:
        if not (1 <= lo <= hi <= self.slen[v]):
            raise ValueError("extract range out of bounds")
        out = np.empty(hi - lo + 1, np.uint8)
        K.dag_extract(*self.k_args(), v, lo, hi, out)
        return out.tobytes()

    def child_at(self, v: int, i: int) -> tuple[int, int, int]:
        """(child label, 1-based child ordinal, 1-based offset in child)."""
        if self.kind[v] == KIND_TERMINAL:
            raise ValueError("terminal nodes have no children")
        if not (1 <= i <= self.slen[v]):
            raise ValueError("position outside the node's string")
        c, o, r = K.dag_child_at(*self.k_args(), v, i)
        return int(c), int(o) + 1, int(r)

    def set_fingerprint_fn(self, fn):
        self.fn = fn
        if getattr(fn, "degenerate", False):
            self.fps[:] = 0
            self.fprev[:] = 0
        else:
            K.dag_fill_fps(*self.k_args(), fn.base, self.fps, self.fprev)

    def _need_fn(self):
        if self.fn is None:
            raise ValueError("no fingerprint function attached")

    def prefix_fp(self, v: int, l: int) -> int:
        self._need_fn()
        if not (0 <= l <= self.slen[v]):
            raise ValueError("length out of range")
        if l == 0:
            return 0
        return int(K.dag_prefix_fp(*self.k_args(), self.fps, self.fn.base, v, l))

    def suffix_fp(self, v: int, l: int) -> int:
        self._need_fn()
        if not (0 <= l <= self.slen[v]):
            raise ValueError("length out of range")
        head = self.prefix_fp(v, int(self.slen[v]) - l)
        return int(K.submod61(self.fps[v],
                              K.mulmod61(head, K.pow61(self.fn.base, l))))

    def prefix_fp_rev(self, v: int, l: int) -> int:
        self._need_fn()
        if not (0 <= l <= self.slen[v]):
            raise ValueError("length out of range")
        if l == 0:
            return 0
        return int(K.dag_prefix_fp_rev(*self.k_args(), self.fprev,
                                       self.fn.base, v, l))

    def range_fp(self, a: int, b: int) -> int:
        self._need_fn()
        if b < a:
            return 0
        if not (1 <= a and b <= self.n):
            raise ValueError("range out of bounds")
        return int(K.dag_range_fp(*self.k_args(), self.fps, self.fn.base,
                                  self.root, a, b))

    def range_fp_rev(self, a: int, b: int) -> int:
        self._need_fn()
        if b < a:
            return 0
        if not (1 <= a and b <= self.n):
            raise ValueError("range out of bounds")
        return int(K.dag_range_fp_rev(*self.k_args(), self.fprev, self.fn.base,
                                      self.root, self.n, a, b))

    def parse_pattern(self, data: bytes) -> "PatternParse":
        return parse_pattern(self, data)

    def runfree_mean_degree(self) -> float:
        blocks = self.kind == KIND_BLOCK
        nb = int(blocks.sum())
        if nb == 0:
            return 0.0
        return float(np.diff(self.off)[blocks].sum() / nb)

    def stats(self) -> dict:
        return {
            "n": self.n,
            "nodes": self.node_count - TERMINALS,
            "edges": self.edge_count,
            "height": self.height,
            "max_degree": self.max_degree,
            "runfree_mean_degree": self.runfree_mean_degree(),
        }


class PatternParse:
    """Per-level forests of the pattern's parse, sharing grammar labels.

    ``levels[0]`` is the terminal sequence; every subsequent entry is the
    forest after one more pass (run collapse / block cut alternating).
    Labels >= temp_base were invented for this pattern only; the first two
    and last two nodes of every level are the potentially inconsistent
    margin.
    """

    def __init__(self, levels, temp_base, m):
        self.levels = levels            # list of (labels, lens) arrays
        self.temp_base = temp_base
        self.m = m

    def is_temporary(self, label: int) -> bool:
        return label >= self.temp_base

    def level_starts(self, i: int) -> np.ndarray:
        lens = self.levels[i][1]
        return np.cumsum(lens) - lens + 1

    @property
    def root(self) -> int:
        return int(self.levels[-1][0][0])


class _PatternNamer:
    def __init__(self, dag: SignatureDag):
        self.dag = dag
        self.overlay: dict[tuple, int] = {}
        self.next_temp = dag.node_count
        self.round = 0

    def _lookup(self, key):
        lab = self.dag.naming.get(key)
        if lab is None:
            lab = self.overlay.get(key)
            if lab is None:
                lab = self.next_temp
                self.next_temp += 1
                self.overlay[key] = lab
        return lab

    def run_label(self, child: int, count: int) -> int:
        return self._lookup((KIND_RUN, child, count))

    def block_label(self, labs: tuple[int, ...]) -> int:
        return self._lookup((KIND_BLOCK,) + labs)


def _parse_passes(seq, lens, seed, namer, snapshots=None):
    rounds = 0
    while len(seq) > 1:
        rounds += 1
        namer.round = rounds
        seq, lens = _collapse_runs(seq, lens, namer)
        if snapshots is not None:
            snapshots.append((seq, lens))
        if len(seq) == 1:
            break
        seq, lens = _block_pass(seq, lens, seed, namer)
        if snapshots is not None:
            snapshots.append((seq, lens))
    return seq, lens, rounds


def build(data: bytes, seed: int = 0) -> SignatureDag:
    """Build the merged parse DAG of ``data``.

    Retries with a reseeded priority function while the mean block width
    exceeds 3.5 (at most 8 attempts), keeping the expected-size story
    independent of unlucky priority draws.
    """
    if len(data) == 0:
        raise ValueError("cannot build a grammar for an empty string")
    arr = np.frombuffer(bytes(data), np.uint8).astype(np.int64)
    n = len(arr)
    dag = None
    for attempt in range(8):
        aseed = mix64(seed, attempt)
        builder = _DagBuilder()
        seq = arr.copy()
        lens = np.ones(n, np.int64)
        seq, lens, _ = _parse_passes(seq, lens, aseed, builder)
        dag = SignatureDag(builder, int(seq[0]), aseed, n)
        if dag.runfree_mean_degree() <= 3.5:
            return dag
    return dag


def parse_pattern(dag: SignatureDag, data: bytes) -> PatternParse:
    """Parse a pattern with the grammar's priorities and naming.

    Blocks already present in the DAG reuse their labels; fresh blocks get
    temporary labels (disjoint from grammar labels) whose priorities come
    from the same keyed mix, so the parse is deterministic per pattern and
    never mutates the grammar.
    """
    if len(data) == 0:
        raise ValueError("cannot parse an empty pattern")
    arr = np.frombuffer(bytes(data), np.uint8).astype(np.int64)
    namer = _PatternNamer(dag)
    seq = arr.copy()
    lens = np.ones(len(arr), np.int64)
    snapshots = [(seq.copy(), lens.copy())]
    _parse_passes(seq, lens, dag.seed, namer, snapshots)
    return PatternParse(snapshots, dag.node_count, len(arr))


# spec-level operation aliases

def extract(dag: SignatureDag, i: int, j: int) -> bytes:
    return dag.extract(i, j)


def child_at(dag: SignatureDag, v: int, i: int) -> tuple[int, int, int]:
    return dag.child_at(v, i)


def prefix_fp(dag: SignatureDag, v: int, l: int) -> int:
    return dag.prefix_fp(v, l)


def suffix_fp(dag: SignatureDag, v: int, l: int) -> int:
    return dag.suffix_fp(v, l)
