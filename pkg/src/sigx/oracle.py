"""Brute-force reference implementations for tests and acceptance.

Independent code paths: nothing here shares logic with the index modules.
Scan oracles are capped at n <= 10^5 and the explicit parse tree at
n <= 500; the callers keep instances small.
"""

import random

import numpy as np

SCAN_CAP = 100_000
TREE_CAP = 500


def naive_search(S: bytes, P: bytes) -> list[int]:
    """All 1-based occurrence starts of P in S (overlaps included)."""
    S, P = bytes(S), bytes(P)
    if len(P) == 0:
        raise ValueError("empty pattern")
    if len(S) > SCAN_CAP:
        raise ValueError("scan oracle capped at 10^5")
    out = []
    i = S.find(P)
    while i >= 0:
        out.append(i + 1)
        i = S.find(P, i + 1)
    return out


def naive_parse(S: bytes) -> list[tuple[int, int, int | None]]:
    """Greedy leftmost-longest self-referential factorization by direct
    scanning; smallest source wins ties.  (source, copy_len, literal) with
    1-based sources, 0 for fresh literals."""
    S = bytes(S)
    n = len(S)
    if n == 0:
        raise ValueError("empty string")
    out = []
    u = 0
    while u < n:
        best_l = 0
        best_s = -1
        for s in range(u):
            l = 0
            while u + l < n and S[s + l] == S[u + l]:
                l += 1
            if l > best_l:
                best_l, best_s = l, s
        if best_l == 0:
            out.append((0, 0, S[u]))
            u += 1
        elif u + best_l < n:
            out.append((best_s + 1, best_l, S[u + best_l]))
            u += best_l + 1
        else:
            out.append((best_s + 1, best_l, None))
            u += best_l
    return out


def naive_borders(S: bytes) -> list[int]:
    pos = 1
    borders = []
    for s, l, lit in naive_parse(S):
        if lit is not None:
            borders.append(pos + l)
        pos += l + (lit is not None)
    return borders


def brute_range_report(points, x1, x2, y1, y2) -> list:
    """Linear filter over (x, y, payload) triples."""
    return [p for (x, y, p) in points if x1 <= x <= x2 and y1 <= y <= y2]


class TreeNode:
    __slots__ = ("label", "children", "start", "end", "kind")

    def __init__(self, label, children, start, end, kind):
        self.label = label
        self.children = children
        self.start = start  # 1-based leaf span
        self.end = end
        self.kind = kind    # "leaf" | "run" | "block"


class ExplicitSigTree:
    """Fully materialized parse tree of a small string.

    Reimplements the run-collapse / local-minimum block construction
    directly on lists of nodes, with its own permutation-style priority
    source, to independently check the per-level margin behaviour of
    equal substrings.
    """

    def __init__(self, S: bytes, seed: int = 0):
        S = bytes(S)
        if not (1 <= len(S) <= TREE_CAP):
            raise ValueError("explicit tree capped at n <= 500")
        self.n = len(S)
        self.seed = seed
        self._prio = {}
        self._names = {}
        self._next = 256
        forest = [TreeNode(c, [], i + 1, i + 1, "leaf")
                  for i, c in enumerate(S)]
        self.levels = [list(forest)]
        while len(forest) > 1:
            forest = self._runs(forest)
            self.levels.append(list(forest))
            if len(forest) == 1:
                break
            forest = self._blocks(forest)
            self.levels.append(list(forest))
        self.root = forest[0]

    def _priority(self, label):
        pr = self._prio.get(label)
        if pr is None:
            pr = random.Random((self.seed, label)).random()
            self._prio[label] = pr
        return (pr, label)

    def _name(self, key):
        lab = self._names.get(key)
        if lab is None:
            lab = self._next
            self._next += 1
            self._names[key] = lab
        return lab

    def _runs(self, forest):
        out = []
        i = 0
        while i < len(forest):
            j = i
            while j + 1 < len(forest) and forest[j + 1].label == forest[i].label:
                j += 1
            if j > i:
                lab = self._name(("run", forest[i].label, j - i + 1))
                out.append(TreeNode(lab, forest[i:j + 1],
                                    forest[i].start, forest[j].end, "run"))
            else:
                out.append(forest[i])
            i = j + 1
        return out
    def _blocks(self, forest):
        labs = [t.label for t in forest]
        starts = [0]
        for i in range(1, len(labs) - 1):
            if (self._priority(labs[i]) < self._priority(labs[i - 1])
                    and self._priority(labs[i]) < self._priority(labs[i + 1])):
                starts.append(i)
        starts.append(len(labs))
        out = []
        for a, b in zip(starts, starts[1:]):
            if b - a == 1:
                out.append(forest[a])
            else:
                members = forest[a:b]
                lab = self._name(("block", tuple(t.label for t in members)))
                out.append(TreeNode(lab, members,
                                    members[0].start, members[-1].end, "block"))
        return out

    def relevant(self, i: int, j: int) -> list[list[TreeNode]]:
        """Per-level node sequences overlapping leaves [i, j] (1-based)."""
        out = []
        for level in self.levels:
            out.append([t for t in level if not (t.end < i or t.start > j)])
        return out

    def all_nodes(self) -> list[TreeNode]:
        seen = []
        def walk(t):
            seen.append(t)
            for c in t.children:
                walk(c)
        walk(self.root)
        return seen


def explicit_sig_tree(S: bytes, seed: int = 0) -> ExplicitSigTree:
    return ExplicitSigTree(S, seed)


def margin_agreement(tree: ExplicitSigTree, i: int, j: int,
                     i2: int, j2: int, margin: int = 2) -> bool:
    """Whether the relevant-node sequences of two equal substrings agree
    outside the first/last ``margin`` nodes of every level."""
    ra = tree.relevant(i, j)
    rb = tree.relevant(i2, j2)
    for la, lb in zip(ra, rb):
        da = {t.start - i: t.label for t in la}
        db = {t.start - i2: t.label for t in lb}
        for seq, other, base in ((la, db, i), (lb, da, i2)):
            core = seq[margin:len(seq) - margin]
            for t in core:
                rel = t.start - base
                if rel not in other or other[rel] != t.label:
                    return False
    return True
