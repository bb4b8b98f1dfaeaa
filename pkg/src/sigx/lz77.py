"""Greedy self-referential LZ77 parse of a byte string.

Phrases are (source, copy_len, literal) with 1-based positions.  Each
phrase copies the longest possible earlier match (overlaps allowed), then
appends one fresh literal; the final phrase omits the literal when the
copy ends exactly at the text end.  Ties between equally long sources are
broken towards the smallest source position, so parses are deterministic.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .suffixes import SuffixOrder


@dataclass(frozen=True)
class Lz77Phrase:
    source: int        # 1-based copy source; 0 when copy_len == 0
    copy_len: int
    literal: int | None  # byte value; None only for a final phrase ending at n


class Lz77Parse:
    """Phrase arrays plus derived phrase starts and borders."""

    def __init__(self, sources, copy_lens, literals, n):
        self.sources = np.asarray(sources, np.int64)
        self.copy_lens = np.asarray(copy_lens, np.int64)
        self.literals = np.asarray(literals, np.int64)  # -1 = absent
        self.n = int(n)
        self.z = len(self.sources)
        # u_1 = 1, u_{i+1} = u_i + l_i + 1 (with the literal present)
        steps = self.copy_lens + (self.literals >= 0)
        self.phrase_starts = np.empty(self.z, np.int64)
        self.phrase_starts[0] = 1
        if self.z > 1:
            self.phrase_starts[1:] = 1 + np.cumsum(steps)[:-1]
        has_lit = self.literals >= 0
        self.borders = (self.phrase_starts + self.copy_lens)[has_lit]
        self._validate()

    def _validate(self):
        if self.z == 0 or self.n == 0:
            raise ValueError("empty parse")
        if self.copy_lens[0] != 0:
            raise ValueError("first phrase must be a fresh literal")
        bad = (self.copy_lens > 0) & (self.sources >= self.phrase_starts)
        if bad.any():
            raise ValueError("phrase source must precede the phrase start")
        if (self.copy_lens > 0).any() and (self.sources[self.copy_lens > 0] < 1).any():
            raise ValueError("copy source out of range")
        end = self.phrase_starts[-1] + self.copy_lens[-1] + (self.literals[-1] >= 0) - 1
        if end != self.n:
            raise ValueError("phrase lengths do not cover the text")
        if len(self.borders) and (np.diff(self.borders) <= 0).any():
            raise ValueError("borders must be strictly increasing")
        if len(self.borders) and self.borders[-1] > self.n:
            raise ValueError("border beyond text end")

    @property
    def phrases(self) -> tuple[Lz77Phrase, ...]:
        out = []
        for i in range(self.z):
            lit = int(self.literals[i])
            out.append(Lz77Phrase(
                source=int(self.sources[i]),
                copy_len=int(self.copy_lens[i]),
                literal=lit if lit >= 0 else None,
            ))
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, Lz77Parse)
                and self.n == other.n
                and np.array_equal(self.sources, other.sources)
                and np.array_equal(self.copy_lens, other.copy_lens)
                and np.array_equal(self.literals, other.literals))


def parse(data: bytes, order: SuffixOrder | None = None) -> Lz77Parse:
    """Greedy leftmost-longest parse; smallest source on ties."""
    if len(data) == 0:
        raise ValueError("cannot parse an empty string")
    arr = np.frombuffer(bytes(data), np.uint8)
    if order is None:
        order = SuffixOrder(arr)
    n = len(arr)
    out_src = np.empty(n, np.int64)
    out_len = np.empty(n, np.int64)
    out_lit = np.empty(n, np.int64)
    z = K.lz77_greedy(order.data, order.sa, order.rank,
                      order.lcp_tree, order.sa_tree, order.base,
                      out_src, out_len, out_lit)
    src = out_src[:z] + 1          # to 1-based; fresh literals become 0
    src[out_len[:z] == 0] = 0
    return Lz77Parse(src, out_len[:z].copy(), out_lit[:z].copy(), n)


def expand(p: Lz77Parse) -> bytes:
    """Inverse of parse: reconstruct the text."""
    out = np.empty(p.n, np.uint8)
    src0 = p.sources - 1
    src0[p.copy_lens == 0] = 0
    written = K.lz77_expand(src0, p.copy_lens, p.literals, p.n, out)
    if written != p.n:
        raise ValueError("parse does not cover the text exactly")
    return out.tobytes()


def is_primary(p: int, m: int, pa: Lz77Parse) -> bool:
    """Whether the interval [p, p+m-1] contains a parse border."""
    if m < 1 or p < 1 or p + m - 1 > pa.n:
        raise ValueError("interval out of range")
    idx = int(np.searchsorted(pa.borders, p, side="left"))
    return idx < len(pa.borders) and int(pa.borders[idx]) <= p + m - 1
