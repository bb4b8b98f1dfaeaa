"""Hot loops behind the index structures.

Everything here is written as plain loops over numpy arrays so the same
source runs compiled (numba backend) or interpreted (numpy backend); see
:mod:`sigx._backend`.  All modular arithmetic is over the Mersenne prime
2^61-1 and stays inside signed 64-bit range, so the code is also exact
under plain Python integers.

Conventions: text positions handed to these kernels are 1-based inclusive
(matching the public API); suffix-array/rank indices are 0-based.
Fingerprints, lengths and positions travel as int64; grammar labels as
int32; bitvector words use 63 payload bits per int64 word so the sign bit
is never touched.
"""

import numpy as np

from ._backend import jit

MOD61 = (1 << 61) - 1

# ---------------------------------------------------------------------------
# modular arithmetic


@jit
def mulmod61(a, b):
    # split into 31/30-bit limbs; every partial product fits in int64
    a1 = a >> 31
    a0 = a & 0x7FFFFFFF
    b1 = b >> 31
    b0 = b & 0x7FFFFFFF
    hi = a1 * b1
    mid = a1 * b0 + a0 * b1
    lo = a0 * b0
    # 2^62 = 2, 2^61 = 1, mid*2^31 = (mid>>30) + (mid & (2^30-1))<<31 (mod p)
    t = (hi << 1) + (mid >> 30) + ((mid & 0x3FFFFFFF) << 31) + (lo >> 61) + (lo & MOD61)
    t = (t >> 61) + (t & MOD61)
    if t >= MOD61:
        t -= MOD61
    return t


@jit
def addmod61(a, b):
    t = a + b
    if t >= MOD61:
        t -= MOD61
    return t


@jit
def submod61(a, b):
    t = a - b
    if t < 0:
        t += MOD61
    return t


@jit
def pow61(b, e):
    r = 1
    c = b
    while e > 0:
        if e & 1:
            r = mulmod61(r, c)
        c = mulmod61(c, c)
        e >>= 1
    return r


@jit
def fp_append61(fp, base, sym):
    return addmod61(mulmod61(fp, base), sym)


@jit
def fp_concat61(fa, fb, len_b, base):
    return addmod61(mulmod61(fa, pow61(base, len_b)), fb)


@jit
def fp_repeat61(f, length, count, base):
    # fingerprint of `count` concatenated copies of a string with
    # fingerprint f and the given length, by monoid exponentiation
    pw = pow61(base, length)
    rf = 0
    rp = 1
    cf = f
    cp = pw
    c = count
    while c > 0:
        if c & 1:
            rf = addmod61(mulmod61(rf, cp), cf)
            rp = mulmod61(rp, cp)
        cf = addmod61(mulmod61(cf, cp), cf)
        cp = mulmod61(cp, cp)
        c >>= 1
    return rf


@jit
def fp_prefix_fill(data, base, out):
    # out[i] = fingerprint of data[:i]
    out[0] = 0
    for i in range(len(data)):
        out[i + 1] = fp_append61(out[i], base, data[i])


@jit
def pow_table_fill(base, out):
    out[0] = 1
    for i in range(1, len(out)):
        out[i] = mulmod61(out[i - 1], base)


# ---------------------------------------------------------------------------
# suffix-array helpers (the array itself is built with numpy lexsort;
# see sigx.suffixes)


@jit
def kasai_fill(data, sa, rank, lcp):
    n = len(sa)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and data[i + h] == data[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            lcp[0] = 0
            h = 0


@jit
def st_min(tree, base, lo, hi):
    # min over leaves [lo, hi]; empty range yields the +inf sentinel
    res = np.int64(1) << 62
    if lo > hi:
        return res
    lo += base
    hi += base + 1
    while lo < hi:
        if lo & 1:
            if tree[lo] < res:
                res = np.int64(tree[lo])
            lo += 1
        if hi & 1:
            hi -= 1
            if tree[hi] < res:
                res = np.int64(tree[hi])
        lo >>= 1
        hi >>= 1
    return res


@jit
def st_rightmost_below(tree, base, hi, bound):
    # rightmost leaf index in [0, hi] whose value is < bound, or -1
    if hi < 0:
        return -1
    if st_min(tree, base, 0, hi) >= bound:
        return -1
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if st_min(tree, base, mid, hi) < bound:
            lo = mid
        else:
            hi = mid - 1
    return lo


@jit
def st_leftmost_below(tree, base, lo, last, bound):
    # leftmost leaf index in [lo, last] whose value is < bound, or -1
    if lo > last:
        return -1
    if st_min(tree, base, lo, last) >= bound:
        return -1
    hi = last
    while lo < hi:
        mid = (lo + hi) >> 1
        if st_min(tree, base, lo, mid) < bound:
            hi = mid
        else:
            lo = mid + 1
    return lo


@jit
def lz77_greedy(data, sa, rank, lcp_tree, sa_tree, base, out_src, out_len, out_lit):
    """Greedy leftmost-longest factorization, smallest source on ties.

    0-based positions internally; out_src[i] = -1 marks a fresh literal,
    out_lit[i] = -1 marks the final phrase ending exactly at the text end.
    Returns the phrase count.
    """
    n = len(data)
    u = 0
    z = 0
    while u < n:
        r = rank[u]
        best = 0
        rp = st_rightmost_below(sa_tree, base, r - 1, u)
        if rp >= 0:
            l1 = st_min(lcp_tree, base, rp + 1, r)
            if l1 > best:
                best = l1
        rn = st_leftmost_below(sa_tree, base, r + 1, n - 1, u)
        if rn >= 0:
            l2 = st_min(lcp_tree, base, r + 1, rn)
            if l2 > best:
                best = l2
        if best == 0:
            out_src[z] = -1
            out_len[z] = 0
            out_lit[z] = data[u]
            z += 1
            u += 1
            continue
        l = best
        # maximal suffix-array interval around r whose pairwise lce >= l,
        # then the smallest text position inside it is the leftmost source
        lo = 0
        hi = r
        while lo < hi:
            mid = (lo + hi) >> 1
            if st_min(lcp_tree, base, mid + 1, r) >= l:
                hi = mid
            else:
                lo = mid + 1
        left = lo
        lo = r
        hi = n - 1
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if st_min(lcp_tree, base, r + 1, mid) >= l:
                lo = mid
            else:
                hi = mid - 1
        right = lo
        src = st_min(sa_tree, base, left, right)
        out_src[z] = src
        out_len[z] = l
        if u + l < n:
            out_lit[z] = data[u + l]
            u += l + 1
        else:
            out_lit[z] = -1
            u += l
        z += 1
    return z


@jit
def lz77_expand(src, lens, lits, n, out):
    pos = 0
    for i in range(len(src)):
        l = lens[i]
        s = src[i]
        for t in range(l):
            out[pos + t] = out[s + t]
        pos += l
        if lits[i] >= 0:
            out[pos] = lits[i]
            pos += 1
    return pos


@jit
def substr_compare(data, rank, lcp_tree, base, s1, l1, s2, l2):
    # lexicographic order of data[s1:s1+l1] vs data[s2:s2+l2] (0-based)
    # using the suffix order for O(lg n) time; -1/0/+1
    if l1 == 0 or l2 == 0:
        if l1 < l2:
            return -1
        if l1 > l2:
            return 1
        return 0
    if s1 == s2:
        lce = l1 if l1 < l2 else l2
    else:
        r1 = rank[s1]
        r2 = rank[s2]
        if r1 < r2:
            lce = st_min(lcp_tree, base, r1 + 1, r2)
        else:
            lce = st_min(lcp_tree, base, r2 + 1, r1)
    lim = l1 if l1 < l2 else l2
    if lce >= lim:
        if l1 < l2:
            return -1
        if l1 > l2:
            return 1
        return 0
    if rank[s1] < rank[s2]:
        return -1
    return 1


@jit
def sort_ranges(starts, lens, data, rank, lcp_tree, base):
    # stable bottom-up merge sort of substring descriptors
    k = len(starts)
    order = np.arange(k, dtype=np.int64)
    buf = np.empty(k, dtype=np.int64)
    width = 1
    while width < k:
        lo = 0
        while lo < k:
            mid = lo + width
            hi = mid + width
            if mid > k:
                mid = k
            if hi > k:
                hi = k
            i = lo
            j = mid
            t = lo
            while i < mid and j < hi:
                a = order[i]
                b = order[j]
                c = substr_compare(data, rank, lcp_tree, base,
                                   starts[a], lens[a], starts[b], lens[b])
                if c <= 0:
                    buf[t] = a
                    i += 1
                else:
                    buf[t] = b
                    j += 1
                t += 1
            while i < mid:
                buf[t] = order[i]
                i += 1
                t += 1
            while j < hi:
                buf[t] = order[j]
                j += 1
                t += 1
            for x in range(lo, hi):
                order[x] = buf[x]
            lo += 2 * width
        width *= 2
    return order


@jit
def mark_distinct_ranges(starts, lens, order, data, rank, lcp_tree, base, keep):
    # keep[t] = sorted key t differs from its predecessor
    keep[0] = True
    for t in range(1, len(order)):
        a = order[t - 1]
        b = order[t]
        c = substr_compare(data, rank, lcp_tree, base,
                           starts[a], lens[a], starts[b], lens[b])
        keep[t] = c != 0


# ---------------------------------------------------------------------------
# grammar DAG kernels
#
# A DAG is passed as flat arrays:
#   kind      u8[N]    0 terminal, 1 run, 2 block
#   run_child i32[N]   child label (run nodes)
#   run_count i64[N]   repeat count (run nodes)
#   slen      i64[N]   length of the produced string
#   off       i64[N+1] CSR offsets into chlab/chcum (block nodes)
#   chlab     i32[E]   child labels in order
#   chcum     i64[E]   inclusive cumulative child lengths per node
#   fps/fprev i64[N]   fingerprints of produced string / its reverse


@jit
def dag_child_at(kind, run_child, run_count, slen, off, chlab, chcum, v, i):
    # child producing position i (1-based) of str(v):
    # (child label, 0-based ordinal, 1-based offset inside the child)
    if kind[v] == 1:
        w = run_child[v]
        wl = slen[w]
        o = (i - 1) // wl
        return w, o, i - o * wl
    a = off[v]
    b = off[v + 1] - 1
    lo = a
    hi = b
    while lo < hi:
        mid = (lo + hi) >> 1
        if chcum[mid] >= i:
            hi = mid
        else:
            lo = mid + 1
    prev = chcum[lo - 1] if lo > a else 0
    return chlab[lo], lo - a, i - prev


@jit
def dag_char_at(kind, run_child, run_count, slen, off, chlab, chcum, v, i):
    while kind[v] != 0:
        v, _o, i = dag_child_at(kind, run_child, run_count, slen, off, chlab, chcum, v, i)
    return v


@jit
def dag_extract(kind, run_child, run_count, slen, off, chlab, chcum, v, lo, hi, out):
    # write str(v)[lo..hi] (1-based inclusive) into out; returns the length
    m = hi - lo + 1
    if m <= 0:
        return 0
    cap = 2 * m + 256
    stn = np.empty(cap, np.int64)
    stl = np.empty(cap, np.int64)
    sth = np.empty(cap, np.int64)
    stn[0] = v
    stl[0] = lo
    sth[0] = hi
    sp = 1
    pos = 0
    while sp > 0:
        sp -= 1
        nd = stn[sp]
        a = stl[sp]
        b = sth[sp]
        k = kind[nd]
        if k == 0:
            out[pos] = nd
            pos += 1
        elif k == 1:
            w = run_child[nd]
            wl = slen[w]
            t0 = (a - 1) // wl
            t1 = (b - 1) // wl
            t = t1
            while t >= t0:
                ra = a - t * wl
                if ra < 1:
                    ra = 1
                rb = b - t * wl
                if rb > wl:
                    rb = wl
                stn[sp] = w
                stl[sp] = ra
                sth[sp] = rb
                sp += 1
                t -= 1
        else:
            base_off = off[nd]
            last = off[nd + 1] - 1
            loi = base_off
            hii = last
            while loi < hii:
                mid = (loi + hii) >> 1
                if chcum[mid] >= a:
                    hii = mid
                else:
                    loi = mid + 1
            c0 = loi
            loi = c0
            hii = last
            while loi < hii:
                mid = (loi + hii) >> 1
                if chcum[mid] >= b:
                    hii = mid
                else:
                    loi = mid + 1
            c1 = loi
            ci = c1
            while ci >= c0:
                prev = chcum[ci - 1] if ci > base_off else 0
                ra = a - prev
                if ra < 1:
                    ra = 1
                rb = b - prev
                cl = chcum[ci] - prev
                if rb > cl:
                    rb = cl
                stn[sp] = chlab[ci]
                stl[sp] = ra
                sth[sp] = rb
                sp += 1
                ci -= 1
    return pos


@jit
def dag_prefix_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                  fps, base, v, l):
    # fingerprint of str(v)[1..l]
    res = 0
    while l > 0:
        if l == slen[v]:
            return fp_concat61(res, fps[v], l, base)
        k = kind[v]
        if k == 1:
            w = run_child[v]
            wl = slen[w]
            q = l // wl
            if q > 0:
                block = fp_repeat61(fps[w], wl, q, base)
                res = fp_concat61(res, block, q * wl, base)
                l -= q * wl
            v = w
        else:
            a = off[v]
            b = off[v + 1]
            prev = 0
            for ci in range(a, b):
                cl = chcum[ci] - prev
                if l >= cl:
                    res = fp_concat61(res, fps[chlab[ci]], cl, base)
                    l -= cl
                    if l == 0:
                        return res
                else:
                    v = chlab[ci]
                    break
                prev = chcum[ci]
    return res


@jit
def dag_prefix_fp_rev(kind, run_child, run_count, slen, off, chlab, chcum,
                      fprev, base, v, l):
    # fingerprint of rev(str(v))[1..l] (i.e. of the reversed length-l suffix)
    res = 0
    while l > 0:
        if l == slen[v]:
            return fp_concat61(res, fprev[v], l, base)
        k = kind[v]
        if k == 1:
            w = run_child[v]
            wl = slen[w]
            q = l // wl
            if q > 0:
                block = fp_repeat61(fprev[w], wl, q, base)
                res = fp_concat61(res, block, q * wl, base)
                l -= q * wl
            v = w
        else:
            a = off[v]
            b = off[v + 1]
            for ci in range(b - 1, a - 1, -1):
                prev = chcum[ci - 1] if ci > a else 0
                cl = chcum[ci] - prev
                if l >= cl:
                    res = fp_concat61(res, fprev[chlab[ci]], cl, base)
                    l -= cl
                    if l == 0:
                        return res
                else:
                    v = chlab[ci]
                    break
    return res


@jit
def dag_range_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                 fps, base, root, a, b):
    # fingerprint of text[a..b] (1-based inclusive), empty range -> 0
    if b < a:
        return 0
    gb = dag_prefix_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                       fps, base, root, b)
    ga = dag_prefix_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                       fps, base, root, a - 1)
    return submod61(gb, mulmod61(ga, pow61(base, b - a + 1)))


@jit
def dag_range_fp_rev(kind, run_child, run_count, slen, off, chlab, chcum,
                     fprev, base, root, n, a, b):
    # fingerprint of rev(text[a..b])
    if b < a:
        return 0
    ha = dag_prefix_fp_rev(kind, run_child, run_count, slen, off, chlab, chcum,
                           fprev, base, root, n - a + 1)
    hb = dag_prefix_fp_rev(kind, run_child, run_count, slen, off, chlab, chcum,
                           fprev, base, root, n - b)
    return submod61(ha, mulmod61(hb, pow61(base, b - a + 1)))


@jit
def dag_fill_fps(kind, run_child, run_count, slen, off, chlab, chcum,
                 base, out_f, out_r):
    # labels are topologically ordered (children precede parents)
    for v in range(len(kind)):
        k = kind[v]
        if k == 0:
            out_f[v] = v
            out_r[v] = v
        elif k == 1:
            w = run_child[v]
            wl = slen[w]
            c = run_count[v]
            out_f[v] = fp_repeat61(out_f[w], wl, c, base)
            out_r[v] = fp_repeat61(out_r[w], wl, c, base)
        else:
            f = 0
            r = 0
            prev = 0
            for ci in range(off[v], off[v + 1]):
                cl = chcum[ci] - prev
                f = fp_concat61(f, out_f[chlab[ci]], cl, base)
                prev = chcum[ci]
            for ci in range(off[v + 1] - 1, off[v] - 1, -1):
                p2 = chcum[ci - 1] if ci > off[v] else 0
                cl = chcum[ci] - p2
                r = fp_concat61(r, out_r[chlab[ci]], cl, base)
            out_f[v] = f
            out_r[v] = r


@jit
def dag_leftmost_fill(kind, run_child, off, chlab, chcum, root, out):
    # leftmost occurrence (1-based text position) of every node's string
    big = np.int64(1) << 62
    for v in range(len(kind)):
        out[v] = big
    out[root] = 1
    for v in range(len(kind) - 1, 255, -1):
        p = out[v]
        if p >= big:
            continue
        k = kind[v]
        if k == 1:
            w = run_child[v]
            if p < out[w]:
                out[w] = p
        elif k == 2:
            prev = 0
            for ci in range(off[v], off[v + 1]):
                w = chlab[ci]
                cand = p + prev
                if cand < out[w]:
                    out[w] = cand
                prev = chcum[ci]
    for v in range(256):
        if out[v] >= big:
            out[v] = 0


# ---------------------------------------------------------------------------
# weak prefix search
#
# Keys are substrings of the text referenced as (start, length); a set-wide
# flag says whether keys are the *reversed* substrings.  The searched
# pattern piece is described by (p0, side) against pattern byte/fingerprint
# tables: side 0 searches P[p0+1..m], side 1 searches rev(P[1..p0])
# (positions 1-based in the pattern).

LESS = -1
MATCH = 0
GREATER = 1


@jit
def _q_len(m, p0, side):
    return p0 if side == 1 else m - p0


@jit
def _q_char(pat, m, p0, side, t):
    if side == 1:
        return pat[p0 - t]
    return pat[p0 + t - 1]


@jit
def _q_fp(pf, pr, base, m, p0, side, t):
    if side == 1:
        lo = m - p0
        return submod61(pr[lo + t], mulmod61(pr[lo], pow61(base, t)))
    return submod61(pf[p0 + t], mulmod61(pf[p0], pow61(base, t)))


@jit
def _key_fp(kind, run_child, run_count, slen, off, chlab, chcum, fps, fprev,
            base, root, n, start, klen, krev, t):
    if krev == 1:
        return dag_range_fp_rev(kind, run_child, run_count, slen, off, chlab,
                                chcum, fprev, base, root, n,
                                start + klen - t, start + klen - 1)
    return dag_range_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                        fps, base, root, start, start + t - 1)


@jit
def _key_char(kind, run_child, run_count, slen, off, chlab, chcum,
              root, start, klen, krev, t):
    if krev == 1:
        pos = start + klen - t
    else:
        pos = start + t - 1
    return dag_char_at(kind, run_child, run_count, slen, off, chlab, chcum,
                       root, pos)


@jit
def _cmp_fp(kind, run_child, run_count, slen, off, chlab, chcum, fps, fprev,
            base, root, n, pat, pf, pr, m, p0, side, start, klen, krev):
    qlen = _q_len(m, p0, side)
    lim = qlen if qlen < klen else klen
    lo = 0
    hi = lim
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        qf = _q_fp(pf, pr, base, m, p0, side, mid)
        kf = _key_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                     fps, fprev, base, root, n, start, klen, krev, mid)
        if qf == kf:
            lo = mid
        else:
            hi = mid - 1
    l = lo
    if l == qlen:
        return MATCH
    if l == klen:
        return LESS
    qc = _q_char(pat, m, p0, side, l + 1)
    kc = _key_char(kind, run_child, run_count, slen, off, chlab, chcum,
                   root, start, klen, krev, l + 1)
    if kc < qc:
        return LESS
    return GREATER


@jit
def _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
               root, pat, m, p0, side, start, klen, krev, scratch):
    # ground-truth comparison: extracts the key prefix and compares bytes
    qlen = _q_len(m, p0, side)
    lim = qlen if qlen < klen else klen
    if krev == 1:
        dag_extract(kind, run_child, run_count, slen, off, chlab, chcum,
                    root, start + klen - lim, start + klen - 1, scratch)
        i = 0
        j = lim - 1
        while i < j:
            tmp = scratch[i]
            scratch[i] = scratch[j]
            scratch[j] = tmp
            i += 1
            j -= 1
    else:
        dag_extract(kind, run_child, run_count, slen, off, chlab, chcum,
                    root, start, start + lim - 1, scratch)
    t = 0
    while t < lim:
        qc = _q_char(pat, m, p0, side, t + 1)
        kc = scratch[t]
        if qc != kc:
            if kc < qc:
                return LESS
            return GREATER
        t += 1
    if t == qlen:
        return MATCH
    return LESS


@jit
def wp_search(kind, run_child, run_count, slen, off, chlab, chcum, fps, fprev,
              base, root, n, keys_start, keys_len, krev,
              pat, pf, pr, m, p0, side):
    """Rank range [a, b] of keys having the pattern piece as a prefix.

    Fingerprint-guided binary search first; the resulting boundaries are
    then certified by exact byte comparisons, falling back to a fully
    exact search when certification fails (e.g. fingerprint collisions).
    Returns (-1, -2) when no key matches.
    """
    k = len(keys_start)
    if k == 0:
        return -1, -2
    qlen = _q_len(m, p0, side)
    if qlen == 0:
        return 0, k - 1
    scratch = np.empty(qlen + 1, np.int64)

    lo = 0
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        c = _cmp_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                    fps, fprev, base, root, n, pat, pf, pr, m, p0, side,
                    keys_start[mid], keys_len[mid], krev)
        if c == LESS:
            lo = mid + 1
        else:
            hi = mid
    a = lo
    lo = a
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        c = _cmp_fp(kind, run_child, run_count, slen, off, chlab, chcum,
                    fps, fprev, base, root, n, pat, pf, pr, m, p0, side,
                    keys_start[mid], keys_len[mid], krev)
        if c == GREATER:
            hi = mid
        else:
            lo = mid + 1
    b = lo - 1

    ok = True
    if a > b:
        # certify the claimed empty range from its two neighbours
        if a > 0:
            c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                           root, pat, m, p0, side,
                           keys_start[a - 1], keys_len[a - 1], krev, scratch)
            if c != LESS:
                ok = False
        if ok and a < k:
            c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                           root, pat, m, p0, side,
                           keys_start[a], keys_len[a], krev, scratch)
            if c != GREATER:
                ok = False
        if ok:
            return -1, -2
    else:
        for idx in (a, b):
            c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                           root, pat, m, p0, side,
                           keys_start[idx], keys_len[idx], krev, scratch)
            if c != MATCH:
                ok = False
        if ok and a > 0:
            c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                           root, pat, m, p0, side,
                           keys_start[a - 1], keys_len[a - 1], krev, scratch)
            if c == MATCH:
                ok = False
        if ok and b < k - 1:
            c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                           root, pat, m, p0, side,
                           keys_start[b + 1], keys_len[b + 1], krev, scratch)
            if c == MATCH:
                ok = False
        if ok:
            return a, b

    # exact fallback: collisions (or an adversarial fingerprint function)
    # broke the fast search; redo both bisections with true comparisons
    lo = 0
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                       root, pat, m, p0, side,
                       keys_start[mid], keys_len[mid], krev, scratch)
        if c == LESS:
            lo = mid + 1
        else:
            hi = mid
    a = lo
    lo = a
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        c = _cmp_exact(kind, run_child, run_count, slen, off, chlab, chcum,
                       root, pat, m, p0, side,
                       keys_start[mid], keys_len[mid], krev, scratch)
        if c == GREATER:
            hi = mid
        else:
            lo = mid + 1
    b = lo - 1
    if a > b:
        return -1, -2
    return a, b


# ---------------------------------------------------------------------------
# wavelet matrix over rank-space y values in x order (63-bit words)


@jit
def popcount63(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    x = x + (x >> 8)
    x = x + (x >> 16)
    x = x + (x >> 32)
    return x & 0x7F


@jit
def wm_rank1(words, cums, lev, pos):
    w = pos // 63
    b = pos - w * 63
    r = cums[lev, w]
    if b > 0:
        r += popcount63(words[lev, w] & ((np.int64(1) << b) - 1))
    return r


@jit
def wm_report(words, cums, zcnt, nbits, final_perm, s, e, y1, y2, out):
    # point ids whose y value lies in [y1, y2] among x positions [s, e)
    cnt = 0
    if s >= e or y1 > y2:
        return 0
    cap = 2 * nbits + 4
    st_lev = np.empty(cap, np.int64)
    st_s = np.empty(cap, np.int64)
    st_e = np.empty(cap, np.int64)
    st_vlo = np.empty(cap, np.int64)
    st_vhi = np.empty(cap, np.int64)
    sp = 0
    st_lev[0] = 0
    st_s[0] = s
    st_e[0] = e
    st_vlo[0] = 0
    st_vhi[0] = (np.int64(1) << nbits) - 1
    sp = 1
    while sp > 0:
        sp -= 1
        lev = st_lev[sp]
        s = st_s[sp]
        e = st_e[sp]
        vlo = st_vlo[sp]
        vhi = st_vhi[sp]
        if s >= e:
            continue
        if y1 <= vlo and vhi <= y2:
            for pos in range(s, e):
                pp = pos
                lv = lev
                while lv < nbits:
                    bit = (words[lv, pp // 63] >> (pp - (pp // 63) * 63)) & 1
                    r1 = wm_rank1(words, cums, lv, pp)
                    if bit:
                        pp = zcnt[lv] + r1
                    else:
                        pp = pp - r1
                    lv += 1
                out[cnt] = final_perm[pp]
                cnt += 1
            continue
        if lev == nbits:
            continue
        vmid = (vlo + vhi) >> 1
        r1s = wm_rank1(words, cums, lev, s)
        r1e = wm_rank1(words, cums, lev, e)
        if y1 <= vmid:
            st_lev[sp] = lev + 1
            st_s[sp] = s - r1s
            st_e[sp] = e - r1e
            st_vlo[sp] = vlo
            st_vhi[sp] = vmid
            sp += 1
        if y2 > vmid:
            st_lev[sp] = lev + 1
            st_s[sp] = zcnt[lev] + r1s
            st_e[sp] = zcnt[lev] + r1e
            st_vlo[sp] = vmid + 1
            st_vhi[sp] = vhi
            sp += 1
    return cnt


@jit
def bisect_right64(arr, x):
    lo = 0
    hi = len(arr)
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@jit
def bisect_left64(arr, x):
    lo = 0
    hi = len(arr)
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@jit
def expand_worklist(words, cums, zcnt, nbits, final_perm, xs_sorted, ys_unique,
                    deltas, prim, m, n):
    """Close a primary occurrence set under phrase-source copying.

    Every worklist item is a 1-based occurrence start; a phrase whose
    source interval contains [q, q+m-1] copies it delta positions to the
    right.  Returns the unsorted array of all occurrence starts.
    """
    visited = np.zeros(n + 2, np.uint8)
    out = np.empty(n + 1, np.int64)
    npts = len(deltas)
    buf = np.empty(npts if npts > 0 else 1, np.int64)
    ny = len(ys_unique)
    cnt = 0
    for i in range(len(prim)):
        q = prim[i]
        if visited[q] == 0:
            visited[q] = 1
            out[cnt] = q
            cnt += 1
    head = 0
    while head < cnt:
        q = out[head]
        head += 1
        if npts == 0:
            continue
        hi_x = bisect_right64(xs_sorted, q)
        if hi_x == 0:
            continue
        ylo = bisect_left64(ys_unique, q + m - 1)
        if ylo >= ny:
            continue
        c = wm_report(words, cums, zcnt, nbits, final_perm, 0, hi_x,
                      ylo, ny - 1, buf)
        for t in range(c):
            pos = q + deltas[buf[t]]
            if visited[pos] == 0:
                visited[pos] = 1
                out[cnt] = pos
                cnt += 1
    return out[:cnt]


# ---------------------------------------------------------------------------
# suffix-array pattern search over the bordered-context concatenation


@jit
def sa_find_range(concat, sa, pat):
    # inclusive rank range of suffixes having pat as a prefix, or (-1, -2)
    m = len(pat)
    k = len(sa)
    lo = 0
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        pos = sa[mid]
        c = 0
        t = 0
        while t < m:
            if pos + t >= len(concat):
                c = LESS
                break
            kc = concat[pos + t]
            qc = pat[t]
            if kc < qc:
                c = LESS
                break
            if kc > qc:
                c = GREATER
                break
            t += 1
        if c == LESS:
            lo = mid + 1
        else:
            hi = mid
    a = lo
    hi = k
    while lo < hi:
        mid = (lo + hi) >> 1
        pos = sa[mid]
        c = 0
        t = 0
        while t < m:
            if pos + t >= len(concat):
                c = LESS
                break
            kc = concat[pos + t]
            qc = pat[t]
            if kc < qc:
                c = LESS
                break
            if kc > qc:
                c = GREATER
                break
            t += 1
        if c == GREATER:
            hi = mid
        else:
            lo = mid + 1
    b = lo - 1
    if a > b:
        return -1, -2
    return a, b
