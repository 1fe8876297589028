# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

Mirrors the recurrences of ``_kernel_py`` over 64-bit machine words.  Text
symbols are translated through a 256-entry id map so the mask tables can be
dense arrays over the pattern's reduced alphabet (id 0 is "any symbol not
in the pattern").  The packing code in :mod:`swapmatch.engines` pre-folds
per-character mask factors into the keyed tables, so the hot loops do a
single table row read per character:

* lookahead engine: row (prev, cur, next) already carries
  ``chain & occupancy(cur) & (occupancy(next) >> 1)``,
* carry-register engine: each pair row carries five words:
  ``pair & occupancy`` , up, down, ``~(down|middle)`` and ``~up``.

Registers for patterns up to 64 columns live in a single word; longer
patterns use word arrays of up to MAX_WORDS words, beyond which callers
fall back to the Python kernels.  All kernels return 1-based end positions
as a Python list.
"""

from libc.stdint cimport int16_t, uint8_t, uint64_t

cdef enum:
    MAXW = 8

MAX_WORDS = MAXW


# --- shift-and (exact and column-set variants share the recurrence) ---------

def shift_and(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
              const uint64_t[:, ::1] d):
    cdef Py_ssize_t n = text.shape[0]
    if n < m:
        return []
    if d.shape[1] == 1:
        return _shift_and_w1(text, m, idmap, d)
    return _shift_and_mw(text, m, idmap, d)


cdef list _shift_and_w1(const uint8_t[::1] text, int m,
                        const uint8_t[::1] idmap, const uint64_t[:, ::1] d):
    cdef Py_ssize_t n = text.shape[0], i
    cdef uint64_t r = 0
    cdef uint64_t hi = (<uint64_t>1) << (m - 1)
    cdef list out = []
    for i in range(n):
        r = ((r << 1) | 1) & d[idmap[text[i]], 0]
        if r & hi:
            out.append(i + 1)
    return out


cdef list _shift_and_mw(const uint8_t[::1] text, int m,
                        const uint8_t[::1] idmap, const uint64_t[:, ::1] d):
    cdef Py_ssize_t n = text.shape[0], i
    cdef int W = d.shape[1], w
    cdef int hiw = (m - 1) >> 6
    cdef uint64_t hib = (<uint64_t>1) << ((m - 1) & 63)
    cdef uint64_t r[MAXW]
    cdef uint64_t carry, top
    cdef int row
    cdef list out = []
    for w in range(W):
        r[w] = 0
    for i in range(n):
        row = idmap[text[i]]
        carry = 1
        for w in range(W):
            top = r[w] >> 63
            r[w] = ((r[w] << 1) | carry) & d[row, w]
            carry = top
        if r[hiw] & hib:
            out.append(i + 1)
    return out


# --- lookahead engine --------------------------------------------------------

def smalgo1(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
            const uint64_t[:, ::1] d, const uint64_t[:, ::1] p3d, int k):
    """Chain-mask engine; requires m >= 3 (callers route smaller m away).

    ``p3d`` has one pre-folded row per id triple; ``d`` (plain occupancy
    words) only seeds the first step, which has no preceding character.
    """
    cdef Py_ssize_t n = text.shape[0]
    if n < m:
        return []
    if d.shape[1] == 1:
        return _smalgo1_w1(text, m, idmap, d, p3d, k)
    return _smalgo1_mw(text, m, idmap, d, p3d, k)


cdef list _smalgo1_w1(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
                      const uint64_t[:, ::1] d, const uint64_t[:, ::1] p3d, int k):
    cdef Py_ssize_t n = text.shape[0], i
    cdef uint64_t r
    cdef uint64_t hi = (<uint64_t>1) << (m - 2)
    cdef int pair, cur, la
    cdef list out = []
    cur = idmap[text[0]]
    la = idmap[text[1]]
    # First step: only column 1 can be live, and m >= 3, so no match test.
    r = d[cur, 0] & (d[la, 0] >> 1) & 1
    pair = cur * k + la
    cur = la
    for i in range(2, n):
        la = idmap[text[i]]
        r = ((r << 1) | 1) & p3d[pair * k + la, 0]
        if r & hi:
            out.append(i + 1)
        pair = cur * k + la
        cur = la
    return out


cdef list _smalgo1_mw(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
                      const uint64_t[:, ::1] d, const uint64_t[:, ::1] p3d, int k):
    cdef Py_ssize_t n = text.shape[0], i, row
    cdef int W = d.shape[1], w
    cdef int hiw = (m - 2) >> 6
    cdef uint64_t hib = (<uint64_t>1) << ((m - 2) & 63)
    cdef uint64_t r[MAXW]
    cdef uint64_t carry, top
    cdef int pair, cur, la
    cdef list out = []
    cur = idmap[text[0]]
    la = idmap[text[1]]
    r[0] = d[cur, 0] & (d[la, 0] >> 1) & 1
    for w in range(1, W):
        r[w] = 0
    pair = cur * k + la
    cur = la
    for i in range(2, n):
        la = idmap[text[i]]
        row = pair * k + la
        carry = 1
        for w in range(W):
            top = r[w] >> 63
            r[w] = ((r[w] << 1) | carry) & p3d[row, w]
            carry = top
        if r[hiw] & hib:
            out.append(i + 1)
        pair = cur * k + la
        cur = la
    return out


# --- carry-register engine ---------------------------------------------------
#
# Per pair row the packed table holds five fields of W words each, in field
# major order: 0 pair&occupancy, 1 up, 2 down, 3 ~(down|middle), 4 ~up.
# The veto algebra uses that (x | y) & z & x == x & z:
#     checkup'   = (checkup<<1 | up) & ~down & ~middle
#     veto       = (checkup<<1) & checkup'  ==  (checkup<<1) & ~down & ~middle

def smalgo2(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
            const uint64_t[:, ::1] d, const uint64_t[:, ::1] tab, int k):
    cdef Py_ssize_t n = text.shape[0]
    if n < m:
        return []
    if d.shape[1] == 1:
        return _smalgo2_w1(text, m, idmap, d, tab, k)
    return _smalgo2_mw(text, m, idmap, d, tab, k)


cdef list _smalgo2_w1(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
                      const uint64_t[:, ::1] d, const uint64_t[:, ::1] tab, int k):
    cdef Py_ssize_t n = text.shape[0], i, row
    cdef uint64_t r, cu = 0, cd = 0
    cdef uint64_t t, up, dn, ndm, nu
    cdef uint64_t hi = (<uint64_t>1) << (m - 1)
    cdef int prev, c
    cdef list out = []
    prev = idmap[text[0]]
    r = d[prev, 0] & 1
    if r & hi:  # m == 1 is routed away, but keep the test shape uniform
        out.append(1)
    for i in range(1, n):
        c = idmap[text[i]]
        row = prev * k + c
        r = ((r << 1) | 1) & tab[row, 0]
        up = tab[row, 1]
        dn = tab[row, 2]
        ndm = tab[row, 3]
        nu = tab[row, 4]
        t = cu << 1
        r = r & ~(t & ndm)
        cu = (t | up) & ndm
        t = cd << 1
        r = r & ~(t & nu)
        cd = (t | dn) & nu
        if r & hi:
            out.append(i + 1)
        prev = c
    return out


cdef list _smalgo2_mw(const uint8_t[::1] text, int m, const uint8_t[::1] idmap,
                      const uint64_t[:, ::1] d, const uint64_t[:, ::1] tab, int k):
    cdef Py_ssize_t n = text.shape[0], i, row
    cdef int W = d.shape[1], w
    cdef int hiw = (m - 1) >> 6
    cdef uint64_t hib = (<uint64_t>1) << ((m - 1) & 63)
    cdef uint64_t r[MAXW]
    cdef uint64_t cu[MAXW]
    cdef uint64_t cd[MAXW]
    cdef uint64_t t, up, dn, ndm, nu, rcarry, ucarry, dcarry, top
    cdef int prev, c
    cdef list out = []
    prev = idmap[text[0]]
    r[0] = d[prev, 0] & 1
    for w in range(1, W):
        r[w] = 0
    for w in range(W):
        cu[w] = 0
        cd[w] = 0
    for i in range(1, n):
        c = idmap[text[i]]
        row = prev * k + c
        rcarry = 1
        ucarry = 0
        dcarry = 0
        for w in range(W):
            up = tab[row, W + w]
            dn = tab[row, 2 * W + w]
            ndm = tab[row, 3 * W + w]
            nu = tab[row, 4 * W + w]
            top = r[w] >> 63
            r[w] = ((r[w] << 1) | rcarry) & tab[row, w]
            rcarry = top
            t = (cu[w] << 1) | ucarry
            ucarry = cu[w] >> 63
            r[w] = r[w] & ~(t & ndm)
            cu[w] = (t | up) & ndm
            t = (cd[w] << 1) | dcarry
            dcarry = cd[w] >> 63
            r[w] = r[w] & ~(t & nu)
            cd[w] = (t | dn) & nu
        if r[hiw] & hib:
            out.append(i + 1)
        prev = c
    return out


# --- exact reference matchers ------------------------------------------------

def swap_dp(const uint8_t[::1] text, const uint8_t[::1] pat):
    """Per-alignment dynamic program over the swap rules."""
    cdef Py_ssize_t n = text.shape[0], m = pat.shape[0], s, i
    cdef bint can2, can1, ok
    cdef uint8_t w
    cdef list out = []
    if n < m:
        return []
    for s in range(n - m + 1):
        can2 = False
        can1 = True
        for i in range(m):
            w = text[s + i]
            ok = can1 and w == pat[i]
            if i >= 1 and can2 and text[s + i - 1] == pat[i] and w == pat[i - 1] \
                    and pat[i - 1] != pat[i]:
                ok = True
            can2 = can1
            can1 = ok
        if can1:
            out.append(s + m)
    return out


def pgraph(const uint8_t[::1] text, int m, const int16_t[:, ::1] labels,
           const uint8_t[:, ::1] incoming):
    """Reachable-row-set scan over the swap-state graph, per alignment.

    ``labels[j, ri]`` is the symbol of the row-ri vertex in column j+1
    (-1 when the vertex does not exist); ``incoming[j, ri]`` is the bitmask
    of source rows one column to the left.  Row index 0, 1, 2 stands for
    row -1, 0, +1; starts are rows {0, +1}, accepts are rows {-1, 0}.
    """
    cdef Py_ssize_t n = text.shape[0], s, j
    cdef int cur, nxt, ri
    cdef int16_t c
    cdef list out = []
    if n < m:
        return []
    for s in range(n - m + 1):
        c = text[s]
        cur = 0
        if labels[0, 1] == c:
            cur |= 2
        if labels[0, 2] == c:
            cur |= 4
        for j in range(1, m):
            c = text[s + j]
            nxt = 0
            for ri in range(3):
                if labels[j, ri] == c and (incoming[j, ri] & cur):
                    nxt |= 1 << ri
            cur = nxt
            if not cur:
                break
        if cur & 3:
            out.append(s + m)
    return out
