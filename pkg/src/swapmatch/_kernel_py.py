"""Pure-Python search kernels.

Registers are plain ints (bit i-1 carries pattern column i), so word width
is a non-issue here; the compiled kernels in ``_kernel`` mirror these loops
over 64-bit words.  Every kernel consumes the character stream exactly once
and keeps O(1) registers, which makes the generators below both the
portable fallback and the structural witness for single-pass behavior.

Mask arguments are the ``raw()`` dicts of the mask tables: symbol -> int,
pair -> int, triple -> int.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def iter_shift_and(chars: Iterable[int], m: int, d: dict[int, int]) -> Iterator[int]:
    """Classic shift-and recurrence; `d` decides what it matches.

    With exact position masks this is exact substring search; with the
    occupancy masks it is the column-set relaxation of swap matching.
    """
    hi = 1 << (m - 1)
    dget = d.get
    r = 0
    j = 0
    for c in chars:
        j += 1
        r = ((r << 1) | 1) & dget(c, 0)
        if r & hi:
            yield j


def iter_smalgo1(
    chars: Iterable[int],
    m: int,
    d: dict[int, int],
    p3: dict[tuple[int, int, int], int],
) -> Iterator[int]:
    """Lookahead engine: occupancy masks plus two-edge chain masks.

    Needs m >= 3 (shorter patterns have no chain masks and are routed
    elsewhere by the engine).  Processing character j consults the triple
    (t_{j-1}, t_j, t_{j+1}); a set bit m-1 after step j signals a match
    ending at j+1, so the final character never starts a step of its own.
    """
    hi = 1 << (m - 2)
    dget = d.get
    p3get = p3.get
    it = iter(chars)
    cur = next(it, None)
    if cur is None:
        return
    r = 0
    prev = -1
    j = 0
    for la in it:
        j += 1
        pm = 1 if j == 1 else p3get((prev, cur, la), 1)
        r = ((r << 1) | 1) & dget(cur, 0) & (dget(la, 0) >> 1) & pm
        if r & hi:
            yield j + 1
        prev, cur = cur, la


def iter_smalgo2(
    chars: Iterable[int],
    m: int,
    d: dict[int, int],
    p2: dict[tuple[int, int], int],
    up: dict[tuple[int, int], int],
    down: dict[tuple[int, int], int],
    middle: dict[tuple[int, int], int],
) -> Iterator[int]:
    """Carry-register engine: pair masks plus level-change vetoes.

    Two carry registers remember columns whose last transition was
    unambiguously an exchange opening (checkdown) or completion (checkup);
    the next transition must continue the exchange accordingly or the
    alignment is vetoed.  A set bit m after step j signals a match ending
    at j.
    """
    hi = 1 << (m - 1)
    mask = (1 << m) - 1
    dget = d.get
    r = cu = cd = 0
    prev = -1
    j = 0
    for c in chars:
        j += 1
        if j == 1:
            pm, u, dn, mid = 1, 0, 0, 0
        else:
            key = (prev, c)
            pm = p2.get(key, 1)
            u = up.get(key, 0)
            dn = down.get(key, 0)
            mid = middle.get(key, 0)
        r = ((r << 1) | 1) & pm & dget(c, 0)
        t = (cu << 1) & mask
        cu = ((cu << 1) | u) & ~dn & ~mid & mask
        r &= ~(t & cu)
        t = (cd << 1) & mask
        cd = ((cd << 1) | dn) & ~u & mask
        r &= ~(t & cd)
        if r & hi:
            yield j
        prev = c
