"""Ground-truth swap matching semantics.

A pattern occurrence may exchange adjacent pattern characters as long as the
exchanges are disjoint and never touch a pair of identical characters.  This
module defines that relation from first principles (enumeration of swapped
versions, plus an equivalent per-alignment dynamic program) and builds the
swap-state graph that the bit-parallel engines are derived from.

Matches are reported as sorted, duplicate-free lists of 1-based end
positions: a pattern of length m matching the window ``t[e-m+1..e]`` is
reported as ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Symbol = int
Edge = tuple[tuple[int, int], tuple[int, int]]

# Enumerating swapped versions is exponential in the pattern length
# (Fibonacci growth); beyond this length the oracle switches to the
# per-alignment dynamic program, which is validated against enumeration
# at small lengths.
ORACLE_ENUM_LIMIT = 16


def _check_pattern(p: bytes) -> None:
    if len(p) < 1:
        raise ValueError("pattern must not be empty")


def enumerate_swap_sets(m: int) -> list[frozenset[int]]:
    """All admissible sets of swap start positions for a length-m pattern.

    A set contains positions ``i`` in ``1..m-1``, each standing for an
    exchange of positions i and i+1; no two elements may be adjacent.  The
    count is the Fibonacci number Fib(m+1).  Character equality is not
    considered here; it is filtered per pattern by the callers.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out: list[frozenset[int]] = []
    cur: list[int] = []

    def rec(i: int) -> None:
        if i >= m:
            out.append(frozenset(cur))
            return
        rec(i + 1)
        cur.append(i)
        rec(i + 2)
        cur.pop()

    rec(1)
    return out


def apply_swaps(p: bytes, swaps: Iterable[int]) -> bytes:
    """Exchange positions i, i+1 for every i in `swaps`.

    Rejects overlapping swaps and swaps of identical characters, which do
    not constitute an admissible exchange.
    """
    _check_pattern(p)
    m = len(p)
    chosen = sorted(set(swaps))
    q = bytearray(p)
    prev = -1
    for i in chosen:
        if not 1 <= i <= m - 1:
            raise ValueError(f"swap position {i} out of range 1..{m - 1}")
        if i == prev + 1:
            raise ValueError(f"swap positions {prev} and {i} overlap")
        if p[i - 1] == p[i]:
            raise ValueError(f"positions {i},{i + 1} hold identical characters")
        q[i - 1], q[i] = q[i], q[i - 1]
        prev = i
    return bytes(q)


def enumerate_swap_versions(p: bytes) -> set[bytes]:
    """Every distinct string reachable from p by admissible swaps."""
    _check_pattern(p)
    versions: set[bytes] = set()
    for s in enumerate_swap_sets(len(p)):
        usable = [i for i in s if p[i - 1] != p[i]]
        versions.add(apply_swaps(p, usable))
    return versions


def random_swap_set(p: bytes, rng) -> list[int]:
    """Draw one admissible swap set without enumerating them all.

    Scans left to right, flipping a coin at each swappable pair.  Not
    uniform over all sets, but every admissible set has positive
    probability; sufficient for planting occurrences.
    """
    m = len(p)
    out: list[int] = []
    i = 1
    while i < m:
        if p[i - 1] != p[i] and rng.random() < 0.5:
            out.append(i)
            i += 2
        else:
            i += 1
    return out


def swap_dp_search(p: bytes, t: bytes) -> list[int]:
    """Per-alignment dynamic program deciding swap matches.

    For each alignment, position i is reachable either by matching p[i]
    directly on top of a reachable prefix of length i-1, or by consuming an
    exchanged pair on top of a reachable prefix of length i-2.  Agrees with
    the enumeration definition on all inputs.
    """
    _check_pattern(p)
    m, n = len(p), len(t)
    out = []
    for s in range(n - m + 1):
        can2, can1 = False, True
        for i in range(m):
            w = t[s + i]
            ok = can1 and w == p[i]
            if i >= 1 and can2 and t[s + i - 1] == p[i] and w == p[i - 1] and p[i - 1] != p[i]:
                ok = True
            can2, can1 = can1, ok
        if can1:
            out.append(s + m)
    return out


def oracle_search(p: bytes, t: bytes) -> list[int]:
    """Reference matcher: enumeration for short patterns, DP beyond.

    The enumeration route is definitionally exact; the DP route is
    cross-checked against it on small inputs by the test suite.
    """
    _check_pattern(p)
    m, n = len(p), len(t)
    if m > n:
        return []
    if m > ORACLE_ENUM_LIMIT:
        return swap_dp_search(p, t)
    versions = enumerate_swap_versions(p)
    return [s + m for s in range(n - m + 1) if t[s:s + m] in versions]


# --- swap-state graph -------------------------------------------------------
#
# The pattern is laid out as a 3 x m matrix of states.  Row 0 at column i is
# the plain character p_i; row +1 is "the swap of (i, i+1) has begun", so the
# column reads p_{i+1}; row -1 is "the swap of (i-1, i) is completing", so
# the column reads p_{i-1}.  Edges connect consecutive columns wherever both
# endpoints exist:
#
#     row  0 -> rows 0, +1      (stay plain, or begin a swap)
#     row -1 -> rows 0, +1      (finish a swap, then either)
#     row +1 -> row -1          (a begun swap must complete)
#
# A window matches iff some source-column state chain spells the window.


@dataclass(frozen=True)
class PGraph:
    """Swap-state graph of a pattern: 3m-2 vertices, at most 5m-9 edges.

    Vertices are (row, col) pairs with row in {-1, 0, +1} and col in 1..m;
    row -1 exists for col >= 2 and row +1 for col <= m-1.  `labels` maps
    each vertex to its symbol; `edges` groups the edge lists by source row.
    """

    m: int
    labels: dict[tuple[int, int], Symbol]
    edges: dict[int, list[Edge]]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.edges.values())

    def all_edges(self) -> Iterator[Edge]:
        for row in (-1, 0, 1):
            yield from self.edges[row]

    def out_edges(self, vertex: tuple[int, int]) -> list[tuple[int, int]]:
        return [v for (u, v) in self.edges[vertex[0]] if u == vertex]


def build_pgraph(p: bytes) -> PGraph:
    _check_pattern(p)
    m = len(p)
    labels: dict[tuple[int, int], Symbol] = {}
    for i in range(2, m + 1):
        labels[(-1, i)] = p[i - 2]
    for i in range(1, m + 1):
        labels[(0, i)] = p[i - 1]
    for i in range(1, m):
        labels[(1, i)] = p[i]

    e_minus: list[Edge] = []
    for i in range(2, m):
        e_minus.append(((-1, i), (0, i + 1)))
    for i in range(2, m - 1):
        e_minus.append(((-1, i), (1, i + 1)))
    e_zero: list[Edge] = []
    for i in range(1, m):
        e_zero.append(((0, i), (0, i + 1)))
    for i in range(1, m - 1):
        e_zero.append(((0, i), (1, i + 1)))
    e_plus: list[Edge] = [((1, i), (-1, i + 1)) for i in range(1, m)]
    return PGraph(m=m, labels=labels, edges={-1: e_minus, 0: e_zero, 1: e_plus})


@dataclass(frozen=True)
class TGraph:
    """The text as a labeled path: vertex i carries t_i, edges (i, i+1)."""

    labels: bytes

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return max(0, len(self.labels) - 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(1, len(self.labels)):
            yield (i, i + 1)


def build_tgraph(t: bytes) -> TGraph:
    return TGraph(labels=t)


_START_ROWS = (0, 1)
_ACCEPT_ROWS = (-1, 0)


def pgraph_search(g: PGraph, t: bytes) -> list[int]:
    """Column-by-column reachability over the swap-state graph.

    Path enumeration would be exponential; tracking the reachable row set
    per column decides each alignment in O(m).  End position e is reported
    iff a chain u_1..u_m exists with u_1 in column 1 rows {0,+1}, u_m in
    column m rows {-1,0}, and label(u_j) = t[e-m+j] throughout.
    """
    m, n = g.m, len(t)
    if m > n:
        return []
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in g.all_edges():
        adj.setdefault(u, []).append(v)
    labels = g.labels
    out = []
    for s in range(n - m + 1):
        cur = {(r, 1) for r in _START_ROWS
               if (r, 1) in labels and labels[(r, 1)] == t[s]}
        for j in range(2, m + 1):
            want = t[s + j - 1]
            cur = {v for u in cur for v in adj.get(u, ())
                   if labels[v] == want}
            if not cur:
                break
        if any(r in _ACCEPT_ROWS and c == g.m for (r, c) in cur):
            out.append(s + m)
    return out


def exact_occurrences(p: bytes, t: bytes) -> list[int]:
    """Plain substring occurrences by end position (no swaps)."""
    _check_pattern(p)
    out = []
    start = t.find(p)
    while start != -1:
        out.append(start + len(p))
        start = t.find(p, start + 1)
    return out
