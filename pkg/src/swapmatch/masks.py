"""Mask tables derived from the swap-state graph.

All tables share the bit convention of :class:`swapmatch.bitvec.BitVec`:
bit i (1-based, stored at the low end) talks about pattern column i.

Four table families feed the two streaming engines:

* occupancy masks (one per symbol): bit i set iff the symbol may occupy
  column i of the swap-state matrix, i.e. it appears in the column's
  neighborhood set,
* chain masks keyed by symbol triples: bit g set iff a two-edge state path
  through columns g-1, g, g+1 spells the triple (g is the middle column),
* edge masks keyed by symbol pairs: bit g set iff some state edge into
  column g spells the pair,
* level masks (up/down/middle, keyed by symbol pairs): the edge masks split
  by the row movement of the edge, which is what disambiguates whether an
  exchange is being opened, closed, or not in progress.

Triple and pair masks additionally carry bit 1 in every entry, including
the default for absent keys: a fresh alignment may begin at any text
position, and column 1 has no incoming edge to constrain it.  Level masks
have no such convention and default to all-zero.

Edges that would realize an exchange of two identical characters (an
inadmissible swap) are excluded from the up/down level masks.  For the
pair and triple tables the exclusion is immaterial: any state path through
such an edge is label-equivalent to one that stays in row 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitvec import BitVec
from .model import PGraph, Symbol, build_pgraph, _check_pattern

PairKey = tuple[Symbol, Symbol]
TripleKey = tuple[Symbol, Symbol, Symbol]


def degenerate_columns(p: bytes) -> list[frozenset[Symbol]]:
    """Per-column symbol sets of the pattern's swap-state matrix.

    Column i collects the pattern characters that may sit at position i
    under some admissible swap: {p_i-1, p_i, p_i+1} clipped at the ends.
    """
    _check_pattern(p)
    m = len(p)
    cols = []
    for i in range(1, m + 1):
        members = {p[i - 1]}
        if i > 1:
            members.add(p[i - 2])
        if i < m:
            members.add(p[i])
        cols.append(frozenset(members))
    return cols


class _MaskTable:
    """Shared behavior: int-backed storage, BitVec views, default lookup."""

    __slots__ = ("width", "_table", "_default")

    def __init__(self, width: int, table: dict, default: int) -> None:
        self.width = width
        self._table = table
        self._default = default

    def mask(self, key) -> BitVec:
        return BitVec(self.width, self._table.get(key, self._default))

    @property
    def default(self) -> BitVec:
        return BitVec(self.width, self._default)

    def keys(self):
        return sorted(self._table)

    def raw(self) -> dict:
        """Masks as plain ints keyed as stored; engines feed on this."""
        return self._table

    @property
    def raw_default(self) -> int:
        return self._default

    def __len__(self) -> int:
        return len(self._table)


class DMaskTable(_MaskTable):
    """symbol -> occupancy mask; symbols outside the pattern map to zero."""

    def __init__(self, width: int, table: dict[Symbol, int]) -> None:
        super().__init__(width, table, 0)

    def symbols(self) -> list[Symbol]:
        return sorted(self._table)


class TripleMaskTable(_MaskTable):
    """(a, b, c) -> chain mask; absent triples map to the bit-1 default."""


class PairMaskTable(_MaskTable):
    """(a, b) -> edge mask; absent pairs map to the bit-1 default."""


@dataclass(frozen=True)
class LevelMaskTables:
    """Up/down/middle split of the pair edges, all defaulting to zero."""

    up: PairMaskTable
    down: PairMaskTable
    middle: PairMaskTable


def build_dmasks(p: bytes) -> DMaskTable:
    cols = degenerate_columns(p)
    table: dict[Symbol, int] = {}
    for i, members in enumerate(cols, 1):
        for c in members:
            table[c] = table.get(c, 0) | (1 << (i - 1))
    return DMaskTable(len(p), table)


def build_exact_dmasks(p: bytes) -> DMaskTable:
    """Plain per-symbol position masks, used by the exact matcher."""
    _check_pattern(p)
    table: dict[Symbol, int] = {}
    for i, c in enumerate(p, 1):
        table[c] = table.get(c, 0) | (1 << (i - 1))
    return DMaskTable(len(p), table)


def _adjacency(g: PGraph) -> dict[tuple[int, int], list[tuple[int, int]]]:
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in g.all_edges():
        adj.setdefault(u, []).append(v)
    return adj


def build_triple_pmasks(p: bytes) -> TripleMaskTable:
    """Chain masks for the lookahead engine.

    One entry per labeled two-edge path; the bit is the column of the
    middle vertex.  Patterns shorter than 3 have no two-edge paths and get
    an empty table (the engine routes such patterns elsewhere).
    """
    _check_pattern(p)
    m = len(p)
    table: dict[TripleKey, int] = {}
    if m >= 3:
        g = build_pgraph(p)
        adj = _adjacency(g)
        labels = g.labels
        for u0, u1 in g.all_edges():
            for u2 in adj.get(u1, ()):
                key = (labels[u0], labels[u1], labels[u2])
                table[key] = table.get(key, 0) | (1 << (u1[1] - 1))
        for key in table:
            table[key] |= 1
    return TripleMaskTable(m, table, default=1)


def _swap_begins_at(p: bytes, col: int) -> bool:
    """True iff entering row +1 at `col` opens an admissible exchange."""
    return p[col - 1] != p[col]


def _swap_closes_at(p: bytes, col: int) -> bool:
    """True iff entering row -1 at `col` closes an admissible exchange."""
    return p[col - 2] != p[col - 1]


def build_pair_pmasks(p: bytes) -> PairMaskTable:
    """Edge masks for the carry-register engine; defined for m >= 2."""
    _check_pattern(p)
    m = len(p)
    if m < 2:
        raise ValueError("pair masks need a pattern of length >= 2")
    g = build_pgraph(p)
    labels = g.labels
    table: dict[PairKey, int] = {}
    for u, v in g.all_edges():
        key = (labels[u], labels[v])
        table[key] = table.get(key, 0) | (1 << (v[1] - 1))
    for key in table:
        table[key] |= 1
    return PairMaskTable(m, table, default=1)


def build_level_masks(p: bytes) -> LevelMaskTables:
    """Split the pair edges by row movement.

    up: edges into row -1 (an exchange completes at this column);
    down: edges into row +1 (an exchange opens here);
    middle: edges into row 0.  Edges realizing an exchange of identical
    characters are inadmissible and appear in no level mask.
    """
    _check_pattern(p)
    m = len(p)
    if m < 2:
        raise ValueError("level masks need a pattern of length >= 2")
    g = build_pgraph(p)
    labels = g.labels
    up: dict[PairKey, int] = {}
    down: dict[PairKey, int] = {}
    middle: dict[PairKey, int] = {}
    for u, v in g.all_edges():
        key = (labels[u], labels[v])
        row, col = v
        bit = 1 << (col - 1)
        if row == -1:
            if _swap_closes_at(p, col):
                up[key] = up.get(key, 0) | bit
        elif row == 1:
            if _swap_begins_at(p, col):
                down[key] = down.get(key, 0) | bit
        else:
            middle[key] = middle.get(key, 0) | bit
    return LevelMaskTables(
        up=PairMaskTable(m, up, default=0),
        down=PairMaskTable(m, down, default=0),
        middle=PairMaskTable(m, middle, default=0),
    )


# --- dump format -------------------------------------------------------------

_WHICH = ("d", "p3", "p2", "up", "down", "middle")


def _render_symbol(c: Symbol) -> str:
    if 33 <= c <= 126 and chr(c) not in {",", "*", "\\"}:
        return chr(c)
    return f"\\x{c:02x}"


def _render_key(key) -> str:
    if isinstance(key, tuple):
        return ",".join(_render_symbol(c) for c in key)
    return _render_symbol(key)


def _dump_table(table: _MaskTable) -> list[str]:
    lines = [f"{_render_key(k)} {table.mask(k).bits()}" for k in table.keys()]
    lines.append(f"* {table.default.bits()}")
    return lines


def dump_masks(p: bytes, which: str = "all") -> str:
    """Render mask tables, one `KEY bits` line per key, sorted by key.

    The trailing `*` line is the value returned for keys not in the table.
    `which` selects a single family or `all` for every family with a
    `[name]` section header.
    """
    if which != "all" and which not in _WHICH:
        raise ValueError(f"unknown table selector: {which!r}")
    m = len(p)
    sections: dict[str, list[str]] = {}
    if which in ("d", "all"):
        sections["d"] = _dump_table(build_dmasks(p))
    if which in ("p3", "all"):
        sections["p3"] = _dump_table(build_triple_pmasks(p))
    if m >= 2:
        if which in ("p2", "all"):
            sections["p2"] = _dump_table(build_pair_pmasks(p))
        if which in ("up", "down", "middle", "all"):
            levels = build_level_masks(p)
            for name in ("up", "down", "middle"):
                if which in (name, "all"):
                    sections[name] = _dump_table(getattr(levels, name))
    elif which in ("p2", "up", "down", "middle"):
        raise ValueError(f"table {which!r} undefined for a length-1 pattern")
    if which != "all":
        return "\n".join(sections[which]) + "\n"
    out = []
    for name in _WHICH:
        if name in sections:
            out.append(f"[{name}]")
            out.extend(sections[name])
    return "\n".join(out) + "\n"
