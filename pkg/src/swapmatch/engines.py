"""Streaming searchers: exact and column-set shift-and, plus the two
bit-parallel swap matchers.

Every engine reads the text once with O(ceil(m/64)) words of register
state.  Two interchangeable kernel implementations exist: compiled loops
(``swapmatch._kernel``, built from Cython) and pure-Python generators
(``swapmatch._kernel_py``).  The compiled kernels are selected at import
when available; set ``SWAPMATCH_PURE=1`` to force the fallback, or pass
``impl="python"``/``impl="compiled"`` per engine.

The two swap matchers are sound but not exact: they never miss a swap
match, yet on patterns with alternating repeats (``abab`` and friends) the
register recurrences can accept a window that no admissible swap assignment
produces.  The differential harness in :mod:`swapmatch.verify` measures and
shrinks such over-reports against the exact matchers.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

import numpy as np

from . import _kernel_py
from .masks import (
    DMaskTable,
    LevelMaskTables,
    PairMaskTable,
    TripleMaskTable,
    build_dmasks,
    build_exact_dmasks,
    build_level_masks,
    build_pair_pmasks,
    build_triple_pmasks,
)
from .model import (
    ORACLE_ENUM_LIMIT,
    PGraph,
    build_pgraph,
    enumerate_swap_versions,
    exact_occurrences,
    oracle_search,
    pgraph_search,
    swap_dp_search,
    _check_pattern,
)

try:
    from . import _kernel as _ckernel
except ImportError:  # built without the extension
    _ckernel = None

_WORD_MASK = (1 << 64) - 1
# Dense triple tables are cubic in the reduced alphabet; past this many
# rows the packing cost outweighs the kernel, so the engine downgrades.
_MAX_TRIPLE_ROWS = 2_000_000


def compiled_available() -> bool:
    return _ckernel is not None


def default_impl() -> str:
    """Kernel chosen at import: respects SWAPMATCH_PURE, else compiled."""
    if os.environ.get("SWAPMATCH_PURE", "") not in ("", "0"):
        return "python"
    return "compiled" if compiled_available() else "python"


def _resolve_impl(impl: str | None) -> str:
    if impl is None:
        return default_impl()
    if impl not in ("compiled", "python"):
        raise ValueError(f"impl must be 'compiled' or 'python', got {impl!r}")
    if impl == "compiled" and not compiled_available():
        raise RuntimeError("compiled kernels are not available in this build")
    return impl


# --- table packing for the compiled kernels ----------------------------------

def _word_count(m: int) -> int:
    return (m + 63) // 64


def _to_words(value: int, nwords: int) -> list[int]:
    return [(value >> (64 * w)) & _WORD_MASK for w in range(nwords)]


def _id_map(symbols: Iterable[int]) -> tuple[np.ndarray, int] | None:
    """256-entry symbol -> id table; id 0 is reserved for foreign symbols."""
    syms = sorted(set(symbols))
    if len(syms) > 255:
        return None
    idmap = np.zeros(256, dtype=np.uint8)
    for i, s in enumerate(syms, start=1):
        idmap[s] = i
    return idmap, len(syms) + 1


def _pack_rows(rows: int, nwords: int, default: int) -> np.ndarray:
    base = np.array(_to_words(default, nwords), dtype=np.uint64)
    return np.tile(base, (rows, 1))


def _pack_syms(table: dict[int, int], idmap: np.ndarray, k: int, m: int) -> np.ndarray:
    nwords = _word_count(m)
    out = _pack_rows(k, nwords, 0)
    for sym, value in table.items():
        out[idmap[sym]] = _to_words(value, nwords)
    return out


def _pack_pairs(table: dict, default: int, idmap: np.ndarray, k: int, m: int) -> np.ndarray:
    nwords = _word_count(m)
    out = _pack_rows(k * k, nwords, default)
    for (a, b), value in table.items():
        out[int(idmap[a]) * k + int(idmap[b])] = _to_words(value, nwords)
    return out


def _pack_triples(table: dict, default: int, idmap: np.ndarray, k: int, m: int) -> np.ndarray:
    nwords = _word_count(m)
    out = _pack_rows(k * k * k, nwords, default)
    for (a, b, c), value in table.items():
        row = (int(idmap[a]) * k + int(idmap[b])) * k + int(idmap[c])
        out[row] = _to_words(value, nwords)
    return out


def _shift_back_words(d: np.ndarray) -> np.ndarray:
    """Per-row one-bit right shift across the word boundary."""
    out = d >> np.uint64(1)
    if d.shape[1] > 1:
        out[:, :-1] |= d[:, 1:] << np.uint64(63)
    return out


def _fold_triples(p3: np.ndarray, d: np.ndarray, k: int) -> np.ndarray:
    """Pre-AND each triple row with the occupancy factors of its middle and
    last symbol, so the search loop reads a single row per character."""
    nwords = d.shape[1]
    dshift = _shift_back_words(d)
    folded = (p3.reshape(k, k, k, nwords)
              & d[np.newaxis, :, np.newaxis, :]
              & dshift[np.newaxis, np.newaxis, :, :])
    return np.ascontiguousarray(folded.reshape(k * k * k, nwords))


def _fold_pairs(p2: np.ndarray, up: np.ndarray, dn: np.ndarray,
                mid: np.ndarray, d: np.ndarray, k: int) -> np.ndarray:
    """Five fields per pair row, field-major: pair&occupancy, up, down,
    ~(down|middle), ~up."""
    nwords = d.shape[1]
    pmd = (p2.reshape(k, k, nwords) & d[np.newaxis, :, :]).reshape(k * k, nwords)
    ndm = ~(dn | mid)
    nu = ~up
    return np.ascontiguousarray(np.concatenate([pmd, up, dn, ndm, nu], axis=1))


def _pgraph_tables(g: PGraph) -> tuple[np.ndarray, np.ndarray]:
    row_index = {-1: 0, 0: 1, 1: 2}
    labels = np.full((g.m, 3), -1, dtype=np.int16)
    for (row, col), sym in g.labels.items():
        labels[col - 1, row_index[row]] = sym
    incoming = np.zeros((g.m, 3), dtype=np.uint8)
    for u, v in g.all_edges():
        incoming[v[1] - 1, row_index[v[0]]] |= 1 << row_index[u[0]]
    return labels, incoming


def _compiled_fits(m: int) -> bool:
    return _ckernel is not None and _word_count(m) <= _ckernel.MAX_WORDS


# --- engines ------------------------------------------------------------------

class Smalgo1Engine:
    """Lookahead swap matcher: column-occupancy masks + chain masks.

    Patterns of length 1 and 2 have no two-edge chains; they are served by
    exact matching over the (at most two) swapped versions.  The native
    route consults, per text position, the occupancy mask of the current
    character, the shifted mask of the next one, and the chain mask of the
    surrounding character triple.
    """

    def __init__(self, pattern: bytes, impl: str | None = None) -> None:
        _check_pattern(pattern)
        self.pattern = bytes(pattern)
        self.m = len(pattern)
        self.dmasks: DMaskTable = build_dmasks(self.pattern)
        self.triple_masks: TripleMaskTable = build_triple_pmasks(self.pattern)
        self._versions = sorted(enumerate_swap_versions(self.pattern)) if self.m == 2 else None
        self.impl = _resolve_impl(impl)
        self._packed = None
        if self.impl == "compiled" and self.m >= 3:
            ids = _id_map(self.dmasks.raw())
            if (ids is None or not _compiled_fits(self.m)
                    or ids[1] ** 3 > _MAX_TRIPLE_ROWS):
                self.impl = "python"
            else:
                idmap, k = ids
                d = _pack_syms(self.dmasks.raw(), idmap, k, self.m)
                p3 = _pack_triples(self.triple_masks.raw(),
                                   self.triple_masks.raw_default, idmap, k, self.m)
                self._packed = (idmap, d, _fold_triples(p3, d, k), k)

    def search(self, text: bytes) -> list[int]:
        if self.m == 1:
            return exact_occurrences(self.pattern, text)
        if self.m == 2:
            return _versions_search(self._versions, text)
        if len(text) < self.m:
            return []
        if self._packed is not None:
            idmap, d, p3d, k = self._packed
            return _ckernel.smalgo1(text, self.m, idmap, d, p3d, k)
        return list(_kernel_py.iter_smalgo1(
            text, self.m, self.dmasks.raw(), self.triple_masks.raw()))

    def search_iter(self, chars: Iterable[int]) -> Iterator[int]:
        """Single-pass streaming search (always the Python registers)."""
        if self.m == 1:
            return _kernel_py.iter_shift_and(
                chars, 1, build_exact_dmasks(self.pattern).raw())
        if self.m == 2:
            return _iter_versions(chars, self._versions)
        return _kernel_py.iter_smalgo1(
            chars, self.m, self.dmasks.raw(), self.triple_masks.raw())


class Smalgo2Engine:
    """Carry-register swap matcher: pair masks + level-change vetoes.

    Runs natively for any pattern of length >= 2; a single character
    degenerates to exact matching.
    """

    def __init__(self, pattern: bytes, impl: str | None = None) -> None:
        _check_pattern(pattern)
        self.pattern = bytes(pattern)
        self.m = len(pattern)
        self.dmasks: DMaskTable = build_dmasks(self.pattern)
        self.pair_masks: PairMaskTable | None = None
        self.level_masks: LevelMaskTables | None = None
        if self.m >= 2:
            self.pair_masks = build_pair_pmasks(self.pattern)
            self.level_masks = build_level_masks(self.pattern)
        self.impl = _resolve_impl(impl)
        self._packed = None
        if self.impl == "compiled" and self.m >= 2:
            ids = _id_map(self.dmasks.raw())
            if ids is None or not _compiled_fits(self.m):
                self.impl = "python"
            else:
                idmap, k = ids
                d = _pack_syms(self.dmasks.raw(), idmap, k, self.m)
                tab = _fold_pairs(
                    _pack_pairs(self.pair_masks.raw(), 1, idmap, k, self.m),
                    _pack_pairs(self.level_masks.up.raw(), 0, idmap, k, self.m),
                    _pack_pairs(self.level_masks.down.raw(), 0, idmap, k, self.m),
                    _pack_pairs(self.level_masks.middle.raw(), 0, idmap, k, self.m),
                    d, k)
                self._packed = (idmap, d, tab, k)

    def search(self, text: bytes) -> list[int]:
        if self.m == 1:
            return exact_occurrences(self.pattern, text)
        if len(text) < self.m:
            return []
        if self._packed is not None:
            idmap, d, tab, k = self._packed
            return _ckernel.smalgo2(text, self.m, idmap, d, tab, k)
        return list(_kernel_py.iter_smalgo2(
            text, self.m, self.dmasks.raw(), self.pair_masks.raw(),
            self.level_masks.up.raw(), self.level_masks.down.raw(),
            self.level_masks.middle.raw()))

    def search_iter(self, chars: Iterable[int]) -> Iterator[int]:
        """Single-pass streaming search (always the Python registers)."""
        if self.m == 1:
            return _kernel_py.iter_shift_and(
                chars, 1, build_exact_dmasks(self.pattern).raw())
        return _kernel_py.iter_smalgo2(
            chars, self.m, self.dmasks.raw(), self.pair_masks.raw(),
            self.level_masks.up.raw(), self.level_masks.down.raw(),
            self.level_masks.middle.raw())


def smalgo1_preprocess(pattern: bytes, impl: str | None = None) -> Smalgo1Engine:
    return Smalgo1Engine(pattern, impl)


def smalgo1_search(engine: Smalgo1Engine, text: bytes) -> list[int]:
    return engine.search(text)


def smalgo2_preprocess(pattern: bytes, impl: str | None = None) -> Smalgo2Engine:
    return Smalgo2Engine(pattern, impl)


def smalgo2_search(engine: Smalgo2Engine, text: bytes) -> list[int]:
    return engine.search(text)


def _versions_search(versions: list[bytes], text: bytes) -> list[int]:
    hits: set[int] = set()
    for v in versions:
        hits.update(exact_occurrences(v, text))
    return sorted(hits)


def _iter_versions(chars: Iterable[int], versions: list[bytes]) -> Iterator[int]:
    """Merged exact shift-and over a handful of equal-length strings."""
    m = len(versions[0])
    tables = [build_exact_dmasks(v).raw() for v in versions]
    regs = [0] * len(versions)
    hi = 1 << (m - 1)
    j = 0
    for c in chars:
        j += 1
        hit = False
        for i, d in enumerate(tables):
            regs[i] = ((regs[i] << 1) | 1) & d.get(c, 0)
            if regs[i] & hi:
                hit = True
        if hit:
            yield j


# --- one-shot searchers -------------------------------------------------------

class _PreparedShiftAnd:
    def __init__(self, pattern: bytes, dmasks: DMaskTable, impl: str) -> None:
        self.pattern = pattern
        self.m = len(pattern)
        self._d = dmasks.raw()
        self._packed = None
        if impl == "compiled" and _compiled_fits(self.m):
            ids = _id_map(self._d)
            if ids is not None:
                idmap, k = ids
                self._packed = (idmap, _pack_syms(self._d, idmap, k, self.m))

    def search(self, text: bytes) -> list[int]:
        if len(text) < self.m:
            return []
        if self._packed is not None:
            idmap, d = self._packed
            return _ckernel.shift_and(text, self.m, idmap, d)
        return list(_kernel_py.iter_shift_and(text, self.m, self._d))


class _PreparedSwapDP:
    def __init__(self, pattern: bytes, impl: str) -> None:
        self.pattern = pattern
        self._compiled = impl == "compiled"

    def search(self, text: bytes) -> list[int]:
        if self._compiled:
            return _ckernel.swap_dp(text, self.pattern)
        return swap_dp_search(self.pattern, text)


class _PreparedGraph:
    def __init__(self, pattern: bytes, impl: str) -> None:
        self.graph = build_pgraph(pattern)
        self._tables = _pgraph_tables(self.graph) if impl == "compiled" else None

    def search(self, text: bytes) -> list[int]:
        if self._tables is not None:
            labels, incoming = self._tables
            return _ckernel.pgraph(text, self.graph.m, labels, incoming)
        return pgraph_search(self.graph, text)


class _PreparedOracle:
    def __init__(self, pattern: bytes, impl: str) -> None:
        self.pattern = pattern
        self.m = len(pattern)
        self._dp = _PreparedSwapDP(pattern, impl)

    def search(self, text: bytes) -> list[int]:
        if self.m > ORACLE_ENUM_LIMIT:
            return self._dp.search(text)
        return oracle_search(self.pattern, text)


def shift_and_search(pattern: bytes, text: bytes, impl: str | None = None) -> list[int]:
    """Exact substring occurrences by end position."""
    _check_pattern(pattern)
    return _PreparedShiftAnd(pattern, build_exact_dmasks(pattern),
                             _resolve_impl(impl)).search(text)


def degenerate_shift_and_search(pattern: bytes, text: bytes,
                                impl: str | None = None) -> list[int]:
    """Column-set relaxation: every window character must merely occupy its
    column.  Over-approximates swap matching."""
    _check_pattern(pattern)
    return _PreparedShiftAnd(pattern, build_dmasks(pattern),
                             _resolve_impl(impl)).search(text)


def dp_reference_search(pattern: bytes, text: bytes, impl: str | None = None) -> list[int]:
    """Exact per-alignment dynamic program (kernel-accelerated)."""
    _check_pattern(pattern)
    return _PreparedSwapDP(pattern, _resolve_impl(impl)).search(text)


def graph_reference_search(pattern: bytes, text: bytes, impl: str | None = None) -> list[int]:
    """Exact swap-state graph reachability (kernel-accelerated)."""
    _check_pattern(pattern)
    return _PreparedGraph(pattern, _resolve_impl(impl)).search(text)


# Algorithm registry used by the CLI, the benchmarks and the differential
# harness.  Every entry can be prepared once per pattern and searched many
# times; `prepare` returns an object with a ``search(text)`` method.
ALGORITHMS = ("shiftand", "degenerate", "smalgo1", "smalgo2", "dp", "graph", "oracle")
_ALIASES = {"oracle-dp": "dp"}


def canonical_algo(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {ALGORITHMS}")
    return name


def prepare(algo: str, pattern: bytes, impl: str | None = None):
    _check_pattern(pattern)
    algo = canonical_algo(algo)
    impl = _resolve_impl(impl)
    if algo == "shiftand":
        return _PreparedShiftAnd(pattern, build_exact_dmasks(pattern), impl)
    if algo == "degenerate":
        return _PreparedShiftAnd(pattern, build_dmasks(pattern), impl)
    if algo == "smalgo1":
        return Smalgo1Engine(pattern, impl)
    if algo == "smalgo2":
        return Smalgo2Engine(pattern, impl)
    if algo == "dp":
        return _PreparedSwapDP(pattern, impl)
    if algo == "graph":
        return _PreparedGraph(pattern, impl)
    return _PreparedOracle(pattern, impl)


def search_once(algo: str, pattern: bytes, text: bytes, impl: str | None = None) -> list[int]:
    return prepare(algo, pattern, impl).search(text)
