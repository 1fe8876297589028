import random
from pathlib import Path

import pytest

from swapmatch.bitvec import BitVec
from swapmatch.masks import (
    build_dmasks,
    build_exact_dmasks,
    build_level_masks,
    build_pair_pmasks,
    build_triple_pmasks,
    degenerate_columns,
    dump_masks,
)
from swapmatch.model import build_pgraph

GOLDEN = Path(__file__).parent / "golden"


def cols_as_strings(p):
    return ["".join(sorted(chr(c) for c in s)) for s in degenerate_columns(p)]


class TestDegenerateColumns:
    def test_worked_pattern(self):
        assert cols_as_strings(b"acbab") == ["ac", "abc", "abc", "ab", "ab"]

    def test_repeated_symbols_deduplicate(self):
        assert cols_as_strings(b"aaa") == ["a", "a", "a"]

    def test_two_characters(self):
        assert cols_as_strings(b"ab") == ["ab", "ab"]

    def test_single_character(self):
        assert cols_as_strings(b"a") == ["a"]


class TestDMasks:
    def test_worked_pattern(self):
        d = build_dmasks(b"acbab")
        assert d.mask(ord("a")).bits() == "11111"
        assert d.mask(ord("b")).bits() == "01111"
        assert d.mask(ord("c")).bits() == "11100"
        assert d.mask(ord("x")).bits() == "00000"

    def test_repeated_pair(self):
        d = build_dmasks(b"aa")
        assert d.mask(ord("a")).bits() == "11"
        assert d.mask(ord("b")).bits() == "00"

    def test_middle_symbol_everywhere(self):
        assert build_dmasks(b"abc").mask(ord("b")).bits() == "111"

    def test_consistency_with_columns(self):
        rng = random.Random(5)
        for _ in range(100):
            p = bytes(rng.randrange(4) for _ in range(rng.randint(1, 12)))
            cols = degenerate_columns(p)
            d = build_dmasks(p)
            for c in range(6):
                mask = d.mask(c)
                for i, members in enumerate(cols, 1):
                    assert mask.test(i) == (c in members)

    def test_exact_masks_mark_positions(self):
        d = build_exact_dmasks(b"aba")
        assert d.mask(ord("a")).bits() == "101"
        assert d.mask(ord("b")).bits() == "010"


class TestTripleMasks:
    def test_worked_pattern_entries(self):
        t = build_triple_pmasks(b"acbab")
        key = tuple(b"acb")
        assert t.mask(key).bits() == "11000"
        assert t.mask(tuple(b"bab")).bits() == "10010"
        assert t.mask(tuple(b"ccc")).bits() == "10000"
        assert t.default.bits() == "10000"

    def test_next_swap_lookahead_chain(self):
        # a chain a -> c -> a exists via the swap of columns 3 and 4
        t = build_triple_pmasks(b"acbab")
        assert t.mask(tuple(b"aca")).bits() == "11000"

    def test_bit_one_always_set(self):
        rng = random.Random(9)
        for _ in range(50):
            p = bytes(rng.randrange(3) for _ in range(rng.randint(3, 10)))
            t = build_triple_pmasks(p)
            for key in t.keys():
                assert t.mask(key).test(1)

    def test_short_patterns_have_empty_tables(self):
        assert len(build_triple_pmasks(b"ab")) == 0
        assert len(build_triple_pmasks(b"a")) == 0


class TestPairMasks:
    def test_worked_pattern_entries(self):
        t = build_pair_pmasks(b"acbab")
        assert t.mask(tuple(b"ac")).bits() == "11000"
        assert t.mask(tuple(b"bb")).bits() == "10011"
        assert t.mask(tuple(b"zz")).bits() == "10000"

    def test_length_one_rejected(self):
        with pytest.raises(ValueError):
            build_pair_pmasks(b"a")

    def test_union_covers_exactly_the_graph_edges(self):
        # pair masks partition the state edges by label: OR of all masks
        # with the start convention stripped equals OR of edge columns
        rng = random.Random(31)
        for _ in range(100):
            m = rng.randint(2, 12)
            p = bytes(rng.randrange(4) for _ in range(m))
            t = build_pair_pmasks(p)
            union = 0
            for key in t.keys():
                union |= t.mask(key).value & ~1
            g = build_pgraph(p)
            edges = 0
            for _, v in g.all_edges():
                edges |= 1 << (v[1] - 1)
            assert union == edges


class TestLevelMasks:
    def test_worked_pattern_rows(self):
        lv = build_level_masks(b"acbab")
        assert lv.up.mask(tuple(b"ab")).bits() == "00010"
        assert lv.middle.mask(tuple(b"ab")).bits() == "00101"
        assert lv.down.mask(tuple(b"ab")).bits() == "01000"
        assert lv.up.mask(tuple(b"ca")).bits() == "01000"
        assert lv.middle.mask(tuple(b"ca")).bits() == "00010"
        assert lv.down.mask(tuple(b"ca")).bits() == "00100"
        assert lv.up.mask(tuple(b"bb")).bits() == "00000"

    def test_equal_adjacent_characters_produce_no_swap_edges(self):
        lv = build_level_masks(b"aaaa")
        assert len(lv.up) == 0
        assert len(lv.down) == 0
        assert lv.middle.mask(tuple(b"aa")).bits() == "0111"

    def test_disjoint_for_all_distinct_patterns(self):
        lv = build_level_masks(b"abcde")
        keys = set(lv.up.keys()) | set(lv.down.keys()) | set(lv.middle.keys())
        for key in keys:
            u = lv.up.mask(key).value
            d = lv.down.mask(key).value
            m = lv.middle.mask(key).value
            assert u & d == 0
            assert u & m == 0
            assert d & m == 0

    def test_level_masks_union_to_pair_masks(self):
        # every admissible edge is exactly one of up/down/middle; adding the
        # start bit back recovers the pair mask unless the pattern has
        # forbidden (equal-character) exchanges
        rng = random.Random(12)
        for _ in range(200):
            m = rng.randint(2, 10)
            p = bytes(rng.randrange(4) for _ in range(m))
            if any(p[i] == p[i + 1] for i in range(m - 1)):
                continue
            pair = build_pair_pmasks(p)
            lv = build_level_masks(p)
            for key in pair.keys():
                combined = (lv.up.mask(key).value | lv.down.mask(key).value
                            | lv.middle.mask(key).value | 1)
                assert combined == pair.mask(key).value, (p, key)


def triple_masks_by_index_loops(p: bytes) -> dict[tuple[int, int, int], int]:
    """Alternative chain-mask construction by direct index arithmetic.

    Works in a mirrored bit layout (bit x-1 is column 1) and indexes the
    pattern directly instead of walking the state graph; iterations that
    would index past the pattern end are skipped.  Used purely as a
    cross-check against the graph-derived builder.
    """
    x = len(p)
    masks: dict[tuple[int, int, int], int] = {}

    def add(key, bit):
        if all(0 <= idx < x for idx in key[1]) and 0 <= bit < x:
            a, b, c = (p[i] for i in key[1])
            masks[(a, b, c)] = masks.get((a, b, c), 0) | (1 << bit)

    for i in range(x - 1):
        add((0, (i, i + 1, i + 2)), x - i - 2)
        add((0, (i, i + 2, i + 1)), x - i - 2)
    for i in range(x - 2):
        add((0, (i, i + 1, i + 3)), x - i - 2)
    for i in range(1, x):
        add((0, (i, i - 1, i + 1)), x - i - 1)
    for i in range(1, x - 1):
        add((0, (i, i - 1, i + 2)), x - i - 1)
    for i in range(x - 2):
        add((0, (i, i + 3, i + 2)), x - i - 3)
    for i in range(x - 3):
        add((0, (i, i + 2, i + 4)), x - i - 3)
    for i in range(x - 2):
        add((0, (i, i + 2, i + 3)), x - i - 3)

    # convert to the canonical layout (bit 0 is column 1) and add the
    # unconditional start bit
    out = {}
    for key, value in masks.items():
        mirrored = 0
        for b in range(x):
            if value >> b & 1:
                mirrored |= 1 << (x - b - 1)
        out[key] = mirrored | 1
    return out


class TestTripleComparator:
    """The graph-derived chain masks must agree with an index-arithmetic
    reconstruction that never looks at the state graph."""

    def check(self, p):
        graph_built = dict(build_triple_pmasks(p).raw())
        index_built = triple_masks_by_index_loops(p)
        assert graph_built == index_built, p

    def test_worked_pattern(self):
        self.check(b"acbab")

    def test_random_patterns(self):
        rng = random.Random(77)
        for _ in range(400):
            m = rng.randint(3, 10)
            p = bytes(rng.randrange(4) for _ in range(m))
            self.check(p)


class TestDump:
    @pytest.mark.parametrize("which", ["d", "p3", "p2", "up", "down", "middle"])
    def test_matches_golden(self, which):
        expected = (GOLDEN / f"acbab_{which}.txt").read_text()
        assert dump_masks(b"acbab", which) == expected

    def test_all_sections(self):
        text = dump_masks(b"acbab", "all")
        for name in ("[d]", "[p3]", "[p2]", "[up]", "[down]", "[middle]"):
            assert name in text

    def test_nonprintable_keys_are_escaped(self):
        text = dump_masks(bytes([0, 1, 0]), "d")
        assert "\\x00" in text and "\\x01" in text

    def test_unknown_selector(self):
        with pytest.raises(ValueError):
            dump_masks(b"ab", "p9")

    def test_single_character_pattern(self):
        text = dump_masks(b"a", "all")
        assert "[d]" in text and "[p2]" not in text
        with pytest.raises(ValueError):
            dump_masks(b"a", "p2")
