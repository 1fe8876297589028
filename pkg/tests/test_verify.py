import random

import pytest

from swapmatch.model import oracle_search
from swapmatch.verify import (
    DEFAULT_ENGINES,
    Discrepancy,
    InstanceSpec,
    differential_check,
    format_report,
    random_instance,
    run_verification,
    shrink,
)


def spec(**kw):
    base = dict(seed=1, sigma=2, m_range=(3, 8), n_range=(8, 64), plant_rate=1.0)
    base.update(kw)
    return InstanceSpec(**base)


class TestInstanceSpec:
    def test_sigma_bounds(self):
        with pytest.raises(ValueError):
            spec(sigma=1)
        with pytest.raises(ValueError):
            spec(sigma=257)

    def test_plant_rate_bounds(self):
        with pytest.raises(ValueError):
            spec(plant_rate=1.5)

    def test_ranges(self):
        with pytest.raises(ValueError):
            spec(m_range=(0, 4))
        with pytest.raises(ValueError):
            spec(m_range=(5, 4))


class TestRandomInstance:
    def test_deterministic(self):
        s = spec()
        assert random_instance(s, 3) == random_instance(s, 3)
        assert random_instance(s, 3) != random_instance(s, 4)

    def test_planting_guarantees_a_hit(self):
        s = spec(sigma=4, m_range=(3, 6), n_range=(6, 40), plant_rate=1.0)
        for index in range(50):
            p, t = random_instance(s, index)
            assert oracle_search(p, t), (p, t)

    def test_respects_ranges(self):
        s = spec(sigma=3, m_range=(2, 5), n_range=(10, 20), plant_rate=0.0)
        for index in range(50):
            p, t = random_instance(s, index)
            assert 2 <= len(p) <= 5
            assert 10 <= len(t) <= 20
            assert max(p) < 3 and max(t) < 3

    def test_text_never_shorter_than_pattern(self):
        s = spec(m_range=(6, 6), n_range=(1, 6))
        for index in range(20):
            p, t = random_instance(s, index)
            assert len(t) >= len(p)


class TestDifferentialCheck:
    def test_agreement_cases(self):
        # the repaired relaxation false-match: everyone reports nothing
        assert differential_check(b"acbab", b"acbbb") is None
        assert differential_check(b"ab", b"ba") is None

    def test_known_over_report_is_flagged(self):
        d = differential_check(b"ababc", b"aabac")
        assert d is not None
        assert d.oracle == ()
        assert d.false_positives("smalgo1") == (5,)
        assert d.false_negatives("smalgo1") == ()
        assert set(d.disagreeing()) == {"smalgo1", "smalgo2"}
        assert d.results["dp"] == ()
        assert d.results["graph"] == ()

    def test_broken_engine_self_test(self):
        d = differential_check(b"ab", b"ba", engine_names=DEFAULT_ENGINES + ("broken",))
        assert d is not None
        assert d.disagreeing() == ["broken"]


class TestShrink:
    def find_discrepancies(self, count=20):
        s = spec(sigma=2, m_range=(4, 9), n_range=(8, 80), plant_rate=0.5)
        found = []
        for index in range(3000):
            p, t = random_instance(s, index)
            d = differential_check(p, t)
            if d is not None:
                d.provenance = (s.seed, index)
                found.append(d)
                if len(found) >= count:
                    break
        assert found, "expected some over-reports at this size"
        return found

    def test_shrunk_result_is_still_a_discrepancy(self):
        for d in self.find_discrepancies(10):
            small = shrink(d)
            again = differential_check(small.pattern, small.text)
            assert again is not None
            assert len(small.text) <= len(d.text)
            assert len(small.pattern) <= len(d.pattern)
            assert small.provenance == d.provenance

    def test_shrink_is_deterministic(self):
        d = self.find_discrepancies(1)[0]
        a = shrink(d)
        b = shrink(d)
        assert (a.pattern, a.text, a.results) == (b.pattern, b.text, b.results)

    def test_minimal_case_unchanged(self):
        d = differential_check(bytes([1, 0, 1, 0]), bytes([0, 1, 0, 0]))
        assert d is not None
        small = shrink(d)
        assert (small.pattern, small.text) == (d.pattern, d.text)

    def test_shrink_reduces_known_case(self):
        # appending noise around the witness must shrink back down
        d = differential_check(b"ababc", b"ccc" + b"aabac" + b"ccc")
        assert d is not None
        small = shrink(d)
        assert len(small.text) <= 5


class TestFormatReport:
    def test_report_contents(self):
        d = differential_check(b"ababc", b"aabac")
        d.provenance = (7, 123)
        text = format_report(d)
        assert "pattern: ababc" in text
        assert "text:    aabac" in text
        assert "seed=7 index=123" in text
        assert "false positives: 5" in text

    def test_nonprintable_escaped(self):
        d = Discrepancy(pattern=bytes([0, 255]), text=bytes([1]),
                        results={"oracle": (), "x": (1,)})
        text = format_report(d)
        assert "\\x00\\xff" in text
        assert "\\x01" in text


class TestRunVerification:
    def test_zero_instances(self):
        s = run_verification(seed=0, sigmas=(2,), m_range=(1, 4),
                             n_range=(1, 16), count=0)
        assert s.checked == 0
        assert s.ok

    def test_deterministic_summary(self):
        kw = dict(seed=5, sigmas=(2, 4), m_range=(1, 8), n_range=(1, 64),
                  plant_rate=0.5, count=400, max_examples=2)
        a = run_verification(**kw)
        b = run_verification(**kw)
        assert (a.checked, a.discrepancies, a.false_negative_instances) == \
               (b.checked, b.discrepancies, b.false_negative_instances)
        assert [(d.pattern, d.text) for d in a.examples] == \
               [(d.pattern, d.text) for d in b.examples]

    def test_no_false_negatives_and_examples_carry_provenance(self):
        s = run_verification(seed=5, sigmas=(2, 4), m_range=(1, 8),
                             n_range=(1, 64), plant_rate=0.5, count=400)
        assert s.false_negative_instances == 0
        assert s.fn_instances_by_engine == {}
        for d in s.examples:
            assert d.provenance is not None

    def test_short_patterns_produce_no_discrepancies(self):
        # length <= 3 windows are decided by a single chain constraint,
        # so the streaming engines are exact there
        s = run_verification(seed=9, sigmas=(2, 4), m_range=(1, 3),
                             n_range=(1, 64), plant_rate=0.5, count=500)
        assert s.ok

    def test_broken_engine_detected(self):
        s = run_verification(seed=1, sigmas=(2,), m_range=(2, 4),
                             n_range=(4, 16), plant_rate=1.0, count=30,
                             engine_names=("broken",))
        assert s.discrepancies > 0
        assert not s.ok
