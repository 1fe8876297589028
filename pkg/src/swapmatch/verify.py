"""Randomized differential testing of the engines against the oracle.

A single base seed determines every generated instance, so any failure is
reproducible from its (seed, index) pair.  Instances mix fully random
pattern/text pairs with "planted" ones where a swapped version of the
pattern is spliced into the text, guaranteeing nonzero hit density.

Discrepancies are shrunk greedily (text ends, pattern ends, alphabet
remapping) before being reported, so a witness is usually only a few
characters long.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import engines
from .model import apply_swaps, oracle_search, random_swap_set

# Engines compared against the oracle by default.  "dp" and "graph" are
# exact and expected to agree everywhere; the two bit-parallel engines are
# expected to over-report on rare inputs (see the engines module notes).
DEFAULT_ENGINES = ("dp", "graph", "smalgo1", "smalgo2")


@dataclass(frozen=True)
class InstanceSpec:
    """Deterministic family of test instances."""

    seed: int
    sigma: int
    m_range: tuple[int, int]
    n_range: tuple[int, int]
    plant_rate: float = 0.5

    def __post_init__(self) -> None:
        if not 2 <= self.sigma <= 256:
            raise ValueError(f"sigma must be in 2..256, got {self.sigma}")
        if not (1 <= self.m_range[0] <= self.m_range[1]):
            raise ValueError(f"bad pattern length range {self.m_range}")
        if not (self.n_range[0] <= self.n_range[1]):
            raise ValueError(f"bad text length range {self.n_range}")
        if not 0.0 <= self.plant_rate <= 1.0:
            raise ValueError(f"plant rate must be in [0, 1], got {self.plant_rate}")


def random_instance(spec: InstanceSpec, index: int) -> tuple[bytes, bytes]:
    """The index-th instance of the family; a pure function of its inputs."""
    rng = random.Random((spec.seed << 64) | (index & ((1 << 64) - 1)))
    m = rng.randint(*spec.m_range)
    n_lo = max(m, spec.n_range[0])
    n_hi = max(m, spec.n_range[1])
    n = rng.randint(n_lo, n_hi)
    p = bytes(rng.randrange(spec.sigma) for _ in range(m))
    t = bytearray(rng.randrange(spec.sigma) for _ in range(n))
    if rng.random() < spec.plant_rate:
        version = apply_swaps(p, random_swap_set(p, rng))
        off = rng.randrange(n - m + 1)
        t[off:off + m] = version
    return p, bytes(t)


@dataclass
class Discrepancy:
    """At least one engine disagreed with the oracle on this instance."""

    pattern: bytes
    text: bytes
    results: dict[str, tuple[int, ...]]
    provenance: tuple[int, int] | None = None  # (seed, index)

    @property
    def oracle(self) -> tuple[int, ...]:
        return self.results["oracle"]

    def engines(self) -> list[str]:
        return [k for k in self.results if k != "oracle"]

    def false_positives(self, engine: str) -> tuple[int, ...]:
        return tuple(sorted(set(self.results[engine]) - set(self.oracle)))

    def false_negatives(self, engine: str) -> tuple[int, ...]:
        return tuple(sorted(set(self.oracle) - set(self.results[engine])))

    def disagreeing(self) -> list[str]:
        return [e for e in self.engines() if self.results[e] != self.oracle]


def _broken_search(pattern: bytes, text: bytes, impl: str | None) -> list[int]:
    # Deliberately wrong engine for harness self-tests: every true match is
    # reported one position late (and dropped at the text end), so any
    # instance with at least one match is guaranteed to disagree.
    n = len(text)
    return [e + 1 for e in engines.dp_reference_search(pattern, text, impl)
            if e + 1 <= n]


def _run_engine(name: str, pattern: bytes, text: bytes, impl: str | None) -> list[int]:
    if name == "broken":
        return _broken_search(pattern, text, impl)
    return engines.search_once(name, pattern, text, impl)


def differential_check(
    pattern: bytes,
    text: bytes,
    impl: str | None = None,
    engine_names: tuple[str, ...] = DEFAULT_ENGINES,
) -> Discrepancy | None:
    """Run the oracle and every engine; report iff any position lists differ."""
    expected = tuple(oracle_search(pattern, text))
    results: dict[str, tuple[int, ...]] = {"oracle": expected}
    differs = False
    for name in engine_names:
        got = tuple(_run_engine(name, pattern, text, impl))
        results[name] = got
        if got != expected:
            differs = True
    if not differs:
        return None
    return Discrepancy(pattern=pattern, text=text, results=results)


def shrink(d: Discrepancy, impl: str | None = None) -> Discrepancy:
    """Greedy local minimization; the result is still a discrepancy.

    Tries, in order and to a fixed point: dropping text characters from
    either end, dropping pattern characters from either end, and remapping
    the largest symbols onto smaller ones.  Each step is kept only if some
    engine still disagrees with the oracle.
    """
    names = tuple(d.engines())

    def check(p: bytes, t: bytes) -> Discrepancy | None:
        if not p:
            return None
        return differential_check(p, t, impl=impl, engine_names=names)

    cur = d
    changed = True
    while changed:
        changed = False
        # text ends
        for candidate in (cur.text[:-1], cur.text[1:]):
            nd = check(cur.pattern, candidate)
            if nd is not None:
                cur, changed = nd, True
                break
        if changed:
            continue
        # pattern ends
        for candidate in (cur.pattern[:-1], cur.pattern[1:]):
            nd = check(candidate, cur.text)
            if nd is not None:
                cur, changed = nd, True
                break
        if changed:
            continue
        # alphabet reduction: remap the largest symbol to a smaller value
        symbols = sorted(set(cur.pattern) | set(cur.text), reverse=True)
        for s in symbols:
            for target in range(s):
                p2 = cur.pattern.replace(bytes([s]), bytes([target]))
                t2 = cur.text.replace(bytes([s]), bytes([target]))
                nd = check(p2, t2)
                if nd is not None:
                    cur, changed = nd, True
                    break
            if changed:
                break
    cur.provenance = d.provenance
    return cur


def _escape(b: bytes) -> str:
    return "".join(chr(c) if 32 <= c <= 126 and c != 92 else f"\\x{c:02x}" for c in b)


def format_report(d: Discrepancy) -> str:
    lines = []
    if d.provenance is not None:
        lines.append(f"instance: seed={d.provenance[0]} index={d.provenance[1]}")
    lines.append(f"pattern: {_escape(d.pattern)}")
    lines.append(f"text:    {_escape(d.text)}")
    width = max(len(k) for k in d.results)
    for name, got in d.results.items():
        note = ""
        if name != "oracle":
            fps = d.false_positives(name)
            fns = d.false_negatives(name)
            parts = []
            if fps:
                parts.append("false positives: " + " ".join(map(str, fps)))
            if fns:
                parts.append("false negatives: " + " ".join(map(str, fns)))
            if parts:
                note = "   (" + "; ".join(parts) + ")"
        positions = " ".join(map(str, got)) if got else "-"
        lines.append(f"{name + ':':<{width + 1}} {positions}{note}")
    return "\n".join(lines)


@dataclass
class VerifySummary:
    checked: int
    discrepancies: int
    false_negative_instances: int
    examples: list[Discrepancy] = field(default_factory=list)
    fp_instances_by_engine: dict[str, int] = field(default_factory=dict)
    fn_instances_by_engine: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.discrepancies == 0


def run_verification(
    seed: int,
    sigmas: tuple[int, ...],
    m_range: tuple[int, int],
    n_range: tuple[int, int],
    plant_rate: float = 0.5,
    count: int = 1000,
    impl: str | None = None,
    engine_names: tuple[str, ...] = DEFAULT_ENGINES,
    max_examples: int = 5,
    shrink_examples: bool = True,
) -> VerifySummary:
    """Check `count` instances, cycling through the alphabet sizes.

    Returns aggregate counts plus up to `max_examples` (shrunken)
    witnesses.  Fully determined by the arguments.
    """
    specs = [InstanceSpec(seed, s, m_range, n_range, plant_rate) for s in sigmas]
    summary = VerifySummary(checked=0, discrepancies=0, false_negative_instances=0)
    for index in range(count):
        spec = specs[index % len(specs)]
        p, t = random_instance(spec, index)
        d = differential_check(p, t, impl=impl, engine_names=engine_names)
        summary.checked += 1
        if d is None:
            continue
        d.provenance = (spec.seed, index)
        summary.discrepancies += 1
        has_fn = False
        for name in d.engines():
            if d.false_positives(name):
                summary.fp_instances_by_engine[name] = (
                    summary.fp_instances_by_engine.get(name, 0) + 1)
            if d.false_negatives(name):
                summary.fn_instances_by_engine[name] = (
                    summary.fn_instances_by_engine.get(name, 0) + 1)
                has_fn = True
        if has_fn:
            summary.false_negative_instances += 1
        if len(summary.examples) < max_examples:
            summary.examples.append(shrink(d, impl=impl) if shrink_examples else d)
    return summary
