"""Benchmark harness: synthetic random-text problems and user corpora.

A problem is a text plus a list of pattern lengths; for each length a
pattern set is drawn (half uniformly random over the text's alphabet, half
extracted from the text so they are guaranteed to occur) and every
algorithm searches the whole set.  Preprocessing and search are timed
separately; the search figure is the minimum over repetitions.

Match counts are recorded per cell and compared across algorithms as a
built-in cross-check.  Cells where the algorithms disagree are flagged in
the report; the two bit-parallel engines are known to over-report rare
windows, so cells mixing them with the exact matchers can legitimately
show small count differences (see the engines module notes).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .engines import canonical_algo, prepare

DEFAULT_PATTERN_LENGTHS = (4, 8, 12, 16, 20, 24, 28, 32)
DEFAULT_PATTERNS_PER_LENGTH = 100
DEFAULT_TEXT_SIZE = 4 * 1024 * 1024

CSV_HEADER = "algo,problem,sigma,m,n,patterns,prep_ms,search_ms,matches"


def gen_random_text(sigma: int, n: int, seed: int) -> bytes:
    """Uniform i.i.d. symbols from [0, sigma); deterministic in `seed`."""
    if not 2 <= sigma <= 256:
        raise ValueError(f"sigma must be in 2..256, got {sigma}")
    if n < 1:
        raise ValueError(f"text size must be positive, got {n}")
    rng = np.random.default_rng(seed)
    return rng.integers(0, sigma, size=n, dtype=np.uint8).tobytes()


def sample_patterns(text: bytes, m: int, count: int, seed: int) -> list[bytes]:
    """ceil(count/2) random patterns over the text's alphabet, floor(count/2)
    extracted from uniform offsets (so they occur at least once)."""
    n = len(text)
    if m > n:
        raise ValueError(f"pattern length {m} exceeds text length {n}")
    if count < 2:
        raise ValueError(f"need at least 2 patterns, got {count}")
    alphabet = np.frombuffer(bytes(sorted(set(text))), dtype=np.uint8)
    rng = np.random.default_rng([seed, m, count])
    out: list[bytes] = []
    for _ in range(math.ceil(count / 2)):
        out.append(rng.choice(alphabet, size=m).tobytes())
    for _ in range(count // 2):
        off = int(rng.integers(0, n - m + 1))
        out.append(text[off:off + m])
    return out


@dataclass(frozen=True)
class BenchProblem:
    """A named text with the pattern lengths and set size to bench on it."""

    name: str
    sigma: int
    text: bytes
    pattern_lengths: tuple[int, ...] = DEFAULT_PATTERN_LENGTHS
    patterns_per_length: int = DEFAULT_PATTERNS_PER_LENGTH
    seed: int = 0

    @classmethod
    def random(cls, sigma: int, size: int = DEFAULT_TEXT_SIZE, seed: int = 0,
               pattern_lengths: tuple[int, ...] = DEFAULT_PATTERN_LENGTHS,
               patterns_per_length: int = DEFAULT_PATTERNS_PER_LENGTH) -> BenchProblem:
        return cls(name=f"rand{sigma}", sigma=sigma,
                   text=gen_random_text(sigma, size, seed),
                   pattern_lengths=tuple(pattern_lengths),
                   patterns_per_length=patterns_per_length, seed=seed)

    @classmethod
    def from_file(cls, path: str | Path, pattern_lengths=DEFAULT_PATTERN_LENGTHS,
                  patterns_per_length: int = DEFAULT_PATTERNS_PER_LENGTH,
                  seed: int = 0) -> BenchProblem:
        data = Path(path).read_bytes()
        if not data:
            raise OSError(f"corpus file {path} is empty")
        return cls(name=Path(path).name, sigma=len(set(data)), text=data,
                   pattern_lengths=tuple(pattern_lengths),
                   patterns_per_length=patterns_per_length, seed=seed)


@dataclass(frozen=True)
class BenchRow:
    algo: str
    problem: str
    sigma: int
    m: int
    n: int
    patterns: int
    prep_ms: float
    search_ms: float
    matches: int


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True iff every cell's match counts agreed across algorithms."""
        return not self.warnings

    def cells(self) -> dict[tuple[str, int], list[BenchRow]]:
        grouped: dict[tuple[str, int], list[BenchRow]] = {}
        for row in self.rows:
            grouped.setdefault((row.problem, row.m), []).append(row)
        return grouped

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.algo},{r.problem},{r.sigma},{r.m},{r.n},"
                         f"{r.patterns},{r.prep_ms:.3f},{r.search_ms:.3f},{r.matches}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        """Aligned per-problem tables: one column per pattern length, one
        row per algorithm, search time in milliseconds."""
        out: list[str] = []
        by_problem: dict[str, list[BenchRow]] = {}
        for row in self.rows:
            by_problem.setdefault(row.problem, []).append(row)
        for problem, rows in by_problem.items():
            ms = sorted({r.m for r in rows})
            algos = list(dict.fromkeys(r.algo for r in rows))
            n = rows[0].n
            sigma = rows[0].sigma
            out.append(f"{problem} (sigma={sigma}, n={n}, "
                       f"patterns={rows[0].patterns}, search ms)")
            header = ["m".ljust(12)] + [str(m).rjust(12) for m in ms]
            out.append("".join(header))
            lookup = {(r.algo, r.m): r for r in rows}
            for algo in algos:
                cells = [algo.ljust(12)]
                for m in ms:
                    r = lookup.get((algo, m))
                    cells.append(f"{r.search_ms:12.3f}" if r else " " * 12)
                out.append("".join(cells))
            out.append("")
        for w in self.warnings:
            out.append(f"warning: {w}")
        for e in self.errors:
            out.append(f"error: {e}")
        return "\n".join(out) + "\n"


def run_bench(
    problems: list[BenchProblem],
    algorithms: tuple[str, ...],
    repetitions: int = 3,
    impl: str | None = None,
) -> BenchReport:
    """Time every (problem, length, algorithm) cell.

    Search time excludes preprocessing and is the minimum over
    `repetitions` passes over the full pattern set.
    """
    if not problems or not algorithms:
        raise ValueError("need at least one problem and one algorithm")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    algorithms = tuple(canonical_algo(a) for a in algorithms)
    report = BenchReport()
    for problem in problems:
        for m in problem.pattern_lengths:
            if m > len(problem.text):
                report.errors.append(
                    f"{problem.name}: pattern length {m} exceeds text size")
                continue
            patterns = sample_patterns(problem.text, m,
                                       problem.patterns_per_length, problem.seed)
            counts: dict[str, int] = {}
            for algo in algorithms:
                t0 = time.perf_counter()
                prepared = [prepare(algo, p, impl) for p in patterns]
                prep_ms = (time.perf_counter() - t0) * 1e3
                best = math.inf
                matches = 0
                for _ in range(repetitions):
                    t0 = time.perf_counter()
                    total = 0
                    for engine in prepared:
                        total += len(engine.search(problem.text))
                    elapsed = (time.perf_counter() - t0) * 1e3
                    best = min(best, elapsed)
                    matches = total
                counts[algo] = matches
                report.rows.append(BenchRow(
                    algo=algo, problem=problem.name, sigma=problem.sigma,
                    m=m, n=len(problem.text), patterns=len(patterns),
                    prep_ms=prep_ms, search_ms=best, matches=matches))
            if len(set(counts.values())) > 1:
                detail = ", ".join(f"{a}={c}" for a, c in counts.items())
                report.warnings.append(
                    f"match counts disagree on ({problem.name}, m={m}): {detail}")
    return report
