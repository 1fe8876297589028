"""Swap pattern matching.

Find every position of a text where a pattern occurs after exchanging some
disjoint pairs of adjacent, distinct pattern characters.  The package
provides exact reference matchers, two bit-parallel streaming engines, a
differential fuzzing harness, a benchmark suite, and a command-line front
end (``swapmatch``).
"""

from .bitvec import BitVec
from .engines import (
    Smalgo1Engine,
    Smalgo2Engine,
    compiled_available,
    default_impl,
    degenerate_shift_and_search,
    dp_reference_search,
    graph_reference_search,
    search_once,
    shift_and_search,
    smalgo1_preprocess,
    smalgo1_search,
    smalgo2_preprocess,
    smalgo2_search,
)
from .masks import (
    build_dmasks,
    build_level_masks,
    build_pair_pmasks,
    build_triple_pmasks,
    degenerate_columns,
    dump_masks,
)
from .model import (
    PGraph,
    TGraph,
    apply_swaps,
    build_pgraph,
    build_tgraph,
    enumerate_swap_sets,
    enumerate_swap_versions,
    oracle_search,
    pgraph_search,
    swap_dp_search,
)
from .bench import BenchProblem, gen_random_text, run_bench, sample_patterns
from .verify import (
    InstanceSpec,
    differential_check,
    random_instance,
    run_verification,
    shrink,
)

__version__ = "0.1.0"
