"""Latin squares and higher-dimensional permutations: generators, empty-box
and discrepancy search, random greedy triple process instrumentation, and
brute-force oracles."""

from .core import (
    Box,
    BoxReport,
    LatinSquare,
    PermTensor,
    Section,
    Verdict,
    count_in_box,
    discrepancy_score,
    extract_section,
    latin_of,
    tensor_of,
    validate_tensor,
)
from .generators import (
    CompletionBudgetError,
    GroupTable,
    TripleSystem,
    bose_sts,
    complete_random_greedy,
    group_table,
    jm_sample,
    skolem_sts,
    sts_to_ls,
)

__version__ = "0.1.0"
