"""Approximate top-k frequent pattern mining on a single node-labeled graph.

The miner grows frequent tree patterns level by level, closes them under
cycle-adding edges, and ranks patterns by size (nodes + edges), stopping
early once nothing unexplored can beat the current top k.  Support is the
minimum-image count, estimated from below by a budgeted guided traversal,
so reported-frequent patterns are always genuinely frequent.  An exact
exhaustive oracle provides desk-scale ground truth.
"""

from .domain import Domain, ValidityOverlay, support_of, valid_count
from .errors import (CapacityError, ContractError, GraphParseError,
                     GraphValidationError, MiningError, ParameterError)
from .estimate import estimate_support
from .graph import DataGraph, generate_preferential, load_lg, write_lg
from .miner import MiningResult, mine_topk
from .oracle import (enumerate_matches, exact_support, exact_topk,
                     recall_metrics)
from .pattern import (Pattern, backward_expansions, complete_interestingness,
                      forward_expansions, interestingness, seed_pattern)

__all__ = [
    "CapacityError", "ContractError", "DataGraph", "Domain", "GraphParseError",
    "GraphValidationError", "MiningError", "MiningResult", "ParameterError",
    "Pattern", "ValidityOverlay", "backward_expansions",
    "complete_interestingness", "enumerate_matches", "estimate_support",
    "exact_support", "exact_topk", "forward_expansions",
    "generate_preferential", "interestingness", "load_lg", "mine_topk",
    "recall_metrics", "seed_pattern", "support_of", "valid_count", "write_lg",
]

__version__ = "0.1.0"
