"""Additive representation toolkit.

Exact arithmetic for representation functions of integer sequences, block
constructions pairing prescribed peak counts with bounded perturbations, a
greedy Sidon set with a high-multiplicity companion, square and cube targets
with many representations, and reproducible random sequences of cubic
density.
"""

from .errors import (
    AlignmentIncomplete,
    BlockOverlap,
    DuplicatePair,
    Exhausted,
    HorizonExceeded,
    HypothesisViolated,
    IdentityBroken,
    NonpositiveBracket,
    NotMonotone,
    RangeTooLarge,
    ToolkitError,
)
from .seqcore import (
    IntegerSequence,
    RepReport,
    SandwichReport,
    counting,
    dist,
    is_sidon,
    read_sequence,
    rep_count,
    rep_profile,
    s_max,
    sandwich_check,
    write_sequence,
)

__all__ = [
    "AlignmentIncomplete",
    "BlockOverlap",
    "DuplicatePair",
    "Exhausted",
    "HorizonExceeded",
    "HypothesisViolated",
    "IdentityBroken",
    "IntegerSequence",
    "NonpositiveBracket",
    "NotMonotone",
    "RangeTooLarge",
    "RepReport",
    "SandwichReport",
    "ToolkitError",
    "counting",
    "dist",
    "is_sidon",
    "read_sequence",
    "rep_count",
    "rep_profile",
    "s_max",
    "sandwich_check",
    "write_sequence",
]

__version__ = "0.1.0"
