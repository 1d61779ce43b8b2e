"""Pattern-avoiding stack-sorting machines and their exhaustive verification."""

from .bounds import ResourceBoundError
from .machine import (
    MachineSpec,
    classical_machine,
    consecutive_machine,
    consecutive_123_image,
    consecutive_321_image,
    machine_of,
    premature_entries,
    run,
    stack_sort,
    trace,
)
from .permutations import (
    PatternSpec,
    Perm,
    all_permutations,
    classical,
    complement,
    consecutive,
    contains,
    format_permutation,
    parse_permutation,
    pattern_avoiders,
    reverse,
    standardize,
    swap_first_two,
    vincular,
)

__all__ = [
    "MachineSpec",
    "PatternSpec",
    "Perm",
    "ResourceBoundError",
    "all_permutations",
    "classical",
    "classical_machine",
    "complement",
    "consecutive",
    "consecutive_123_image",
    "consecutive_321_image",
    "consecutive_machine",
    "contains",
    "format_permutation",
    "machine_of",
    "parse_permutation",
    "pattern_avoiders",
    "premature_entries",
    "reverse",
    "run",
    "stack_sort",
    "standardize",
    "swap_first_two",
    "trace",
    "vincular",
]

__version__ = "0.1.0"
