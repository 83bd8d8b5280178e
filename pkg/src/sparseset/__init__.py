"""Sparse-set integer domains with O(1) removal, binding and trail restore."""

from .core import (
    Diagnostics,
    DomainError,
    PreconditionError,
    SparseSet,
    SparseSetError,
    UniverseError,
    check_invariants,
    new_full,
    remove_always_swap,
)
from .trail import FrameToken, Mark, Trail, TrailError

__all__ = [
    "Diagnostics",
    "DomainError",
    "FrameToken",
    "Mark",
    "PreconditionError",
    "SparseSet",
    "SparseSetError",
    "Trail",
    "TrailError",
    "UniverseError",
    "check_invariants",
    "new_full",
    "remove_always_swap",
]
