"""Independent reference computations used to freeze expected values.

Nothing here imports the package: these are the brute-force sides of the
dual-route checks.
"""

from functools import lru_cache
from itertools import permutations


def nqueens_brute_force(k):
    """Count placements by checking every permutation's diagonals directly."""
    count = 0
    for perm in permutations(range(k)):
        if all(abs(perm[i] - perm[j]) != j - i for i in range(k) for j in range(i + 1, k)):
            count += 1
    return count


def count_scripts(n, max_len):
    """Number of guard-respecting scripts of length 0..max_len over range(n).

    Only the member count and the stack of marked counts matter: remove and
    bind each offer one choice per member, mark is always allowed, and pop
    (when a frame is open) returns to the marked count.
    """

    @lru_cache(maxsize=None)
    def exactly(k, stack, length):
        if length == 0:
            return 1
        total = k * exactly(k - 1, stack, length - 1)        # remove
        total += k * exactly(1, stack, length - 1)           # bind
        total += exactly(k, stack + (k,), length - 1)        # mark
        if stack:
            total += exactly(stack[-1], stack[:-1], length - 1)  # pop
        return total

    return sum(exactly(n, (), L) for L in range(max_len + 1))


def list_remove(members, v):
    """Set-level effect of remove on a plain list model."""
    assert v in members
    return [x for x in members if x != v]
