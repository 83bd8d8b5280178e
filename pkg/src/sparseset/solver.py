"""A small backtracking solver over sparse-set domains.

Depth-first labeling with forward checking.  Every choice point is a trail
frame, so backtracking is nothing more than writing saved sizes back.
Variables are labeled lowest index first; values are tried in ``dom`` order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import SparseSet, check_invariants
from .trail import Trail


@dataclass(frozen=True)
class BinaryConstraint:
    """``x[j] != x[i] + offset``; ``offset == 0`` is plain not-equal."""

    i: int
    j: int
    offset: int = 0

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"constraint on a single variable ({self.i})")

    @property
    def kind(self) -> str:
        return "NotEqual" if self.offset == 0 else f"NotEqualOffset({self.offset})"

    def holds(self, xi: int, xj: int) -> bool:
        return xj != xi + self.offset


def not_equal(i: int, j: int) -> BinaryConstraint:
    return BinaryConstraint(i, j, 0)


def not_equal_offset(i: int, j: int, k: int) -> BinaryConstraint:
    return BinaryConstraint(i, j, k)


@dataclass
class Csp:
    num_vars: int
    universe: int
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        if self.num_vars < 0 or self.universe < 1:
            raise ValueError("need num_vars >= 0 and universe >= 1")
        # var -> [(neighbor, offset)] meaning x[neighbor] != x[var] + offset
        self._neighbors = [[] for _ in range(self.num_vars)]
        for c in self.constraints:
            if not (0 <= c.i < self.num_vars and 0 <= c.j < self.num_vars):
                raise ValueError(f"{c} refers to a variable outside [0, {self.num_vars})")
            self._neighbors[c.i].append((c.j, c.offset))
            self._neighbors[c.j].append((c.i, -c.offset))

    def neighbors(self, var: int) -> list:
        return self._neighbors[var]

    def satisfied_by(self, assignment) -> bool:
        return len(assignment) == self.num_vars and all(
            c.holds(assignment[c.i], assignment[c.j]) for c in self.constraints
        )

    def new_domains(self) -> list[SparseSet]:
        return [SparseSet(self.universe) for _ in range(self.num_vars)]


def nqueens(k: int) -> Csp:
    if k < 1:
        raise ValueError("need at least one queen")
    cons = []
    for i in range(k):
        for j in range(i + 1, k):
            d = j - i
            cons += [not_equal(i, j), not_equal_offset(i, j, d), not_equal_offset(i, j, -d)]
    return Csp(k, k, cons)


def propagate(csp: Csp, domains, trail: Trail, var: int, value: int) -> bool:
    """Bind ``var`` to ``value`` and forward-check its neighbors.

    Every touched domain is recorded on the trail's current frame first.
    Returns ``False`` as soon as some neighbor's domain is wiped out.
    """
    dom = domains[var]
    trail.record(dom)
    dom.bind(value)
    n = csp.universe
    for other, offset in csp.neighbors(var):
        w = value + offset
        if not 0 <= w < n:
            continue
        d = domains[other]
        if d.map[w] < d.size:
            trail.record(d)
            d.remove_unchecked(w)
            if d.size == 0:
                return False
    return True


class _Search:
    def __init__(self, csp, domains, trail, count_all, debug):
        self.csp = csp
        self.domains = domains
        self.trail = trail
        self.count_all = count_all
        self.debug = debug
        self.count = 0
        self.solution = None

    def check(self):
        for idx, d in enumerate(self.domains):
            diag = check_invariants(d)
            if not diag.ok:
                raise AssertionError(f"domain {idx} corrupted: {diag}")

    def run(self, var):
        """Returns True to stop the search (first solution found)."""
        if self.debug:
            self.check()
        if var == self.csp.num_vars:
            self.count += 1
            if not self.count_all:
                self.solution = [d.dom[0] for d in self.domains]
                return True
            return False
        for value in self.domains[var].members():
            with self.trail.frame():
                if propagate(self.csp, self.domains, self.trail, var, value):
                    if self.run(var + 1):
                        return True
        return False


def solve(csp: Csp, mode: str = "first", *, debug: bool = False):
    """Label ``csp``.

    ``mode="first"`` returns a list of values (one per variable) or ``None``
    when unsatisfiable; ``mode="count"`` returns the number of solutions.
    With ``debug=True`` every domain's invariants are checked at every node.
    """
    if mode not in ("first", "count"):
        raise ValueError(f"mode must be 'first' or 'count', got {mode!r}")
    search = _Search(csp, csp.new_domains(), Trail(), mode == "count", debug)
    search.run(0)
    if debug:
        # The frames unwind even on an early exit, so domains are full again.
        search.check()
        assert all(d.size == csp.universe for d in search.domains)
    return search.count if mode == "count" else search.solution
