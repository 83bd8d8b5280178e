"""Sparse-set representation of a finite integer domain.

A domain over the universe ``[0, n)`` is stored as two mutually inverse
permutations, ``dom`` and ``map``, plus a bound ``size``.  The members are
``dom[0:size]``; the removed values live in ``dom[size:n]``.  Membership,
removal and binding to a singleton are all O(1), and because no operation
ever writes to ``dom`` at an index ``>= size``, undoing any sequence of
operations only requires writing the old ``size`` back (see ``trail``).
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field

# Unsigned machine words: values sit inline, so a lookup touches one cache
# line instead of a pointer plus an int object.
TYPECODE = "Q"


class SparseSetError(Exception):
    pass


class UniverseError(SparseSetError, ValueError):
    """The universe bound is not a positive integer."""


class DomainError(SparseSetError, IndexError):
    """A value or index lies outside ``[0, n)``."""


class PreconditionError(SparseSetError, ValueError):
    """An operation's guard does not hold (e.g. removing a non-member)."""


@dataclass
class Diagnostics:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)

    def labels(self) -> list[str]:
        return [label for label, _ in self.violations]

    def add(self, label: str, detail: str) -> None:
        self.violations.append((label, detail))

    def __str__(self) -> str:
        if not self.violations:
            return "ok"
        return "; ".join(f"{label}: {detail}" for label, detail in self.violations)


class SparseSet:
    """A subset of ``range(n)`` with O(1) membership, removal and binding.

    ``dom``, ``map`` and ``size`` are public so that the trail and the
    checkers can read them; only the trail is expected to write ``size``
    directly.
    """

    __slots__ = ("n", "dom", "map", "size")

    def __init__(self, n: int):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise UniverseError(f"universe bound must be a positive integer, got {n!r}")
        self.n = n
        self.dom = array(TYPECODE, range(n))
        self.map = array(TYPECODE, range(n))
        self.size = n

    @classmethod
    def from_arrays(cls, dom, map, size) -> SparseSet:
        """Build a set from raw arrays without validating them.

        Meant for tests and checkers that need to look at corrupted states;
        call ``check_invariants`` on the result before trusting it.  Arrays
        holding values a machine word cannot represent are kept as lists.
        """
        s = cls.__new__(cls)
        s.n = len(dom)
        s.dom = _pack(dom)
        s.map = _pack(map)
        s.size = size
        return s

    def copy(self) -> SparseSet:
        return SparseSet.from_arrays(self.dom, self.map, self.size)

    def state(self) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        return tuple(self.dom), tuple(self.map), self.size

    def __eq__(self, other):
        if not isinstance(other, SparseSet):
            return NotImplemented
        return self.state() == other.state()

    __hash__ = None

    def __repr__(self):
        return f"SparseSet(n={self.n}, dom={list(self.dom)}, map={list(self.map)}, size={self.size})"

    def __len__(self):
        return self.size

    def __iter__(self):
        # Snapshot: removing while iterating would otherwise skip values.
        return iter(self.dom[: self.size].tolist())

    def __contains__(self, v):
        # Unlike contains(), foreign values are simply not members.
        if not isinstance(v, int) or not 0 <= v < self.n:
            return False
        return self.map[v] < self.size

    def _check_value(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise DomainError(f"value {v} outside universe [0, {self.n})")

    def contains(self, v: int) -> bool:
        self._check_value(v)
        return self.map[v] < self.size

    def members(self) -> list[int]:
        """Current members in ``dom`` order.

        The order is an artifact of the swaps performed so far and changes
        across remove/bind; do not rely on it.
        """
        return self.dom[: self.size].tolist()

    def is_empty(self) -> bool:
        return self.size == 0

    def swap_entries(self, i: int, j: int) -> None:
        """Exchange ``dom[i]`` and ``dom[j]`` and repair ``map`` for both values."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise DomainError(f"indices ({i}, {j}) outside [0, {n})")
        dom = self.dom
        dom[i], dom[j] = dom[j], dom[i]
        self.map[dom[i]] = i
        self.map[dom[j]] = j

    def remove(self, v: int) -> None:
        """Remove member ``v``.

        Raises ``DomainError`` if ``v`` is outside the universe and
        ``PreconditionError`` if it is not currently a member.
        """
        self._check_value(v)
        if self.map[v] >= self.size:
            raise PreconditionError(f"cannot remove {v}: not a member")
        self.remove_unchecked(v)

    def remove_unchecked(self, v: int) -> None:
        """``remove`` without guards, for hot loops.

        Behaviour is undefined unless ``v`` is a current member: calling it
        otherwise may corrupt the structure or raise an arbitrary exception.
        """
        i = self.map[v]
        last = self.size - 1
        if i != last:
            dom = self.dom
            w = dom[last]
            dom[i] = w
            dom[last] = v
            self.map[w] = i
            self.map[v] = last
        self.size = last

    def bind(self, v: int) -> None:
        """Restrict the set to ``{v}``; ``v`` must be a member."""
        self._check_value(v)
        if self.map[v] >= self.size:
            raise PreconditionError(f"cannot bind to {v}: not a member")
        self.bind_unchecked(v)

    def bind_unchecked(self, v: int) -> None:
        """``bind`` without guards; undefined unless ``v`` is a member."""
        i = self.map[v]
        if i:
            dom = self.dom
            w = dom[0]
            dom[0] = v
            dom[i] = w
            self.map[v] = 0
            self.map[w] = i
        self.size = 1

    def check_invariants(self) -> Diagnostics:
        return check_invariants(self)


def new_full(n: int) -> SparseSet:
    return SparseSet(n)


def contains(s: SparseSet, v: int) -> bool:
    return s.contains(v)


def remove(s: SparseSet, v: int) -> None:
    s.remove(v)


def bind(s: SparseSet, v: int) -> None:
    s.bind(v)


def size_of(s: SparseSet) -> int:
    return s.size


def members(s: SparseSet) -> list[int]:
    return s.members()


def is_empty(s: SparseSet) -> bool:
    return s.is_empty()


def swap_entries(s: SparseSet, i: int, j: int) -> None:
    s.swap_entries(i, j)


def remove_always_swap(s: SparseSet, v: int) -> None:
    """Reference ``remove`` that always swaps, even when ``v`` is already last.

    Kept to check that the fast path in ``SparseSet.remove`` changes nothing
    observable.
    """
    s._check_value(v)
    if s.map[v] >= s.size:
        raise PreconditionError(f"cannot remove {v}: not a member")
    s.swap_entries(s.map[v], s.size - 1)
    s.size -= 1


def _pack(values):
    try:
        return array(TYPECODE, values)
    except (OverflowError, TypeError):
        return list(values)


def _is_index_array(a, n: int) -> bool:
    return (
        len(a) == n
        and (isinstance(a, array) or all(isinstance(x, int) for x in a))
        and (n == 0 or (min(a) >= 0 and max(a) < n))
    )


def check_invariants(s: SparseSet) -> Diagnostics:
    """Report every structural invariant that ``s`` violates.

    Labels: ``inv1``/``inv2`` (``dom``/``map`` are total functions into
    ``[0, n)``), ``size-range`` (``0 <= size <= n``), ``inv4``
    (``map[dom[i]] == i``), ``inv5`` (``dom[map[v]] == v``) and ``inverse``
    (``dom`` is injective and ``map[v] == i <=> dom[i] == v``).
    """
    diag = Diagnostics()
    n = s.n
    dom, mp = s.dom, s.map
    if not isinstance(n, int) or n < 1:
        diag.add("size-range", f"universe bound n={n!r} is not positive")
        return diag
    dom_ok = _is_index_array(dom, n)
    map_ok = _is_index_array(mp, n)
    if not dom_ok:
        diag.add("inv1", f"dom is not a total function [0,{n}) -> [0,{n}): {list(dom)}")
    if not map_ok:
        diag.add("inv2", f"map is not a total function [0,{n}) -> [0,{n}): {list(mp)}")
    if not isinstance(s.size, int) or not 0 <= s.size <= n:
        diag.add("size-range", f"size={s.size!r} outside [0, {n}]")
    if not (dom_ok and map_ok):
        return diag

    ident = list(range(n))
    inv4 = [mp[x] for x in dom] == ident
    inv5 = [dom[x] for x in mp] == ident
    if not inv4:
        bad = next(i for i in ident if mp[dom[i]] != i)
        diag.add("inv4", f"map[dom[{bad}]] = {mp[dom[bad]]} != {bad}")
    if not inv5:
        bad = next(v for v in ident if dom[mp[v]] != v)
        diag.add("inv5", f"dom[map[{bad}]] = {dom[mp[bad]]} != {bad}")
    if len(set(dom)) != n:
        diag.add("inverse", f"dom is not injective: {list(dom)}")
    elif not (inv4 and inv5):
        diag.add("inverse", "dom and map are not mutually inverse")
    return diag
