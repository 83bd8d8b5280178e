"""Lockstep refinement checking of ``SparseSet`` against an abstract set model.

A script of operations is replayed on three things at once: a concrete
``SparseSet``, an ``AbstractDomain`` (a plain frozenset, the specification
side), and a ``Trail``.  After every step the concrete state must satisfy
all structural invariants and agree with the abstract set; removals must
also shrink ``size`` and leave ``dom[old_size:]`` untouched, and every
frame pop must give back the member set snapshotted (on the abstract side)
at the matching mark.

Scripts only contain operations whose guards hold; a script that breaks a
guard is rejected with ``ScriptError`` rather than reported as a violation.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Union

from .core import SparseSet, check_invariants, remove_always_swap
from .trail import Trail


class ScriptError(ValueError):
    """Malformed script text, or a script whose guards do not hold."""


@dataclass(frozen=True)
class AbstractDomain:
    n: int
    values: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"universe bound must be positive, got {self.n}")
        if any(not 0 <= v < self.n for v in self.values):
            raise ValueError(f"values {sorted(self.values)} not within [0, {self.n})")

    @classmethod
    def full(cls, n: int) -> AbstractDomain:
        return cls(n, frozenset(range(n)))

    def __contains__(self, v):
        return v in self.values

    def __len__(self):
        return len(self.values)


def abstract_remove(d: AbstractDomain, v: int) -> AbstractDomain:
    if v not in d.values:
        raise ScriptError(f"remove {v}: not in abstract domain {sorted(d.values)}")
    return AbstractDomain(d.n, d.values - {v})


def abstract_bind(d: AbstractDomain, v: int) -> AbstractDomain:
    if v not in d.values:
        raise ScriptError(f"bind {v}: not in abstract domain {sorted(d.values)}")
    return AbstractDomain(d.n, frozenset((v,)))


def gluing_check(s: SparseSet, d: AbstractDomain) -> bool:
    if s.n != d.n:
        raise ValueError(f"universe mismatch: concrete n={s.n}, abstract n={d.n}")
    prefix = s.dom[: s.size]
    return len(prefix) == len(d.values) and set(prefix) == d.values


# -- operations and scripts -------------------------------------------------


@dataclass(frozen=True)
class Remove:
    v: int

    def __str__(self):
        return f"remove {self.v}"


@dataclass(frozen=True)
class Bind:
    v: int

    def __str__(self):
        return f"bind {self.v}"


@dataclass(frozen=True)
class MarkFrame:
    def __str__(self):
        return "mark"


@dataclass(frozen=True)
class PopFrame:
    def __str__(self):
        return "pop"


Op = Union[Remove, Bind, MarkFrame, PopFrame]

MARK = MarkFrame()
POP = PopFrame()


def parse_op(line: str) -> Op:
    parts = line.split()
    if parts == ["mark"]:
        return MARK
    if parts == ["pop"]:
        return POP
    if len(parts) == 2 and parts[0] in ("remove", "bind"):
        try:
            v = int(parts[1])
        except ValueError:
            raise ScriptError(f"bad value in {line!r}") from None
        return Remove(v) if parts[0] == "remove" else Bind(v)
    raise ScriptError(f"unrecognised operation {line!r}")


@dataclass(frozen=True)
class OpScript:
    n: int
    ops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.n < 1:
            raise ScriptError(f"universe must be >= 1, got {self.n}")
        for op in self.ops:
            if isinstance(op, (Remove, Bind)) and not 0 <= op.v < self.n:
                raise ScriptError(f"{op}: value outside universe [0, {self.n})")

    def __len__(self):
        return len(self.ops)

    def to_text(self) -> str:
        return "\n".join([f"universe {self.n}", *map(str, self.ops)]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> OpScript:
        lines = [
            ln.strip()
            for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")
        ]
        if not lines:
            raise ScriptError("empty script: expected 'universe <n>' header")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "universe" or not head[1].isdigit():
            raise ScriptError(f"bad header {lines[0]!r}: expected 'universe <n>'")
        return cls(int(head[1]), tuple(parse_op(ln) for ln in lines[1:]))


# -- lockstep replay --------------------------------------------------------

STRUCTURAL = ("inv1", "inv2", "size-range", "inv4", "inv5", "inverse")

# Which labels are checked after each kind of step.
CHECKS = {
    "initialisation": STRUCTURAL + ("gluing",),
    "remove": STRUCTURAL + ("gluing", "size-decrease", "suffix-frame"),
    "bind": STRUCTURAL + ("gluing", "suffix-frame"),
    "mark": STRUCTURAL + ("gluing",),
    "pop": STRUCTURAL + ("restore-soundness", "gluing"),
}


def event_name(op: Op | None) -> str:
    if op is None:
        return "initialisation"
    return {Remove: "remove", Bind: "bind", MarkFrame: "mark", PopFrame: "pop"}[type(op)]


@dataclass
class Violation:
    """First failed check of a run.  ``step`` 0 is the initial state; step
    ``k`` is the state right after ``ops[k-1]``."""

    step: int
    op: Op | None
    label: str
    concrete: tuple
    abstract: tuple
    detail: str = ""

    @property
    def event(self) -> str:
        return event_name(self.op)

    def describe(self) -> str:
        dom, mp, size = self.concrete
        where = "initialisation" if self.op is None else f"step {self.step} ({self.op})"
        lines = [f"violation of {self.label} at {where}"]
        if self.detail:
            lines.append(f"  detail:   {self.detail}")
        lines.append(f"  concrete: dom={list(dom)} map={list(mp)} size={size}")
        lines.append(f"  abstract: {{{', '.join(map(str, self.abstract))}}}")
        return "\n".join(lines)


class Implementation(NamedTuple):
    """The concrete operations under test; swapped out for mutation testing."""

    name: str
    remove: Callable[[SparseSet, int], None]
    bind: Callable[[SparseSet, int], None]


REFERENCE = Implementation("sparse-set", SparseSet.remove, SparseSet.bind)
ALWAYS_SWAP = Implementation("always-swap", remove_always_swap, SparseSet.bind)


def _violation(step, op, label, s, d, detail=""):
    return Violation(step, op, label, s.state(), tuple(sorted(d.values)), detail)


def _check_state(step, op, s, d):
    diag = check_invariants(s)
    if diag.violations:
        label, detail = diag.violations[0]
        return _violation(step, op, label, s, d, detail)
    if not gluing_check(s, d):
        return _violation(
            step, op, "gluing", s, d,
            f"members {sorted(s.dom[: s.size])} != abstract {sorted(d.values)}",
        )
    return None


def run_script(script: OpScript, impl: Implementation = REFERENCE) -> Violation | None:
    """Replay ``script``; return the first ``Violation`` or ``None`` if all checks pass.

    Raises ``ScriptError`` if some step's guard does not hold on the
    abstract model (or a pop has no matching mark).
    """
    s = SparseSet(script.n)
    d = AbstractDomain.full(script.n)
    trail = Trail()
    frames = []  # (token, abstract snapshot)

    bad = _check_state(0, None, s, d)
    if bad:
        return bad

    for step, op in enumerate(script.ops, 1):
        if isinstance(op, (Remove, Bind)):
            is_remove = isinstance(op, Remove)
            d_next = abstract_remove(d, op.v) if is_remove else abstract_bind(d, op.v)
            old_size = s.size
            old_suffix = s.dom[old_size:]
            try:
                (impl.remove if is_remove else impl.bind)(s, op.v)
            except Exception as exc:
                # The abstract guard holds, so the concrete side disagrees on membership.
                return _violation(step, op, "gluing", s, d, f"concrete operation raised {exc!r}")
            d = d_next
            bad = _check_state(step, op, s, d)
            if bad:
                return bad
            if is_remove and not s.size < old_size:
                return _violation(step, op, "size-decrease", s, d, f"size {old_size} -> {s.size}")
            if s.dom[old_size:] != old_suffix:
                return _violation(
                    step, op, "suffix-frame", s, d,
                    f"dom[{old_size}:] changed from {list(old_suffix)} to {list(s.dom[old_size:])}",
                )
        elif isinstance(op, MarkFrame):
            token = trail.push_frame()
            trail.record(s)
            frames.append((token, d))
            bad = _check_state(step, op, s, d)
            if bad:
                return bad
        elif isinstance(op, PopFrame):
            if not frames:
                raise ScriptError(f"step {step}: pop without a matching mark")
            token, snapshot = frames.pop()
            trail.pop_frame(token)
            d = snapshot
            diag = check_invariants(s)
            if diag.violations:
                label, detail = diag.violations[0]
                return _violation(step, op, label, s, d, detail)
            if not gluing_check(s, snapshot):
                return _violation(
                    step, op, "restore-soundness", s, d,
                    f"restored members {sorted(s.dom[: s.size])} != marked {sorted(snapshot.values)}",
                )
        else:
            raise ScriptError(f"step {step}: unknown operation {op!r}")
    return None


# -- script generation ------------------------------------------------------


def _legal_ops(values, depth):
    vs = sorted(values)
    ops = [Remove(v) for v in vs]
    ops += [Bind(v) for v in vs]
    ops.append(MARK)
    if depth:
        ops.append(POP)
    return ops


def _scripts_of_length(n, length):
    ops = []

    def walk(values, stack):
        if len(ops) == length:
            yield OpScript(n, tuple(ops))
            return
        for op in _legal_ops(values, len(stack)):
            if isinstance(op, Remove):
                nxt, nstack = values - {op.v}, stack
            elif isinstance(op, Bind):
                nxt, nstack = frozenset((op.v,)), stack
            elif isinstance(op, MarkFrame):
                nxt, nstack = values, stack + (values,)
            else:
                nxt, nstack = stack[-1], stack[:-1]
            ops.append(op)
            yield from walk(nxt, nstack)
            ops.pop()

    yield from walk(frozenset(range(n)), ())


def enumerate_scripts(n: int, max_len: int) -> Iterator[OpScript]:
    """Every guard-respecting script over ``range(n)`` of length 0..max_len.

    Shorter scripts come first, so the first failing script found is a
    shortest counterexample.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    for length in range(max_len + 1):
        yield from _scripts_of_length(n, length)


def random_script(seed: int, n: int, length: int, max_depth: int = 8) -> OpScript:
    """A deterministic, guard-respecting random script.

    Removals dominate; marks and pops keep the domain from draining for good.
    """
    rng = random.Random(seed)
    members = list(range(n))
    saved = []
    ops = []
    for _ in range(length):
        choices = [MARK] if len(saved) < max_depth else []
        weights = [0.12] if choices else []
        if saved:
            choices.append(POP)
            weights.append(0.12)
        if members:
            choices += ["remove", "bind"]
            weights += [0.72, 0.04 if saved else 0.005]
        if not choices:
            break
        kind = rng.choices(choices, weights)[0]
        if kind == "remove":
            v = members.pop(rng.randrange(len(members)))
            ops.append(Remove(v))
        elif kind == "bind":
            v = rng.choice(members)
            members = [v]
            ops.append(Bind(v))
        elif kind is MARK:
            saved.append(list(members))
            ops.append(MARK)
        else:
            members = saved.pop()
            ops.append(POP)
    return OpScript(n, tuple(ops))


# -- suites -----------------------------------------------------------------


@dataclass
class SuiteResult:
    scripts: int = 0
    # (event, label) -> (first violation, script that produced it)
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, script: OpScript, violation: Violation) -> None:
        key = (violation.event, violation.label)
        if key not in self.failures:
            self.failures[key] = (violation, script)


def run_scripts(scripts, impl: Implementation = REFERENCE) -> SuiteResult:
    result = SuiteResult()
    for script in scripts:
        result.scripts += 1
        bad = run_script(script, impl)
        if bad is not None:
            result.add(script, bad)
    return result


def exhaustive_suite(max_n: int = 3, max_len: int = 5, impl: Implementation = REFERENCE) -> SuiteResult:
    scripts = (sc for n in range(1, max_n + 1) for sc in enumerate_scripts(n, max_len))
    return run_scripts(scripts, impl)


def reachable_states(n: int) -> set:
    """All ``(dom, map, size)`` states reachable from ``SparseSet(n)``.

    Explores remove, bind, and trail restores (back to any size saved by an
    enclosing mark).  Marks are only placed when they would save a size
    smaller than the enclosing one, which keeps the search finite without
    losing states.
    """
    start = SparseSet(n)
    seen_nodes = set()
    states = set()
    queue = deque([(start.state(), ())])
    while queue:
        node = queue.popleft()
        if node in seen_nodes:
            continue
        seen_nodes.add(node)
        (dom, mp, size), marks = node
        states.add((dom, mp, size))
        for v in dom[:size]:
            for op in (remove_always_swap, SparseSet.bind):
                s = SparseSet.from_arrays(dom, mp, size)
                op(s, v)
                queue.append((s.state(), marks))
        if not marks or marks[-1] > size:
            queue.append(((dom, mp, size), marks + (size,)))
        if marks:
            queue.append(((dom, mp, marks[-1]), marks[:-1]))
    return states
