"""Micro-benchmarks: sparse set vs bitset and hash-set baselines.

Timings are wall-clock nanoseconds from ``time.perf_counter_ns``, taken as
the median of ``repeats`` runs after one untimed warmup run.
"""

from __future__ import annotations

import csv
import gc
import io
import random
import statistics
import time
from dataclasses import astuple, dataclass, field

from .core import SparseSet
from .trail import Trail

CSV_HEADER = ("representation", "op", "n", "ops", "total_ns", "ns_per_op")


@dataclass
class BenchRow:
    representation: str
    op: str
    n: int
    ops: int
    total_ns: int

    @property
    def ns_per_op(self) -> float:
        return self.total_ns / self.ops if self.ops else 0.0


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def extend(self, other: BenchReport) -> BenchReport:
        self.rows.extend(other.rows)
        return self

    def find(self, representation, op, n=None, ops=None) -> list[BenchRow]:
        return [
            r for r in self.rows
            if r.representation == representation and r.op == op
            and (n is None or r.n == n) and (ops is None or r.ops == ops)
        ]

    def write_csv(self, fp) -> None:
        w = csv.writer(fp)
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([*astuple(r), f"{r.ns_per_op:.2f}"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def table(self) -> str:
        head = ["representation", "op", "n", "ops", "total_ns", "ns/op"]
        body = [
            [r.representation, r.op, str(r.n), str(r.ops), str(r.total_ns), f"{r.ns_per_op:.1f}"]
            for r in self.rows
        ]
        widths = [max(len(x) for x in col) for col in zip(head, *body)]
        fmt = lambda row: "  ".join(x.rjust(w) if i > 1 else x.ljust(w)
                                    for i, (x, w) in enumerate(zip(row, widths)))
        return "\n".join([fmt(head), fmt(["-" * w for w in widths])] + [fmt(b) for b in body])


# -- baselines --------------------------------------------------------------


class BitSet:
    """One bit per universe value, packed in a bytearray."""

    def __init__(self, n):
        self.n = n
        self.bits = bytearray(b"\xff" * ((n + 7) // 8))
        if n % 8:
            self.bits[-1] = (1 << (n % 8)) - 1

    def contains(self, v):
        return (self.bits[v >> 3] >> (v & 7)) & 1 == 1

    def remove(self, v):
        self.bits[v >> 3] &= ~(1 << (v & 7)) & 0xFF

    def members(self):
        return {v for v in range(self.n) if self.contains(v)}


class HashSet:
    def __init__(self, n):
        self.values = set(range(n))

    def contains(self, v):
        return v in self.values

    def remove(self, v):
        self.values.remove(v)

    def members(self):
        return set(self.values)


class SparseAdapter:
    def __init__(self, n):
        self.s = SparseSet(n)

    def contains(self, v):
        return self.s.map[v] < self.s.size

    def remove(self, v):
        self.s.remove_unchecked(v)

    def members(self):
        return set(self.s.members())


REPRESENTATIONS = {"sparse-set": SparseAdapter, "bitset": BitSet, "hash-set": HashSet}


def _median_ns(run, repeats):
    run()  # warmup
    samples = []
    enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            samples.append(run())
    finally:
        if enabled:
            gc.enable()
    return int(statistics.median(samples))


def op_stream(n: int, ops: int, seed) -> tuple[list[int], list[int]]:
    """Membership queries and removal order (distinct values) for one run."""
    rng = random.Random(seed)
    queries = [rng.randrange(n) for _ in range(ops)]
    removals = rng.sample(range(n), min(ops, n))
    return queries, removals


def cross_check(n: int, removals) -> None:
    """All representations must agree on the members left after ``removals``."""
    results = {}
    for name, cls in REPRESENTATIONS.items():
        rep = cls(n)
        for v in removals:
            rep.remove(v)
        results[name] = rep.members()
    expected = set(range(n)) - set(removals)
    for name, got in results.items():
        if got != expected:
            raise AssertionError(f"{name} disagrees on members after the removal stream")


def _time_contains(rep, queries):
    contains = rep.contains
    t0 = time.perf_counter_ns()
    for v in queries:
        contains(v)
    return time.perf_counter_ns() - t0


def _time_remove(cls, n, removals):
    rep = cls(n)
    remove = rep.remove
    t0 = time.perf_counter_ns()
    for v in removals:
        remove(v)
    return time.perf_counter_ns() - t0


def bench_ops(n: int, ops: int = 100_000, seed=0, repeats: int = 5) -> BenchReport:
    """Time ``ops`` membership tests and ``min(ops, n)`` removals per representation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    queries, removals = op_stream(n, ops, seed)
    cross_check(n, removals)
    report = BenchReport()
    for name, cls in REPRESENTATIONS.items():
        rep = cls(n)
        # Half the universe removed, so both outcomes of contains are exercised.
        for v in removals[: len(removals) // 2]:
            rep.remove(v)
        t = _median_ns(lambda: _time_contains(rep, queries), repeats)
        report.rows.append(BenchRow(name, "contains", n, len(queries), t))
        t = _median_ns(lambda: _time_remove(cls, n, removals), repeats)
        report.rows.append(BenchRow(name, "remove", n, len(removals), t))
    return report


class _CacheFlush:
    """Copies a buffer larger than typical last-level caches.

    Run before every timed restore so each one starts equally cold, whatever
    the untimed removal loop before it happened to leave in cache.
    """

    def __init__(self, mib):
        self.src = bytearray(mib << 20)
        self.dst = bytearray(mib << 20)

    def __call__(self):
        self.dst[:] = self.src


def _restore_sparse(n, removals, inner, flush):
    s = SparseSet(n)
    trail = Trail()
    total = 0
    for _ in range(inner):
        token = trail.push_frame()
        trail.record(s)
        for v in removals:
            s.remove_unchecked(v)
        flush()
        t0 = time.perf_counter_ns()
        trail.pop_frame(token)
        total += time.perf_counter_ns() - t0
    assert s.size == n
    return total


def _restore_snapshot(n, removals, inner, flush):
    # Baseline: copy both arrays at the mark, copy them back to restore.
    s = SparseSet(n)
    total = 0
    for _ in range(inner):
        saved = (s.dom[:], s.map[:], s.size)
        for v in removals:
            s.remove_unchecked(v)
        flush()
        t0 = time.perf_counter_ns()
        s.dom[:] = saved[0]
        s.map[:] = saved[1]
        s.size = saved[2]
        total += time.perf_counter_ns() - t0
    return total


def bench_restore(n: int, removed: int, seed=0, repeats: int = 5, inner: int = 20,
                  flush_mib: int = 64) -> BenchReport:
    """Time a restore after ``removed`` removals: trail pop vs full-copy snapshot.

    Each row's ``ops`` counts restores (``inner`` per run); the removals
    themselves are not timed.  Caches are flushed before every timed restore
    (``flush_mib=0`` disables this).
    """
    if not 0 <= removed < n:
        raise ValueError("need 0 <= removed < n")
    removals = random.Random(seed).sample(range(n), removed)
    flush = _CacheFlush(flush_mib) if flush_mib else (lambda: None)
    report = BenchReport()
    t = _median_ns(lambda: _restore_sparse(n, removals, inner, flush), repeats)
    report.rows.append(BenchRow("sparse-set", f"restore@{removed}", n, inner, t))
    t = _median_ns(lambda: _restore_snapshot(n, removals, inner, flush), repeats)
    report.rows.append(BenchRow("snapshot-copy", f"restore@{removed}", n, inner, t))
    return report


def ratio(report: BenchReport, representation: str, op: str, n_small: int, n_large: int) -> float:
    small = report.find(representation, op, n_small)[0].ns_per_op
    large = report.find(representation, op, n_large)[0].ns_per_op
    return large / small


def restore_spread(report: BenchReport, representation: str = "sparse-set") -> float:
    """max/min ns per restore across the ``restore@k`` rows of one representation."""
    per = [r.ns_per_op for r in report.rows
           if r.representation == representation and r.op.startswith("restore@")]
    return max(per) / min(per)
