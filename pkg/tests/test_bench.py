import csv
import io

import pytest

from sparseset import bench


def test_bench_ops_rows_and_ns_per_op():
    rep = bench.bench_ops(256, ops=2000, seed=1, repeats=1)
    reps = {r.representation for r in rep.rows}
    assert reps == {"sparse-set", "bitset", "hash-set"}
    for r in rep.rows:
        assert r.total_ns > 0
        assert r.ns_per_op == pytest.approx(r.total_ns / r.ops)
    assert rep.find("sparse-set", "remove", 256)[0].ops == 256


def test_bench_restore_rows():
    rep = bench.bench_restore(512, 100, repeats=1, inner=3, flush_mib=1)
    assert {r.representation for r in rep.rows} == {"sparse-set", "snapshot-copy"}
    assert all(r.op == "restore@100" and r.ops == 3 for r in rep.rows)


def test_bench_restore_zero_removed():
    rep = bench.bench_restore(64, 0, repeats=1, inner=2, flush_mib=0)
    assert len(rep.rows) == 2
    with pytest.raises(ValueError):
        bench.bench_restore(10, 10)


def test_representations_agree():
    queries, removals = bench.op_stream(300, 500, seed=3)
    assert len(set(removals)) == len(removals) == 300
    bench.cross_check(300, removals[:150])


def test_cross_check_catches_disagreement(monkeypatch):
    class Broken(bench.HashSet):
        def remove(self, v):
            pass

    monkeypatch.setitem(bench.REPRESENTATIONS, "hash-set", Broken)
    with pytest.raises(AssertionError):
        bench.cross_check(10, [1, 2])


def test_bitset_partial_byte():
    b = bench.BitSet(11)
    assert b.members() == set(range(11))
    b.remove(10)
    assert not b.contains(10) and b.contains(9)


def test_csv_format():
    rep = bench.BenchReport([bench.BenchRow("sparse-set", "contains", 8, 4, 10)])
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["representation", "op", "n", "ops", "total_ns", "ns_per_op"]
    assert rows[1] == ["sparse-set", "contains", "8", "4", "10", "2.50"]
    assert "ns/op" in rep.table()


def test_ratio_helpers():
    rep = bench.BenchReport([
        bench.BenchRow("sparse-set", "contains", 8, 10, 100),
        bench.BenchRow("sparse-set", "contains", 64, 10, 250),
        bench.BenchRow("sparse-set", "restore@1", 64, 2, 10),
        bench.BenchRow("sparse-set", "restore@9", 64, 2, 30),
    ])
    assert bench.ratio(rep, "sparse-set", "contains", 8, 64) == 2.5
    assert bench.restore_spread(rep) == 3.0
