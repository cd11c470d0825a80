"""Unit tests for the benchmark driver.

Timing numbers are machine-dependent, so these tests check structure,
determinism of the generated inputs, plan validation, and the CSV
contract; the actual throughput thresholds live in the acceptance suite.
"""

import csv

import numpy as np
import pytest

from twofold.bench import (
    SIZES,
    BenchRecord,
    _inputs,
    _seed,
    format_table,
    make_plan,
    run_bench,
    write_csv,
)

MICRO_PLAN_OPS = ["vtadd2", "vtsqrt"]


@pytest.fixture(scope="module")
def micro_records():
    plan = make_plan(ops=MICRO_PLAN_OPS, formats=["f64"], sizes=["small"])
    return run_bench(plan, repetitions=3)


# --------------------------------------------------------------------------
# plan construction


def test_default_plan_covers_everything():
    plan = make_plan()
    assert len(plan) == 22 * 2 * 3
    ops = {cell[0] for cell in plan}
    assert len(ops) == 22


def test_make_plan_rejects_unknowns():
    with pytest.raises(ValueError, match="unknown op"):
        make_plan(ops=["vteleport"])
    with pytest.raises(ValueError, match="format"):
        make_plan(formats=["f16"])
    with pytest.raises(ValueError, match="size"):
        make_plan(sizes=["huge"])


def test_run_bench_rejects_thin_repetitions():
    with pytest.raises(ValueError, match="repetitions"):
        run_bench(make_plan(ops=["vtadd2"], formats=["f64"], sizes=["small"]), repetitions=2)


def test_run_bench_rejects_tampered_cells():
    with pytest.raises(ValueError, match="shape"):
        run_bench([("vtadd2", "11", "f64", "small")], repetitions=3)
    with pytest.raises(ValueError, match="unknown op"):
        run_bench([("nope", "22", "f64", "small")], repetitions=3)
    with pytest.raises(ValueError, match="bad plan cell"):
        run_bench([("vtadd2", "22", "f64", "jumbo")], repetitions=3)


# --------------------------------------------------------------------------
# deterministic inputs


def test_inputs_are_deterministic_and_seeded_per_cell():
    a = _inputs("vtadd2", "f64", 100)
    b = _inputs("vtadd2", "f64", 100)
    assert len(a) == 4
    for p, q in zip(a, b):
        assert np.array_equal(p.view(np.uint64), q.view(np.uint64))
    other = _inputs("vtsub2", "f64", 100)
    assert not np.array_equal(a[0], other[0])
    assert _seed("vtadd2", "f64", 100) == _seed("vtadd2", "f64", 100)
    assert _seed("vtadd2", "f64", 100) != _seed("vtadd2", "f32", 100)


def test_inputs_shapes_follow_arity():
    assert len(_inputs("vtadd1", "f64", 10)) == 3
    assert len(_inputs("vtadd", "f64", 10)) == 2
    assert len(_inputs("vtsqrt1", "f64", 10)) == 2
    assert len(_inputs("vtsqrt", "f64", 10)) == 1
    planes = _inputs("vtsqrt", "f32", 10)
    assert planes[0].dtype == np.dtype(np.float32)
    assert np.all(planes[0] > 0)


# --------------------------------------------------------------------------
# record structure from a real (tiny) run


def test_micro_run_record_layout(micro_records):
    records = micro_records
    # five dotted baselines first, then the two kernels in plan order
    assert [r.op for r in records] == ["vadd", "vmul", "vdiv", "vsqrt", "vmem",
                                       "vtadd2", "vtsqrt"]
    for r in records:
        assert isinstance(r, BenchRecord)
        assert r.format == "f64"
        assert r.size_class == "small"
        assert r.elements == SIZES["small"]
        assert r.mega_ops > 0


def test_micro_run_ratios(micro_records):
    by_op = {r.op: r for r in micro_records}
    for name in ("vadd", "vmul", "vdiv", "vsqrt"):
        assert by_op[name].ratio_vs_dotted == 1.0
    assert by_op["vmem"].ratio_vs_dotted is None
    assert by_op["vtadd2"].ratio_vs_dotted > 0
    assert by_op["vtsqrt"].ratio_vs_dotted > 0


# --------------------------------------------------------------------------
# serialization


def test_csv_round_trip(micro_records, tmp_path):
    path = tmp_path / "bench.csv"
    write_csv(micro_records, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["op", "shape", "format", "size_class", "elements",
                       "mega_ops", "ratio_vs_dotted"]
    assert len(rows) == len(micro_records) + 1
    by_op = {row[0]: row for row in rows[1:]}
    assert by_op["vmem"][6] == ""
    assert float(by_op["vadd"][6]) == 1.0
    assert int(by_op["vtadd2"][4]) == SIZES["small"]
    assert float(by_op["vtadd2"][5]) > 0


def test_format_table(micro_records):
    text = format_table(micro_records)
    lines = text.splitlines()
    assert lines[0].split() == ["op", "shape", "fmt", "size", "elements",
                                "mega_ops", "ratio"]
    assert len(lines) == len(micro_records) + 1
    assert any("vtadd2" in line for line in lines)
    assert any(line.rstrip().endswith("-") for line in lines)  # vmem has no ratio
