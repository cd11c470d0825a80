"""Throughput harness: batch kernels versus plain-arithmetic baselines.

Each measurement times a compiled repeat loop around one kernel call,
growing the inner iteration count until a single measurement spans at
least 10 ms, then keeps the best (highest-throughput) of N repetitions
to filter scheduler noise.  Inputs are fixed-seed uniform magnitudes in
[1, 2) with random signs, so nothing strays into subnormal or overflow
hardware slow paths and reruns are bitwise reproducible.

Throughput is reported as millions of outputs per second, and every
arithmetic kernel gets a ratio against the dotted baseline doing the
same plain operation at the same size and format (vadd, vmul, vdiv,
vsqrt, plus a pure-copy vmem for the traffic floor).  Ratios, not
absolute rates, are the stable quantity across machines.
"""

from __future__ import annotations

import csv
import time
import zlib
from dataclasses import dataclass

import numpy as np

from .fp_core import _jit
from .kernels import KERNELS, TwofoldArray, empty_twofold

__all__ = ["BenchRecord", "SIZES", "make_plan", "run_bench", "write_csv",
           "format_table"]

SIZES = {"small": 100, "medium": 10_000, "large": 1_000_000}

_FORMATS = {"f32": np.float32, "f64": np.float64}

# which dotted loop an op is measured against
_BASELINE_FOR = {"add": "vadd", "sub": "vadd", "mul": "vmul",
                 "div": "vdiv", "sqrt": "vsqrt"}


@dataclass
class BenchRecord:
    op: str
    shape: str
    format: str
    size_class: str
    elements: int
    mega_ops: float
    ratio_vs_dotted: float | None


# --------------------------------------------------------------------------
# dotted baselines


@_jit
def _vadd(x, y, r):
    for i in range(r.shape[0]):
        r[i] = x[i] + y[i]


@_jit
def _vmul(x, y, r):
    for i in range(r.shape[0]):
        r[i] = x[i] * y[i]


@_jit
def _vdiv(x, y, r):
    for i in range(r.shape[0]):
        r[i] = x[i] / y[i]


@_jit
def _vsqrt(x, r):
    for i in range(r.shape[0]):
        r[i] = np.sqrt(x[i])


@_jit
def _vmem(x, r):
    for i in range(r.shape[0]):
        r[i] = x[i]


_BASELINES = {"vadd": _vadd, "vmul": _vmul, "vdiv": _vdiv,
              "vsqrt": _vsqrt, "vmem": _vmem}


# --------------------------------------------------------------------------
# repeat drivers, one per plane count
#
# The kernel loop rides in as a dispatcher argument; numba specializes and
# caches the driver per loop, so the timed region is a compiled call with
# no interpreter in the way.


@_jit
def _rep2(loop, iters, a, b):
    for _ in range(iters):
        loop(a, b)


@_jit
def _rep3(loop, iters, a, b, c):
    for _ in range(iters):
        loop(a, b, c)


@_jit
def _rep4(loop, iters, a, b, c, d):
    for _ in range(iters):
        loop(a, b, c, d)


@_jit
def _rep5(loop, iters, a, b, c, d, e):
    for _ in range(iters):
        loop(a, b, c, d, e)


@_jit
def _rep6(loop, iters, a, b, c, d, e, f):
    for _ in range(iters):
        loop(a, b, c, d, e, f)


_REPS = {2: _rep2, 3: _rep3, 4: _rep4, 5: _rep5, 6: _rep6}


def _seed(op: str, fmt: str, n: int) -> int:
    return zlib.crc32(("%s:%s:%d" % (op, fmt, n)).encode())


def _planes(rng, n, dtype, positive=False):
    v = rng.uniform(1.0, 2.0, n)
    if not positive:
        v *= rng.choice((-1.0, 1.0), n)
    v = v.astype(dtype)
    scale = dtype(2.0 ** -54) if dtype is np.float64 else dtype(2.0 ** -25)
    return v, (v * scale).astype(dtype)


def _inputs(op: str, fmt: str, n: int):
    """Deterministic, well-scaled argument planes for one bench cell."""
    spec = KERNELS[op]
    dtype = _FORMATS[fmt]
    rng = np.random.default_rng(_seed(op, fmt, n))
    positive = spec.baseline == "sqrt"
    xv, xe = _planes(rng, n, dtype, positive)
    if spec.arity == "22":
        yv, ye = _planes(rng, n, dtype)
        return (xv, xe, yv, ye)
    if spec.arity == "21":
        yv, _ = _planes(rng, n, dtype)
        return (xv, xe, yv)
    if spec.arity == "11":
        yv, _ = _planes(rng, n, dtype)
        return (xv, yv)
    if spec.arity == "u2":
        return (xv, xe)
    return (xv,)


def _measure(rep, loop, arrays, repetitions):
    # grow the repeat count until one measurement is long enough to trust
    iters = 1
    while True:
        t0 = time.perf_counter()
        rep(loop, iters, *arrays)
        dt = time.perf_counter() - t0
        if dt >= 0.010:
            break
        iters *= 2
    best = dt
    for _ in range(repetitions - 1):
        t0 = time.perf_counter()
        rep(loop, iters, *arrays)
        dt = time.perf_counter() - t0
        best = min(best, dt)
    return iters, best


def make_plan(ops=None, formats=None, sizes=None):
    """Expand op/format/size selections into bench plan cells."""
    ops = list(KERNELS) if ops is None else list(ops)
    formats = list(_FORMATS) if formats is None else list(formats)
    sizes = list(SIZES) if sizes is None else list(sizes)
    for op in ops:
        if op not in KERNELS:
            raise ValueError("unknown op %r" % op)
    for fmt in formats:
        if fmt not in _FORMATS:
            raise ValueError("unknown format %r (use f32/f64)" % fmt)
    for size in sizes:
        if size not in SIZES:
            raise ValueError("unknown size class %r" % size)
    return [(op, KERNELS[op].arity, fmt, size)
            for fmt in formats for size in sizes for op in ops]


def _run_baselines(fmt, size, repetitions, records, index):
    n = SIZES[size]
    dtype = _FORMATS[fmt]
    for name, loop in _BASELINES.items():
        rng = np.random.default_rng(_seed(name, fmt, n))
        positive = name == "vsqrt"
        x, _ = _planes(rng, n, dtype, positive)
        out = np.empty(n, dtype)
        if name in ("vsqrt", "vmem"):
            arrays = (x, out)
            shape = "u1"
        else:
            y, _ = _planes(rng, n, dtype)
            arrays = (x, y, out)
            shape = "11"
        rep = _REPS[len(arrays)]
        rep(loop, 1, *arrays)  # compile outside the timed region
        iters, best = _measure(rep, loop, arrays, repetitions)
        mega = n * iters / best / 1e6
        ratio = None if name == "vmem" else 1.0
        records.append(BenchRecord(name, shape, fmt, size, n, mega, ratio))
        index[(name, fmt, size)] = mega


def run_bench(plan=None, repetitions=5):
    """Measure every cell in the plan, plus the dotted baselines.

    Returns baseline records followed by kernel records for each
    (format, size) group, in plan order.  Timings exclude input
    generation and compilation.
    """
    if repetitions < 3:
        raise ValueError("repetitions must be >= 3 to filter noise")
    if plan is None:
        plan = make_plan()
    grouped = {}
    for cell in plan:
        op, shape, fmt, size = cell
        spec = KERNELS.get(op)
        if spec is None:
            raise ValueError("unknown op %r" % op)
        if shape != spec.arity:
            raise ValueError("op %s has shape %s, plan says %s"
                             % (op, spec.arity, shape))
        if fmt not in _FORMATS or size not in SIZES:
            raise ValueError("bad plan cell %r" % (cell,))
        grouped.setdefault((fmt, size), []).append((op, spec))

    records = []
    dotted = {}
    for (fmt, size), cells in grouped.items():
        _run_baselines(fmt, size, repetitions, records, dotted)
        n = SIZES[size]
        for op, spec in cells:
            arrays = _inputs(op, fmt, n)
            out = empty_twofold(n, _FORMATS[fmt], spec.out_kind)
            all_arrays = arrays + (out.value, out.error)
            rep = _REPS[len(all_arrays)]
            # warm the jit outside the timed region
            rep(spec.loop, 1, *all_arrays)
            iters, best = _measure(rep, spec.loop, all_arrays, repetitions)
            mega = n * iters / best / 1e6
            base = dotted[(_BASELINE_FOR[spec.baseline], fmt, size)]
            records.append(BenchRecord(op, spec.arity, fmt, size, n, mega,
                                       base / mega))
    return records


def write_csv(records, path):
    """Write records in the stable CSV layout."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["op", "shape", "format", "size_class", "elements",
                    "mega_ops", "ratio_vs_dotted"])
        for r in records:
            ratio = "" if r.ratio_vs_dotted is None else "%.4f" % r.ratio_vs_dotted
            w.writerow([r.op, r.shape, r.format, r.size_class, r.elements,
                        "%.3f" % r.mega_ops, ratio])


def format_table(records) -> str:
    """Human-readable summary, grouped the way the records arrive."""
    lines = ["%-8s %-5s %-4s %-6s %10s %12s %8s"
             % ("op", "shape", "fmt", "size", "elements", "mega_ops", "ratio")]
    for r in records:
        ratio = "-" if r.ratio_vs_dotted is None else "%8.2f" % r.ratio_vs_dotted
        lines.append("%-8s %-5s %-4s %-6s %10d %12.1f %8s"
                     % (r.op, r.shape, r.format, r.size_class, r.elements,
                        r.mega_ops, ratio))
    return "\n".join(lines) + "\n"
