"""Elementwise batch versions of the twofold and coupled operations.

Arrays are structure-of-arrays: a twofold array is a (value, error) pair
of equal-length 1-D planes, kept separate so tight loops stream each
plane contiguously.  Every kernel is generated from the same compiled
core its scalar counterpart runs, so batch results are bitwise identical
to a scalar loop by construction.

Callers allocate the output; kernels never allocate, and every output
index is written exactly once.  Arguments are validated (lengths, dtype,
contiguity, aliasing) before the first element is written, so a rejected
call leaves ``out`` untouched.  Outputs may not alias inputs, even
element-aligned; inputs may alias each other freely.

Kernels hold no shared mutable state: calls writing to disjoint outputs
are safe to run concurrently.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

from .arith import (
    _padd,
    _padd1,
    _pdiv1,
    _pdiv_coupled,
    _pmul1,
    _pmul_coupled,
    _psub,
    _psub1,
    _tadd,
    _tadd1,
    _tdiv,
    _tdiv0,
    _tdiv1,
    _tmul,
    _tmul1,
    _tsqrt,
    _tsqrt0,
    _tsub,
    _tsub1,
)
from .fp_core import _jit, _two_diff, _two_prod, _two_sum

TwofoldArray = namedtuple("TwofoldArray", ("value", "error"))
TwofoldArray.__doc__ = """Structure-of-arrays twofold: value and error planes."""

class CoupledArray(TwofoldArray):
    """A twofold array whose elements are non-overlapping pairs."""

    __slots__ = ()


KernelSpec = namedtuple(
    "KernelSpec",
    ("name", "arity", "core", "out_kind", "baseline", "scalar_name", "func", "loop"),
)
KernelSpec.__doc__ = """One kernel: its compiled loop, core, and scalar twin.

arity encodes the argument shape: "22" two twofold arrays, "21" twofold
array and scalar array, "11" two scalar arrays, "u2" one twofold array,
"u1" one scalar array.  baseline names the plain-arithmetic loop the
benchmark divides by; scalar_name is the package-level scalar operation
the kernel must match bitwise.
"""


# --------------------------------------------------------------------------
# loop drivers
#
# One driver per argument shape, instantiated per core.  numba caches each
# instantiation separately (the closure cell is part of the cache key), so
# all 22 kernels compile once per dtype and then load from disk.


def _loop22(core):
    @_jit
    def run(x0, x1, y0, y1, r0, r1):
        for i in range(r0.shape[0]):
            r0[i], r1[i] = core(x0[i], x1[i], y0[i], y1[i])

    return run


def _loop21(core):
    @_jit
    def run(x0, x1, y, r0, r1):
        for i in range(r0.shape[0]):
            r0[i], r1[i] = core(x0[i], x1[i], y[i])

    return run


def _loop11(core):
    # also serves the unary twofold shape: same four planes, same calls
    @_jit
    def run(x, y, r0, r1):
        for i in range(r0.shape[0]):
            r0[i], r1[i] = core(x[i], y[i])

    return run


def _loop1u(core):
    @_jit
    def run(x, r0, r1):
        for i in range(r0.shape[0]):
            r0[i], r1[i] = core(x[i])

    return run


# --------------------------------------------------------------------------
# argument checking (all of it happens before any write)


_PLANE_DTYPES = (np.dtype(np.float32), np.dtype(np.float64))


def _check(name, ins, outs):
    planes = ins + outs
    for a in planes:
        if not isinstance(a, np.ndarray):
            raise ValueError("%s: planes must be numpy arrays, got %r"
                             % (name, type(a).__name__))
        if a.ndim != 1 or not a.flags.c_contiguous:
            raise ValueError("%s: planes must be 1-D and contiguous" % name)
        if a.dtype not in _PLANE_DTYPES:
            raise ValueError("%s: planes must be float32 or float64, got %s"
                             % (name, a.dtype))
    first = planes[0]
    for a in planes[1:]:
        if a.dtype != first.dtype:
            raise ValueError("%s: planes mix %s and %s"
                             % (name, first.dtype, a.dtype))
        if a.shape[0] != first.shape[0]:
            raise ValueError("%s: plane lengths differ (%d vs %d)"
                             % (name, first.shape[0], a.shape[0]))
    for o in outs:
        for a in ins:
            if np.shares_memory(o, a):
                raise ValueError("%s: out must not alias an input" % name)
    if np.shares_memory(outs[0], outs[1]):
        raise ValueError("%s: out planes overlap each other" % name)


# --------------------------------------------------------------------------
# the 22 kernels
#
# Suffix counts twofold operands: 2 = both, 1 = twofold op scalar-array,
# none = dotted (plain scalar arrays in, coupled out).  The dotted
# coupled family would duplicate these bit for bit, so it is not repeated.

_TABLE = [
    ("vtadd2", "22", _tadd, TwofoldArray, "add", "tadd"),
    ("vtsub2", "22", _tsub, TwofoldArray, "sub", "tsub"),
    ("vtmul2", "22", _tmul, TwofoldArray, "mul", "tmul"),
    ("vtdiv2", "22", _tdiv, TwofoldArray, "div", "tdiv"),
    ("vtadd1", "21", _tadd1, TwofoldArray, "add", "tadd1"),
    ("vtsub1", "21", _tsub1, TwofoldArray, "sub", "tsub1"),
    ("vtmul1", "21", _tmul1, TwofoldArray, "mul", "tmul1"),
    ("vtdiv1", "21", _tdiv1, TwofoldArray, "div", "tdiv1"),
    ("vtadd", "11", _two_sum, CoupledArray, "add", "two_sum"),
    ("vtsub", "11", _two_diff, CoupledArray, "sub", "two_diff"),
    ("vtmul", "11", _two_prod, CoupledArray, "mul", "two_prod"),
    ("vtdiv", "11", _tdiv0, CoupledArray, "div", "tdiv0"),
    ("vtsqrt1", "u2", _tsqrt, TwofoldArray, "sqrt", "tsqrt"),
    ("vtsqrt", "u1", _tsqrt0, CoupledArray, "sqrt", "tsqrt0"),
    ("vpadd2", "22", _padd, CoupledArray, "add", "padd"),
    ("vpsub2", "22", _psub, CoupledArray, "sub", "psub"),
    ("vpmul2", "22", _pmul_coupled, CoupledArray, "mul", "pmul_coupled"),
    ("vpdiv2", "22", _pdiv_coupled, CoupledArray, "div", "pdiv_coupled"),
    ("vpadd1", "21", _padd1, CoupledArray, "add", "padd1"),
    ("vpsub1", "21", _psub1, CoupledArray, "sub", "psub1"),
    ("vpmul1", "21", _pmul1, CoupledArray, "mul", "pmul1"),
    ("vpdiv1", "21", _pdiv1, CoupledArray, "div", "pdiv1"),
]

_DOCS = {
    "22": "Elementwise ``%s`` of two twofold arrays into ``out``.",
    "21": "Elementwise ``%s`` of a twofold array and a scalar array into ``out``.",
    "11": "Elementwise ``%s`` of two scalar arrays into coupled ``out``.",
    "u2": "Elementwise ``%s`` of a twofold array into ``out``.",
    "u1": "Elementwise ``%s`` of a scalar array into coupled ``out``.",
}


def _build(name, arity, core, out_kind, baseline, scalar_name):
    if arity == "22":
        loop = _loop22(core)

        def kern(x, y, out):
            x0, x1 = x
            y0, y1 = y
            r0, r1 = out
            _check(name, (x0, x1, y0, y1), (r0, r1))
            loop(x0, x1, y0, y1, r0, r1)

    elif arity == "21":
        loop = _loop21(core)

        def kern(x, y, out):
            x0, x1 = x
            r0, r1 = out
            _check(name, (x0, x1, y), (r0, r1))
            loop(x0, x1, y, r0, r1)

    elif arity == "11":
        loop = _loop11(core)

        def kern(x, y, out):
            r0, r1 = out
            _check(name, (x, y), (r0, r1))
            loop(x, y, r0, r1)

    elif arity == "u2":
        loop = _loop11(core)

        def kern(x, out):
            x0, x1 = x
            r0, r1 = out
            _check(name, (x0, x1), (r0, r1))
            loop(x0, x1, r0, r1)

    else:
        loop = _loop1u(core)

        def kern(x, out):
            r0, r1 = out
            _check(name, (x,), (r0, r1))
            loop(x, r0, r1)

    kern.__name__ = name
    kern.__qualname__ = name
    kern.__doc__ = _DOCS[arity] % scalar_name
    return KernelSpec(name, arity, core, out_kind, baseline, scalar_name, kern, loop)


KERNELS = {}
for _row in _TABLE:
    _spec = _build(*_row)
    KERNELS[_spec.name] = _spec
    globals()[_spec.name] = _spec.func
del _row, _spec


def empty_twofold(n, dtype=np.float64, kind=TwofoldArray):
    """Allocate an uninitialized twofold array of n elements."""
    dt = np.dtype(dtype)
    if dt not in _PLANE_DTYPES:
        raise ValueError("dtype must be float32 or float64, got %s" % dt)
    return kind(np.empty(n, dt), np.empty(n, dt))


__all__ = ["TwofoldArray", "CoupledArray", "KernelSpec", "KERNELS",
           "empty_twofold"] + [row[0] for row in _TABLE]
