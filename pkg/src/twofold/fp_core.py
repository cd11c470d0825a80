"""Floating-point foundation: exact transforms and the two-term value types.

Everything above this module is built from a handful of short branch-free
sequences of basic operations, each of which returns the ordinary rounded
result together with the rounding residual it left behind.  The residual
recovery only works under round-to-nearest-even with no algebraic
rewriting, so the compiled cores are built without any fastmath option.

Two scalar formats are supported throughout: IEEE binary64 operands are
Python floats, binary32 operands are numpy.float32 scalars.  The compiled
cores are generic over the two dtypes.  numba returns float32 results as
plain Python floats, so the public wrappers cast results back to the
dtype the computation ran in (the cast is exact, every result is a value
of that format).
"""

from __future__ import annotations

import math
from collections import namedtuple

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic


def _jit(fn):
    # error_model="numpy" keeps division IEEE-total: 1/0 and 0/0 propagate
    # inf/nan instead of raising, which the specials contract relies on.
    return njit(cache=True, error_model="numpy")(fn)

__all__ = [
    "Twofold",
    "Coupled",
    "ulp",
    "fma",
    "fast_two_sum",
    "two_sum",
    "fast_two_diff",
    "two_diff",
    "two_prod",
    "div_rem",
    "sqrt_resid",
    "renormalize",
    "fast_renormalize",
    "format_number",
    "format_twofold",
]


Twofold = namedtuple("Twofold", ("value", "error"))
Twofold.__doc__ = """A rounded result paired with an estimate of its accumulated error.

``value`` is bitwise identical to what plain arithmetic would have
produced; ``value + error`` approximates the exact result.  The two
fields may overlap arbitrarily (the error is an estimate, not a tail).
"""


class Coupled(Twofold):
    """A non-overlapping twofold: ``abs(error) <= ulp(value)/2``.

    The invariant is stated for finite nonzero values.  A Coupled is
    substitutable wherever a Twofold is accepted; the reverse never
    holds, so operations that need the tighter guarantee take Coupled
    explicitly.
    """

    __slots__ = ()


# --------------------------------------------------------------------------
# fused multiply-add
#
# Python has no float fma (math.fma landed in 3.13) and numpy's is not a
# scalar op, so the compiled cores lean on the LLVM intrinsic directly.
# llvm.fma maps to the hardware instruction on any target numba supports
# with FMA enabled, and to a correctly rounded libm call otherwise.


@intrinsic
def _fma_intr(typingctx, a, b, c):
    if a != b or a != c or a not in (types.float32, types.float64):
        return None
    sig = a(a, b, c)

    def codegen(context, builder, signature, args):
        ty = args[0].type
        fnty = ir.FunctionType(ty, [ty, ty, ty])
        name = "llvm.fma.f64" if isinstance(ty, ir.DoubleType) else "llvm.fma.f32"
        fn = cgutils.get_or_insert_function(builder.module, fnty, name)
        return builder.call(fn, args)

    return sig, codegen


@_jit
def _fma(a, b, c):
    return _fma_intr(a, b, c)


def _fused_or_die() -> None:
    # A double-rounding emulation (multiply, round, add, round) returns 0
    # for these probes; a genuine single-rounding fma returns the exact
    # low-order bit.  Refuse to run rather than hand out wrong residuals.
    a = 1.0 + 2.0**-27
    if _fma(a, a, -(1.0 + 2.0**-26)) != 2.0**-54:
        raise RuntimeError(
            "fused multiply-add is not correctly rounded for binary64; "
            "the exact transforms in this package would be silently wrong"
        )
    a32 = np.float32(1.0 + 2.0**-12)
    if _fma(a32, a32, np.float32(-(1.0 + 2.0**-11))) != 2.0**-24:
        raise RuntimeError(
            "fused multiply-add is not correctly rounded for binary32; "
            "the exact transforms in this package would be silently wrong"
        )


_fused_or_die()


# --------------------------------------------------------------------------
# compiled cores
#
# Tuples in, tuples out.  These are shared by the scalar wrappers below,
# by the twofold arithmetic in arith.py, and by the batch kernels, so
# every layer evaluates the exact same instruction sequence.  Association
# order in the residual recovery is load-bearing; do not "simplify".


@_jit
def _fast_two_sum(a, b):
    # valid when |a| >= |b| (or a == 0, or non-finite); caller's contract
    s = a + b
    bv = s - a
    return s, b - bv


@_jit
def _two_sum(a, b):
    s = a + b
    bv = s - a
    av = s - bv
    br = b - bv
    ar = a - av
    return s, ar + br


@_jit
def _fast_two_diff(a, b):
    # valid when |a| >= |b| (or a == 0, or non-finite); caller's contract
    d = a - b
    bv = a - d
    return d, bv - b


@_jit
def _two_diff(a, b):
    d = a - b
    bv = a - d
    av = d + bv
    br = bv - b
    ar = a - av
    return d, ar + br


@_jit
def _two_prod(a, b):
    p = a * b
    return p, _fma(a, b, -p)


@_jit
def _div_rem(a, b):
    q = a / b
    return q, _fma(-q, b, a)


@_jit
def _sqrt_resid(a):
    c = np.sqrt(a)
    return c, _fma(-c, c, a)


# --------------------------------------------------------------------------
# scalar API


def _use32(*parts) -> bool:
    for p in parts:
        if type(p) is np.float32:
            return True
    return False


def _ordered_ok(a: float, b: float) -> bool:
    if not (math.isfinite(a) and math.isfinite(b)):
        return True
    return a == 0.0 or abs(a) >= abs(b)


def ulp(a):
    """Distance between ``abs(a)`` and the next magnitude in its binade.

    By convention zero and subnormal inputs return the smallest positive
    subnormal of the format.  NaN and infinity return NaN.
    """
    if _use32(a):
        f = float(a)
        if not math.isfinite(f):
            return np.float32("nan")
        return np.spacing(np.float32(abs(f)))
    a = float(a)
    if not math.isfinite(a):
        return math.nan
    return math.ulp(a)


def fma(a, b, c):
    """Correctly rounded fused multiply-add, fl(a*b + c) with one rounding."""
    if _use32(a, b, c):
        return np.float32(_fma(np.float32(a), np.float32(b), np.float32(c)))
    return _fma(float(a), float(b), float(c))


def fast_two_sum(a, b) -> Coupled:
    """Three-operation exact addition, requires ``abs(a) >= abs(b)``.

    Returns Coupled(s, t) with s = fl(a+b) and s + t == a + b exactly.
    The ordering precondition is the caller's contract; it is checked
    only when assertions are enabled.
    """
    if _use32(a, b):
        a = np.float32(a)
        b = np.float32(b)
        assert _ordered_ok(float(a), float(b)), "fast_two_sum needs |a| >= |b|"
        s, t = _fast_two_sum(a, b)
        return Coupled(np.float32(s), np.float32(t))
    a = float(a)
    b = float(b)
    assert _ordered_ok(a, b), "fast_two_sum needs |a| >= |b|"
    s, t = _fast_two_sum(a, b)
    return Coupled(s, t)


def two_sum(a, b) -> Coupled:
    """Six-operation exact addition, no ordering requirement.

    Returns Coupled(s, t) with s = fl(a+b) and s + t == a + b exactly
    (finite operands, no overflow).  Non-finite inputs propagate.
    """
    if _use32(a, b):
        s, t = _two_sum(np.float32(a), np.float32(b))
        return Coupled(np.float32(s), np.float32(t))
    s, t = _two_sum(float(a), float(b))
    return Coupled(s, t)


def fast_two_diff(a, b) -> Coupled:
    """Three-operation exact subtraction, requires ``abs(a) >= abs(b)``."""
    if _use32(a, b):
        a = np.float32(a)
        b = np.float32(b)
        assert _ordered_ok(float(a), float(b)), "fast_two_diff needs |a| >= |b|"
        d, t = _fast_two_diff(a, b)
        return Coupled(np.float32(d), np.float32(t))
    a = float(a)
    b = float(b)
    assert _ordered_ok(a, b), "fast_two_diff needs |a| >= |b|"
    d, t = _fast_two_diff(a, b)
    return Coupled(d, t)


def two_diff(a, b) -> Coupled:
    """Six-operation exact subtraction, no ordering requirement.

    Returns Coupled(d, t) with d = fl(a-b) and d + t == a - b exactly.
    """
    if _use32(a, b):
        d, t = _two_diff(np.float32(a), np.float32(b))
        return Coupled(np.float32(d), np.float32(t))
    d, t = _two_diff(float(a), float(b))
    return Coupled(d, t)


def two_prod(a, b) -> Coupled:
    """Exact multiplication via fma: p = fl(a*b), e = fl(a*b - p).

    p + e == a * b exactly unless the residual falls into the subnormal
    range, in which case e is the rounded/flushed residual, silently,
    just like the basic operations behave.
    """
    if _use32(a, b):
        p, e = _two_prod(np.float32(a), np.float32(b))
        return Coupled(np.float32(p), np.float32(e))
    p, e = _two_prod(float(a), float(b))
    return Coupled(p, e)


def div_rem(a, b):
    """Division with exact remainder: q = fl(a/b), r = fl(a - q*b).

    Returns a plain (q, r) pair, not a twofold: r is the remainder of
    the division, not an error term.  a == q*b + r exactly outside the
    underflow range, and abs(r/b) <= ulp(q)/2.  Division by zero gives
    an IEEE quotient and a NaN remainder.
    """
    if _use32(a, b):
        q, r = _div_rem(np.float32(a), np.float32(b))
        return np.float32(q), np.float32(r)
    return _div_rem(float(a), float(b))


def sqrt_resid(a):
    """Square root with exact residual: c = fl(sqrt(a)), d = fl(a - c*c).

    Returns a plain (c, d) pair.  a == c*c + d exactly outside the
    underflow range.  Negative input propagates NaN into both slots.
    """
    if _use32(a):
        c, d = _sqrt_resid(np.float32(a))
        return np.float32(c), np.float32(d)
    return _sqrt_resid(float(a))


def renormalize(z) -> Coupled:
    """Exact-sum-preserving compression of a twofold into a Coupled.

    Works for arbitrary (value, error) pairs at the cost of the full
    six-operation addition.
    """
    v, e = z
    return two_sum(v, e)


def fast_renormalize(z) -> Coupled:
    """Renormalize in three operations, requires ``abs(value) >= abs(error)``."""
    v, e = z
    return fast_two_sum(v, e)


# --------------------------------------------------------------------------
# text rendering


def format_number(x, digits: int = 6) -> str:
    """Shortest %g rendering at the given significant digits; NaN as 'nan'."""
    v = float(x)
    if math.isnan(v):
        return "nan"
    return "%.*g" % (digits, v)


def format_twofold(value, error, digits: int = 6) -> str:
    """Render a twofold as ``value[error]``, the error printed in brackets."""
    return "%s[%s]" % (format_number(value, digits), format_number(error, digits))
