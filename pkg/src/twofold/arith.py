"""Twofold and coupled arithmetic over every supported argument shape.

The t-prefixed operations return a Twofold: the value plane is bitwise
identical to plain arithmetic on the inputs' value planes, and the error
plane carries a cheap running estimate of the accumulated rounding error.
The p-prefixed operations take non-overlapping Coupled operands and
return a renormalized Coupled, Dekker style.  ``pmul``, ``pdiv`` and
``psqrt`` are the intermediate forms: specialized for coupled input but
returning a possibly overlapping Twofold, for callers that renormalize
themselves (or don't need to).

Argument shapes follow a naming scheme instead of runtime dispatch:
no suffix takes two twofolds, suffix ``1`` takes (twofold, scalar),
suffix ``1r`` takes (scalar, twofold).  Dotted (scalar, scalar) inputs
go straight to the exact transforms in fp_core, or to ``tdiv0`` and
``tsqrt0`` here.  Addition and multiplication mirror by commuting;
subtraction and division mirror by promoting the scalar to a zero-error
twofold, a documented extension beyond the shaped algorithms.

All error-plane sums associate left to right; the ordering is part of
the algorithm, not style, and tests pin the exact bit patterns.
"""

from __future__ import annotations

import math

import numpy as np

from .fp_core import (
    Coupled,
    Twofold,
    _fast_two_sum,
    _fma,
    _jit,
    _two_diff,
    _two_prod,
    _two_sum,
    _use32,
    ulp,
)

__all__ = [
    "tadd", "tadd1", "tadd1r",
    "tsub", "tsub1", "tsub1r",
    "tmul", "tmul1", "tmul1r", "pmul",
    "tdiv", "tdiv1", "tdiv1r", "tdiv0", "pdiv",
    "tsqrt", "tsqrt0", "psqrt",
    "padd", "padd1", "padd1r",
    "psub", "psub1", "psub1r",
    "pmul_coupled", "pmul1", "pmul1r",
    "pdiv_coupled", "pdiv1", "pdiv1r",
    "tneg", "tabs",
]


# --------------------------------------------------------------------------
# compiled cores (shared with the batch kernels)


@_jit
def _tadd(x0, x1, y0, y1):
    z0, e0 = _two_sum(x0, y0)
    return z0, (x1 + y1) + e0


@_jit
def _tadd1(x0, x1, y):
    # strict: the error output is the correctly rounded total deviation
    z0, e0 = _two_sum(x0, y)
    return z0, x1 + e0


@_jit
def _tsub(x0, x1, y0, y1):
    z0, e0 = _two_diff(x0, y0)
    return z0, (x1 - y1) + e0


@_jit
def _tsub1(x0, x1, y):
    z0, e0 = _two_diff(x0, y)
    return z0, x1 + e0


@_jit
def _tmul(x0, x1, y0, y1):
    # cross terms ordered by decreasing expected magnitude of what they
    # carry; the parenthesized pair is summed before joining the chain
    p00, e00 = _two_prod(x0, y0)
    p01 = x0 * y1
    p10 = x1 * y0
    p11 = x1 * y1
    return p00, (e00 + p11) + (p01 + p10)


@_jit
def _tmul1(x0, x1, y):
    p00, e00 = _two_prod(x0, y)
    p10 = x1 * y
    return p00, e00 + p10


@_jit
def _pmul(x0, x1, y0, y1):
    # coupled inputs make x1*y1 negligible; drop it, keep the rest
    p00, e00 = _two_prod(x0, y0)
    p01 = x0 * y1
    p10 = x1 * y0
    return p00, e00 + (p01 + p10)


@_jit
def _tdiv0(x, y):
    q = x / y
    r = _fma(-q, y, x)
    return q, r / y


@_jit
def _tdiv1(x0, x1, y):
    q = x0 / y
    r = _fma(-q, y, x0)
    return q, (r + x1) / y


@_jit
def _tdiv(x0, x1, y0, y1):
    q = x0 / y0
    r0 = _fma(-q, y0, x0)
    r1 = _fma(-q, y1, x1)
    return q, (r0 + r1) / (y0 + y1)


@_jit
def _pdiv(x0, x1, y0, y1):
    # for coupled y the error of dividing by y0 alone is below what the
    # estimate tracks, so skip re-adding the divisor planes
    q = x0 / y0
    r0 = _fma(-q, y0, x0)
    r1 = _fma(-q, y1, x1)
    return q, (r0 + r1) / y0


@_jit
def _tsqrt0(x):
    c = np.sqrt(x)
    d = _fma(-c, c, x)
    return c, d / (c + c)


@_jit
def _psqrt(x0, x1):
    # one Newton step from the rounded root; x1 joins the residual
    c = np.sqrt(x0)
    d = _fma(-c, c, x0)
    return c, (x1 + d) / (c + c)


@_jit
def _tsqrt(x0, x1):
    # overlapping input: renormalize, root the coupled form, then pull
    # the answer back onto sqrt(x0) so the value plane shadows plain math
    z0 = np.sqrt(x0)
    u0, u1 = _two_sum(x0, x1)
    v0, v1 = _psqrt(u0, u1)
    w0, w1 = _tsub1(v0, v1, z0)
    return z0, w0 + w1


@_jit
def _padd(x0, x1, y0, y1):
    z0, z1 = _tadd(x0, x1, y0, y1)
    return _fast_two_sum(z0, z1)


@_jit
def _padd1(x0, x1, y):
    z0, z1 = _tadd1(x0, x1, y)
    return _fast_two_sum(z0, z1)


@_jit
def _psub(x0, x1, y0, y1):
    z0, z1 = _tsub(x0, x1, y0, y1)
    return _fast_two_sum(z0, z1)


@_jit
def _psub1(x0, x1, y):
    z0, z1 = _tsub1(x0, x1, y)
    return _fast_two_sum(z0, z1)


@_jit
def _pmul_coupled(x0, x1, y0, y1):
    # the dropped cross term can leave the estimate above ulp/2, so
    # multiplication renormalizes with the full unordered transform
    z0, z1 = _pmul(x0, x1, y0, y1)
    return _two_sum(z0, z1)


@_jit
def _pmul1(x0, x1, y):
    z0, z1 = _tmul1(x0, x1, y)
    return _two_sum(z0, z1)


@_jit
def _pdiv_coupled(x0, x1, y0, y1):
    z0, z1 = _pdiv(x0, x1, y0, y1)
    return _fast_two_sum(z0, z1)


@_jit
def _pdiv1(x0, x1, y):
    z0, z1 = _tdiv1(x0, x1, y)
    return _fast_two_sum(z0, z1)


# --------------------------------------------------------------------------
# wrapper plumbing


def _coupled_ok(z) -> bool:
    v, e = z
    fv = float(v)
    if fv == 0.0 or not math.isfinite(fv):
        return True
    if math.isnan(float(e)):
        return False
    return abs(float(e)) <= float(ulp(v)) / 2.0


def _run22(core, cls, x, y):
    x0, x1 = x
    y0, y1 = y
    if _use32(x0, x1, y0, y1):
        v, e = core(np.float32(x0), np.float32(x1), np.float32(y0), np.float32(y1))
        return cls(np.float32(v), np.float32(e))
    v, e = core(float(x0), float(x1), float(y0), float(y1))
    return cls(v, e)


def _run21(core, cls, x, y):
    x0, x1 = x
    if _use32(x0, x1, y):
        v, e = core(np.float32(x0), np.float32(x1), np.float32(y))
        return cls(np.float32(v), np.float32(e))
    v, e = core(float(x0), float(x1), float(y))
    return cls(v, e)


def _run11(core, cls, a, b):
    if _use32(a, b):
        v, e = core(np.float32(a), np.float32(b))
        return cls(np.float32(v), np.float32(e))
    v, e = core(float(a), float(b))
    return cls(v, e)


def _run2u(core, cls, x):
    x0, x1 = x
    if _use32(x0, x1):
        v, e = core(np.float32(x0), np.float32(x1))
        return cls(np.float32(v), np.float32(e))
    v, e = core(float(x0), float(x1))
    return cls(v, e)


def _run1u(core, cls, a):
    if _use32(a):
        v, e = core(np.float32(a))
        return cls(np.float32(v), np.float32(e))
    v, e = core(float(a))
    return cls(v, e)


def _promote(a, y):
    # scalar on the left of sub/div: lift it to a zero-error twofold
    if _use32(a) or _use32(*y):
        return (np.float32(a), np.float32(0.0))
    return (float(a), 0.0)


# --------------------------------------------------------------------------
# twofold operations


def tadd(x, y) -> Twofold:
    """Add two twofolds; both input errors plus the fresh rounding error."""
    return _run22(_tadd, Twofold, x, y)


def tadd1(x, y) -> Twofold:
    """Add a scalar to a twofold; the error output is correctly rounded."""
    return _run21(_tadd1, Twofold, x, y)


def tadd1r(a, x) -> Twofold:
    """Add a twofold to a scalar (commuted ``tadd1``)."""
    return _run21(_tadd1, Twofold, x, a)


def tsub(x, y) -> Twofold:
    """Subtract two twofolds."""
    return _run22(_tsub, Twofold, x, y)


def tsub1(x, y) -> Twofold:
    """Subtract a scalar from a twofold; correctly rounded error output."""
    return _run21(_tsub1, Twofold, x, y)


def tsub1r(a, x) -> Twofold:
    """Subtract a twofold from a scalar (scalar promoted to zero error)."""
    return _run22(_tsub, Twofold, _promote(a, x), x)


def tmul(x, y) -> Twofold:
    """Multiply two twofolds; all four cross terms enter the estimate."""
    return _run22(_tmul, Twofold, x, y)


def tmul1(x, y) -> Twofold:
    """Multiply a twofold by a scalar."""
    return _run21(_tmul1, Twofold, x, y)


def tmul1r(a, x) -> Twofold:
    """Multiply a scalar by a twofold (commuted ``tmul1``)."""
    return _run21(_tmul1, Twofold, x, a)


def pmul(x, y) -> Twofold:
    """Multiply two coupled values, dropping the error-times-error term.

    Output is a Twofold: it is not renormalized here, see
    ``pmul_coupled`` for the Dekker-style closed form.
    """
    assert _coupled_ok(x) and _coupled_ok(y), "pmul needs coupled operands"
    return _run22(_pmul, Twofold, x, y)


def tdiv0(a, b) -> Coupled:
    """Divide two scalars into a coupled quotient.

    value = fl(a/b); the error slot refines it with the exact fma
    remainder, and the pair is non-overlapping by construction.
    Division by zero propagates: IEEE value, NaN error.
    """
    return _run11(_tdiv0, Coupled, a, b)


def tdiv1(x, y) -> Twofold:
    """Divide a twofold by a scalar; degrades to ``tdiv0`` on zero error."""
    return _run21(_tdiv1, Twofold, x, y)


def tdiv1r(a, x) -> Twofold:
    """Divide a scalar by a twofold (scalar promoted to zero error)."""
    return _run22(_tdiv, Twofold, _promote(a, x), x)


def tdiv(x, y) -> Twofold:
    """Divide two twofolds: exact fma remainders over both planes."""
    return _run22(_tdiv, Twofold, x, y)


def pdiv(x, y) -> Twofold:
    """Divide two coupled values, dividing the residual by the bare value."""
    assert _coupled_ok(x) and _coupled_ok(y), "pdiv needs coupled operands"
    return _run22(_pdiv, Twofold, x, y)


def tsqrt0(a) -> Coupled:
    """Square root of a scalar into a coupled pair.

    Negative input propagates NaN into both slots.
    """
    return _run1u(_tsqrt0, Coupled, a)


def psqrt(x) -> Twofold:
    """Square root of a coupled value (one Newton step on the residual)."""
    assert _coupled_ok(x), "psqrt needs a coupled operand"
    return _run2u(_psqrt, Twofold, x)


def tsqrt(x) -> Twofold:
    """Square root of an arbitrary twofold.

    The value plane is sqrt of the input value plane; the estimate comes
    from rooting the renormalized input and measuring the distance back.
    """
    return _run2u(_tsqrt, Twofold, x)


# --------------------------------------------------------------------------
# coupled (renormalized) operations


def padd(x, y) -> Coupled:
    """Add two coupled values and renormalize (3 extra operations)."""
    assert _coupled_ok(x) and _coupled_ok(y), "padd needs coupled operands"
    return _run22(_padd, Coupled, x, y)


def padd1(x, y) -> Coupled:
    """Add a scalar to a coupled value and renormalize."""
    assert _coupled_ok(x), "padd1 needs a coupled operand"
    return _run21(_padd1, Coupled, x, y)


def padd1r(a, x) -> Coupled:
    """Add a coupled value to a scalar (commuted ``padd1``)."""
    assert _coupled_ok(x), "padd1r needs a coupled operand"
    return _run21(_padd1, Coupled, x, a)


def psub(x, y) -> Coupled:
    """Subtract two coupled values and renormalize."""
    assert _coupled_ok(x) and _coupled_ok(y), "psub needs coupled operands"
    return _run22(_psub, Coupled, x, y)


def psub1(x, y) -> Coupled:
    """Subtract a scalar from a coupled value and renormalize."""
    assert _coupled_ok(x), "psub1 needs a coupled operand"
    return _run21(_psub1, Coupled, x, y)


def psub1r(a, x) -> Coupled:
    """Subtract a coupled value from a scalar."""
    assert _coupled_ok(x), "psub1r needs a coupled operand"
    return _run22(_psub, Coupled, _promote(a, x), x)


def pmul_coupled(x, y) -> Coupled:
    """Multiply two coupled values and renormalize with the full transform."""
    assert _coupled_ok(x) and _coupled_ok(y), "pmul_coupled needs coupled operands"
    return _run22(_pmul_coupled, Coupled, x, y)


def pmul1(x, y) -> Coupled:
    """Multiply a coupled value by a scalar and renormalize."""
    assert _coupled_ok(x), "pmul1 needs a coupled operand"
    return _run21(_pmul1, Coupled, x, y)


def pmul1r(a, x) -> Coupled:
    """Multiply a scalar by a coupled value (commuted ``pmul1``)."""
    assert _coupled_ok(x), "pmul1r needs a coupled operand"
    return _run21(_pmul1, Coupled, x, a)


def pdiv_coupled(x, y) -> Coupled:
    """Divide two coupled values and renormalize."""
    assert _coupled_ok(x) and _coupled_ok(y), "pdiv_coupled needs coupled operands"
    return _run22(_pdiv_coupled, Coupled, x, y)


def pdiv1(x, y) -> Coupled:
    """Divide a coupled value by a scalar and renormalize."""
    assert _coupled_ok(x), "pdiv1 needs a coupled operand"
    return _run21(_pdiv1, Coupled, x, y)


def pdiv1r(a, x) -> Coupled:
    """Divide a scalar by a coupled value."""
    assert _coupled_ok(x), "pdiv1r needs a coupled operand"
    return _run22(_pdiv_coupled, Coupled, _promote(a, x), x)


# --------------------------------------------------------------------------
# sign helpers (negation costs one operation per plane and is exact)


def tneg(x):
    """Negate both planes; preserves coupling, costs no rounding."""
    cls = Coupled if isinstance(x, Coupled) else Twofold
    v, e = x
    return cls(-v, -e)


def tabs(x):
    """Absolute value, sign taken from the value plane."""
    v, e = x
    if float(v) < 0.0:
        return tneg(x)
    cls = Coupled if isinstance(x, Coupled) else Twofold
    return cls(v, e)
