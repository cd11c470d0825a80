"""Twofold arithmetic: plain rounded results carrying their own error estimate.

A twofold number is a pair (value, error).  The value plane is bitwise
identical to what ordinary floating-point arithmetic produces; the error
plane runs alongside it and estimates the accumulated rounding error, so
a computation can check its own accuracy on the fly at a small constant
factor in cost.  Coupled values are the renormalized, non-overlapping
special case (Dekker-style double-word numbers).

Scalar operations live in ``twofold.arith`` and the exact transforms
they are built from in ``twofold.fp_core``; both are re-exported here.
Array versions are in ``twofold.kernels``, the benchmark harness in
``twofold.bench``, the application studies in ``twofold.demos``, and
``twofold.cli`` wires it all to the command line.
"""

from .fp_core import (
    Coupled,
    Twofold,
    div_rem,
    fast_renormalize,
    fast_two_diff,
    fast_two_sum,
    fma,
    format_number,
    format_twofold,
    renormalize,
    sqrt_resid,
    two_diff,
    two_prod,
    two_sum,
    ulp,
)
from .arith import (
    padd, padd1, padd1r,
    pdiv, pdiv1, pdiv1r, pdiv_coupled,
    pmul, pmul1, pmul1r, pmul_coupled,
    psqrt, psub, psub1, psub1r,
    tabs, tadd, tadd1, tadd1r,
    tdiv, tdiv0, tdiv1, tdiv1r,
    tmul, tmul1, tmul1r, tneg,
    tsqrt, tsqrt0, tsub, tsub1, tsub1r,
)
from . import bench, demos, kernels  # noqa: E402  (submodule handles)
from .kernels import CoupledArray, TwofoldArray, empty_twofold

__version__ = "0.1.0"

__all__ = [
    "Twofold", "Coupled",
    "ulp", "fma",
    "fast_two_sum", "two_sum", "fast_two_diff", "two_diff", "two_prod",
    "div_rem", "sqrt_resid", "renormalize", "fast_renormalize",
    "format_number", "format_twofold",
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
    "TwofoldArray", "CoupledArray", "empty_twofold",
    "bench", "demos", "kernels",
    "__version__",
]
