"""Three worked studies that show the error estimate doing its job.

Each demo runs a small real computation twice over, in binary32 and
binary64, entirely in twofold arithmetic, and renders a plain-text
report whose every number is printed as ``value[error]``.  The reports
are deterministic and golden-tested byte for byte.

* ``sum100h``: a time counter accumulating 1/10 second steps for many
  hours.  In binary32 the counter drifts by hours and the error plane
  says so; in binary64 the estimate stays around 1e-9.
* ``gauss_solve``: a 3x3 bidiagonal system solved by naive Gauss
  elimination.  The error estimates grow by the expected factor of
  1/lambda from one unknown to the next.
* ``quadratic_roots``: the school formula with a discriminant near
  zero (catastrophic cancellation) or slightly negative (NaN must
  propagate through the report, not raise).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith import _tadd, tadd, tdiv, tmul, tneg, tsqrt, tsub
from .fp_core import Twofold, _jit, format_twofold

__all__ = ["DemoReport", "sum100h", "gauss_solve", "quadratic_roots", "twofold_from_decimal"]

_KINDS = {"f32": "binary32", "f64": "binary64"}


def _kind_of(fmt: str) -> str:
    try:
        return _KINDS[fmt]
    except KeyError:
        raise ValueError("format must be 'f32' or 'f64', got %r" % (fmt,)) from None


def twofold_from_decimal(text, fmt: str) -> Twofold:
    """Build the twofold representation of a decimal constant.

    The constant is read as binary64 first and then narrowed to the
    target format; the narrowing residual lands in the error slot.  For
    binary64 the residual is zero by construction, mirroring a source
    where double literals are the starting point.
    """
    _kind_of(fmt)
    wide = float(text)
    if fmt == "f32":
        v = np.float32(wide)
        return Twofold(v, np.float32(wide - float(v)))
    return Twofold(wide, 0.0)


@dataclass
class DemoReport:
    """A rendered-on-demand demo transcript.

    ``lines`` holds (indent, label, payload) rows, where payload is a
    Twofold (rendered as value[error]), a list of Twofolds (rendered as
    a row), a plain string, or None for a bare section label.  An
    optional per-row suffix hangs after the closing bracket (units).
    """

    kind: str
    title: str
    lines: list = field(default_factory=list)

    def add(self, indent: int, label, payload, suffix: str = "") -> None:
        self.lines.append((indent, label, payload, suffix))

    def quantities(self):
        """Flatten every labeled twofold in the report to (label, value, error)."""
        out = []
        for _, label, payload, _ in self.lines:
            if isinstance(payload, Twofold):
                out.append((label, payload.value, payload.error))
            elif isinstance(payload, (list, tuple)):
                for i, q in enumerate(payload):
                    out.append(("%s[%d]" % (label, i), q.value, q.error))
        return out

    def render(self, digits: int = 6) -> str:
        rows = [self.title]
        for indent, label, payload, suffix in self.lines:
            if payload is None:
                body = label
            else:
                if isinstance(payload, Twofold):
                    text = format_twofold(payload.value, payload.error, digits)
                elif isinstance(payload, str):
                    text = payload
                else:
                    text = "  ".join(
                        format_twofold(q.value, q.error, digits) for q in payload
                    )
                body = "%s: %s" % (label, text) if label else text
            rows.append(" " * indent + body + suffix)
        return "\n".join(rows) + "\n"


# --------------------------------------------------------------------------
# summation


@_jit
def _accumulate(t0, t1, n):
    s0 = t0 - t0
    s1 = s0
    for _ in range(n):
        s0, s1 = _tadd(s0, s1, t0, t1)
    return s0, s1


def sum100h(fmt: str, hours: int = 100) -> DemoReport:
    """Accumulate ``hours`` worth of 1/10-second ticks in a twofold counter.

    The step is the twofold image of decimal 0.1, so the binary32 run
    carries the representation error of the step itself and the counter
    honestly reports multi-hour drift.  The displayed result converts
    seconds to hours by plain per-plane division.
    """
    kind = _kind_of(fmt)
    hours = int(hours)
    if hours <= 0:
        raise ValueError("hours must be positive")
    steps = hours * 36000
    t = twofold_from_decimal("0.1", fmt)
    s0, s1 = _accumulate(t.value, t.error, steps)
    if fmt == "f32":
        shown = Twofold(np.float32(s0) / np.float32(3600), np.float32(s1) / np.float32(3600))
    else:
        shown = Twofold(s0 / 3600.0, s1 / 3600.0)

    report = DemoReport(kind, "test: type=%s, hours=%d" % (kind, hours))
    report.add(4, "1/10 s", t)
    report.add(4, "result", shown, " hours")
    report.add(4, "expect", "%d hours" % hours)
    return report


# --------------------------------------------------------------------------
# linear system


_CASES = {
    "well3": ("0.1", ("11", "11", "1"), ("10", "10", "10")),
    "ill3": ("0.001", ("1001", "1001", "1"), ("1000", "1000", "1000")),
}


def gauss_solve(fmt: str, case: str = "well3") -> DemoReport:
    """Solve a 3x3 Jordan-block system by naive Gauss elimination.

    The matrix has ``lam`` on the diagonal and 1 above it; the right
    side is chosen so the exact solution is a constant vector.  No
    pivoting, natural elimination order, every arithmetic step twofold.
    """
    kind = _kind_of(fmt)
    try:
        lam_text, f_text, x_text = _CASES[case]
    except KeyError:
        raise ValueError("case must be one of %s" % sorted(_CASES)) from None

    lam = twofold_from_decimal(lam_text, fmt)
    one = twofold_from_decimal("1", fmt)
    zero = twofold_from_decimal("0", fmt)
    a = [
        [lam, one, zero],
        [zero, lam, one],
        [zero, zero, lam],
    ]
    f = [twofold_from_decimal(t, fmt) for t in f_text]
    expected = [twofold_from_decimal(t, fmt) for t in x_text]

    # forward elimination (the subdiagonal is zero, but the solver does
    # not know that; the zero multipliers still flow through the ops)
    for k in range(3):
        for i in range(k + 1, 3):
            m = tdiv(a[i][k], a[k][k])
            for j in range(k, 3):
                a[i][j] = tsub(a[i][j], tmul(m, a[k][j]))
            f[i] = tsub(f[i], tmul(m, f[k]))

    # back substitution
    x = [None, None, None]
    for i in (2, 1, 0):
        s = f[i]
        for j in range(i + 1, 3):
            s = tsub(s, tmul(a[i][j], x[j]))
        x[i] = tdiv(s, a[i][i])

    amatrix = [
        [lam, one, zero],
        [zero, lam, one],
        [zero, zero, lam],
    ]
    report = DemoReport(kind, "test, %s, %s" % (kind, case))
    report.add(0, "A", None)
    for row in amatrix:
        report.add(2, "", list(row))
    report.add(0, "f", None)
    report.add(2, "", [twofold_from_decimal(t, fmt) for t in f_text])
    report.add(0, "x (expected)", None)
    report.add(2, "", expected)
    report.add(0, "x (solution)", None)
    report.add(2, "", x)
    return report


# --------------------------------------------------------------------------
# quadratic roots


def quadratic_roots(fmt: str, c_spec: str = "1e-8") -> DemoReport:
    """Solve x^2 + 2x + c = 0 by the school formula, in twofold arithmetic.

    ``c_spec`` is a decimal expression, optionally a sum or difference
    of two decimals ("1e-8", "1+1e-8", "1-1e-8"); it is evaluated in
    binary64 and narrowed to the target format with the residual kept.
    A negative discriminant propagates NaN through the roots.
    """
    kind = _kind_of(fmt)
    c_value = _parse_c(c_spec)

    a = twofold_from_decimal("1", fmt)
    b = twofold_from_decimal("2", fmt)
    c = twofold_from_decimal(repr(c_value), fmt)
    four = twofold_from_decimal("4", fmt)
    two = twofold_from_decimal("2", fmt)

    disc = tsub(tmul(b, b), tmul(tmul(four, a), c))
    d = tsqrt(disc)
    neg_b = tneg(b)
    two_a = tmul(two, a)
    x0 = tdiv(tsub(neg_b, d), two_a)
    x1 = tdiv(tadd(neg_b, d), two_a)

    report = DemoReport(kind, "test: type=%s" % kind)
    for label, q in (("a", a), ("b", b), ("c", c), ("d", d), ("x0", x0), ("x1", x1)):
        report.add(2, label, q)
    return report


def _parse_c(spec) -> float:
    if isinstance(spec, (int, float)):
        return float(spec)
    text = str(spec).strip().replace(" ", "")
    # split a single top-level + or - that is not an exponent sign
    for i in range(1, len(text)):
        ch = text[i]
        if ch in "+-" and text[i - 1] not in "eE":
            left, right = text[:i], text[i + 1 :]
            try:
                head, tail = float(left), float(right)
            except ValueError:
                break
            return head + tail if ch == "+" else head - tail
    try:
        return float(text)
    except ValueError:
        raise ValueError("cannot parse c constant %r" % (spec,)) from None
