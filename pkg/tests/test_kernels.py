"""Unit tests for the batch kernels.

The central claim is bitwise equivalence: every kernel must produce, for
every element, exactly the floats the package-level scalar operation
produces.  Everything else is argument validation and bookkeeping.
"""

import numpy as np
import pytest

import twofold as tf
from twofold.fp_core import Twofold
from twofold.kernels import (
    KERNELS,
    CoupledArray,
    TwofoldArray,
    empty_twofold,
)

ALL_NAMES = sorted(KERNELS)


def _bits(a):
    return a.view(np.uint32 if a.dtype == np.dtype(np.float32) else np.uint64)


def _planes(rng, n, dtype, positive=False, coupled=False):
    v = rng.uniform(1, 2, n) * np.exp2(rng.integers(-3, 4, n))
    if not positive:
        v = v * rng.choice([-1.0, 1.0], n)
    v = v.astype(dtype)
    if coupled:
        scale = 2.0**-25 if dtype == np.dtype(np.float32) else 2.0**-54
    else:
        scale = 2.0**-24 if dtype == np.dtype(np.float32) else 2.0**-52
    e = (v * scale * rng.uniform(-1, 1, n).astype(dtype)).astype(dtype)
    return v, e


def _inputs_for(spec, rng, n, dtype):
    coupled = spec.name.startswith("vp")
    positive = spec.baseline == "sqrt"
    if spec.arity == "22":
        x = TwofoldArray(*_planes(rng, n, dtype, coupled=coupled))
        y = TwofoldArray(*_planes(rng, n, dtype, coupled=coupled))
        return (x, y)
    if spec.arity == "21":
        x = TwofoldArray(*_planes(rng, n, dtype, coupled=coupled))
        y = _planes(rng, n, dtype)[0]
        return (x, y)
    if spec.arity == "11":
        return (_planes(rng, n, dtype)[0], _planes(rng, n, dtype)[0])
    if spec.arity == "u2":
        return (TwofoldArray(*_planes(rng, n, dtype, positive=True, coupled=coupled)),)
    return (_planes(rng, n, dtype, positive=True)[0],)


def _scalar_args(spec, args, i):
    if spec.arity == "22":
        x, y = args
        return (Twofold(x.value[i], x.error[i]), Twofold(y.value[i], y.error[i]))
    if spec.arity == "21":
        x, y = args
        return (Twofold(x.value[i], x.error[i]), y[i])
    if spec.arity == "11":
        x, y = args
        return (x[i], y[i])
    if spec.arity == "u2":
        (x,) = args
        return (Twofold(x.value[i], x.error[i]),)
    return (args[0][i],)


# --------------------------------------------------------------------------
# registry shape


def test_registry_contents():
    assert len(KERNELS) == 22
    histogram = {}
    for spec in KERNELS.values():
        histogram[spec.arity] = histogram.get(spec.arity, 0) + 1
    assert histogram == {"22": 8, "21": 8, "11": 4, "u2": 1, "u1": 1}
    for spec in KERNELS.values():
        assert spec.baseline in {"add", "sub", "mul", "div", "sqrt"}
        assert callable(getattr(tf, spec.scalar_name))
        assert getattr(tf.kernels, spec.name) is spec.func


def test_out_kinds():
    assert KERNELS["vtadd2"].out_kind is TwofoldArray
    assert KERNELS["vtadd"].out_kind is CoupledArray
    assert KERNELS["vpadd2"].out_kind is CoupledArray
    assert KERNELS["vtsqrt"].out_kind is CoupledArray
    assert KERNELS["vtsqrt1"].out_kind is TwofoldArray


# --------------------------------------------------------------------------
# bitwise equivalence with the scalar operations


@pytest.mark.parametrize("name", ALL_NAMES)
@pytest.mark.parametrize("dtype", [np.float64, np.float32])
def test_kernel_matches_scalar_op_bitwise(name, dtype):
    spec = KERNELS[name]
    dtype = np.dtype(dtype)
    scalar = getattr(tf, spec.scalar_name)
    for n in (257, 4097):
        rng = np.random.default_rng(abs(hash((name, str(dtype), n))) % 2**32)
        args = _inputs_for(spec, rng, n, dtype)
        out = empty_twofold(n, dtype, spec.out_kind)
        spec.func(*args, out)
        ref_v = np.empty(n, dtype)
        ref_e = np.empty(n, dtype)
        for i in range(n):
            z = scalar(*_scalar_args(spec, args, i))
            ref_v[i] = z.value
            ref_e[i] = z.error
        assert np.array_equal(_bits(out.value), _bits(ref_v)), name
        assert np.array_equal(_bits(out.error), _bits(ref_e)), name


def test_length_one_matches_scalar():
    x = TwofoldArray(np.array([1.0]), np.array([-(2.0**-53)]))
    y = TwofoldArray(np.array([2.0**-53]), np.array([-(2.0**-106)]))
    out = empty_twofold(1)
    tf.kernels.vtadd2(x, y, out)
    z = tf.tadd(Twofold(1.0, -(2.0**-53)), Twofold(2.0**-53, -(2.0**-106)))
    assert (out.value[0], out.error[0]) == tuple(z)


def test_inputs_may_alias_each_other():
    v = np.array([1.0, 2.0, 3.0])
    e = np.array([2.0**-54, 0.0, -(2.0**-53)])
    x = TwofoldArray(v, e)
    out = empty_twofold(3)
    tf.kernels.vtadd2(x, x, out)
    for i in range(3):
        z = tf.tadd(Twofold(v[i], e[i]), Twofold(v[i], e[i]))
        assert (out.value[i], out.error[i]) == tuple(z)


def test_specials_flow_through_kernels():
    a = np.array([1.0, 0.0, -1.0])
    b = np.array([0.0, 0.0, np.inf])
    out = empty_twofold(3, kind=CoupledArray)
    tf.kernels.vtdiv(a, b, out)
    assert out.value[0] == float("inf") and np.isnan(out.error[0])
    assert np.isnan(out.value[1]) and np.isnan(out.error[1])
    assert out.value[2] == 0.0 and np.signbit(out.value[2])

    neg = np.array([-1.0])
    out = empty_twofold(1, kind=CoupledArray)
    tf.kernels.vtsqrt(neg, out)
    assert np.isnan(out.value[0]) and np.isnan(out.error[0])


def test_dotted_kernel_outputs_are_coupled():
    rng = np.random.default_rng(7)
    a = _planes(rng, 1000, np.dtype(np.float64))[0]
    b = _planes(rng, 1000, np.dtype(np.float64))[0]
    out = empty_twofold(1000, kind=CoupledArray)
    tf.kernels.vtadd(a, b, out)
    assert np.all(np.abs(out.error) <= np.spacing(np.abs(out.value)) / 2)
    tf.kernels.vtmul(a, b, out)
    assert np.all(np.abs(out.error) <= np.spacing(np.abs(out.value)) / 2)
    tf.kernels.vtdiv(a, b, out)
    assert np.all(np.abs(out.error) <= np.spacing(np.abs(out.value)) / 2)


def test_empty_arrays_are_a_no_op():
    x = TwofoldArray(np.empty(0), np.empty(0))
    out = empty_twofold(0)
    tf.kernels.vtadd2(x, x, out)
    assert out.value.shape == (0,)


# --------------------------------------------------------------------------
# validation: every rejection happens before the first write


def _fresh(n=8, dtype=np.float64):
    rng = np.random.default_rng(3)
    x = TwofoldArray(*_planes(rng, n, np.dtype(dtype)))
    y = TwofoldArray(*_planes(rng, n, np.dtype(dtype)))
    out = TwofoldArray(np.full(n, 7.0, dtype), np.full(n, 7.0, dtype))
    return x, y, out


def _assert_rejected(callable_, out, message_part):
    with pytest.raises(ValueError, match=message_part):
        callable_()
    assert np.all(out.value == 7.0) and np.all(out.error == 7.0)


def test_rejects_length_mismatch():
    x, y, out = _fresh()
    short = TwofoldArray(y.value[:4].copy(), y.error[:4].copy())
    _assert_rejected(lambda: tf.kernels.vtadd2(x, short, out), out, "lengths differ")


def test_rejects_mixed_dtypes():
    x, y, out = _fresh()
    y32 = TwofoldArray(y.value.astype(np.float32), y.error.astype(np.float32))
    _assert_rejected(lambda: tf.kernels.vtadd2(x, y32, out), out, "mix")


def test_rejects_non_contiguous_planes():
    x, y, out = _fresh(16)
    strided = TwofoldArray(x.value[::2], x.error[::2])
    _assert_rejected(lambda: tf.kernels.vtadd2(strided, strided, out), out, "contiguous")


def test_rejects_integer_planes():
    x, y, out = _fresh()
    ints = TwofoldArray(np.arange(8), np.arange(8))
    _assert_rejected(lambda: tf.kernels.vtadd2(x, ints, out), out, "float32 or float64")


def test_rejects_non_arrays():
    x, y, out = _fresh()
    lists = TwofoldArray(list(x.value), list(x.error))
    _assert_rejected(lambda: tf.kernels.vtadd2(x, lists, out), out, "numpy arrays")


def test_rejects_two_dimensional_planes():
    x, y, out = _fresh()
    square = TwofoldArray(np.ones((2, 4)), np.ones((2, 4)))
    _assert_rejected(lambda: tf.kernels.vtadd2(x, square, out), out, "1-D")


def test_rejects_out_aliasing_an_input():
    x, y, out = _fresh()
    with pytest.raises(ValueError, match="alias"):
        tf.kernels.vtadd2(x, y, TwofoldArray(x.value, out.error))
    # element-aligned aliasing is still aliasing
    with pytest.raises(ValueError, match="alias"):
        tf.kernels.vtadd2(x, y, TwofoldArray(out.value, y.error))


def test_rejects_overlapping_out_planes():
    x, y, out = _fresh()
    same = np.full(8, 7.0)
    with pytest.raises(ValueError, match="overlap"):
        tf.kernels.vtadd2(x, y, TwofoldArray(same, same))


def test_validation_covers_every_arity():
    n = 8
    rng = np.random.default_rng(5)
    for name in ALL_NAMES:
        spec = KERNELS[name]
        args = _inputs_for(spec, rng, n, np.dtype(np.float64))
        out = TwofoldArray(np.full(n - 1, 7.0), np.full(n - 1, 7.0))
        with pytest.raises(ValueError, match=name):
            spec.func(*args, out)
        assert np.all(out.value == 7.0)


# --------------------------------------------------------------------------
# allocation helper


def test_empty_twofold():
    z = empty_twofold(5)
    assert type(z) is TwofoldArray
    assert z.value.dtype == np.dtype(np.float64) and z.value.shape == (5,)
    z = empty_twofold(5, np.float32, CoupledArray)
    assert type(z) is CoupledArray
    assert z.error.dtype == np.dtype(np.float32)
    with pytest.raises(ValueError, match="float32 or float64"):
        empty_twofold(5, np.int32)
