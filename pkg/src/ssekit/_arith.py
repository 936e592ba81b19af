"""Checked exact integer matrix arithmetic.

Matrices are numpy arrays. Products are computed in int64 only when a bound
proves no intermediate can wrap; otherwise they are computed over Python
integers (object dtype) and narrowed back.  Outside bigint mode a result that
does not fit in int64 raises :class:`IntegerOverflow`.
"""

import contextlib
import contextvars

import numpy as np

from .errors import DimensionMismatch, IntegerOverflow, MalformedInput

INT64_MAX = np.iinfo(np.int64).max

_bigint = contextvars.ContextVar("ssekit_bigint", default=False)


def bigint_enabled():
    return _bigint.get()


def set_bigint(flag):
    """Enable or disable arbitrary-precision results for the current context."""
    _bigint.set(bool(flag))


@contextlib.contextmanager
def bigint_mode(flag=True):
    token = _bigint.set(bool(flag))
    try:
        yield
    finally:
        _bigint.reset(token)


def _max_abs(arr):
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr.flat)
    return int(np.max(np.abs(arr.astype(object)))) if arr.dtype.kind == "i" else 0


def narrow(arr):
    """Return ``arr`` as int64 if every entry fits, else object or raise."""
    arr = np.asarray(arr)
    if arr.dtype != object:
        return arr.astype(np.int64, copy=False)
    if _max_abs(arr) <= INT64_MAX:
        return arr.astype(np.int64)
    if bigint_enabled():
        return arr
    raise IntegerOverflow("integer result exceeds the signed 64-bit range; enable bigint mode")


def as_int_array(data, ndim=2):
    """Convert array-like ``data`` to an exact integer array (no float input)."""
    if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
        arr = data
    else:
        arr = np.array(data, dtype=object)
        if arr.size and not all(isinstance(x, (int, np.integer)) and not isinstance(x, bool)
                                for x in arr.flat):
            raise MalformedInput("matrix entries must be integers")
        if arr.size == 0:
            arr = np.zeros(arr.shape, dtype=np.int64)
    if ndim == 2 and arr.ndim != 2:
        if arr.size == 0 and arr.ndim == 1:
            arr = arr.reshape(0, 0)
        else:
            raise MalformedInput(f"expected a 2-d matrix, got shape {arr.shape}")
    if arr.dtype.kind == "u":
        arr = arr.astype(object)
    return narrow(arr)


def matmul(x, y):
    """Exact product ``x @ y``."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[-1] != y.shape[0]:
        raise DimensionMismatch(f"cannot multiply {x.shape} by {y.shape}")
    inner = x.shape[-1]
    if x.dtype != object and y.dtype != object:
        bound = _max_abs(x) * _max_abs(y) * max(inner, 1)
        if bound <= INT64_MAX:
            return x.astype(np.int64) @ y.astype(np.int64)
    return narrow(np.dot(x.astype(object), y.astype(object)))


def matpow(x, n):
    result = np.eye(x.shape[0], dtype=np.int64)
    base = np.asarray(x)
    while n:
        if n & 1:
            result = matmul(result, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def sub(x, y):
    return narrow(np.asarray(x).astype(object) - np.asarray(y).astype(object))


def add(x, y):
    return narrow(np.asarray(x).astype(object) + np.asarray(y).astype(object))


def to_lists(arr):
    return [[int(v) for v in row] for row in np.asarray(arr)]
