"""Loop-shaped numeric kernels with a numba path and a pure-numpy path.

The numba path is used when numba imports cleanly and the environment
variable ``HARDY_LAB_DISABLE_NUMBA`` is unset (or ``0``).  Both paths are
always importable as ``NUMBA_KERNELS`` / ``NUMPY_KERNELS`` so that tests and
the benchmark can compare them directly.
"""

import os
import warnings

import numpy as np
import scipy.linalg
import scipy.signal

_DISABLED = os.environ.get("HARDY_LAB_DISABLE_NUMBA", "0") not in ("", "0")

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    if not _DISABLED:
        warnings.warn("numba could not be imported; falling back to numpy kernels")

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda func: func

USE_NUMBA = HAVE_NUMBA and not _DISABLED


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _toeplitz_nb(col, row):
    m = col.shape[0]
    p = row.shape[0]
    out = np.empty((m, p), dtype=np.complex128)
    for j in range(m):
        for k in range(p):
            if j >= k:
                out[j, k] = col[j - k]
            else:
                out[j, k] = row[k - j]
    return out


@njit(cache=True)
def _divide_linear_nb(num, w):
    # c solves (1 - w z) c(z) = num(z) coefficientwise
    out = np.empty(num.shape[0], dtype=np.complex128)
    acc = 0.0 + 0.0j
    for k in range(num.shape[0]):
        acc = num[k] + w * acc
        out[k] = acc
    return out


@njit(cache=True)
def _direct_coeffs_nb(values, theta, kmin, kmax):
    n = values.shape[0]
    out = np.zeros(kmax - kmin, dtype=np.complex128)
    for j in range(n):
        step = np.exp(-1j * theta[j])
        ph = np.exp(-1j * kmin * theta[j])
        v = values[j]
        for i in range(kmax - kmin):
            out[i] += v * ph
            ph *= step
    return out / n


@njit(cache=True)
def _herglotz_quad_nb(weights, theta, pts):
    n = weights.shape[0]
    e_conj = np.exp(-1j * theta)
    out = np.zeros(pts.shape[0], dtype=np.complex128)
    for i in range(pts.shape[0]):
        zz = pts[i]
        acc = 0.0 + 0.0j
        for j in range(n):
            e = e_conj[j] * zz
            acc += weights[j] * (1.0 + e) / (1.0 - e)
        out[i] = acc / n
    return out


@njit(cache=True)
def _blaschke_nb(zeros, pts):
    out = np.ones(pts.shape[0], dtype=np.complex128)
    for r in zeros:
        ar = abs(r)
        for i in range(pts.shape[0]):
            if ar == 0.0:
                out[i] *= pts[i]
            else:
                out[i] *= (ar / r) * (r - pts[i]) / (1.0 - np.conj(r) * pts[i])
    return out


@njit(cache=True)
def _binomial_nb(alpha, m):
    out = np.empty(m, dtype=np.float64)
    if m == 0:
        return out
    out[0] = 1.0
    for k in range(1, m):
        out[k] = out[k - 1] * (k - 1 - alpha) / k
    return out


# --------------------------------------------------------------------------
# numpy kernels


def _toeplitz_np(col, row):
    row = np.array(row, dtype=np.complex128)
    row[0] = col[0]
    return scipy.linalg.toeplitz(np.asarray(col, dtype=np.complex128), row)


def _divide_linear_np(num, w):
    return scipy.signal.lfilter([1.0], [1.0, -w], np.asarray(num, dtype=np.complex128))


def _direct_coeffs_np(values, theta, kmin, kmax, chunk=256):
    ks = np.arange(kmin, kmax)
    out = np.empty(ks.size, dtype=np.complex128)
    for s in range(0, ks.size, chunk):
        block = np.exp(-1j * np.outer(ks[s:s + chunk], theta))
        out[s:s + chunk] = block @ values
    return out / values.size


def _herglotz_quad_np(weights, theta, pts, chunk=64):
    e_conj = np.exp(-1j * theta)
    out = np.empty(pts.size, dtype=np.complex128)
    for s in range(0, pts.size, chunk):
        e = np.outer(pts[s:s + chunk], e_conj)
        out[s:s + chunk] = ((1.0 + e) / (1.0 - e)) @ weights
    return out / weights.size


def _blaschke_np(zeros, pts):
    out = np.ones(pts.shape, dtype=np.complex128)
    for r in zeros:
        if r == 0:
            out *= pts
        else:
            out *= (abs(r) / r) * (r - pts) / (1.0 - np.conj(r) * pts)
    return out


def _binomial_np(alpha, m):
    if m == 0:
        return np.empty(0)
    k = np.arange(1, m)
    return np.concatenate([[1.0], np.cumprod((k - 1 - alpha) / k)])


NUMBA_KERNELS = {
    "toeplitz": _toeplitz_nb,
    "divide_linear": _divide_linear_nb,
    "direct_coeffs": _direct_coeffs_nb,
    "herglotz_quad": _herglotz_quad_nb,
    "blaschke": _blaschke_nb,
    "binomial": _binomial_nb,
}

NUMPY_KERNELS = {
    "toeplitz": _toeplitz_np,
    "divide_linear": _divide_linear_np,
    "direct_coeffs": _direct_coeffs_np,
    "herglotz_quad": _herglotz_quad_np,
    "blaschke": _blaschke_np,
    "binomial": _binomial_np,
}

KERNELS = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def _c128(x):
    return np.ascontiguousarray(x, dtype=np.complex128)


def toeplitz(col, row):
    """Dense matrix with first column `col` and first row `row` (row[0] ignored)."""
    return KERNELS["toeplitz"](_c128(col), _c128(row))


def divide_linear(num, w):
    """Taylor coefficients of ``num(z) / (1 - w z)``, same length as `num`."""
    return KERNELS["divide_linear"](_c128(num), complex(w))


def direct_coeffs(values, theta, kmin, kmax):
    """Fourier coefficients k in [kmin, kmax) by direct trigonometric sums."""
    return KERNELS["direct_coeffs"](_c128(values), np.ascontiguousarray(theta, dtype=np.float64),
                                    int(kmin), int(kmax))


def herglotz_quad(weights, theta, pts):
    """Herglotz integral of sampled weights evaluated at disk points by direct quadrature."""
    pts = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
    return KERNELS["herglotz_quad"](_c128(weights), np.ascontiguousarray(theta, dtype=np.float64),
                                    _c128(pts.ravel())).reshape(pts.shape)


def blaschke(zeros, pts):
    pts = np.asarray(pts, dtype=np.complex128)
    flat = _c128(pts.ravel())
    return KERNELS["blaschke"](_c128(zeros), flat).reshape(pts.shape)


def binomial(alpha, m):
    """Coefficients (-1)^k binom(alpha, k) of (1-z)^alpha, k < m."""
    return KERNELS["binomial"](float(alpha), int(m))
