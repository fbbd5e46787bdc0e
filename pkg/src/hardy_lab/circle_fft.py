"""Functions on the unit circle sampled on an offset grid.

Samples live at ``theta_j = 2*pi*(j + 1/2)/n`` so that neither ``z = 1`` nor
``z = -1`` is ever a node.  With this convention the Fourier coefficient

    c_k = (1/n) * sum_j v_j exp(-i k theta_j)

equals ``fft(v)[k mod n] / n * exp(-i pi k / n)``, which is what
:class:`BoundaryFunction` caches.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GridMismatch, NonIntegrableLog, NonRealDensity

__all__ = [
    "Grid",
    "BoundaryFunction",
    "AnalyticFunction",
    "project_plus",
    "herglotz",
    "outer_from_modulus",
    "h2_inner",
    "h2_norm",
    "weighted_inner",
]


@dataclass(frozen=True)
class Grid:
    """Half-offset equispaced grid of `n` points on the unit circle."""

    n: int

    def __post_init__(self):
        n = int(self.n)
        if n < 64 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 64, got {self.n}")
        object.__setattr__(self, "n", n)

    @cached_property
    def theta(self):
        return 2 * np.pi * (np.arange(self.n) + 0.5) / self.n

    @cached_property
    def z(self):
        return np.exp(1j * self.theta)

    @cached_property
    def _phase(self):
        # exp(-i pi k / n) for k in fft order
        k = np.fft.fftfreq(self.n, 1.0 / self.n)
        return np.exp(-1j * np.pi * k / self.n)

    def refine(self, factor=2):
        return Grid(self.n * factor)

    def analyze(self, values):
        """Fourier coefficients in fft order (index k mod n)."""
        return np.fft.fft(values) / self.n * self._phase

    def synthesize(self, coeffs_fft_order):
        """Inverse of :meth:`analyze`."""
        return np.fft.ifft(coeffs_fft_order / self._phase) * self.n


class BoundaryFunction:
    """Complex samples on a :class:`Grid` with lazily cached coefficients.

    Parameters
    ----------
    grid : Grid
    values : array_like, shape (n,)
    """

    __array_priority__ = 20

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} samples, got shape {values.shape}")
        self.grid = grid
        self.values = values
        self.values.flags.writeable = False

    @classmethod
    def from_callable(cls, grid, func):
        return cls(grid, func(grid.z))

    @classmethod
    def from_coeffs(cls, grid, coeffs, kmin=0):
        """Synthesize from coefficients of z^kmin, z^(kmin+1), ...

        Coefficients outside the resolvable band alias onto it, matching
        what sampling the full series would produce.
        """
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        n = grid.n
        k = kmin + np.arange(coeffs.size)
        # fold with the half-offset phase so aliasing is exact
        d = np.zeros(n, dtype=np.complex128)
        np.add.at(d, k % n, coeffs * np.exp(1j * np.pi * k / n) * grid._phase[k % n])
        return cls(grid, grid.synthesize(d))

    @cached_property
    def _fft_coeffs(self):
        return self.grid.analyze(self.values)

    @property
    def coeffs(self):
        """Coefficients for k = -n/2, ..., n/2 - 1 (ascending)."""
        return np.fft.fftshift(self._fft_coeffs)

    def coeff(self, k):
        return self._fft_coeffs[np.asarray(k) % self.grid.n]

    def roundtrip(self):
        return self.grid.synthesize(self._fft_coeffs)

    # arithmetic is samplewise
    def _other(self, other):
        if isinstance(other, BoundaryFunction):
            if other.grid != self.grid:
                raise GridMismatch(f"grids differ: {self.grid.n} vs {other.grid.n}")
            return other.values
        if isinstance(other, AnalyticFunction):
            return other.on(self.grid).values
        return other

    def __add__(self, other):
        return BoundaryFunction(self.grid, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BoundaryFunction(self.grid, self.values - self._other(other))

    def __rsub__(self, other):
        return BoundaryFunction(self.grid, self._other(other) - self.values)

    def __mul__(self, other):
        return BoundaryFunction(self.grid, self.values * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return BoundaryFunction(self.grid, self.values / self._other(other))

    def __rtruediv__(self, other):
        return BoundaryFunction(self.grid, self._other(other) / self.values)

    def __neg__(self):
        return BoundaryFunction(self.grid, -self.values)

    def conj(self):
        return BoundaryFunction(self.grid, np.conj(self.values))

    def abs(self):
        return BoundaryFunction(self.grid, np.abs(self.values))

    def apply(self, func):
        return BoundaryFunction(self.grid, func(self.values))

    def mean(self):
        return self.values.mean()

    def l2_norm(self):
        return float(np.sqrt(np.mean(np.abs(self.values) ** 2)))

    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    def __repr__(self):
        return f"BoundaryFunction(n={self.grid.n})"


class AnalyticFunction:
    """Element of H^2 truncated to Taylor coefficients of degree 0..m.

    Parameters
    ----------
    coeffs : array_like
        Taylor coefficients, ``coeffs[k]`` multiplies ``z**k``.
    """

    __array_priority__ = 20

    def __init__(self, coeffs):
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d array")
        self.coeffs = coeffs
        self.coeffs.flags.writeable = False

    @classmethod
    def monomial(cls, k, order=None):
        c = np.zeros(max(k, order or 0) + 1, dtype=np.complex128)
        c[k] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value):
        return cls([value])

    @property
    def order(self):
        return self.coeffs.size - 1

    @property
    def origin_value(self):
        return self.coeffs[0]

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def on(self, grid):
        return BoundaryFunction.from_coeffs(grid, self.coeffs)

    def truncate(self, m):
        """Keep degrees 0..m, zero-padding if needed."""
        out = np.zeros(m + 1, dtype=np.complex128)
        k = min(m + 1, self.coeffs.size)
        out[:k] = self.coeffs[:k]
        return AnalyticFunction(out)

    def padded(self, length):
        out = np.zeros(max(length, self.coeffs.size), dtype=np.complex128)
        out[: self.coeffs.size] = self.coeffs
        return out

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def shift(self, k=1):
        """Multiplication by z**k."""
        return AnalyticFunction(np.concatenate([np.zeros(k, dtype=np.complex128), self.coeffs]))

    def downshift(self):
        """Backward shift S*: (h - h(0)) / z."""
        if self.coeffs.size == 1:
            return AnalyticFunction([0.0])
        return AnalyticFunction(self.coeffs[1:])

    def multiply(self, other, order=None):
        """Cauchy product, truncated to `order` (default: the longer input)."""
        other = _as_analytic(other)
        if order is None:
            order = max(self.order, other.order)
        prod = np.convolve(self.coeffs[: order + 1], other.coeffs[: order + 1])
        return AnalyticFunction(prod).truncate(order)

    def _binary(self, other, op):
        if isinstance(other, AnalyticFunction):
            size = max(self.coeffs.size, other.coeffs.size)
            return AnalyticFunction(op(self.padded(size), other.padded(size)))
        c = self.coeffs.copy()
        c[0] = op(c[0], other)
        return AnalyticFunction(c)

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AnalyticFunction(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, AnalyticFunction):
            return self.multiply(other)
        return AnalyticFunction(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return AnalyticFunction(self.coeffs / scalar)

    def __repr__(self):
        head = np.array2string(self.coeffs[:4], precision=4)
        return f"AnalyticFunction(order={self.order}, head={head})"


def _as_analytic(x):
    if isinstance(x, AnalyticFunction):
        return x
    return AnalyticFunction(x)


def project_plus(f, m=None):
    """Analytic (Riesz) projection: keep Fourier coefficients k >= 0.

    Parameters
    ----------
    f : BoundaryFunction
    m : int, optional
        Truncation order of the result; default keeps all n/2 resolvable
        nonnegative coefficients.
    """
    half = f.grid.n // 2
    c = f._fft_coeffs[:half]
    if m is not None:
        return AnalyticFunction(c).truncate(m)
    return AnalyticFunction(c)


def project_plus_samples(f):
    """P+ of `f` returned as boundary samples on the same grid."""
    d = f._fft_coeffs.copy()
    d[f.grid.n // 2:] = 0.0
    return BoundaryFunction(f.grid, f.grid.synthesize(d))


def herglotz(w, tol=1e-10):
    """Herglotz transform of a real density.

    Returns the analytic function ``c_0 + 2 * sum_{k>=1} c_k z^k`` whose real
    part on the circle is `w`.

    Raises
    ------
    NonRealDensity
        If ``max |Im w|`` exceeds `tol` (relative to ``max |w|``, floor 1).
    """
    imag = float(np.max(np.abs(w.values.imag)))
    scale = max(1.0, float(np.max(np.abs(w.values))))
    if imag > tol * scale:
        raise NonRealDensity(f"density has imaginary part {imag:.3e}")
    real = BoundaryFunction(w.grid, w.values.real)
    c = real._fft_coeffs[: w.grid.n // 2].copy()
    c[1:] *= 2.0
    c[0] = c[0].real
    return AnalyticFunction(c)


def herglotz_samples(w, tol=1e-10):
    """Boundary values of :func:`herglotz` on the grid of `w`."""
    return herglotz(w, tol).on(w.grid)


def outer_from_modulus(w):
    """Outer function with boundary modulus `w`, positive at the origin.

    Computed as ``exp(herglotz(log w))`` on the grid followed by P+.

    Raises
    ------
    NonIntegrableLog
        If a sample of `w` is zero, subnormal or non-finite.
    """
    mod = np.abs(w.values)
    if not np.all(np.isfinite(mod)) or np.any(mod < np.finfo(float).tiny):
        raise NonIntegrableLog("modulus has zero, subnormal or non-finite samples")
    log_w = BoundaryFunction(w.grid, np.log(mod))
    h = herglotz_samples(log_w)
    return project_plus(BoundaryFunction(w.grid, np.exp(h.values)))


def h2_inner(f, g):
    """Sum of f_k * conj(g_k); shorter inputs are zero-padded."""
    f = _as_analytic(f)
    g = _as_analytic(g)
    k = min(f.coeffs.size, g.coeffs.size)
    return complex(np.vdot(g.coeffs[:k], f.coeffs[:k]))


def h2_norm(f):
    return _as_analytic(f).norm()


def _samples_on(x, grid):
    if isinstance(x, BoundaryFunction):
        if x.grid != grid:
            raise GridMismatch(f"grids differ: {x.grid.n} vs {grid.n}")
        return x.values
    if isinstance(x, AnalyticFunction):
        return x.on(grid).values
    if callable(x):
        return np.asarray(x(grid.z), dtype=np.complex128)
    return np.broadcast_to(np.asarray(x, dtype=np.complex128), (grid.n,))


def weighted_inner(f, g, w):
    """Grid quadrature of (1/2pi) * integral of f * conj(g) * w.

    `f` and `g` may be boundary functions on the grid of `w`, analytic
    functions (synthesized on that grid), callables or scalars.
    """
    if not isinstance(w, BoundaryFunction):
        raise TypeError("weight must be a BoundaryFunction")
    fv = _samples_on(f, w.grid)
    gv = _samples_on(g, w.grid)
    return complex(np.mean(fv * np.conj(gv) * w.values))
