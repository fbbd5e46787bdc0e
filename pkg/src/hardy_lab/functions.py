"""Structured inner and outer functions with exact disk evaluation."""

import warnings

import numpy as np
import scipy.signal

from . import _accel
from .circle_fft import AnalyticFunction, BoundaryFunction, project_plus
from .errors import DivisionBlowup, NotOuter, RepeatedZeros, ZeroOnBoundary
from .toeplitz import Subspace

__all__ = [
    "DiskFunction",
    "InnerFn",
    "OuterFn",
    "monomial",
    "blaschke",
    "polynomial",
    "rational",
    "power_outer",
    "rational_outer",
    "cauchy_kernel",
    "model_space_basis",
    "helson_quotient",
    "winding_number",
]


class DiskFunction:
    """Analytic function given by a vectorized formula on the closed disk.

    Instances compose with ``+ - * /`` (against other disk functions,
    analytic coefficient vectors or scalars) and can be sampled on a grid
    with :meth:`on`.
    """

    def __init__(self, func, name="f"):
        self._func = func
        self.name = name

    def __call__(self, z):
        return self._func(np.asarray(z, dtype=np.complex128))

    def on(self, grid):
        return BoundaryFunction(grid, self(grid.z))

    def coefficients(self, grid, m=None):
        """Taylor coefficients from the boundary samples on `grid`."""
        return project_plus(self.on(grid), m)

    @staticmethod
    def _lift(other):
        if isinstance(other, (DiskFunction, AnalyticFunction)):
            return other
        value = complex(other)
        return lambda z: np.full(np.shape(z), value, dtype=np.complex128)

    def _compose(self, other, op, symbol, reverse=False):
        g = self._lift(other)
        f = self
        if reverse:
            f, g = g, f
        name = f"({getattr(f, 'name', '?')}{symbol}{getattr(g, 'name', '?')})"
        return DiskFunction(lambda z: op(f(z), g(z)), name)

    def __add__(self, other):
        return self._compose(other, np.add, "+")

    def __radd__(self, other):
        return self._compose(other, np.add, "+", reverse=True)

    def __sub__(self, other):
        return self._compose(other, np.subtract, "-")

    def __rsub__(self, other):
        return self._compose(other, np.subtract, "-", reverse=True)

    def __mul__(self, other):
        return self._compose(other, np.multiply, "*")

    def __rmul__(self, other):
        return self._compose(other, np.multiply, "*", reverse=True)

    def __truediv__(self, other):
        return self._compose(other, np.divide, "/")

    def __rtruediv__(self, other):
        return self._compose(other, np.divide, "/", reverse=True)

    def __neg__(self):
        return DiskFunction(lambda z: -self(z), f"-{self.name}")

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class InnerFn(DiskFunction):
    """Finite Blaschke product times a unimodular constant.

    Zeros at the origin are kept in `zeros` as literal zeros, so the monomial
    ``z**n`` is a Blaschke product with an n-fold zero at 0.
    """

    def __init__(self, zeros=(), const=1.0, kind="blaschke"):
        self.zeros = tuple(complex(r) for r in zeros)
        self.const = complex(const)
        self.kind = kind
        zeros_arr = np.array(self.zeros, dtype=np.complex128)
        super().__init__(lambda z: self.const * _accel.blaschke(zeros_arr, z), kind)

    @classmethod
    def constant(cls, c):
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("constant inner function must be unimodular")
        return cls((), c, kind="constant")

    def __mul__(self, other):
        if isinstance(other, InnerFn):
            return InnerFn(self.zeros + other.zeros, self.const * other.const, kind="product")
        return super().__mul__(other)

    @property
    def origin_multiplicity(self):
        return sum(1 for r in self.zeros if r == 0)

    def unimodularity_error(self, grid):
        return float(np.max(np.abs(np.abs(self(grid.z)) - 1.0)))

    def interior_max(self, radius=0.99, npts=512):
        t = 2 * np.pi * np.arange(npts) / npts
        return float(np.max(np.abs(self(radius * np.exp(1j * t)))))

    def __repr__(self):
        return f"InnerFn(kind={self.kind!r}, zeros={list(self.zeros)})"


class OuterFn(DiskFunction):
    """Outer function: a power of (1 - z), a rational function or modulus data.

    Attributes
    ----------
    kind : {"power", "rational", "from_modulus"}
    params : dict
    """

    def __init__(self, func, kind, params, name=None):
        super().__init__(func, name or kind)
        self.kind = kind
        self.params = params

    def taylor(self, m):
        """Taylor coefficients of degree 0..m."""
        if self.kind == "power":
            return AnalyticFunction(_accel.binomial(self.params["alpha"], m + 1))
        if self.kind == "rational":
            impulse = np.zeros(m + 1)
            impulse[0] = 1.0
            return AnalyticFunction(
                scipy.signal.lfilter(self.params["num"], self.params["den"], impulse + 0j))
        return self.params["coeffs"].truncate(m)


def monomial(n):
    """The inner function ``z**n``."""
    return InnerFn((0.0,) * n, kind="monomial")


def blaschke(zeros):
    """Finite Blaschke product ``prod (|r|/r)(r - z)/(1 - conj(r) z)``.

    A zero at the origin contributes the factor ``z``.

    Raises
    ------
    ZeroOnBoundary
        If any ``|r| >= 1 - 1e-12``.
    """
    zeros = [complex(r) for r in zeros]
    for r in zeros:
        if abs(r) >= 1 - 1e-12:
            raise ZeroOnBoundary(f"zero {r} is not inside the disk")
    return InnerFn(zeros, kind="blaschke")


def polynomial(coeffs, name="p"):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    return DiskFunction(lambda z: np.polynomial.polynomial.polyval(z, coeffs), name)


def rational(num, den, name="r"):
    """Quotient of polynomials given by ascending coefficients."""
    num = np.asarray(num, dtype=np.complex128)
    den = np.asarray(den, dtype=np.complex128)
    P = np.polynomial.polynomial.polyval
    return DiskFunction(lambda z: P(z, num) / P(z, den), name)


def power_outer(alpha):
    """The outer function ``(1 - z)**alpha`` on the principal branch."""
    alpha = float(alpha)
    return OuterFn(lambda z: np.exp(alpha * np.log(1.0 - z)), "power", {"alpha": alpha},
                   name=f"(1-z)^{alpha:g}")


def _poly_roots(coeffs):
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), "b")
    if coeffs.size <= 1:
        return np.zeros(0, dtype=np.complex128)
    return np.polynomial.polynomial.polyroots(coeffs)


def rational_outer(num, den, name="rational"):
    """Rational outer function num/den (ascending coefficients).

    Raises
    ------
    NotOuter
        If the numerator has a zero in the open disk or the denominator a
        zero in the closed disk.
    """
    num = np.asarray(num, dtype=np.complex128)
    den = np.asarray(den, dtype=np.complex128)
    zn = _poly_roots(num)
    zd = _poly_roots(den)
    if np.any(np.abs(zn) < 1 - 1e-12):
        raise NotOuter(f"numerator vanishes inside the disk at {zn[np.abs(zn) < 1]}")
    if np.any(np.abs(zd) <= 1 + 1e-12):
        raise NotOuter(f"denominator vanishes on the closed disk at {zd[np.abs(zd) <= 1]}")
    P = np.polynomial.polynomial.polyval
    return OuterFn(lambda z: P(z, num) / P(z, den), "rational", {"num": num, "den": den},
                   name=name)


def outer_from_coeffs(coeffs, name="outer"):
    """Wrap computed outer coefficients (e.g. from modulus data) as an OuterFn."""
    coeffs = coeffs if isinstance(coeffs, AnalyticFunction) else AnalyticFunction(coeffs)
    return OuterFn(coeffs, "from_modulus", {"coeffs": coeffs}, name=name)


def winding_number(func, radius, npts=4096):
    """Winding number of ``func(radius * e^{it})`` around 0 (argument principle)."""
    t = 2 * np.pi * np.arange(npts + 1) / npts
    vals = func(radius * np.exp(1j * t))
    phase = np.unwrap(np.angle(vals))
    return int(np.rint((phase[-1] - phase[0]) / (2 * np.pi)))


def outer_diagnostic(func, radii=(0.5, 0.9, 0.99)):
    """Winding numbers on the given circles; all zero for an outer function."""
    return [winding_number(func, r) for r in radii]


def cauchy_kernel(lam, m=512):
    """Szego kernel ``k_lam(z) = 1/(1 - conj(lam) z)`` truncated at degree m."""
    lam = complex(lam)
    if abs(lam) >= 1:
        raise ValueError(f"|lambda| must be < 1, got {abs(lam)}")
    return AnalyticFunction(np.conj(lam) ** np.arange(m + 1))


def model_space_basis(I, m=512):
    """Orthonormal basis of K_I = H^2 minus I H^2 for a finite Blaschke product.

    A k-fold zero at the origin contributes ``1, z, ..., z^(k-1)``; every
    other zero contributes its Cauchy kernel.

    Raises
    ------
    RepeatedZeros
        If a nonzero zero occurs more than once.
    """
    others = [r for r in I.zeros if r != 0]
    if len(set(others)) != len(others):
        raise RepeatedZeros("repeated nonzero zeros need derivative kernels")
    vecs = [AnalyticFunction.monomial(j, m).coeffs for j in range(I.origin_multiplicity)]
    vecs += [cauchy_kernel(r, m).coeffs for r in others]
    if not vecs:
        return Subspace(np.zeros((m + 1, 0), dtype=np.complex128))
    return Subspace.from_vectors(np.column_stack(vecs))


def helson_quotient(I1, I2, grid, check_outer=True):
    """Boundary samples of ``i (I1 + I2) / (I1 - I2)``, real for inner I1, I2.

    Raises
    ------
    DivisionBlowup
        If ``|I1 - I2| < 1e-12`` at some node.
    """
    v1 = I1(grid.z)
    v2 = I2(grid.z)
    diff = v1 - v2
    if np.min(np.abs(diff)) < 1e-12:
        raise DivisionBlowup("I1 - I2 vanishes at a grid node")
    if check_outer:
        wn = winding_number(lambda z: I1(z) - I2(z), 0.99)
        if wn != 0:
            warnings.warn(f"I1 - I2 winds {wn} times on |z|=0.99; it is not outer")
    return BoundaryFunction(grid, 1j * (v1 + v2) / diff)
