"""Pairs (b, a), de Branges-Rovnyak spaces H(b) and the operators acting on them.

Elements of H(b) are carried in "u-coordinates": for a special pair the map

    V u = (1 - b) P+(conj(f) u),    f = a / (1 - b),

is an isometry of H^2 onto H(b), so ``<x, y>_b = <u_x, u_y>_2``.  The
representer ``q = u / f`` is the same element seen in the weighted space
``L^2(|f|^2)``.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import _accel
from .circle_fft import (AnalyticFunction, BoundaryFunction, Grid, h2_inner, herglotz,
                         outer_from_modulus, project_plus, project_plus_samples, weighted_inner)
from .errors import (ComplementUnstable, DenominatorVanishing, NoAngularDerivative,
                     NotInRange, NotSpecialPair, NotUnitNorm, OriginZero,
                     OuterDiagnosticFailed, RepresenterSolveFailed)
from .functions import outer_diagnostic, outer_from_coeffs
from .toeplitz import Subspace, numerical_kernel, principal_angles, toeplitz_matrix

__all__ = [
    "Pair",
    "HbElement",
    "pair_from_outer",
    "f_lambda",
    "dbr_kernel",
    "boundary_value",
    "boundary_kernel",
    "angular_derivative_test",
    "apply_v",
    "representer_solve",
    "kernel_representer",
    "hb_inner",
    "hb_norm",
    "plus_function",
    "ma_complement",
    "complement_angle",
    "ComplementResult",
    "AngularDerivativeReport",
    "boundary_kernel_representer",
    "ma_representer",
    "b_representer",
    "v_matrix",
    "ystar_matrix",
    "a_lambda_apply",
    "ystar_apply",
    "ystar_eigencheck",
    "intertwining_residual",
]


class Pair:
    """Nonextreme pair (b, a) with ``|a|^2 + |b|^2 = 1`` on the circle.

    Parameters
    ----------
    b, a : callable
        Disk functions (anything with ``__call__`` on complex arrays), e.g.
        :class:`~hardy_lab.functions.DiskFunction` or
        :class:`~hardy_lab.circle_fft.AnalyticFunction`.
    grid : Grid
        Grid carrying the boundary data.
    special : bool
        Caller assertion that the Herglotz measure of the pair is absolutely
        continuous.  Never detected numerically.
    check : bool
        Raise if the pair identity fails by more than 1e-8 at some node.
    """

    def __init__(self, b, a, grid, special=True, check=True, diagnostics=None):
        self.b = b
        self.a = a
        self.grid = grid
        self.special = bool(special)
        self.b_boundary = BoundaryFunction(grid, b(grid.z))
        self.a_boundary = BoundaryFunction(grid, a(grid.z))
        self.f_boundary = self.a_boundary / (1.0 - self.b_boundary)
        self.diagnostics = dict(diagnostics or {})
        err = self.pair_identity_error()
        self.diagnostics["pair_identity_error"] = err
        # b = 0 (f = 1) is a legitimate degenerate pair; flag it rather than reject it
        self.diagnostics["b_constant"] = bool(np.allclose(self.b_boundary.values,
                                                          self.b_boundary.values[0]))
        if check:
            if err > 1e-8:
                raise ValueError(f"|a|^2 + |b|^2 = 1 fails by {err:.3e}")
            if self.b_boundary.max_abs() >= 1.0:
                raise ValueError("b must satisfy |b| < 1 at every node")

    # coefficient data, resolved on the pair grid
    @property
    def b_coeffs(self):
        return self._cached("_b_coeffs", lambda: project_plus(self.b_boundary))

    @property
    def a_coeffs(self):
        return self._cached("_a_coeffs", lambda: project_plus(self.a_boundary))

    @property
    def f_coeffs(self):
        return self._cached("_f_coeffs", lambda: project_plus(self.f_boundary))

    def _cached(self, name, build):
        if name not in self.__dict__:
            self.__dict__[name] = build()
        return self.__dict__[name]

    def f(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return self.a(z) / (1.0 - self.b(z))

    @property
    def b0(self):
        """b(0)."""
        return complex(self.b(np.array([0.0]))[0])

    @property
    def herglotz_constant(self):
        """Imaginary part of (1 + b(0)) / (1 - b(0))."""
        return float(((1 + self.b0) / (1 - self.b0)).imag)

    def pair_identity_error(self):
        w = np.abs(self.a_boundary.values) ** 2 + np.abs(self.b_boundary.values) ** 2
        return float(np.max(np.abs(w - 1.0)))

    def with_grid(self, grid):
        return Pair(self.b, self.a, grid, self.special, check=False,
                    diagnostics=self.diagnostics)

    def __repr__(self):
        return f"Pair(n={self.grid.n}, special={self.special}, b(0)={self.b0:.4g})"


@dataclass
class HbElement:
    """Element of H(b): its H^2 identity `h` and u-coordinates `u` (h = V u)."""

    pair: Pair = field(repr=False)
    h: AnalyticFunction
    u: AnalyticFunction
    residual: float = 0.0

    @property
    def q(self):
        """Representer in L^2(|f|^2): boundary samples of u / f."""
        return self.u.on(self.pair.grid) / self.pair.f_boundary

    def reconstruction_residual(self):
        hv = apply_v(self.pair, self.u)
        m = max(self.h.order, hv.order)
        d = hv.truncate(m) - self.h.truncate(m)
        nh = self.h.norm()
        return d.norm() / nh if nh else d.norm()


def pair_from_outer(f, grid=None, tol=1e-6):
    """Pair associated with a unit-norm outer function f.

    ``b = (H - 1)/(H + 1)`` with ``H`` the Herglotz transform of ``|f|^2``.
    The companion ``a`` is taken as ``f (1 - b)``, which has modulus
    ``sqrt(1 - |b|^2)`` exactly; :func:`outer_from_modulus` of that modulus
    is recorded as a cross-check in ``pair.diagnostics``.  f is rotated so
    that f(0) > 0, which makes a(0) > 0.

    Raises
    ------
    NotUnitNorm
        If ``| ||f||_2 - 1 | > tol``.
    OuterDiagnosticFailed
        If f winds around 0 on one of the circles |z| = 0.5, 0.9, 0.99.
    """
    f = f if isinstance(f, AnalyticFunction) else AnalyticFunction(f)
    if grid is None:
        n = 64
        while n < 8 * (f.order + 1):
            n *= 2
        grid = Grid(max(n, 4096))
    norm = f.norm()
    if abs(norm - 1.0) > tol:
        raise NotUnitNorm(f"||f||_2 = {norm:.10f}")
    winds = outer_diagnostic(f)
    if any(winds):
        raise OuterDiagnosticFailed(f"winding numbers {winds} on |z| = 0.5, 0.9, 0.99")
    f0 = f.origin_value
    if abs(f0) == 0:
        raise OuterDiagnosticFailed("f(0) = 0")
    f = f * (abs(f0) / f0)
    fb = f.on(grid)
    H = herglotz(BoundaryFunction(grid, np.abs(fb.values) ** 2), tol=1e-8)
    Hb = H.on(grid)
    bb = (Hb - 1.0) / (Hb + 1.0)
    b = project_plus(bb)
    a = project_plus(fb * (1.0 - b.on(grid)))
    check = outer_from_modulus(BoundaryFunction(grid, np.sqrt(np.clip(1 - np.abs(bb.values) ** 2,
                                                                     1e-300, None))))
    k = min(a.coeffs.size, check.coeffs.size, 256)
    diag = {"outer_crosscheck": float(np.max(np.abs(a.coeffs[:k] - check.coeffs[:k])))}
    return Pair(b, outer_from_coeffs(a, "a"), grid, special=True, check=True, diagnostics=diag)


def _f_lambda_samples(p, lam):
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ValueError(f"|lambda| must be 1, got {abs(lam)}")
    den = 1.0 - np.conj(lam) * p.b_boundary.values
    if np.min(np.abs(den)) < 1e-10:
        raise DenominatorVanishing(f"min |1 - conj(lambda) b| = {np.min(np.abs(den)):.3e}")
    return BoundaryFunction(p.grid, p.a_boundary.values / den)


def f_lambda(p, lam):
    """Coefficients of ``F_lambda = a / (1 - conj(lambda) b)`` for unimodular lambda."""
    return project_plus(_f_lambda_samples(p, lam))


def dbr_kernel(p, w, m=512):
    """Reproducing kernel ``(1 - conj(b(w)) b(z)) / (1 - conj(w) z)`` of H(b)."""
    w = complex(w)
    if abs(w) >= 1:
        raise ValueError(f"|w| must be < 1, got {abs(w)}")
    beta = complex(p.b(np.array([w]))[0])
    num = -np.conj(beta) * p.b_coeffs.padded(m + 1)[: m + 1]
    num[0] += 1.0
    return AnalyticFunction(_accel.divide_linear(num, np.conj(w)))


def boundary_value(p, z0, levels=(8, 9, 10)):
    """Radial limit of b at z0 by Richardson extrapolation over r = 1 - 2^-j."""
    h = np.array([2.0 ** -j for j in levels])
    vals = p.b(np.asarray((1 - h) * complex(z0)))
    # Lagrange interpolation in h evaluated at h = 0
    out = 0.0 + 0.0j
    for i in range(h.size):
        wgt = np.prod([h[j] / (h[j] - h[i]) for j in range(h.size) if j != i])
        out += wgt * vals[i]
    return complex(out)


@dataclass
class AngularDerivativeReport:
    verdict: str
    orders: tuple
    norms_sq: tuple
    ratios: tuple

    def as_dict(self):
        return {"verdict": self.verdict, "orders": list(self.orders),
                "norms_sq": list(self.norms_sq), "ratios": list(self.ratios)}


def angular_derivative_test(p, z0, lam=1.0, orders=(128, 256, 512), cauchy_tol=1e-4,
                            growth=1.5):
    """Three-valued test of ``F_lambda / (1 - conj(z0) z)`` in H^2.

    Squared truncated norms are compared across `orders`: "holds" when the
    last two agree to `cauchy_tol` (relative), "fails" when each doubling
    multiplies them by more than `growth`, otherwise "inconclusive".
    """
    z0 = complex(z0)
    if abs(abs(z0) - 1.0) > 1e-12:
        raise ValueError(f"|z0| must be 1, got {abs(z0)}")
    F = f_lambda(p, lam)
    top = max(orders)
    G = _accel.divide_linear(F.padded(top + 1)[: top + 1], np.conj(z0))
    norms = tuple(float(np.sum(np.abs(G[: m + 1]) ** 2)) for m in orders)
    ratios = tuple(norms[i + 1] / norms[i] for i in range(len(norms) - 1))
    if abs(norms[-1] - norms[-2]) <= cauchy_tol * norms[-1]:
        verdict = "holds"
    elif all(r > growth for r in ratios):
        verdict = "fails"
    else:
        verdict = "inconclusive"
    return AngularDerivativeReport(verdict, tuple(orders), norms, ratios)


def boundary_kernel(p, z0, m=512, lam=1.0):
    """Boundary kernel ``(1 - conj(b(z0)) b(z)) / (1 - conj(z0) z)``.

    Raises
    ------
    NoAngularDerivative
        Unless :func:`angular_derivative_test` reports "holds".
    """
    report = angular_derivative_test(p, z0, lam)
    if report.verdict != "holds":
        raise NoAngularDerivative(f"angular derivative test {report.verdict} at z0={z0}")
    beta = boundary_value(p, z0)
    num = -np.conj(beta) * p.b_coeffs.padded(m + 1)[: m + 1]
    num[0] += 1.0
    return AnalyticFunction(_accel.divide_linear(num, np.conj(complex(z0))))


# ---------------------------------------------------------------- the map V


def apply_v(p, u, lam=1.0, m=None):
    """``T_{1 - conj(lam) b} T_{conj(F_lam)} u`` computed on the pair grid."""
    u = u if isinstance(u, AnalyticFunction) else AnalyticFunction(u)
    F = p.f_boundary if lam == 1.0 else _f_lambda_samples(p, lam)
    inner = project_plus_samples(F.conj() * u.on(p.grid))
    out = project_plus((1.0 - np.conj(lam) * p.b_boundary) * inner)
    return out.truncate(m) if m is not None else out


def _lower(c, rows, cols):
    """Matrix of multiplication by the series `c` (rows x cols section)."""
    col = np.zeros(rows, dtype=np.complex128)
    k = min(rows, c.size)
    col[:k] = c[:k]
    return _accel.toeplitz(col, np.zeros(cols, dtype=np.complex128))


def _upper_conj(c, rows, cols):
    """Section of T_{conj(c)}: entries conj(c_{k-j})."""
    row = np.zeros(cols, dtype=np.complex128)
    k = min(cols, c.size)
    row[:k] = np.conj(c[:k])
    col = np.zeros(rows, dtype=np.complex128)
    col[0] = row[0]
    return _accel.toeplitz(col, row)


def v_matrix(p, m, rows=None):
    """Coefficient matrix of V on polynomials of degree < m."""
    rows = 2 * m if rows is None else rows
    one_minus_b = (1.0 - p.b_coeffs).coeffs
    return _lower(one_minus_b, rows, m) @ _upper_conj(p.f_coeffs.coeffs, m, m)


def representer_solve(p, h, m=512, check=True, rcond=1e-13):
    """Solve ``V u = h`` by column-pivoted least squares at order m.

    Raises
    ------
    NotSpecialPair
    NotInRange
        If the relative residual exceeds 1e-5 (only when `check`).
    RepresenterSolveFailed
        If LAPACK fails or returns non-finite values.
    """
    if not p.special:
        raise NotSpecialPair("representers need a special pair")
    hs = [h] if isinstance(h, AnalyticFunction) else list(h)
    A = v_matrix(p, m)
    rows = A.shape[0]
    rhs = np.column_stack([x.padded(rows)[:rows] for x in hs])
    try:
        u, *_ = scipy.linalg.lstsq(A, rhs, cond=rcond, lapack_driver="gelsy")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise RepresenterSolveFailed(str(exc)) from exc
    if not np.all(np.isfinite(u)):
        raise RepresenterSolveFailed("non-finite representer")
    out = []
    for j, x in enumerate(hs):
        r = np.linalg.norm(A @ u[:, j] - rhs[:, j])
        nh = np.linalg.norm(rhs[:, j])
        rel = float(r / nh) if nh else float(r)
        if check and rel > 1e-5:
            raise NotInRange(f"representer residual {rel:.3e} exceeds 1e-5")
        out.append(HbElement(p, x, AnalyticFunction(u[:, j]), rel))
    return out[0] if isinstance(h, AnalyticFunction) else out


def kernel_representer(p, w, m=512):
    """Closed-form element for k_w^b: ``u = (1 - conj(b(w))) f k_w``."""
    w = complex(w)
    beta = complex(p.b(np.array([w]))[0])
    u = (1 - np.conj(beta)) * _accel.divide_linear(p.f_coeffs.padded(m + 1)[: m + 1], np.conj(w))
    return HbElement(p, dbr_kernel(p, w, m), AnalyticFunction(u))


def boundary_kernel_representer(p, z0, m=512):
    """Element for the boundary kernel at z0: ``u = (1 - conj(b(z0))) f k_z0``."""
    beta = boundary_value(p, z0)
    u = (1 - np.conj(beta)) * _accel.divide_linear(p.f_coeffs.padded(m + 1)[: m + 1],
                                                   np.conj(complex(z0)))
    return HbElement(p, boundary_kernel(p, z0, m), AnalyticFunction(u))


def ma_representer(p, k, m=512):
    """Element for ``a z^k`` in M(a): ``u = P+((f / conj(f)) z^k)``."""
    phase = p.f_boundary / p.f_boundary.conj()
    u = project_plus(phase * BoundaryFunction(p.grid, p.grid.z ** k), m)
    h = AnalyticFunction(p.a_coeffs.coeffs).shift(k).truncate(m)
    return HbElement(p, h, u)


def b_representer(p, m=512):
    """Element for b itself: ``u = f - 1 / ((1 - conj(b(0))) conj(f(0)))``."""
    u = p.f_coeffs.truncate(m)
    u = u - 1.0 / ((1 - np.conj(p.b0)) * np.conj(p.f_coeffs.origin_value))
    return HbElement(p, p.b_coeffs.truncate(m), u)


def _element(p, x, m):
    if isinstance(x, HbElement):
        return x
    return representer_solve(p, x, m)


def plus_function(p, h, m=512):
    """Solve ``T_{conj(a)} x+ = T_{conj(b)} h`` by least squares at order m."""
    h = h if isinstance(h, AnalyticFunction) else AnalyticFunction(h)
    L = max(m, h.order + 1)
    Tb = _upper_conj(p.b_coeffs.coeffs, m, L)
    Ta = _upper_conj(p.a_coeffs.coeffs, m, m)
    rhs = Tb @ h.padded(L)[:L]
    x, *_ = scipy.linalg.lstsq(Ta, rhs, lapack_driver="gelsy")
    return AnalyticFunction(x)


def hb_inner(p, x, y, backend="weighted", m=512):
    """Inner product of H(b).

    Parameters
    ----------
    backend : {"weighted", "plus"}
        ``"weighted"`` pairs the representers in ``L^2(|f|^2)``;
        ``"plus"`` uses ``<x, y>_2 + <x+, y+>_2`` with ``x+`` from
        :func:`plus_function`.

    Raises
    ------
    NotSpecialPair
    """
    if not p.special:
        raise NotSpecialPair("the isometric model of H(b) needs a special pair")
    if backend == "weighted":
        ex = _element(p, x, m)
        ey = _element(p, y, m)
        w = BoundaryFunction(p.grid, np.abs(p.f_boundary.values) ** 2)
        return weighted_inner(ex.q, ey.q, w)
    if backend == "plus":
        hx = x.h if isinstance(x, HbElement) else x
        hy = y.h if isinstance(y, HbElement) else y
        return h2_inner(hx, hy) + h2_inner(plus_function(p, hx, m), plus_function(p, hy, m))
    raise ValueError(f"unknown backend {backend!r}")


def hb_norm(p, x, backend="weighted", m=512):
    return float(np.sqrt(max(hb_inner(p, x, x, backend, m).real, 0.0)))


# ---------------------------------------------------------------- M(a) complement


@dataclass
class ComplementResult:
    """Orthogonal complement of M(a) in H(b), in u-coordinates of order d."""

    subspace: Subspace
    functions: list
    dims: dict
    degenerate: bool = False

    @property
    def dim(self):
        return self.subspace.dim


def ma_complement(p, d=32, m=512):
    """Complement of the span of ``{a z^k : k < d}`` in H(b).

    In u-coordinates the representers of ``a z^k`` are the columns of
    ``T_{f/conj(f)}``, so the complement is the numerical kernel of the
    order-d section of ``T_{conj(f)/f}``.  The dimension must agree at d
    and 2d.

    Raises
    ------
    NotSpecialPair
    ComplementUnstable
    """
    if not p.special:
        raise NotSpecialPair("complement computation needs a special pair")
    if d == 0:
        return ComplementResult(Subspace(np.eye(m + 1, dtype=np.complex128)), [], {0: m + 1},
                                degenerate=True)
    if d > m // 2:
        raise ValueError(f"cutoff d={d} exceeds m/2={m // 2}")
    symbol = p.f_boundary.conj() / p.f_boundary
    dims = {}
    kernels = {}
    for dd in (d, 2 * d):
        K = numerical_kernel(toeplitz_matrix(symbol, dd), mode="gap")
        dims[dd] = K.dim
        kernels[dd] = K
    if dims[d] != dims[2 * d]:
        raise ComplementUnstable(f"complement dimension {dims[d]} at d={d}, "
                                 f"{dims[2 * d]} at d={2 * d}")
    K = kernels[d]
    funcs = []
    for j in range(K.dim):
        h = apply_v(p, AnalyticFunction(K.basis[:, j]), m=m)
        funcs.append(h / h.norm())
    return ComplementResult(K, funcs, dims)


def complement_angle(result, u_target):
    """Largest principal angle between the complement and a u-coordinate vector."""
    d = result.subspace.order
    target = Subspace.from_vectors(u_target.padded(d)[:d])
    return float(np.max(principal_angles(result.subspace, target)))


# ---------------------------------------------------------------- operators


def a_lambda_apply(p, lam, h):
    """``A_lambda h = S* h - h(0) / F_lambda(0) * S* F_lambda``.

    Raises
    ------
    OriginZero
        If ``F_lambda(0) = 0``.
    """
    h = h if isinstance(h, AnalyticFunction) else AnalyticFunction(h)
    F = f_lambda(p, lam)
    F0 = F.origin_value
    if abs(F0) < 1e-14:
        raise OriginZero("F_lambda(0) = 0")
    return h.downshift() - (h.origin_value / F0) * F.downshift()


def ystar_apply(p, h, m=512):
    """``Y* h = S* h + <h, b>_b S* b`` for nonextreme b."""
    eh = _element(p, h, m)
    eb = b_representer(p, m)
    coef = h2_inner(eh.u, eb.u)
    return eh.h.downshift() + coef * p.b_coeffs.truncate(m).downshift()


def _monomial_elements(p, count, m):
    hs = [AnalyticFunction.monomial(k) for k in range(count)]
    return representer_solve(p, hs, m)


def ystar_matrix(p, basis=64, m=512):
    """Y = multiplication by z compressed to polynomials of degree < basis.

    Returns the matrix in an H(b)-orthonormal basis together with the
    orthonormalizing factors ``(Q, R)`` of the monomial representers.
    """
    els = _monomial_elements(p, basis + 1, m)
    U = np.column_stack([e.u.padded(m + 1)[: m + 1] for e in els])
    Q, R = np.linalg.qr(U[:, :basis])
    # Y e_i has representer U[:, 1:] @ R^{-1}[:, i]
    shifted = scipy.linalg.solve_triangular(R.T, U[:, 1:].T, lower=True).T
    return Q.conj().T @ shifted, Q, R


def ystar_eigencheck(p, z0, candidate, basis=64, m=512):
    """Relative residual ``|Y* c - conj(z0) c|_b / |c|_b`` on a polynomial basis."""
    if not p.special:
        raise NotSpecialPair("Y* check needs a special pair")
    Ymat, Q, _ = ystar_matrix(p, basis, m)
    ec = _element(p, candidate, m)
    coords = Q.conj().T @ ec.u.padded(m + 1)[: m + 1]
    resid = Ymat.conj().T @ coords - np.conj(complex(z0)) * coords
    return float(np.linalg.norm(resid) / np.linalg.norm(coords))


def intertwining_residual(p, lam, q, m=512):
    """H(b) norm of ``V_lam A_lam q - Y* V_lam q`` for a polynomial q."""
    q = q if isinstance(q, AnalyticFunction) else AnalyticFunction(q)
    lhs = apply_v(p, a_lambda_apply(p, lam, q), lam, m=m)
    rhs = ystar_apply(p, apply_v(p, q, lam, m=m), m)
    diff = lhs - rhs.truncate(m)
    if diff.norm() == 0:
        return 0.0
    e = representer_solve(p, diff, m, check=False)
    return e.u.norm()
