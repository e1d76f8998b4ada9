"""Special functions and adaptive quadrature underlying the decoder bounds.

Six ingredients feed the performance bounds: surface areas of n-spheres,
hyperspherical cap area fractions (regularized incomplete beta), the chi
distribution of the Gaussian noise radius (density, CDF, and upper tail via
the regularized gamma function), the Gaussian tail probability, and a
definite integrator for the cap integrals that have no closed form.

Gamma factors are evaluated in log domain throughout so that block lengths up
to n = 512 stay inside double-precision range (Gamma(64) already overflows in
linear arithmetic).  Every function here is pure and thread-safe; nothing
holds state.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import special as _sp

__all__ = [
    "DomainError",
    "QuadratureError",
    "QuadratureSpec",
    "QuadResult",
    "DEFAULT_QUADRATURE",
    "BETA_CLAMP_TOL",
    "sphere_surface_area",
    "reg_inc_beta",
    "cap_area_fraction",
    "reg_gamma_q",
    "chi_pdf",
    "chi_cdf",
    "radial_density",
    "gaussian_q",
    "chi_tail_cutoff",
    "integrate",
]

_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)
_SQRT2 = math.sqrt(2.0)

# Floating-point spill from expressions like sin^2(phi) = 1 - w/r^2 is
# tolerated up to this distance outside [0, 1]; anything larger is a bug in
# the caller, not roundoff.
BETA_CLAMP_TOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside a function's mathematical domain."""


class QuadratureError(RuntimeError):
    """Adaptive integration failed to reach tolerance within its budget.

    Carries the best available ``estimate`` and ``error_bound`` so callers can
    report how far the computation got.
    """

    def __init__(self, message: str, estimate: float | None = None,
                 error_bound: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for :func:`integrate`.

    Convergence is declared once the summed error bound drops below
    ``max(abs_tol, rel_tol * |estimate|)``, whichever is satisfied first.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 10_000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise DomainError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


DEFAULT_QUADRATURE = QuadratureSpec()


class QuadResult(NamedTuple):
    value: float
    error_bound: float
    subdivisions: int


def _require_dimension(n: int, minimum: int, who: str) -> int:
    if int(n) != n:
        raise DomainError(f"{who}: dimension must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise DomainError(f"{who}: dimension must be >= {minimum}, got {n}")
    return n


def _scalar_like(x_in, out):
    # mirror the caller's scalar/array shape
    if np.ndim(x_in) == 0:
        return float(out)
    return np.asarray(out)


def sphere_surface_area(n: int, r: float) -> float:
    """Surface area ``2 pi^(n/2) r^(n-1) / Gamma(n/2)`` of the sphere of
    radius ``r`` in n-dimensional Euclidean space.

    Evaluated as ``exp`` of the log expression, which stays finite for
    dimensions up to 512.
    """
    n = _require_dimension(n, 2, "sphere_surface_area")
    if not r > 0:
        raise DomainError(f"sphere_surface_area: radius must be > 0, got {r}")
    return math.exp(_LN2 + 0.5 * n * _LNPI + (n - 1) * math.log(r)
                    - math.lgamma(0.5 * n))


def _clamp_unit(x, tol: float, who: str):
    x = np.asarray(x, dtype=float)
    if np.any(x < -tol) or np.any(x > 1.0 + tol):
        bad = x[(x < -tol) | (x > 1.0 + tol)]
        raise DomainError(
            f"{who}: argument outside [0,1] beyond clamp tolerance {tol:g}: "
            f"{np.atleast_1d(bad)[:3]}")
    return np.clip(x, 0.0, 1.0)


def reg_inc_beta(x, a: float, b: float):
    """Regularized incomplete beta function I_x(a, b).

    Monotone nondecreasing in x with I_0 = 0 and I_1 = 1.  Accepts a scalar
    or an ndarray for ``x``; values within ``BETA_CLAMP_TOL`` of [0, 1] are
    clamped onto the boundary, values further out raise :class:`DomainError`.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"reg_inc_beta: shapes must be > 0, got a={a}, b={b}")
    xc = _clamp_unit(x, BETA_CLAMP_TOL, "reg_inc_beta")
    return _scalar_like(x, _sp.betainc(a, b, xc))


def cap_area_fraction(n: int, sin2_phi):
    """Fraction of an n-sphere's surface lying in the cap of polar half-angle
    phi, for phi in [0, pi/2] given as sin^2(phi).

    Equals ``(1/2) I_{sin^2 phi}((n-1)/2, 1/2)``; independent of the sphere
    radius.  Hits 0 at sin^2 = 0 and 1/2 (a hemisphere) at sin^2 = 1.
    """
    n = _require_dimension(n, 2, "cap_area_fraction")
    return 0.5 * reg_inc_beta(sin2_phi, 0.5 * (n - 1), 0.5)


def reg_gamma_q(s: float, x):
    """Upper regularized gamma function Q(s, x) = Gamma(s, x) / Gamma(s).

    Q(s, 0) = 1 and Q is monotone nonincreasing in x.
    """
    if not s > 0:
        raise DomainError(f"reg_gamma_q: shape must be > 0, got {s}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError(f"reg_gamma_q: argument must be >= 0, got {x}")
    return _scalar_like(x, _sp.gammaincc(s, xa))


def chi_pdf(t, n: int):
    """Density of the chi distribution with n degrees of freedom:
    ``2^(1-n/2) t^(n-1) exp(-t^2/2) / Gamma(n/2)``.

    This is the density of the Euclidean norm of an n-dimensional standard
    Gaussian vector.  Log-domain evaluation keeps it finite up to n = 512.
    """
    n = _require_dimension(n, 1, "chi_pdf")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 0):
        raise DomainError(f"chi_pdf: argument must be >= 0, got {t}")
    if n == 1:
        log_pdf = 0.5 * _LN2 - 0.5 * ta * ta - math.lgamma(0.5)
    else:
        with np.errstate(divide="ignore"):
            log_t = np.log(ta)
        log_pdf = ((1.0 - 0.5 * n) * _LN2 + (n - 1) * log_t - 0.5 * ta * ta
                   - math.lgamma(0.5 * n))
    return _scalar_like(t, np.exp(log_pdf))


def chi_cdf(t, n: int):
    """Chi distribution CDF: F(t; n) = 1 - Q(n/2, t^2/2), evaluated directly
    as the lower regularized gamma function for accuracy near 0."""
    n = _require_dimension(n, 1, "chi_cdf")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 0):
        raise DomainError(f"chi_cdf: argument must be >= 0, got {t}")
    return _scalar_like(t, _sp.gammainc(0.5 * n, 0.5 * ta * ta))


def radial_density(r, sigma: float, n: int):
    """Density of the noise radius ``||y - x0||`` when each of the n noise
    components is N(0, sigma^2): ``(1/sigma) chi_pdf(r/sigma, n)``."""
    if not sigma > 0:
        raise DomainError(f"radial_density: sigma must be > 0, got {sigma}")
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0):
        raise DomainError(f"radial_density: radius must be >= 0, got {r}")
    return _scalar_like(r, chi_pdf(ra / sigma, n) / sigma)


def gaussian_q(x: float) -> float:
    """Standard normal tail probability, via the complementary error
    function: Q(x) = erfc(x / sqrt(2)) / 2."""
    return 0.5 * math.erfc(x / _SQRT2)


def chi_tail_cutoff(n: int, sigma: float = 1.0, tail: float = 1e-18) -> float:
    """Radius r beyond which the chi tail Q(n/2, r^2/(2 sigma^2)) is below
    ``tail``, located by bisection.

    Integrals with an infinite upper limit are truncated here; the discarded
    mass is then orders of magnitude below any quadrature tolerance in use.
    """
    n = _require_dimension(n, 1, "chi_tail_cutoff")
    if not sigma > 0:
        raise DomainError(f"chi_tail_cutoff: sigma must be > 0, got {sigma}")
    if not 0 < tail < 1:
        raise DomainError(f"chi_tail_cutoff: tail must be in (0,1), got {tail}")

    def q(r: float) -> float:
        return reg_gamma_q(0.5 * n, 0.5 * (r / sigma) ** 2)

    lo = sigma * math.sqrt(n)  # chi mean scale; tail(lo) >> target
    hi = lo
    while q(hi) >= tail:
        hi *= 2.0
    if q(lo) < tail:
        lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if q(mid) < tail:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-9 * hi:
            break
    return hi


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod (7, 15) quadrature
# ---------------------------------------------------------------------------

# 15-point Kronrod extension of 7-point Gauss, nodes on [0, 1] side of the
# symmetric rule (QUADPACK QK15 constants).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full ascending 15-node layout on [-1, 1] with matching weight vectors
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[[1, 13]] = _WG[0]
_W_GAUSS[[3, 11]] = _WG[1]
_W_GAUSS[[5, 9]] = _WG[2]
_W_GAUSS[7] = _WG[3]


def _gk15_panel(f: Callable, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c + h * _NODES
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        raise TypeError(
            "integrand must be vectorized: f(ndarray of shape (15,)) must "
            f"return the same shape, got {y.shape}")
    if not np.all(np.isfinite(y)):
        raise DomainError(
            f"integrand not finite on [{a:g}, {b:g}]")
    kronrod = h * float(_W_KRONROD @ y)
    gauss = h * float(_W_GAUSS @ y)
    return kronrod, abs(kronrod - gauss)


def integrate(f: Callable, lo: float, hi: float,
              spec: QuadratureSpec | None = None) -> QuadResult:
    """Adaptive definite integral of a vectorized integrand over [lo, hi].

    Each panel is estimated with an embedded Gauss(7)/Kronrod(15) pair; the
    panel with the largest |Kronrod - Gauss| discrepancy is halved until the
    summed error bound meets the tolerance in ``spec``.  The integrand is
    called with ndarrays of abscissae and must return matching-shape values.

    Returns the estimate together with its error bound.  Failure to converge
    within ``spec.max_subdivisions`` raises :class:`QuadratureError`; a
    non-converged value is never returned silently.
    """
    spec = DEFAULT_QUADRATURE if spec is None else spec
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"integrate: limits must be finite, got [{lo}, {hi}]")
    if lo > hi:
        raise DomainError(f"integrate: lower limit {lo} exceeds upper {hi}")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)

    value, err = _gk15_panel(f, lo, hi)
    # max-heap on panel error; ties resolved by the interval endpoints
    panels = [(-err, lo, hi, value, err)]
    total, total_err = value, err
    nsub = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if nsub >= spec.max_subdivisions:
            raise QuadratureError(
                f"integration over [{lo:g}, {hi:g}] did not reach "
                f"rel_tol={spec.rel_tol:g}/abs_tol={spec.abs_tol:g} within "
                f"{spec.max_subdivisions} subdivisions "
                f"(estimate {total:.6g}, error bound {total_err:.3g})",
                estimate=total, error_bound=total_err)
        _, a, b, v_old, e_old = heapq.heappop(panels)
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            raise QuadratureError(
                f"panel [{a:g}, {b:g}] collapsed below float resolution "
                f"before reaching tolerance", estimate=total,
                error_bound=total_err)
        v1, e1 = _gk15_panel(f, a, m)
        v2, e2 = _gk15_panel(f, m, b)
        total += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        heapq.heappush(panels, (-e1, a, m, v1, e1))
        heapq.heappush(panels, (-e2, m, b, v2, e2))
        nsub += 1
    # exact resummation avoids the drift of incremental updates
    value = math.fsum(p[3] for p in panels)
    err = math.fsum(p[4] for p in panels)
    return QuadResult(value, err, nsub)
