"""Error-rate bounds for bounded-distance decoding of BPSK over AWGN.

A bounded-distance (BD) decoder with acceptance radius r_d returns the
closest codeword if any modulated codeword lies within Euclidean distance
r_d of the received vector, and declares a decoding failure otherwise.  Its
word error rate P_w and undetected error rate P_u split along the noise
radius r_0 = ||y - x_0||:

    P_w = P_u^<(r_d) + P_tot^>(r_d)        P_u = P_u^<(r_d) + P_u^>(r_d)

where P_u^< collects undetected errors with r_0 <= r_d, P_u^> those with
r_0 > r_d, and P_tot^> is the total probability mass outside radius r_d.

For a code of block length n, weight enumerator A_w, minimum distance d_min,
and per-dimension noise deviation sigma, with p0 the density of the noise
radius:

  exact term (chi tail):

      P_tot^>(r_d) = Q(n/2, r_d^2 / (2 sigma^2))

  union bound over incorrect codewords, each at half-distance sqrt(w):

      P_u^<(r_d) <= sum_{w = d_min}^{min(n, r_d^2)} (A_w / 2) *
          integral_{sqrt(w)}^{r_d} p0(r) I_{1 - w/r^2}((n-1)/2, 1/2) dr

      P_u^>(r_d) <= sum_{w = d_min}^{n} (A_w / 2) *
          integral_{max(r_d, 2 sqrt(w) - r_d)}^{2 sqrt(w) + r_d}
              p0(r) I_{sin^2 phi_w(r)}((n-1)/2, 1/2) dr

      sin^2 phi_w(r) = 1 - ((r^2 - r_d^2 + 4 w) / (4 r sqrt(w)))^2

The I-terms are hyperspherical cap area fractions: conditioned on the noise
radius being r, the received point is uniform on the r-sphere around the
transmitted word, and the integrands measure the cap of that sphere captured
by an incorrect codeword (its half-space for the first bound, its r_d-ball
for the second, where the half-angle follows from the law of cosines).

Union bounds are not clipped to 1; looseness at low SNR stays visible.
As r_d grows, P_u^< converges to the maximum-likelihood union bound
sum A_w Q(sqrt(w)/sigma) and P_u^> vanishes.

Radii are in absolute signal-space units (unit-amplitude BPSK), so weight-w
codewords sit at Euclidean distance 2 sqrt(w) from the transmitted word.
All functions are pure; grid points may be evaluated concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import WeightEnumerator
from .specfun import (
    DomainError,
    QuadratureError,
    QuadratureSpec,
    gaussian_q,
    integrate,
    radial_density,
    reg_gamma_q,
    reg_inc_beta,
)

__all__ = [
    "SIN2_SPILL_TOL",
    "ChannelParams",
    "BoundsRow",
    "SweepFailure",
    "SweepResult",
    "p_tot_gt",
    "p_u_lt_bound",
    "p_u_gt_bound",
    "compose",
    "sweep",
    "ml_union_bound",
]

# The half-angle expression sin^2 phi_w(r) is analytically inside [0, 1] on
# its integration interval; arithmetic spill beyond this tolerance means a
# caller bug rather than roundoff.
SIN2_SPILL_TOL = 1e-9


@dataclass(frozen=True)
class ChannelParams:
    """AWGN operating point for a rate R = k/n code with unit-energy BPSK.

    The per-dimension noise deviation is always derived from the bit SNR:
    sigma^2 = 1 / (2 R 10^(ebn0_db/10)); it is never stored, so it cannot go
    stale against the other fields.
    """

    ebn0_db: float
    rate: float
    n: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.ebn0_db):
            raise ValueError(f"ebn0_db must be finite, got {self.ebn0_db}")
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if self.n < 1:
            raise ValueError(f"block length must be >= 1, got {self.n}")

    @property
    def ebn0(self) -> float:
        return 10.0 ** (self.ebn0_db / 10.0)

    @property
    def sigma(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.rate * self.ebn0))


@dataclass(frozen=True)
class BoundsRow:
    """The five probabilities at one (r_d, SNR) point.

    ``p_w = p_u_lt + p_tot_gt`` and ``p_u = p_u_lt + p_u_gt`` hold exactly by
    construction.  ``truncated`` marks rows computed from a truncated weight
    enumerator: those are neither certified upper bounds nor exact.
    """

    r_d: float
    p_tot_gt: float
    p_u_lt: float
    p_u_gt: float
    p_w: float
    p_u: float
    truncated: bool = False


def _check_radius(r_d: float) -> float:
    if not (math.isfinite(r_d) and r_d >= 0):
        raise DomainError(f"decoding radius must be finite and >= 0, got {r_d}")
    return float(r_d)


def p_tot_gt(r_d: float, ch: ChannelParams) -> float:
    """Exact probability that the noise radius exceeds r_d:
    Q(n/2, r_d^2 / (2 sigma^2)).  Equals 1 at r_d = 0 and decreases in r_d."""
    r_d = _check_radius(r_d)
    return reg_gamma_q(0.5 * ch.n, 0.5 * (r_d / ch.sigma) ** 2)


def _lt_term_integrand(n: int, sigma: float, w: int):
    a = 0.5 * (n - 1)

    def f(r: np.ndarray) -> np.ndarray:
        # I_x hits exactly 0 at r = sqrt(w); the panel rule never evaluates
        # endpoints, and reg_inc_beta clamps any roundoff spill
        x = 1.0 - w / (r * r)
        return radial_density(r, sigma, n) * reg_inc_beta(x, a, 0.5)

    return f


def _gt_term_integrand(n: int, sigma: float, w: int, r_d: float):
    a = 0.5 * (n - 1)
    sqrt_w = math.sqrt(w)
    rd2 = r_d * r_d

    def f(r: np.ndarray) -> np.ndarray:
        cos_phi = (r * r - rd2 + 4.0 * w) / (4.0 * r * sqrt_w)
        sin2 = 1.0 - cos_phi * cos_phi
        if np.any(sin2 < -SIN2_SPILL_TOL) or np.any(sin2 > 1.0 + SIN2_SPILL_TOL):
            raise DomainError(
                f"sin^2 phi spilled beyond [0,1] by more than "
                f"{SIN2_SPILL_TOL:g} at weight {w}, r_d {r_d:g}")
        sin2 = np.clip(sin2, 0.0, 1.0)
        return radial_density(r, sigma, n) * reg_inc_beta(sin2, a, 0.5)

    return f


def _wrap_term_error(exc: QuadratureError, which: str, w: int,
                     r_d: float) -> QuadratureError:
    return QuadratureError(
        f"{which}: weight-{w} term at r_d = {r_d:g} failed: {exc}",
        estimate=exc.estimate, error_bound=exc.error_bound)


def p_u_lt_bound(r_d: float, ch: ChannelParams, we: WeightEnumerator,
                 quad: QuadratureSpec | None = None) -> float:
    """Union bound on undetected errors with noise radius at most r_d.

    Sums, over integer weights w with d_min <= w <= n and w <= r_d^2,
    (A_w/2) times the integral of p0(r) I_{1-w/r^2}((n-1)/2, 1/2) over
    [sqrt(w), r_d].  Zero when r_d^2 < d_min; nondecreasing in r_d.
    """
    r_d = _check_radius(r_d)
    if ch.n != we.n:
        raise ValueError(f"channel n={ch.n} != enumerator n={we.n}")
    total = 0.0
    for w in we.positive_weights():
        if w > r_d * r_d:
            break
        lo = math.sqrt(w)
        if lo >= r_d:  # sqrt(w) == r_d within float: zero-width integral
            continue
        try:
            res = integrate(_lt_term_integrand(ch.n, ch.sigma, w), lo, r_d, quad)
        except QuadratureError as exc:
            raise _wrap_term_error(exc, "p_u_lt_bound", w, r_d) from exc
        total += 0.5 * we.coefficient(w) * res.value
    return total


def p_u_gt_bound(r_d: float, ch: ChannelParams, we: WeightEnumerator,
                 quad: QuadratureSpec | None = None) -> float:
    """Union bound on undetected errors with noise radius beyond r_d.

    Sums, over integer weights d_min <= w <= n, (A_w/2) times the integral
    of p0(r) I_{sin^2 phi_w(r)}((n-1)/2, 1/2) over
    [max(r_d, 2 sqrt(w) - r_d), 2 sqrt(w) + r_d], where the half-angle
    phi_w(r) comes from the law of cosines between the r-sphere around the
    transmitted word and the r_d-ball around a codeword at distance
    2 sqrt(w).  The integrand vanishes at any endpoint where sin^2 phi_w
    reaches 0 (always at the upper endpoint, and at the lower one while
    r_d <= sqrt(w)); at r_d = 0 every interval is degenerate and the bound
    is 0.  At fixed SNR the bound vanishes as r_d grows.
    """
    r_d = _check_radius(r_d)
    if ch.n != we.n:
        raise ValueError(f"channel n={ch.n} != enumerator n={we.n}")
    total = 0.0
    for w in we.positive_weights():
        sqrt_w = math.sqrt(w)
        lo = max(r_d, 2.0 * sqrt_w - r_d)
        hi = 2.0 * sqrt_w + r_d
        if lo >= hi:
            continue
        try:
            res = integrate(_gt_term_integrand(ch.n, ch.sigma, w, r_d),
                            lo, hi, quad)
        except QuadratureError as exc:
            raise _wrap_term_error(exc, "p_u_gt_bound", w, r_d) from exc
        total += 0.5 * we.coefficient(w) * res.value
    return total


def compose(r_d: float, ch: ChannelParams, we: WeightEnumerator,
            quad: QuadratureSpec | None = None) -> BoundsRow:
    """All five probabilities at one point: the exact tail term, the two
    union bounds, and their compositions p_w = p_u_lt + p_tot_gt and
    p_u = p_u_lt + p_u_gt."""
    p_tot = p_tot_gt(r_d, ch)
    p_lt = p_u_lt_bound(r_d, ch, we, quad)
    p_gt = p_u_gt_bound(r_d, ch, we, quad)
    return BoundsRow(r_d=float(r_d), p_tot_gt=p_tot, p_u_lt=p_lt, p_u_gt=p_gt,
                     p_w=p_lt + p_tot, p_u=p_lt + p_gt,
                     truncated=we.truncated)


@dataclass(frozen=True)
class SweepFailure:
    r_d: float
    error: Exception


@dataclass(frozen=True)
class SweepResult:
    """Rows for the grid points that evaluated, failures for those that did
    not; a failing point never aborts the rest of the sweep."""

    rows: list[BoundsRow]
    failures: list[SweepFailure]


def sweep(ch: ChannelParams, we: WeightEnumerator, r_d_grid,
          quad: QuadratureSpec | None = None) -> SweepResult:
    """Evaluate :func:`compose` over a strictly increasing grid of radii."""
    grid = [float(r) for r in r_d_grid]
    if any(r < 0 for r in grid):
        raise ValueError("radius grid must be nonnegative")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("radius grid must be strictly increasing")
    rows: list[BoundsRow] = []
    failures: list[SweepFailure] = []
    for r in grid:
        try:
            rows.append(compose(r, ch, we, quad))
        except (QuadratureError, DomainError) as exc:
            failures.append(SweepFailure(r_d=r, error=exc))
    return SweepResult(rows=rows, failures=failures)


def ml_union_bound(ch: ChannelParams, we: WeightEnumerator) -> float:
    """Union bound on the word error rate of maximum-likelihood decoding:
    sum over w >= d_min of A_w Q(sqrt(w)/sigma).

    This is the r_d -> infinity limit of :func:`p_u_lt_bound` (each pairwise
    term integrates the cap fractions into the Gaussian pairwise error
    probability), which makes it an independent convergence oracle for the
    quadrature path.
    """
    sigma = ch.sigma
    return math.fsum(we.coefficient(w) * gaussian_q(math.sqrt(w) / sigma)
                     for w in we.positive_weights())
