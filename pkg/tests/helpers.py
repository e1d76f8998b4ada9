"""Monte Carlo oracles shared between the unit tests and the acceptance
suite.  Each one estimates a quantity by a route independent of the code
path it is used to check."""

from __future__ import annotations

import math

import numpy as np

from bdbounds import bpsk_modulate


def mc_cap_fraction(n: int, sin2_phi: float, samples: int = 10_000_000,
                    seed: int = 7, batch: int = 1 << 20) -> float:
    """Fraction of uniformly random directions in R^n within polar angle
    phi = arcsin(sqrt(sin2_phi)) of the first-axis pole, phi <= pi/2.

    Directions are normalized Gaussian vectors; the cap membership test is
    cos(angle) >= cos(phi) on the first coordinate.
    """
    cos_phi = math.sqrt(1.0 - sin2_phi)
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        v = rng.standard_normal((m, n))
        cos_ang = v[:, 0] / np.sqrt((v * v).sum(axis=1))
        hits += int(np.count_nonzero(cos_ang >= cos_phi))
        done += m
    return hits / samples


def mc_shell_area(n: int, r: float, h: float = 0.05,
                  samples: int = 4_000_000, seed: int = 11) -> float:
    """Surface-area estimate of the radius-r sphere in R^n from the measure
    of the shell r-h <= ||x|| <= r+h under uniform sampling of the enclosing
    cube, divided by the shell thickness 2h."""
    side = r + h
    rng = np.random.default_rng(seed)
    x = rng.uniform(-side, side, size=(samples, n))
    rr = np.sqrt((x * x).sum(axis=1))
    frac = np.count_nonzero((rr >= r - h) & (rr <= r + h)) / samples
    shell_volume = frac * (2.0 * side) ** n
    return shell_volume / (2.0 * h)


def mc_radius_exceed(n: int, sigma: float, r_d: float,
                     trials: int = 10_000_000, seed: int = 13,
                     batch: int = 1 << 20) -> tuple[int, int]:
    """Count of noise vectors with norm beyond r_d; returns (count, trials)."""
    rng = np.random.default_rng(seed)
    rd2 = r_d * r_d
    exceed = 0
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        noise = rng.standard_normal((m, n)) * sigma
        exceed += int(np.count_nonzero((noise * noise).sum(axis=1) > rd2))
        done += m
    return exceed, trials


def mc_union_sums(codewords: np.ndarray, sigma: float, rd_lt: float,
                  rd_gt: float, trials: int, seed: int,
                  batch: int = 1 << 17) -> dict[str, float]:
    """Monte Carlo estimates of the two union-bound sums for a code, by
    direct noise sampling around the all-zero word:

        sum_i Pr(r_i <= r_0 <= rd_lt)   and   sum_i Pr(r_i <= rd_gt < r_0)

    counted with multiplicity over incorrect codewords i.  Returns means and
    standard errors for both sums.
    """
    x = bpsk_modulate(codewords)
    cw_norm2 = (x * x).sum(axis=1)
    n = x.shape[1]
    rng = np.random.default_rng(seed)
    s_lt = s_lt2 = s_gt = s_gt2 = 0
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        y = x[0] + rng.standard_normal((m, n)) * sigma
        d2 = (y * y).sum(axis=1)[:, None] - 2.0 * (y @ x.T) + cw_norm2[None, :]
        r0_2 = d2[:, 0]
        ri_2 = d2[:, 1:]
        cnt_lt = ((ri_2 <= r0_2[:, None])
                  & (r0_2 <= rd_lt ** 2)[:, None]).sum(axis=1)
        cnt_gt = ((ri_2 <= rd_gt ** 2)
                  & (r0_2 > rd_gt ** 2)[:, None]).sum(axis=1)
        s_lt += int(cnt_lt.sum())
        s_lt2 += int((cnt_lt.astype(np.int64) ** 2).sum())
        s_gt += int(cnt_gt.sum())
        s_gt2 += int((cnt_gt.astype(np.int64) ** 2).sum())
        done += m
    mean_lt = s_lt / done
    mean_gt = s_gt / done
    return {
        "mean_lt": mean_lt,
        "se_lt": math.sqrt(max(s_lt2 / done - mean_lt ** 2, 0.0) / done),
        "mean_gt": mean_gt,
        "se_gt": math.sqrt(max(s_gt2 / done - mean_gt ** 2, 0.0) / done),
        "trials": done,
    }
