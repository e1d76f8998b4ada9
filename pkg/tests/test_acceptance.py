"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
(run with ``pytest tests/test_acceptance.py -v -s`` to see them live).

Monte Carlo checks use fixed seeds, so every run is reproducible; trial
counts are desk scale, far below the 1e10 used for the original
high-precision curves, and tolerances are set accordingly (3 binomial
standard errors for simulation agreement).
"""

import math
import time

import numpy as np
import pytest

from bdbounds.bounds import ChannelParams, ml_union_bound, p_u_lt_bound
from bdbounds.cli import main
from bdbounds.codes import builtin_extended_hamming_8_4
from bdbounds.sim import SimConfig, failure_rate_check, run
from bdbounds.specfun import (
    cap_area_fraction,
    chi_cdf,
    chi_pdf,
    integrate,
    QuadratureSpec,
    reg_gamma_q,
    reg_inc_beta,
)

import helpers

CH = ChannelParams(ebn0_db=6.7, rate=0.5, n=8)
CODE = builtin_extended_hamming_8_4()
WE = CODE.weight_enum


def _criterion(num: int, description: str, ok: bool, detail: str = ""):
    line = f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {description}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, f"criterion {num} failed: {description} {detail}"


def test_criterion_1_weight_enumerator_exactness(capsys):
    t0 = time.perf_counter()
    code = main(["codeinfo", "--code", "builtin:hamming84"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    ok = (code == 0
          and "n: 8" in out
          and "k: 4" in out
          and "d_min: 4" in out
          and "A_w: 1,0,0,0,14,0,0,0,1" in out
          and elapsed < 1.0)
    with capsys.disabled():
        _criterion(1, "codeinfo reports the exact (8,4) weight distribution",
                   ok, f"{elapsed:.2f}s")


def test_criterion_2_ml_limit_magnitude():
    t0 = time.perf_counter()
    # independent oracle: sum A_w Q(sqrt(2 R Eb/N0 w)) via erfc directly
    snr = 10 ** 0.67
    oracle = sum(a_w * 0.5 * math.erfc(math.sqrt(2 * 0.5 * snr * w)
                                       / math.sqrt(2))
                 for w, a_w in [(4, 14), (8, 1)])
    val = ml_union_bound(CH, WE)
    elapsed = time.perf_counter() - t0
    ok = (val == pytest.approx(oracle, rel=1e-12)
          and 1e-4 / 1.5 <= val <= 1e-4 * 1.5
          and elapsed < 1.0)
    _criterion(2, "ML union bound at 6.7 dB is ~1.07e-4, within 1.5x of 1e-4",
               ok, f"value {val:.4e}, oracle {oracle:.4e}, {elapsed:.2f}s")


def test_criterion_3_bound_converges_to_ml_limit():
    t0 = time.perf_counter()
    val = p_u_lt_bound(3.0 * math.sqrt(8), CH, WE)
    ml = ml_union_bound(CH, WE)
    rel = abs(val - ml) / ml
    elapsed = time.perf_counter() - t0
    ok = rel <= 1e-6 and elapsed < 10.0
    _criterion(3, "p_u_lt at r_d = 3 sqrt(8) meets the ML limit to 1e-6",
               ok, f"rel diff {rel:.2e}, {elapsed:.2f}s")


def test_criterion_4_exact_term_two_sided():
    t0 = time.perf_counter()
    grid = np.linspace(0.8, 3.5, 10)
    worst = 0.0
    for i, r_d in enumerate(grid):
        cfg = SimConfig(code=CODE, channel=CH, r_d=float(r_d),
                        trials=10_000_000, seed=1200 + i)
        chk = failure_rate_check(cfg, threads=4)
        worst = max(worst, abs(chk.z))
    elapsed = time.perf_counter() - t0
    ok = worst <= 3.0 and elapsed < 300.0
    _criterion(4, "noise-radius exceedance matches the exact chi tail at "
                  "every grid point (1e7 trials, two-sided 3 SE)",
               ok, f"worst |z| {worst:.2f}, {elapsed:.1f}s")


def test_criterion_5_bound_validity_at_desk_scale(capsys):
    t0 = time.perf_counter()
    code = main(["compare", "--code", "builtin:hamming84",
                 "--ebn0-db", "6.7", "--rd-grid", "1:3.25:10",
                 "--trials", "1000000", "--seed", "2024", "--threads", "4"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    rows = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    flags = [row.split(",")[-1] for row in rows[1:]]
    ok = (code == 0
          and len(rows) == 11
          and all(f == "" for f in flags)
          and "# violations: 0 of 10 points" in out
          and elapsed < 1800.0)
    with capsys.disabled():
        _criterion(5, "compare at 6.7 dB, 10 points x 1e6 trials: zero "
                      "P_w/P_u bound violations",
                   ok, f"{elapsed:.1f}s")


def test_criterion_6_larger_code_tractability(capsys):
    t0 = time.perf_counter()
    code = main(["bounds", "--code", "builtin:ldpc128", "--ebn0-db", "4.0",
                 "--rd-grid", "3:8:50"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    rows = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    ok = code == 0 and len(rows) == 51 and elapsed < 60.0
    with capsys.disabled():
        _criterion(6, "(128,64) 50-point bound sweep converges in under 60 s",
                   ok, f"{elapsed:.1f}s")


def test_criterion_7_special_function_properties():
    t0 = time.perf_counter()
    tight = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-16)

    # beta symmetry
    rng = np.random.default_rng(17)
    sym_ok = all(
        abs(reg_inc_beta(x, a, b) + reg_inc_beta(1 - x, b, a) - 1.0) <= 1e-12
        for x, a, b in zip(rng.uniform(0, 1, 200),
                           rng.uniform(0.5, 64, 200),
                           rng.uniform(0.5, 64, 200)))

    # chi CDF vs regularized gamma tail
    chi_ok = all(
        abs(chi_cdf(t, n) - (1.0 - reg_gamma_q(n / 2, t * t / 2))) <= 1e-12
        and abs(chi_cdf(t, n)
                - integrate(lambda u: chi_pdf(u, n), 0.0, t, tight).value)
        <= 1e-10
        for n in (2, 4, 8, 16, 128) for t in (0.5, 1.5, 2.5, 3.5, 5.0))

    # cap hemisphere limit
    hemi_ok = all(abs(cap_area_fraction(n, 1.0) - 0.5) <= 1e-12
                  for n in (2, 8, 128, 512))

    # Monte Carlo cap-fraction oracle
    mc = helpers.mc_cap_fraction(8, 0.5, samples=10_000_000, seed=7)
    cap_ok = abs(cap_area_fraction(8, 0.5) - mc) <= 1e-3

    elapsed = time.perf_counter() - t0
    ok = sym_ok and chi_ok and hemi_ok and cap_ok and elapsed < 120.0
    _criterion(7, "beta/gamma/chi identities and the cap-fraction sampling "
                  "oracle all hold",
               ok, f"cap mc diff {abs(cap_area_fraction(8, 0.5) - mc):.1e}, "
                   f"{elapsed:.1f}s")


def test_criterion_8_simulator_invariants():
    t0 = time.perf_counter()

    # outcome partition
    partition_ok = True
    for r_d in (0.0, 1.6, 2.4, 9.0):
        res = run(SimConfig(code=CODE, channel=CH, r_d=r_d, trials=300_000,
                            seed=5))
        partition_ok &= (res.correct + res.undetected + res.failure
                         == res.trials)

    # seed determinism under varying thread counts
    base = SimConfig(code=CODE, channel=CH, r_d=2.0, trials=500_000, seed=12,
                     batch_size=50_000)
    counts = [(r.correct, r.undetected, r.failure)
              for r in (run(base, threads=1), run(base, threads=2),
                        run(base, threads=8))]
    determinism_ok = counts[0] == counts[1] == counts[2]

    # fixed-realization monotonicity: failure set shrinks with r_d
    radii = [1.2, 1.9, 2.6, 3.3, 8.0]
    replays = [run(SimConfig(code=CODE, channel=CH, r_d=r, trials=400_000,
                             seed=33)) for r in radii]
    monotone_ok = all(
        b.failure <= a.failure and b.correct >= a.correct
        and b.undetected >= a.undetected
        for a, b in zip(replays, replays[1:]))

    # random-codeword transmission agrees with all-zero within 3 SE
    trials = 2_000_000
    zero = run(SimConfig(code=CODE, channel=CH, r_d=2.0, trials=trials,
                         seed=71))
    rand = run(SimConfig(code=CODE, channel=CH, r_d=2.0, trials=trials,
                         seed=72, transmit_random=True))
    symmetry_ok = True
    for which in ("p_w", "p_u"):
        se = math.hypot(zero.standard_error(which),
                        rand.standard_error(which))
        symmetry_ok &= abs(getattr(zero, which)
                           - getattr(rand, which)) <= 3.0 * se

    elapsed = time.perf_counter() - t0
    ok = (partition_ok and determinism_ok and monotone_ok and symmetry_ok
          and elapsed < 300.0)
    _criterion(8, "partition, thread-count determinism, radius monotonicity, "
                  "and transmit-symmetry invariants hold",
               ok, f"{elapsed:.1f}s")
