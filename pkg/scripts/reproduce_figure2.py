#!/usr/bin/env python3
"""Bound curves vs simulated error rates for the (8,4) extended Hamming code.

Sweeps the decoding radius at a fixed bit SNR, writes the five bound curves
and the simulated rates to CSV, and optionally renders a log-scale chart.
Desk-scale trial counts resolve rates down to ~1e-5; raise --trials to push
the points further into the tails.

    python scripts/reproduce_figure2.py --out-dir out --trials 1000000 --plot
"""

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bdbounds import (  # noqa: E402
    ChannelParams,
    SimConfig,
    builtin_extended_hamming_8_4,
    compose,
    run,
    sweep,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ebn0-db", type=float, default=6.7)
    ap.add_argument("--trials", type=int, default=1_000_000,
                    help="Monte Carlo trials per simulated point")
    ap.add_argument("--curve-points", type=int, default=80)
    ap.add_argument("--sim-points", type=int, default=12)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--out-dir", default="figure2_out")
    ap.add_argument("--plot", action="store_true",
                    help="also render figure2.png (needs matplotlib)")
    args = ap.parse_args()

    code = builtin_extended_hamming_8_4()
    we = code.weight_enum
    ch = ChannelParams(ebn0_db=args.ebn0_db, rate=code.rate, n=code.n)
    lo, hi = 0.5 * math.sqrt(we.d_min), 1.5 * math.sqrt(code.n)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    print(f"(8,4) extended Hamming, Eb/N0 = {args.ebn0_db} dB, "
          f"sigma = {ch.sigma:.4f}, r_d in [{lo:.3f}, {hi:.3f}]")

    t0 = time.perf_counter()
    curve = sweep(ch, we, np.linspace(lo, hi, args.curve_points))
    assert not curve.failures
    with open(out / "bounds.csv", "w") as f:
        print("r_d,p_tot_gt,p_u_lt,p_u_gt,p_w_bound,p_u_bound", file=f)
        for r in curve.rows:
            print(f"{r.r_d:.10g},{r.p_tot_gt:.10g},{r.p_u_lt:.10g},"
                  f"{r.p_u_gt:.10g},{r.p_w:.10g},{r.p_u:.10g}", file=f)
    print(f"bound curves: {args.curve_points} points "
          f"in {time.perf_counter() - t0:.1f}s -> {out / 'bounds.csv'}")

    t0 = time.perf_counter()
    sim_grid = np.linspace(lo, hi, args.sim_points)
    sim_rows = []
    for r_d in sim_grid:
        cfg = SimConfig(code=code, channel=ch, r_d=float(r_d),
                        trials=args.trials, seed=args.seed)
        res = run(cfg, threads=args.threads)
        sim_rows.append((float(r_d), res))
        print(f"  r_d {r_d:5.2f}: p_w {res.p_w:.3e}  p_u {res.p_u:.3e}  "
              f"p_f {res.p_f:.3e}")
    with open(out / "sim.csv", "w") as f:
        print("r_d,trials,correct,undetected,failure,p_c,p_u,p_f,p_w", file=f)
        for r_d, res in sim_rows:
            print(f"{r_d:.10g},{res.trials},{res.correct},{res.undetected},"
                  f"{res.failure},{res.p_c:.10g},{res.p_u:.10g},"
                  f"{res.p_f:.10g},{res.p_w:.10g}", file=f)
    print(f"simulation: {args.sim_points} points x {args.trials} trials "
          f"in {time.perf_counter() - t0:.1f}s -> {out / 'sim.csv'}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        rows = curve.rows
        r = [x.r_d for x in rows]
        fig, ax = plt.subplots(figsize=(7, 5))
        ax.semilogy(r, [max(x.p_tot_gt, 1e-300) for x in rows], "k-",
                    label="P_tot> (exact)")
        ax.semilogy(r, [max(x.p_u_lt, 1e-300) for x in rows], "b-",
                    label="P_u< bound")
        ax.semilogy(r, [max(x.p_u_gt, 1e-300) for x in rows], "g-",
                    label="P_u> bound")
        ax.semilogy(r, [max(x.p_w, 1e-300) for x in rows], "r-",
                    label="P_w bound")
        ax.semilogy(r, [max(x.p_u, 1e-300) for x in rows], "m-",
                    label="P_u bound")
        floor = 0.5 / args.trials
        ax.semilogy([x for x, res in sim_rows if res.p_w > floor],
                    [res.p_w for _, res in sim_rows if res.p_w > floor],
                    "r^", mfc="none", label="P_w simulated")
        ax.semilogy([x for x, res in sim_rows if res.p_u > floor],
                    [res.p_u for _, res in sim_rows if res.p_u > floor],
                    "ms", mfc="none", label="P_u simulated")
        ax.set_xlabel("decoding radius r_d")
        ax.set_ylabel("probability")
        ax.set_ylim(max(floor / 10, 1e-12), 2.0)
        ax.set_title(f"(8,4) extended Hamming, Eb/N0 = {args.ebn0_db} dB")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(loc="lower left", fontsize=9)
        fig.tight_layout()
        fig.savefig(out / "figure2.png", dpi=150)
        print(f"plot -> {out / 'figure2.png'}")

    return 0


if __name__ == "__main__":
    sys.exit(main())
