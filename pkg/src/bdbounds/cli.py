"""Command-line front end: bound sweeps, decoder simulations, and
bound-vs-simulation comparisons, emitted as CSV for external plotting.

Every CSV output starts with a manifest comment block recording the tool
version and all resolved parameters, including a canonical command line that
reproduces the file.  Simulation outputs are byte-identical across reruns of
the same command; the wall-clock timestamp therefore goes to stderr, never
into the output.

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 capacity error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .bounds import ChannelParams, compose, ml_union_bound, sweep
from .codes import (
    CapacityError,
    CodeFileError,
    LinearCode,
    WeightEnumerator,
    builtin_extended_hamming_8_4,
    builtin_ldpc_128_64_weight_enum,
    load_code_file,
)
from .sim import SimConfig, failure_rate_check, run
from .specfun import DEFAULT_QUADRATURE, DomainError, QuadratureError, QuadratureSpec

BOUNDS_HEADER = "r_d,p_tot_gt,p_u_lt,p_u_gt,p_w_bound,p_u_bound"
SIM_HEADER = "r_d,trials,correct,undetected,failure,p_c,p_u,p_f,p_w,ci_u,ci_w"
COMPARE_HEADER = (
    "r_d,p_tot_gt,p_u_lt,p_u_gt,p_w_bound,p_u_bound,"
    "trials,correct,undetected,failure,p_c,p_u,p_f,p_w,ci_u,ci_w,"
    "exceed,p_exceed,z_tot,violation")

VIOLATION_Z = 3.0  # stricter than the 95% intervals; suppresses false alarms


class UsageError(Exception):
    """Bad arguments detected after argparse; exits with code 2."""


def _g(v: float) -> str:
    """Full decimal precision: 17 significant digits."""
    return format(float(v), ".17g")


@dataclass(frozen=True)
class ResolvedCode:
    label: str
    n: int
    k: int | None
    weight_enum: WeightEnumerator
    code: LinearCode | None = None

    @property
    def rate(self) -> float:
        if self.k is None:
            raise UsageError(
                f"code source {self.label!r} does not determine k (truncated "
                f"enumerator without a 'k' line), so the rate is unknown")
        return self.k / self.n

    @property
    def d_min(self) -> int:
        return self.weight_enum.d_min


def _resolve_code(source: str) -> ResolvedCode:
    if source == "builtin:hamming84":
        code = builtin_extended_hamming_8_4()
        return ResolvedCode(label=source, n=code.n, k=code.k,
                            weight_enum=code.weight_enum, code=code)
    if source == "builtin:ldpc128":
        we = builtin_ldpc_128_64_weight_enum()
        return ResolvedCode(label=source, n=we.n, k=64, weight_enum=we)
    if source.startswith("builtin:"):
        raise UsageError(f"unknown builtin code {source!r}; available: "
                         f"builtin:hamming84, builtin:ldpc128")
    if not os.path.exists(source):
        raise UsageError(f"code file not found: {source}")
    parsed = load_code_file(source)
    return ResolvedCode(label=source, n=parsed.n, k=parsed.k,
                        weight_enum=parsed.weight_enum, code=parsed.code)


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid must be lo:hi:count with numeric parts, "
                         f"got {text!r}") from None
    if count < 1:
        raise UsageError(f"grid count must be >= 1, got {count}")
    if count > 1 and not hi > lo:
        raise UsageError(f"grid needs hi > lo, got {text!r}")
    if lo < 0:
        raise UsageError(f"radii must be nonnegative, got {text!r}")
    return lo, hi, count


def _resolve_radii(args, rc: ResolvedCode) -> tuple[list[float], str]:
    """Radii in absolute signal-space units plus a canonical flag string."""
    scale = math.sqrt(rc.n)
    if args.rd is not None:
        if args.rd < 0:
            raise UsageError(f"--rd must be >= 0, got {args.rd}")
        return [args.rd], f"--rd {_g(args.rd)}"
    if args.rd_grid is not None:
        lo, hi, count = _parse_grid(args.rd_grid)
        return list(np.linspace(lo, hi, count)), f"--rd-grid {lo:g}:{hi:g}:{count}"
    if args.rd_norm is not None:
        if args.rd_norm < 0:
            raise UsageError(f"--rd-norm must be >= 0, got {args.rd_norm}")
        return [args.rd_norm * scale], f"--rd-norm {_g(args.rd_norm)}"
    if args.rd_norm_grid is not None:
        lo, hi, count = _parse_grid(args.rd_norm_grid)
        return (list(np.linspace(lo * scale, hi * scale, count)),
                f"--rd-norm-grid {lo:g}:{hi:g}:{count}")
    if getattr(args, "default_grid_ok", False):
        lo = 0.5 * math.sqrt(rc.d_min)
        hi = 1.5 * scale
        return list(np.linspace(lo, hi, 60)), f"--rd-grid {_g(lo)}:{_g(hi)}:60"
    raise UsageError("a radius is required: --rd | --rd-grid | --rd-norm | "
                     "--rd-norm-grid")


@dataclass(frozen=True)
class RunManifest:
    """Resolved invocation record emitted as a CSV comment header.

    The timestamp is kept out of the emitted lines so that rerunning
    ``command`` reproduces output files byte for byte; it is logged to stderr
    instead.
    """

    subcommand: str
    version: str
    timestamp: str
    parameters: tuple[tuple[str, str], ...]
    command: str

    def comment_lines(self) -> list[str]:
        lines = [f"# bdbounds {self.version} {self.subcommand}",
                 f"# command: {self.command}"]
        lines += [f"# {key}: {value}" for key, value in self.parameters]
        return lines


def _make_manifest(subcommand: str, params: list[tuple[str, str]],
                   command: str) -> RunManifest:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    print(f"bdbounds {subcommand}: started {stamp}", file=sys.stderr)
    return RunManifest(subcommand=subcommand, version=__version__,
                       timestamp=stamp, parameters=tuple(params),
                       command=command)


def _emit(out, manifest: RunManifest, header: str, rows: list[str],
          trailer: list[str] | None = None) -> None:
    for line in manifest.comment_lines():
        print(line, file=out)
    print(header, file=out)
    for row in rows:
        print(row, file=out)
    for line in trailer or []:
        print(line, file=out)


def _channel(args, rc: ResolvedCode) -> ChannelParams:
    if args.ebn0_db is None:
        raise UsageError("--ebn0-db is required")
    return ChannelParams(ebn0_db=args.ebn0_db, rate=rc.rate, n=rc.n)


def _quad_spec(args) -> QuadratureSpec:
    if args.rel_tol is None:
        return DEFAULT_QUADRATURE
    if not args.rel_tol > 0:
        raise UsageError(f"--rel-tol must be > 0, got {args.rel_tol}")
    return QuadratureSpec(rel_tol=args.rel_tol)


def _threads(args) -> int:
    if args.threads == "auto":
        return os.cpu_count() or 1
    try:
        t = int(args.threads)
    except ValueError:
        raise UsageError(f"--threads must be an integer or 'auto', "
                         f"got {args.threads!r}") from None
    if t < 1:
        raise UsageError(f"--threads must be >= 1, got {t}")
    return t


def _base_params(args, rc: ResolvedCode, radii_desc: str,
                 quad: QuadratureSpec) -> list[tuple[str, str]]:
    params = [("code", rc.label),
              ("n", str(rc.n)),
              ("k", "unknown" if rc.k is None else str(rc.k)),
              ("d_min", str(rc.d_min)),
              ("ebn0_db", _g(args.ebn0_db)),
              ("radii", radii_desc),
              ("rel_tol", _g(quad.rel_tol))]
    if rc.weight_enum.truncated:
        params.append(("truncated-enumerator", "true"))
    return params


def _command_line(sub: str, args, rc: ResolvedCode, radii_flag: str,
                  extra: str = "") -> str:
    cmd = f"bdbounds {sub} --code {rc.label} --ebn0-db {_g(args.ebn0_db)} {radii_flag}"
    rel_tol = getattr(args, "rel_tol", None)
    if rel_tol is not None:
        cmd += f" --rel-tol {_g(rel_tol)}"
    if extra:
        cmd += " " + extra
    return cmd


def cmd_bounds(args, out) -> int:
    rc = _resolve_code(args.code)
    ch = _channel(args, rc)
    quad = _quad_spec(args)
    radii, radii_flag = _resolve_radii(args, rc)
    manifest = _make_manifest(
        "bounds", _base_params(args, rc, radii_flag, quad),
        _command_line("bounds", args, rc, radii_flag))
    result = sweep(ch, rc.weight_enum, radii, quad)
    rows = [",".join([_g(r.r_d), _g(r.p_tot_gt), _g(r.p_u_lt), _g(r.p_u_gt),
                      _g(r.p_w), _g(r.p_u)]) for r in result.rows]
    _emit(out, manifest, BOUNDS_HEADER, rows)
    if result.failures:
        for f in result.failures:
            print(f"bdbounds bounds: numeric failure at r_d = {f.r_d:g}: "
                  f"{f.error}", file=sys.stderr)
        return 3
    return 0


def _require_simulatable(rc: ResolvedCode) -> LinearCode:
    if rc.code is None or rc.code.codewords is None:
        raise CapacityError(
            f"code source {rc.label!r} has no codeword list (enumerator "
            f"only); simulation needs a generator-mode code with k <= 24")
    return rc.code


def _sim_row(r_d: float, res) -> str:
    return ",".join([
        _g(r_d), str(res.trials), str(res.correct), str(res.undetected),
        str(res.failure), _g(res.p_c), _g(res.p_u), _g(res.p_f), _g(res.p_w),
        _g(res.ci_halfwidths["p_u"]), _g(res.ci_halfwidths["p_w"])])


def cmd_simulate(args, out) -> int:
    rc = _resolve_code(args.code)
    code = _require_simulatable(rc)
    ch = _channel(args, rc)
    radii, radii_flag = _resolve_radii(args, rc)
    threads = _threads(args)
    params = [("code", rc.label), ("n", str(rc.n)), ("k", str(rc.k)),
              ("d_min", str(rc.d_min)), ("ebn0_db", _g(args.ebn0_db)),
              ("radii", radii_flag), ("trials", str(args.trials)),
              ("seed", str(args.seed)), ("threads", str(threads))]
    extra = f"--trials {args.trials} --seed {args.seed} --threads {threads}"
    manifest = _make_manifest(
        "simulate", params,
        _command_line("simulate", args, rc, radii_flag, extra))
    rows = []
    for r_d in radii:
        cfg = SimConfig(code=code, channel=ch, r_d=r_d, trials=args.trials,
                        seed=args.seed)
        rows.append(_sim_row(r_d, run(cfg, threads=threads)))
    _emit(out, manifest, SIM_HEADER, rows)
    return 0


def cmd_compare(args, out) -> int:
    rc = _resolve_code(args.code)
    code = _require_simulatable(rc)
    ch = _channel(args, rc)
    quad = _quad_spec(args)
    radii, radii_flag = _resolve_radii(args, rc)
    threads = _threads(args)
    params = _base_params(args, rc, radii_flag, quad)
    params += [("trials", str(args.trials)), ("seed", str(args.seed)),
               ("threads", str(threads)),
               ("violation_rule", f"simulated > bound + {VIOLATION_Z:g} SE; "
                                  f"p_tot_gt two-sided |z| > {VIOLATION_Z:g}")]
    extra = f"--trials {args.trials} --seed {args.seed} --threads {threads}"
    manifest = _make_manifest(
        "compare", params,
        _command_line("compare", args, rc, radii_flag, extra))
    rows = []
    violations = 0
    for r_d in radii:
        row = compose(r_d, ch, rc.weight_enum, quad)
        cfg = SimConfig(code=code, channel=ch, r_d=r_d, trials=args.trials,
                        seed=args.seed)
        res = run(cfg, threads=threads)
        radius = failure_rate_check(cfg, threads=threads)
        flags = []
        if res.p_w > row.p_w + VIOLATION_Z * res.standard_error("p_w"):
            flags.append("p_w")
        if res.p_u > row.p_u + VIOLATION_Z * res.standard_error("p_u"):
            flags.append("p_u")
        if abs(radius.z) > VIOLATION_Z:
            flags.append("p_tot")
        if flags:
            violations += 1
        rows.append(",".join([
            _g(r_d), _g(row.p_tot_gt), _g(row.p_u_lt), _g(row.p_u_gt),
            _g(row.p_w), _g(row.p_u),
            str(res.trials), str(res.correct), str(res.undetected),
            str(res.failure), _g(res.p_c), _g(res.p_u), _g(res.p_f),
            _g(res.p_w), _g(res.ci_halfwidths["p_u"]),
            _g(res.ci_halfwidths["p_w"]),
            str(radius.exceed), _g(radius.simulated), _g(radius.z),
            "+".join(flags)]))
    trailer = [f"# violations: {violations} of {len(radii)} points"]
    _emit(out, manifest, COMPARE_HEADER, rows, trailer)
    return 0


def cmd_codeinfo(args, out) -> int:
    rc = _resolve_code(args.code)
    we = rc.weight_enum
    print(f"code: {rc.label}", file=out)
    print(f"n: {rc.n}", file=out)
    print(f"k: {'unknown' if rc.k is None else rc.k}", file=out)
    print(f"d_min: {we.d_min}", file=out)
    if we.truncated:
        print("truncated: true", file=out)
        known = ", ".join(f"{w}:{we.coefficient(w)}"
                          for w in sorted(we.coeffs))
        print(f"A_w (known): {known}", file=out)
    else:
        print(f"A_w: {','.join(str(c) for c in we.as_list())}", file=out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdbounds",
        description="Bounded-distance decoder performance: error-rate bounds "
                    "and exact Monte Carlo simulation on the AWGN channel.")
    parser.add_argument("--version", action="version",
                        version=f"bdbounds {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, radius_required: bool):
        p.add_argument("--code", required=True,
                       help="builtin:hamming84 | builtin:ldpc128 | path to a "
                            "code file")
        p.add_argument("--output", default=None,
                       help="write CSV here instead of stdout")
        g = p.add_mutually_exclusive_group(required=radius_required)
        g.add_argument("--rd", type=float, default=None,
                       help="single decoding radius (absolute units)")
        g.add_argument("--rd-grid", default=None, metavar="LO:HI:COUNT",
                       help="inclusive linear radius grid (absolute units)")
        g.add_argument("--rd-norm", type=float, default=None,
                       help="single radius as a multiple of sqrt(n)")
        g.add_argument("--rd-norm-grid", default=None, metavar="LO:HI:COUNT",
                       help="radius grid as multiples of sqrt(n)")

    p_bounds = sub.add_parser("bounds", help="bound sweep to CSV")
    add_common(p_bounds, radius_required=False)
    p_bounds.add_argument("--ebn0-db", type=float, required=True)
    p_bounds.add_argument("--rel-tol", type=float, default=None,
                          help="quadrature relative tolerance override")
    p_bounds.set_defaults(func=cmd_bounds, default_grid_ok=True)

    p_sim = sub.add_parser("simulate", help="Monte Carlo BD decoding to CSV")
    add_common(p_sim, radius_required=True)
    p_sim.add_argument("--ebn0-db", type=float, required=True)
    p_sim.add_argument("--trials", type=int, default=10_000_000)
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--threads", default="1",
                       help="worker threads (int or 'auto'); results do not "
                            "depend on this")
    p_sim.set_defaults(func=cmd_simulate)

    p_cmp = sub.add_parser("compare",
                           help="bounds and simulation side by side, with "
                                "violation flags")
    add_common(p_cmp, radius_required=True)
    p_cmp.add_argument("--ebn0-db", type=float, required=True)
    p_cmp.add_argument("--rel-tol", type=float, default=None)
    p_cmp.add_argument("--trials", type=int, default=1_000_000)
    p_cmp.add_argument("--seed", type=int, default=1)
    p_cmp.add_argument("--threads", default="1")
    p_cmp.set_defaults(func=cmd_compare)

    p_info = sub.add_parser("codeinfo",
                            help="print n, k, d_min, and weight enumerator")
    p_info.add_argument("--code", required=True)
    p_info.add_argument("--output", default=None)
    p_info.set_defaults(func=cmd_codeinfo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand in ("simulate", "compare"):
            if args.trials < 1:
                raise UsageError(f"--trials must be >= 1, got {args.trials}")
            if not 0 <= args.seed < 1 << 64:
                raise UsageError(f"--seed must fit in 64 bits, got {args.seed}")
        if args.output is not None:
            with open(args.output, "w", encoding="utf-8", newline="\n") as out:
                return args.func(args, out)
        return args.func(args, sys.stdout)
    except (UsageError, CodeFileError) as exc:
        print(f"bdbounds: error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, DomainError) as exc:
        print(f"bdbounds: numeric failure: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"bdbounds: capacity error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
