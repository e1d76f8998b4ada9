"""Performance of bounded-distance decoding on the AWGN channel: upper
bounds on the word and undetected error rates, plus an exact Monte Carlo
simulator to validate them against."""

__version__ = "0.1.0"

from .bounds import (
    BoundsRow,
    ChannelParams,
    SweepResult,
    compose,
    ml_union_bound,
    p_tot_gt,
    p_u_gt_bound,
    p_u_lt_bound,
    sweep,
)
from .codes import (
    CapacityError,
    CodeFileError,
    GeneratorMatrix,
    LinearCode,
    RankDeficientError,
    WeightEnumerator,
    bpsk_modulate,
    builtin_extended_hamming_8_4,
    builtin_ldpc_128_64_weight_enum,
    enumerate_codewords,
    load_code_file,
    parse_code_text,
    weight_enumerator,
)
from .sim import (
    RadiusCheck,
    SimConfig,
    SimResult,
    bd_decode,
    confidence_interval,
    failure_rate_check,
    run,
    wilson_interval,
)
from .specfun import (
    DomainError,
    QuadratureError,
    QuadratureSpec,
    QuadResult,
    cap_area_fraction,
    chi_cdf,
    chi_pdf,
    chi_tail_cutoff,
    gaussian_q,
    integrate,
    radial_density,
    reg_gamma_q,
    reg_inc_beta,
    sphere_surface_area,
)

__all__ = [
    "__version__",
    # specfun
    "DomainError", "QuadratureError", "QuadratureSpec", "QuadResult",
    "sphere_surface_area", "reg_inc_beta", "cap_area_fraction", "reg_gamma_q",
    "chi_pdf", "chi_cdf", "radial_density", "gaussian_q", "chi_tail_cutoff",
    "integrate",
    # codes
    "CapacityError", "CodeFileError", "RankDeficientError",
    "GeneratorMatrix", "WeightEnumerator", "LinearCode",
    "enumerate_codewords", "weight_enumerator", "bpsk_modulate",
    "builtin_extended_hamming_8_4", "builtin_ldpc_128_64_weight_enum",
    "parse_code_text", "load_code_file",
    # bounds
    "ChannelParams", "BoundsRow", "SweepResult",
    "p_tot_gt", "p_u_lt_bound", "p_u_gt_bound", "compose", "sweep",
    "ml_union_bound",
    # sim
    "SimConfig", "SimResult", "RadiusCheck",
    "bd_decode", "run", "failure_rate_check",
    "confidence_interval", "wilson_interval",
]
