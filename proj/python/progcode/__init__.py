"""Progressive-expansion analog codec for few-shot AWGN transmission.

Exact quantities (digits aside) are returned as fractions.Fraction.
"""

from ._core import (
    SweepPoint,
    __version__,
    achievable_mse_bound,
    compute_ell,
    compute_gamma,
    decode,
    encode,
    expand,
    format_csv,
    opta_mse,
    opta_sdr,
    prop1_tail,
    reconstruct,
    run_sweep,
    run_trial,
    symbol_moments,
)

__all__ = [
    "SweepPoint",
    "__version__",
    "achievable_mse_bound",
    "compute_ell",
    "compute_gamma",
    "decode",
    "encode",
    "expand",
    "format_csv",
    "opta_mse",
    "opta_sdr",
    "prop1_tail",
    "reconstruct",
    "run_sweep",
    "run_trial",
    "symbol_moments",
]
