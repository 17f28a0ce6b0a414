"""Finite experiments around Mobius/Liouville self-correlations, exponential
sums, Gowers norms and weighted ergodic averages on torus systems."""

__version__ = "0.1.0"

from .correlation import (
    BoundChainRecord,
    CesaroReport,
    ChowlaSpec,
    CorrelationTable,
    GeometricScan,
    bound_chain,
    cesaro_abs_mean,
    chowla_sum,
    cubic_average,
    cubic_average_naive,
    fft_correlate,
    geometric_scan,
    mrt_window_sum,
    mrt_window_sum_naive,
    naive_correlate,
)
from .dynamics import (
    AffineSkew,
    KbszReport,
    Observable,
    TorusRotation,
    cubic_weighted_average,
    kbsz_quantity,
    orbit_value,
    vdc_check,
    weighted_birkhoff,
    ww_sup,
)
from .gowers import GowersResult, gowers_norm
from .runner import VerifyReport, get_sequence, verify
from .sieve import (
    ArithSequence,
    SieveConfig,
    brute_force_oracle,
    dirichlet_partial,
    load_cache,
    mertens,
    save_cache,
    sieve_kind,
    sieve_liouville,
    sieve_mobius,
    sieve_omega,
    squarefree_density,
)
from .spectral import (
    DecayRow,
    PhaseProfile,
    certify_sup,
    certify_sup_auto,
    decay_scan,
    phase_profile,
    quad_phase_sum,
)
