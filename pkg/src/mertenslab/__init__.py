"""Möbius and Mertens function data, their frequency statistics, and a random-walk model of M(n)."""

from .arith import (BoundsError, CacheFormatError, MertensSeries, MobiusTable, OmegaTable,
                    SquarefreeCount, mertens_series, mobius_oracle, read_table, sieve_both,
                    sieve_mobius, sieve_omega, squarefree_count, write_table)
from .bench import (BoundVerdict, GrowthReport, freq_gap_curve, growth_report, mertens_bound_check,
                    model_vs_actual, running_sups)
from .empirical import (P_LIMIT, SQUAREFREE_DENSITY, EmpiricalCDF, FrequencyTriple, LimitCDF,
                        MomentSummary, cdf_sup_distance, density_identity, empirical_cdf,
                        frequencies, limit_cdf_eval, moments, nu_residuals)
from .omega import (OmegaHistogram, erdos_kac_check, k_max, landau_frequency, omega_histogram,
                    parity_symmetry, poisson_comparison)
from .walk import (Ensemble, KSResult, StepDistribution, WalkPath, asymptotic_step_dist, clt_check,
                   empirical_step_dist, ks_distance, lil_statistic, monte_carlo, simulate_path,
                   standard_normal_cdf)

__version__ = "0.1.0"
