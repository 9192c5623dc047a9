"""Finite population L-statistics: decomposition kernels, Edgeworth expansion,
and reproducible without-replacement Monte Carlo."""

from fplstat._core import (  # noqa: F401
    EdgeworthModel,
    EmpiricalCdf,
    KernelSet,
    Population,
    SmoothnessReport,
    WeightScheme,
    GENERATOR_VERSION,
    SEED_TAG_POPULATION,
    SEED_TAG_SIGMA,
    SEED_TAG_SIMULATION,
    build_model,
    charfn_sup,
    derive_seed,
    draw_sample,
    expected_L,
    expected_spacing_given,
    h_oracle,
    hypergeom_pmf,
    kappa_moment,
    kernels_from_h,
    l_statistic,
    linear_moments,
    normal_cdf,
    normal_quantile,
    sigma_tilde,
    simulate_cdf,
)

__all__ = [name for name in dir() if not name.startswith("_")]
