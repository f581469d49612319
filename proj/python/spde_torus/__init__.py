"""Pseudo-spectral simulator for semilinear stochastic PDEs on the torus."""

from ._core import (  # noqa: F401
    EllipticOperator,
    GridField,
    ScalarFunction,
    SmoothingCheck,
    SpectralField,
    WienerPath,
    apply_fractional_power,
    apply_semigroup,
    chain_rule_eval,
    derivative,
    faa_di_bruno_constants,
    forward_transform,
    forward_transform_values,
    fractional_sobolev_norm,
    gamma_norm_closed_simple,
    gamma_norm_mc_simple,
    gaussian_moment_constant,
    holder_norm,
    lp_norm,
    moser_ratio,
    run_moments_json,
    scaling_study_json,
    smoothing_bound_check,
    sobolev_norm,
    suite_random_field,
    sup_norm,
    to_grid,
    verify_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
