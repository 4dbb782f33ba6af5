"""Boussinesq water-wave solver with an absorbing sponge layer."""

from ._core import (
    BlowUpError,
    ConfigError,
    Grid,
    NewtonDivergence,
    SingularJacobian,
    Snapshot,
    SnapshotFormatError,
    antiderivative,
    damped_wave_exact,
    damped_wave_gaussian,
    derivative,
    evolve,
    kdv_initial_guess,
    read_snapshot,
    relative_error,
    run_scenario,
    solve_stationary,
    sponge_profile,
    to_physical,
    to_spectral,
)

__all__ = [
    "BlowUpError",
    "ConfigError",
    "Grid",
    "NewtonDivergence",
    "SingularJacobian",
    "Snapshot",
    "SnapshotFormatError",
    "antiderivative",
    "damped_wave_exact",
    "damped_wave_gaussian",
    "derivative",
    "evolve",
    "kdv_initial_guess",
    "read_snapshot",
    "relative_error",
    "run_scenario",
    "solve_stationary",
    "sponge_profile",
    "to_physical",
    "to_spectral",
]
