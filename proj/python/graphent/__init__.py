"""Graphene-plasmon mediated two-qubit entanglement simulator."""

from ._graphent import (
    VF,
    DynamicsParams,
    Environment,
    GraphentError,
    GrapheneParams,
    InvalidInput,
    concurrence,
    couplings,
    doppler_conductivity,
    evolve,
    gzz,
    initial_state,
    local_conductivity,
    normalization_wavelength,
    run_sweep,
    scattered_gzz,
    sigma_min,
    solve_spp,
    spp_wavelength,
    steady_state,
    thz_to_omega,
    vacuum_wavelength,
)

__all__ = [
    "VF",
    "DynamicsParams",
    "Environment",
    "GraphentError",
    "GrapheneParams",
    "InvalidInput",
    "concurrence",
    "couplings",
    "doppler_conductivity",
    "evolve",
    "gzz",
    "initial_state",
    "local_conductivity",
    "normalization_wavelength",
    "run_sweep",
    "scattered_gzz",
    "sigma_min",
    "solve_spp",
    "spp_wavelength",
    "steady_state",
    "thz_to_omega",
    "vacuum_wavelength",
]
