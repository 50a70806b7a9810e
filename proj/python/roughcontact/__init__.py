"""Thin-gap test field, drag and quasi-static fall numerics."""

from ._core import (
    CrossCheckError,
    DegenerateInputError,
    DomainError,
    QuadratureError,
    RoughProfile,
    StepUnderflowError,
    bmo_catalog,
    collision_regime,
    contact_time_closed_form,
    drag_coefficient,
    gamma,
    lemma10_classify,
    lemma10_integral,
    pressure,
    prop8_suite,
    simulate_power_law_fall,
    stokes_residual,
    velocity,
    velocity_gradient,
)

__all__ = [
    "CrossCheckError",
    "DegenerateInputError",
    "DomainError",
    "QuadratureError",
    "RoughProfile",
    "StepUnderflowError",
    "bmo_catalog",
    "collision_regime",
    "contact_time_closed_form",
    "drag_coefficient",
    "gamma",
    "lemma10_classify",
    "lemma10_integral",
    "pressure",
    "prop8_suite",
    "simulate_power_law_fall",
    "stokes_residual",
    "velocity",
    "velocity_gradient",
]
