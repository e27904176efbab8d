"""Spectral P_N moment solver for the one-dimensional linear kinetic equation
in the diffusive scaling, with extended-precision arithmetic, convergence
tables and numeric evaluators for the theoretical error bounds."""

from .bigfloat import DOUBLE, Arithmetic, ExtendedComplex, ExtendedReal, extended
from .initial_conditions import InitialCondition, fourier_coefficients
from .moment_system import ModelConfig, SpectralState, assemble_generator, project_isotropic
from .propagator import evolve, expm
from .solver import Study

__all__ = [
    "DOUBLE", "Arithmetic", "ExtendedComplex", "ExtendedReal", "extended",
    "InitialCondition", "fourier_coefficients",
    "ModelConfig", "SpectralState", "assemble_generator", "project_isotropic",
    "evolve", "expm", "Study",
]
