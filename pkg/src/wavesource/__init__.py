"""Recovery of a spacewise wave-equation source from its boundary trace."""

from .forward import boundary_trace, derivative_trace, second_derivative_trace
from .inverse import Reconstruction, SolverError, error_bound, rel_error, select_cutoff, solve
from .model import (
    Box,
    Fourier,
    GaussianMix,
    Hat,
    PhysicalConfig,
    Pulse,
    QuadraticPulse,
    Signal,
    background_field,
    effective_source,
    pulse_eval,
    pulse_make,
    source_eval,
    three_gaussians,
    two_gaussians,
)
from .noiselab import NoiseSpec, perturb
from .spectral import Basis, GramSystem, Kernels, assemble, basis_eval, kernel_functions, project, synthesize
from .volterra import differentiate_twice, volterra_solve

__version__ = "0.1.0"
