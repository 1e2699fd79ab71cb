"""Numerical lab for the exchange hole of the Dirac sea."""

from ._backend import BACKEND
from .densities import Constants, DensityKind, density, mean_radius, shell, sum_rule
from .errors import DomainError, DxseaError, NonConvergence, OscillatoryIntegral, RootNotBracketed
from .fields import field, force_density, potential
from .radialft import MomentumProfile, QuadratureSpec, inverse_ft_gradient_radial, inverse_ft_radial
from .specfun import bessel_k, ki1, struve_l

__all__ = [
    "BACKEND", "Constants", "DensityKind", "density", "mean_radius", "shell", "sum_rule",
    "DomainError", "DxseaError", "NonConvergence", "OscillatoryIntegral", "RootNotBracketed",
    "field", "force_density", "potential", "MomentumProfile", "QuadratureSpec",
    "inverse_ft_gradient_radial", "inverse_ft_radial", "bessel_k", "ki1", "struve_l",
]
