"""Potentials, fields, Gauss/Poisson oracles and force densities.

Gaussian units with e = 1: a density n counts electrons, so its charge
density is rho = -n, Poisson reads lap(phi) = -4 pi rho, and the radial
field of a spherical distribution is q(r) / r^2 with q the enclosed
charge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun
from .densities import Constants, density, integrate_shell
from .errors import DomainError
from .radialft import QuadratureSpec

__all__ = [
    "FieldSample",
    "ForceDensitySample",
    "potential",
    "field",
    "field_sample",
    "vp_field_struve_form",
    "gauss_enclosed_charge",
    "poisson_residual",
    "force_density",
    "exchange_energy_density_integral",
]

_PI = math.pi
_TWO_OVER_PI = 2.0 / math.pi
_EXP_LIMIT = 745.0
_VP_FAR = 40.0

POTENTIAL_SOURCES = ("hole", "electron")
FIELD_SOURCES = ("hole", "electron", "reference", "vacuum_polarization")
RHO_SOURCES = ("hole", "electron", "vacuum_polarization")


@dataclass(frozen=True)
class FieldSample:
    r: float
    potential: float
    field_radial: float


@dataclass(frozen=True)
class ForceDensitySample:
    r: float
    value: float
    rho_source: str
    field_source: str


def _check_r(r):
    r = float(r)
    if not r > 0.0 or not math.isfinite(r):
        raise DomainError(f"r must be positive and finite, got {r!r}")
    return r


def _one_minus_one_plus_r_exp(r):
    """1 - (1 + r) exp(-r) without cancellation at small r."""
    if r < 0.1:
        # sum_{k>=2} (-1)^k (k-1) r^k / k!
        total = 0.0
        term = r
        for k in range(2, 20):
            term *= r / k
            total += (-1) ** k * (k - 1) * term
        return total
    return -math.expm1(-r) - r * math.exp(-r)


def potential(source: str, r: float) -> float:
    r = _check_r(r)
    if source == "hole":
        return specfun.kl_parts(r).s
    if source == "electron":
        return math.expm1(-r) / r
    raise DomainError(f"unknown potential source {source!r}")


def _potential_deficit(source, r):
    """r * potential(r) minus its limit at infinity, free of cancellation."""
    if source == "hole":
        p = specfun.kl_parts(r)
        return -p.deficit_scaled * math.exp(-r) if r < _EXP_LIMIT else 0.0
    return math.exp(-r)


def _vp_bracket(z):
    p = specfun.kl_parts(z)
    return (-z * p.deficit_scaled
            - _TWO_OVER_PI * p.k0_scaled * (1.0 - 6.0 / (z * z))
            + _TWO_OVER_PI * p.k1_scaled * (z + 1.0 / z))


def vp_field_struve_form(r: float, c: Constants | None = None) -> float:
    """The closed Struve-form vacuum-polarization field, taken verbatim.

    Its sign is opposite to the Gauss-law field of the vacuum-polarization
    density; :func:`field` returns the Gauss-consistent sign.
    """
    r = _check_r(r)
    c = c or Constants()
    z = 2.0 * r
    if z > _EXP_LIMIT:
        return 0.0
    return 2.0 * c.alpha / 9.0 * _vp_bracket(z) * math.exp(-z)


def field(source: str, r: float, c: Constants | None = None) -> float:
    """Radial electric field in units e / lambda_C^2."""
    r = _check_r(r)
    if source == "reference":
        return -1.0 / (r * r)
    if source == "electron":
        return -_one_minus_one_plus_r_exp(r) / (r * r)
    if source == "hole":
        p = specfun.kl_parts(r)
        k0 = p.k0_scaled * math.exp(-r) if r < _EXP_LIMIT else 0.0
        return (p.s - _TWO_OVER_PI * k0) / r
    if source == "vacuum_polarization":
        return -vp_field_struve_form(r, c)
    raise DomainError(f"unknown field source {source!r}")


def field_sample(source: str, r: float, c: Constants | None = None) -> FieldSample:
    return FieldSample(r, potential(source, r), field(source, r, c))


def gauss_enclosed_charge(kind, r: float, spec: QuadratureSpec | None = None,
                          c: Constants | None = None) -> float:
    """Charge inside radius r, q(r) = -int_0^r shell dr' (units e).

    The vacuum-polarization shell is not integrable at the origin; its
    distribution is neutral overall, so q(r) = +int_r^inf shell dr' is
    used instead.
    """
    r = _check_r(r)
    tag = str(kind)
    if tag == "vacuum_polarization":
        if r >= _VP_FAR:
            return 0.0
        return integrate_shell(tag, r, _VP_FAR, c, spec)
    return -integrate_shell(tag, 0.0, r, c, spec)


def poisson_residual(source: str, r: float) -> float:
    """r^-1 (r phi)'' + 4 pi rho with a 5-point stencil, h = 1e-3 r.

    The stencil is applied to r phi minus its constant limit, which has
    the same second derivative and no cancellation at large r.
    """
    r = _check_r(r)
    if source not in POTENTIAL_SOURCES:
        raise DomainError(f"unknown potential source {source!r}")
    if not 0.05 <= r <= 20.0:
        raise DomainError("the Poisson stencil is calibrated for r in [0.05, 20]")
    h = 1e-3 * r
    f = lambda x: _potential_deficit(source, x)
    d2 = (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) / (12 * h * h)
    rho = -density(source, r).density
    return d2 / r + 4.0 * _PI * rho


def force_density(rho_source: str, field_source: str, r: float,
                  c: Constants | None = None) -> ForceDensitySample:
    """4 pi r^2 rho(r) E(r) with rho = -n the charge density of the source."""
    r = _check_r(r)
    if rho_source not in RHO_SOURCES:
        raise DomainError(f"unknown charge source {rho_source!r}")
    c = c or Constants()
    sh = density(rho_source, r, c).shell
    return ForceDensitySample(r, -sh * field(field_source, r, c), rho_source, field_source)


def exchange_energy_density_integral(r: float, spec: QuadratureSpec | None = None) -> float:
    """int n_hole(r') / |r - r'| d^3r' by the shell theorem."""
    r = _check_r(r)
    inner = integrate_shell("hole", 0.0, r, None, spec) / r
    outer = 0.0
    if r < 80.0:
        outer = integrate_shell("hole", r, 80.0, None, spec, weight_power=-1)
    return inner + outer
