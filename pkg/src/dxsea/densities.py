"""Radial densities of the exchange hole, the exchange electron and relatives.

Radii are in units of the reduced Compton wavelength.  Fermi-sea kinds
use the same radius and the dimensionless ``z = p_F * r``; with the
default ``p_F = 1`` the two coincide.  A density ``n`` is an electron
count per volume; its shell density ``4 pi r^2 n`` integrates over r to
an electron count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import specfun
from .errors import DomainError, NonConvergence, OscillatoryIntegral, RootNotBracketed
from .quadrature import gauss_kronrod
from .radialft import MomentumProfile, QuadratureSpec, inverse_ft_gradient_radial, inverse_ft_radial

__all__ = [
    "ALPHA_CODATA",
    "Constants",
    "DensityKind",
    "RadialSample",
    "TriangleGeometry",
    "PartialSum",
    "density",
    "shell",
    "sum_rule",
    "integrate_shell",
    "mean_radius",
    "partial_sum_series",
    "fermi_f",
    "fermi_partial_sum",
    "half_height_radius",
    "three_fermion_single_exchange",
    "three_fermion_double_exchange",
    "three_fermion_oracle",
    "fermi_three_correlation",
    "exciton_geometry",
]

ALPHA_CODATA = 7.2973525693e-3
_PI = math.pi
_SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_PI = 2.0 / math.pi
_EXP_LIMIT = 745.0


@dataclass(frozen=True)
class Constants:
    alpha: float = ALPHA_CODATA
    p_fermi: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not self.p_fermi > 0.0:
            raise DomainError(f"p_fermi must be positive, got {self.p_fermi!r}")


_PLAIN_TAGS = (
    "hole",
    "electron",
    "infinite_sum_approx",
    "infinite_sum_numeric",
    "fermi_density_matrix",
    "fermi_hole",
    "vacuum_polarization",
)
_ORDERED_TAGS = ("hole_n", "electron_n")


@dataclass(frozen=True)
class DensityKind:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag in _ORDERED_TAGS:
            if not isinstance(self.n, (int, np.integer)) or self.n < 1:
                raise DomainError(f"{self.tag} needs an order n >= 1, got {self.n!r}")
        elif self.tag in _PLAIN_TAGS:
            if self.n is not None:
                raise DomainError(f"{self.tag} takes no order")
        else:
            raise DomainError(f"unknown density kind {self.tag!r}")

    @classmethod
    def parse(cls, text: str) -> "DensityKind":
        """Accept ``hole``, ``hole_n:3``, ``electron_n:2`` and so on."""
        tag, _, order = text.partition(":")
        return cls(tag, int(order)) if order else cls(tag)

    @property
    def is_fermi(self) -> bool:
        return self.tag.startswith("fermi")

    def __str__(self):
        return f"{self.tag}:{self.n}" if self.n is not None else self.tag


def _kind(k) -> DensityKind:
    if isinstance(k, DensityKind):
        return k
    if isinstance(k, str):
        return DensityKind.parse(k)
    return DensityKind(*k)


@dataclass(frozen=True)
class RadialSample:
    r: float
    density: float
    shell: float


def _sample(r, dens):
    return RadialSample(r, dens, 4.0 * _PI * r * r * dens)


def _sample_from_shell(r, sh):
    return RadialSample(r, sh / (4.0 * _PI * r * r), sh)


def fermi_f(z: float) -> float:
    """3 (sin z - z cos z) / z^3, equal to 1 at z = 0."""
    z = abs(float(z))
    if z < 0.5:
        z2 = z * z
        term = 1.0
        total = 0.0
        for m in range(12):
            # 3 (-1)^m z^{2m} (2m+2) / (2m+3)!
            total += term * 3.0 * (2 * m + 2) / math.factorial(2 * m + 3)
            term *= -z2
        return total
    return 3.0 * (math.sin(z) - z * math.cos(z)) / z**3


def _scaled_hierarchy(z, nu_target, half):
    """exp(z) * A_nu with A_nu = z^(nu+2) K_nu(z) / (2^nu Gamma(nu + 3/2)).

    Upward recurrence
        A_{nu+1} = nu/(nu+3/2) A_nu + z^2 / (4 (nu+3/2)(nu+1/2)) A_{nu-1},
    which never forms the large powers and factorials separately.
    """
    if half:
        nu = 0.5
        a_prev = _SQRT_PI * z  # A_{-1/2}
        a_cur = 0.5 * _SQRT_PI * z * z  # A_{1/2}
        if nu_target == -0.5:
            return a_prev
    else:
        k0s, k1s = specfun.kernels.k01_scaled(z)
        nu = 0.0
        a_prev = 2.0 * z * k1s / _SQRT_PI  # A_{-1}
        a_cur = 2.0 * z * z * k0s / _SQRT_PI  # A_0
        if nu_target == -1.0:
            return a_prev
    z2 = z * z
    while nu < nu_target:
        a_next = nu / (nu + 1.5) * a_cur + z2 / (4.0 * (nu + 1.5) * (nu + 0.5)) * a_prev
        a_prev, a_cur = a_cur, a_next
        nu += 1.0
    return a_cur


def _hierarchy_shell(n, r, electron):
    nu = n - 1.5 if electron else n - 2.0
    scaled = _scaled_hierarchy(r, nu, electron)
    if r > _EXP_LIMIT:
        return 0.0
    val = scaled * math.exp(-r) / _SQRT_PI
    return val if electron else -val


def _vp_density(r, alpha):
    z = 2.0 * r
    p = specfun.kl_parts(z)
    inner = p.deficit_scaled + _TWO_OVER_PI * (p.k0_scaled / z - p.k1_scaled * (1.0 - 2.0 / (z * z)))
    if z > _EXP_LIMIT:
        return 0.0
    return -alpha / (3.0 * _PI) * inner * math.exp(-z)


def _check_r(r):
    r = float(r)
    if not r > 0.0 or not math.isfinite(r):
        raise DomainError(f"r must be positive and finite, got {r!r}")
    return r


def density(kind, r: float, c: Constants | None = None, spec: QuadratureSpec | None = None) -> RadialSample:
    """Density and shell density of ``kind`` at radius r."""
    kind = _kind(kind)
    r = _check_r(r)
    c = c or Constants()
    tag = kind.tag
    if tag == "hole":
        k1 = specfun.bessel_k(2, r).value
        return _sample(r, -k1 / (2.0 * _PI**2 * r))
    if tag == "electron":
        return _sample(r, math.exp(-r) / (4.0 * _PI * r))
    if tag == "hole_n":
        return _sample_from_shell(r, _hierarchy_shell(kind.n, r, electron=False))
    if tag == "electron_n":
        return _sample_from_shell(r, _hierarchy_shell(kind.n, r, electron=True))
    if tag == "infinite_sum_approx":
        return _sample_from_shell(r, -_TWO_OVER_PI * math.exp(-(4.0 / _PI) * r))
    if tag == "infinite_sum_numeric":
        prof = MomentumProfile.inverse_one_plus_energy()
        return _sample(r, -inverse_ft_radial(prof, r, spec))
    if tag == "fermi_density_matrix":
        z = c.p_fermi * r
        return _sample(r, -fermi_f(z) * c.p_fermi**3 / (6.0 * _PI**2))
    if tag == "fermi_hole":
        z = c.p_fermi * r
        return _sample(r, -fermi_f(z) ** 2 * c.p_fermi**3 / (6.0 * _PI**2))
    return _sample(r, _vp_density(r, c.alpha))


def shell(kind, r: float, c: Constants | None = None) -> float:
    return density(kind, r, c).shell


def _vector_shell(kind, c):
    def f(rs):
        return np.array([density(kind, float(x), c).shell for x in np.atleast_1d(rs)])
    return f


def integrate_shell(kind, a: float, b: float, c: Constants | None = None,
                    spec: QuadratureSpec | None = None, weight_power: int = 0) -> float:
    """Integral of r^weight_power * shell(r) over [a, b] by Gauss-Kronrod."""
    kind = _kind(kind)
    c = c or Constants()
    spec = spec or QuadratureSpec()
    base = _vector_shell(kind, c)
    f = base if weight_power == 0 else (lambda rs: np.asarray(rs) ** weight_power * base(rs))
    points = []
    if kind.is_fermi:
        k = math.ceil(a * c.p_fermi / _PI)
        points = [j * _PI / c.p_fermi for j in range(max(k, 1), int(b * c.p_fermi / _PI) + 1)]
    else:
        points = [x for x in (1e-4, 1e-2, 0.1, 1.0, 3.0, 10.0, 30.0) if a < x < b]
    val, _ = gauss_kronrod(f, a, b, rel_tol=min(spec.rel_tol, 1e-11), abs_tol=min(spec.abs_tol, 1e-14),
                           max_intervals=max(spec.max_panels, 4000), points=points)
    return val


def _far_radius(kind):
    if kind.tag in _ORDERED_TAGS:
        return 60.0 + 4.0 * kind.n
    return 60.0


def sum_rule(kind, c: Constants | None = None, spec: QuadratureSpec | None = None,
             method: str = "analytic") -> float:
    """Integral of the shell density over all r.

    For ``infinite_sum_numeric`` the default returns the momentum-space
    value at p = 0, -1/(1 + E(0)) = -1/2, which is the exact integral of a
    transform; ``method="quadrature"`` integrates the numeric transform in
    real space instead.
    """
    kind = _kind(kind)
    c = c or Constants()
    spec = spec or QuadratureSpec()
    tag = kind.tag
    if tag == "fermi_density_matrix":
        raise OscillatoryIntegral(
            "the density-matrix shell integral oscillates without a limit; use fermi_partial_sum"
        )
    if tag == "vacuum_polarization":
        raise NonConvergence("the vacuum-polarization shell diverges like 1/r at the origin")
    if tag == "infinite_sum_numeric" and method == "analytic":
        return float(-MomentumProfile.inverse_one_plus_energy()(np.array([0.0]))[0])
    if tag == "fermi_hole":
        # z-space integral to Z = k pi plus the averaged algebraic tail
        z_end = 64.0 * _PI
        body = integrate_shell(kind, 0.0, z_end / c.p_fermi, c, spec)
        return body - 3.0 / (_PI * z_end)
    eps = 1e-6
    far = _far_radius(kind)
    body = integrate_shell(kind, eps, far, c, spec)
    # near the origin every shell tends to a constant (or vanishes)
    head = eps * shell(kind, eps, c)
    if tag == "electron":
        tail = (1.0 + far) * math.exp(-far)
    elif tag == "infinite_sum_approx":
        tail = -0.5 * math.exp(-(4.0 / _PI) * far)
    else:
        tail = 0.0
    return body + head + tail


def mean_radius(kind, spec: QuadratureSpec | None = None) -> float:
    """Charge-weighted mean distance: int r shell dr / int shell dr.

    The hole shell is negative, so the plain first moment int r shell dr is
    -4/pi; dividing by the total charge gives the positive distance.
    """
    kind = _kind(kind)
    if kind.tag not in ("hole", "electron"):
        raise DomainError("mean_radius is defined for hole and electron")
    spec = spec or QuadratureSpec()
    c = Constants()
    moment = integrate_shell(kind, 1e-8, 80.0, c, spec, weight_power=1)
    total = sum_rule(kind, c, spec)
    return moment / total


class PartialSum(NamedTuple):
    hole_part: float
    electron_part: float
    total_shell: float


def partial_sum_series(max_order: int, r: float, *, with_dropped: bool = False):
    """Sums of hierarchy shells up to order N, ending on an exchange electron.

    Terms whose value underflows to zero are skipped; ``with_dropped``
    returns their count alongside the sums.
    """
    if not isinstance(max_order, (int, np.integer)) or max_order < 1:
        raise DomainError(f"max_order must be an integer >= 1, got {max_order!r}")
    r = _check_r(r)
    hole = 0.0
    elec = 0.0
    dropped = 0
    for n in range(1, max_order + 1):
        h = _hierarchy_shell(n, r, electron=False)
        e = _hierarchy_shell(n, r, electron=True)
        dropped += (h == 0.0) + (e == 0.0)
        hole += h
        elec += e
    out = PartialSum(hole, elec, hole + elec)
    return (out, dropped) if with_dropped else out


def fermi_partial_sum(R: float, c: Constants | None = None, spec: QuadratureSpec | None = None) -> float:
    """Integral of the density-matrix shell from 0 to R."""
    R = _check_r(R)
    return integrate_shell("fermi_density_matrix", 0.0, R, c, spec)


def _bisect(g, lo, hi, tol=1e-14, maxit=200):
    glo, ghi = g(lo), g(hi)
    if glo * ghi > 0:
        raise RootNotBracketed(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxit):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0 or hi - lo < tol:
            return mid
        if glo * gm < 0:
            hi, ghi = mid, gm
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


def half_height_radius(kind, c: Constants | None = None) -> float:
    """Radius where the density falls to half its contact value (in 1/p_F)."""
    kind = _kind(kind)
    c = c or Constants()
    if kind.tag == "fermi_hole":
        g = lambda z: fermi_f(z) ** 2 - 0.5
    elif kind.tag == "fermi_density_matrix":
        g = lambda z: fermi_f(z) - 0.5
    else:
        raise DomainError("half-height radius is defined for the Fermi kinds")
    return _bisect(g, 1e-9, _PI) / c.p_fermi


def _hole_ft(r):
    return specfun.bessel_k(2, r).value / (2.0 * _PI**2 * r)


def _grad_ft(r):
    return specfun.bessel_k(4, r).value / (2.0 * _PI**2 * r)


def three_fermion_single_exchange(r: float):
    """(-4 h(r)^2, -4 g(r)^2) with h the transform of 1/E and g its gradient."""
    r = _check_r(r)
    return -4.0 * _hole_ft(r) ** 2, -4.0 * _grad_ft(r) ** 2


def three_fermion_oracle(r: float, spec: QuadratureSpec | None = None):
    """Same two terms from the numeric radial transforms."""
    r = _check_r(r)
    prof = MomentumProfile.inverse_energy_power(1)
    h = inverse_ft_radial(prof, r, spec)
    g = inverse_ft_gradient_radial(prof, r, spec)
    return -4.0 * h * h, -4.0 * g * g


def three_fermion_double_exchange(r1: float, r2: float) -> float:
    r1 = _check_r(r1)
    r2 = _check_r(r2)
    return (_hole_ft(r1) * _hole_ft(r2) + _grad_ft(r1) * _grad_ft(r2)) / 3.0


def fermi_three_correlation(z1: float, z2: float, z3: float):
    """Bracket terms (A, B, C) of the Fermi-sea three-electron correlation."""
    for z in (z1, z2, z3):
        if not z >= 0.0:
            raise DomainError(f"separations must be non-negative, got {z!r}")
    f1, f2, f3 = fermi_f(z1), fermi_f(z2), fermi_f(z3)
    return 1.0, -(f1 * f1 + f2 * f2 + f3 * f3), f1 * f2 * f3


@dataclass(frozen=True)
class TriangleGeometry:
    bond_short: float
    bond_long: float
    apex_angle_deg: float
    positronium_ratio: float


def apex_angle(bond_short: float, bond_long: float) -> float:
    if not 0.0 < bond_long < 2.0 * bond_short:
        raise DomainError("bonds violate the triangle inequality")
    return math.degrees(2.0 * math.asin(bond_long / (2.0 * bond_short)))


def exciton_geometry(c: Constants | None = None) -> TriangleGeometry:
    """Triangle of reference electron, exchange hole and exchange electron.

    The short bonds are the mean hole radius 4/pi, the long bond the mean
    electron radius 2.  The positronium comparison divides the 5.5 Bohr
    radius e-/e+ bond by the rounded 1.3 Compton-wavelength bond.
    """
    c = c or Constants()
    short = 4.0 / _PI
    long_ = 2.0
    return TriangleGeometry(short, long_, apex_angle(short, long_), (5.5 / c.alpha) / 1.3)
