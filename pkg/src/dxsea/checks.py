"""Verification suites run by ``dxl check``.

Each suite returns a :class:`CheckReport`.  Numbers are compared against
closed forms, identities or independent quadratures built from this
package; the external-oracle comparisons live in the test-suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import densities as dn
from . import fields as fl
from . import spinor as sp
from .quadrature import gauss_kronrod
from .radialft import MomentumProfile, QuadratureSpec, inverse_ft_gradient_radial, inverse_ft_radial
from .specfun import bessel_k, ki1, kl_parts, struve_l

SUITES = ("specfun", "spinor", "fourier", "sumrules", "fields", "threebody")

_PI = math.pi


@dataclass
class Check:
    name: str
    computed: float
    expected: float
    tolerance: float
    passed: bool

    def as_dict(self):
        return {"name": self.name, "computed": self.computed, "expected": self.expected,
                "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class CheckReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, computed, expected, tolerance, *, relative=False):
        """Record |computed - expected| <= tolerance (scaled by |expected| if relative)."""
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check name {name!r}")
        tol = tolerance * abs(expected) if relative else tolerance
        computed = float(computed)
        ok = bool(math.isfinite(computed) and abs(computed - expected) <= tol)
        self.checks.append(Check(name, computed, float(expected), float(tol), ok))
        return ok

    def add_finding(self, name, deviation, threshold):
        """A confirmed discrepancy: passes when |deviation| exceeds threshold."""
        deviation = float(deviation)
        self.checks.append(Check(name, deviation, float(threshold), float(threshold),
                                 bool(abs(deviation) > threshold)))

    def to_dict(self):
        return {"suite": self.suite, "checks": [c.as_dict() for c in self.checks],
                "all_pass": self.all_pass}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _rel(a, b):
    return abs(a - b) / abs(b)


def suite_specfun() -> CheckReport:
    rep = CheckReport("specfun")
    rng = np.random.default_rng(7)
    worst = 0.0
    for z in rng.uniform(0.1, 30.0, 200):
        for n in (1, 2, 3):
            kp, k, km = (bessel_k(2 * m, z).value for m in (n + 1, n, n - 1))
            worst = max(worst, abs(kp - 2 * n / z * k - km) / kp)
    rep.add("k_recursion_max_rel", worst, 0.0, 1e-12)
    rep.add("k_half_closed_form", bessel_k(1, 2.0).value, math.sqrt(_PI / 4.0) * math.exp(-2.0), 1e-13,
            relative=True)
    quad = gauss_kronrod(lambda t: np.exp(-np.cosh(t)), 0.0, 40.0, rel_tol=1e-14, abs_tol=1e-300)[0]
    rep.add("k0_vs_integral_representation", bessel_k(0, 1.0).value, quad, 1e-13, relative=True)
    worst = 0.0
    for z in np.linspace(0.5, 10.0, 20):
        h = 1e-5 * z
        fd = (bessel_k(0, z + h).value - bessel_k(0, z - h).value) / (2 * h)
        worst = max(worst, _rel(fd, -bessel_k(2, z).value))
    rep.add("k0_derivative_is_minus_k1", worst, 0.0, 1e-6)
    rep.add("struve_l_minus1_minus_l1", struve_l(-1, 3.0).value - struve_l(1, 3.0).value, 2 / _PI, 1e-12)
    worst = 0.0
    for z in np.geomspace(0.1, 30.0, 40):
        lm2 = struve_l(-2, z).value
        rhs = -2 / z * struve_l(-1, z).value + struve_l(0, z).value + 2 / (_PI * z)
        worst = max(worst, abs(lm2 - rhs) / max(abs(lm2), 1e-300))
    rep.add("struve_recursion_max_rel", worst, 0.0, 1e-10)
    worst = 0.0
    for z in (0.0, 0.5, 1.0, 3.0, 8.0):
        upper = max(z + 60.0, 60.0)
        quad = gauss_kronrod(lambda y: np.array([bessel_k(0, float(v)).value for v in y]), z, upper,
                             rel_tol=1e-13, abs_tol=1e-16,
                             points=[x for x in (1e-6, 1e-3, 0.1, 1.0) if z < x])[0]
        worst = max(worst, abs(ki1(z).value - quad))
    rep.add("ki1_vs_quadrature_max_abs", worst, 0.0, 1e-10)
    rep.add("combination_asymptote_z50", 50.0 * kl_parts(50.0).s, 1.0, 1e-6)
    return rep


def suite_spinor(n: int = 100) -> CheckReport:
    rep = CheckReport("spinor")
    moms = sp.random_momenta(n)
    kinds = sp.SpinorKind.all()
    fams = ("u", "u_hat", "v", "v_hat")
    rep.add("dirac_equation_max", max(sp.dirac_residual(k, p) for p in moms for k in kinds), 0.0, 1e-12)
    rep.add("charge_conjugation_max", max(sp.charge_conjugation_residual(p) for p in moms), 0.0, 1e-12)
    rep.add("completeness_max", max(sp.completeness_residual(f, p) for p in moms for f in fams), 0.0, 1e-12)
    rep.add("bilinears_max", max(sp.bilinear_identity_residual(p) for p in moms), 0.0, 1e-12)
    worst_v = worst_s = worst_t = 0.0
    tensor_pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    g = sp.METRIC
    for p in moms:
        e = p.energy()
        for mu in range(4):
            for nu in range(4):
                v = sp.exchange_integrand_one_momentum(("vector", mu, nu), p)
                worst_v = max(worst_v, abs(v + g[mu, nu] / e))
        worst_s = max(worst_s, abs(sp.exchange_integrand_one_momentum("scalar", p) + 1.0 / e))
        for (a, b) in tensor_pairs:
            for (c, d) in tensor_pairs:
                t = sp.exchange_integrand_one_momentum(("tensor", a, b, c, d), p)
                expect = -(g[a, c] * g[b, d] - g[a, d] * g[b, c]) / e
                worst_t = max(worst_t, abs(t - expect))
    rep.add("exchange_vector_max", worst_v, 0.0, 1e-12)
    rep.add("exchange_scalar_max", worst_s, 0.0, 1e-12)
    rep.add("exchange_tensor_max", worst_t, 0.0, 1e-12)
    nvec, m, s = sp.rest_frame_densities()
    rep.add("rest_density_n0", nvec[0], 1.0, 1e-14)
    rep.add("rest_density_spatial", float(np.abs(nvec[1:]).max()), 0.0, 1e-14)
    rep.add("rest_scalar_m0", m, -1.0, 1e-14)
    rep.add("rest_tensor_s12", s[1, 2], -1.0, 1e-14)
    rep.add("rest_tensor_antisymmetry", s[1, 2] + s[2, 1], 0.0, 1e-14)
    others = np.abs(s).copy()
    others[1, 2] = others[2, 1] = 0.0
    rep.add("rest_tensor_others_zero", float(others.max()), 0.0, 1e-14)
    worst = max(abs(sp.exchange_integrand_two_momenta(p, q, 1.3) - sp.exchange_integrand_contraction(p, q, 1.3))
                for p, q in zip(moms[: n // 2], moms[n // 2:]))
    rep.add("two_momentum_vs_contraction_max", worst, 0.0, 1e-12)
    return rep


def _ft_closed(n, r):
    # transforms of E^-1 .. E^-4
    if n == 1:
        return bessel_k(2, r).value / (2 * _PI**2 * r)
    if n == 2:
        return math.exp(-r) / (4 * _PI * r)
    if n == 3:
        return bessel_k(0, r).value / (2 * _PI**2)
    return math.exp(-r) / (8 * _PI)


def suite_fourier(spec: QuadratureSpec | None = None) -> CheckReport:
    rep = CheckReport("fourier")
    spec = spec or QuadratureSpec()
    for n in (1, 2, 3, 4):
        prof = MomentumProfile.inverse_energy_power(n)
        for r in (0.2, 1.0, 5.0):
            rep.add(f"ft_E{n}_r{r:g}", inverse_ft_radial(prof, r, spec), _ft_closed(n, r), 1e-5, relative=True)
    rep.add("grad_E1_r1", inverse_ft_gradient_radial(MomentumProfile.inverse_energy_power(1), 1.0, spec),
            bessel_k(4, 1.0).value / (2 * _PI**2), 1e-5, relative=True)
    prof = MomentumProfile.inverse_one_plus_energy()
    tight = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-15)
    for r in (0.2, 1.0, 5.0):
        rep.add(f"ft_one_plus_E_two_tolerances_r{r:g}", inverse_ft_radial(prof, r, spec),
                inverse_ft_radial(prof, r, tight), 1e-5, relative=True)
    for r in (0.5, 1.0, 3.0):
        h = 1e-4 * r
        f = MomentumProfile.inverse_energy_power(1)
        fd = (inverse_ft_radial(f, r + h, tight) - inverse_ft_radial(f, r - h, tight)) / (2 * h)
        rep.add(f"gradient_consistency_r{r:g}", inverse_ft_gradient_radial(f, r, tight), -fd, 1e-5, relative=True)
    return rep


def fig2_integrals(points: int = 400):
    """Trapezoid + analytic tails of the Figure-2 curves on their log grid."""
    r = np.geomspace(0.01, 10.0, points)
    hole = np.array([dn.shell("hole", x) for x in r])
    elec = r * np.exp(-r)
    # head: shells tend to -2/pi and ~r; tails beyond 10 from the asymptotes
    head_h = dn.integrate_shell("hole", 0.0, 0.01)
    tail_h = dn.integrate_shell("hole", 10.0, 80.0)
    head_e = 1.0 - (1.0 + 0.01) * math.exp(-0.01)
    tail_e = 11.0 * math.exp(-10.0)
    ih = np.trapezoid(hole, r) + head_h + tail_h
    ie = np.trapezoid(elec, r) + head_e + tail_e
    return ih, ie, ih + ie


def suite_sumrules(spec: QuadratureSpec | None = None) -> CheckReport:
    rep = CheckReport("sumrules")
    c = dn.Constants()
    rep.add("hole", dn.sum_rule("hole", c, spec), -1.0, 1e-6)
    rep.add("electron", dn.sum_rule("electron", c, spec), 1.0, 1e-10)
    rep.add("fermi_hole", dn.sum_rule("fermi_hole", c, spec), -1.0, 1e-3)
    rep.add("infinite_sum", dn.sum_rule("infinite_sum_numeric", c, spec), -0.5, 0.0)
    rep.add("infinite_sum_approx", dn.sum_rule("infinite_sum_approx", c, spec), -0.5, 1e-3)
    rep.add("mean_radius_hole", dn.mean_radius("hole", spec), 4 / _PI, 1e-6)
    rep.add("mean_radius_electron", dn.mean_radius("electron", spec), 2.0, 1e-8)
    worst = 0.0
    for r in np.geomspace(1e-3, 30.0, 50):
        worst = max(worst, _rel(dn.shell(("hole_n", 1), r), dn.shell("hole", r)),
                    _rel(dn.shell(("electron_n", 1), r), dn.shell("electron", r)))
    rep.add("hierarchy_order1_max_rel", worst, 0.0, 1e-12)
    for z in (10.0, 20.5):
        si = gauss_kronrod(lambda t: np.sinc(t / _PI), 0.0, z, rel_tol=1e-14)[0]
        rep.add(f"fermi_partial_vs_si_{z:g}", dn.fermi_partial_sum(z, c, spec),
                -2 / _PI * (si - math.sin(z)), 1e-4)
        rep.add(f"fermi_partial_vs_asymptote_{z:g}", dn.fermi_partial_sum(z, c, spec),
                -1 + 2 / _PI * math.sin(z), 1e-4)
    rep.add("half_height_fermi_hole", dn.half_height_radius("fermi_hole", c), 1.81, 0.01)
    rep.add("half_height_density_matrix", dn.half_height_radius("fermi_density_matrix", c), 2.50, 0.01)
    geo = dn.exciton_geometry(c)
    rep.add("apex_angle_deg", geo.apex_angle_deg, 103.49, 0.05)
    rep.add("positronium_ratio", geo.positronium_ratio, 580.0, 0.03, relative=True)
    rep.add("fig2_sum_integral", fig2_integrals()[2], 0.0, 1e-5)
    return rep


def _loglog_slope(fun, a, b, n=12):
    r = np.geomspace(a, b, n)
    return float(np.polyfit(np.log(r), np.log([abs(fun(x)) for x in r]), 1)[0])


def suite_fields(spec: QuadratureSpec | None = None) -> CheckReport:
    rep = CheckReport("fields")
    c = dn.Constants()
    for src in ("hole", "electron"):
        wg = wf = 0.0
        for r in np.geomspace(0.1, 20.0, 20):
            f = fl.field(src, r)
            wg = max(wg, abs(f - fl.gauss_enclosed_charge(src, r, spec) / r**2) / max(abs(f), 1e-10))
            h = 1e-5 * r
            fd = -(fl.potential(src, r + h) - fl.potential(src, r - h)) / (2 * h)
            wf = max(wf, abs(f - fd) / abs(f))
        rep.add(f"gauss_{src}_max_rel", wg, 0.0, 1e-5)
        rep.add(f"finite_difference_{src}_max_rel", wf, 0.0, 1e-5)
        wp = 0.0
        for r in np.geomspace(0.05, 20.0, 30):
            ref = abs(4 * _PI * dn.density(src, r).density)
            wp = max(wp, abs(fl.poisson_residual(src, r)) / max(ref, 1e-12))
        rep.add(f"poisson_{src}_max_rel", wp, 0.0, 1e-4)
    rep.add("hole_potential_r50", fl.potential("hole", 50.0) * 50.0, 1.0, 1e-6)
    rep.add("hole_field_r50", fl.field("hole", 50.0) * 2500.0, 1.0, 1e-6)
    rep.add("neutral_exciton_r50", (fl.field("hole", 50.0) + fl.field("electron", 50.0)) * 2500.0, 0.0, 1e-6)
    r = np.geomspace(1e-4, 1e-3, 10)
    coef = -np.polyfit(np.log(r), [fl.potential("hole", x) for x in r], 1)[0]
    rep.add("hole_potential_log_coefficient", coef, 2 / _PI, 0.01, relative=True)
    # vacuum polarization
    rs = np.linspace(3.0, 6.0, 31)
    slope = np.polyfit(rs, [math.log(abs(dn.density("vacuum_polarization", x, c).density)) for x in rs], 1)[0]
    rep.add("vp_log_slope", slope, -2.0, 0.02, relative=True)
    net = dn.integrate_shell("vacuum_polarization", 1e-3, 40.0, c, spec)
    rep.add("vp_net_charge_over_alpha", abs(net) / c.alpha, 0.0, 1e-2)
    worst = 0.0
    worst_struve_form = 0.0
    for x in np.linspace(0.5, 5.0, 10):
        gauss = fl.gauss_enclosed_charge("vacuum_polarization", x, spec, c) / x**2
        worst = max(worst, _rel(fl.field("vacuum_polarization", x, c), gauss))
        worst_struve_form = max(worst_struve_form, _rel(fl.vp_field_struve_form(x, c), gauss))
    rep.add("vp_field_vs_gauss_max_rel", worst, 0.0, 1e-3)
    rep.add_finding("finding_vp_struve_form_sign_vs_gauss", worst_struve_form, 1e-3)
    x = 1.0
    factored_e = -(1 - math.exp(-x)) * (1 + x) / x**2
    rep.add_finding("finding_factored_electron_field_vs_gauss",
                    _rel(factored_e, fl.gauss_enclosed_charge("electron", x, spec) / x**2), 1e-3)
    p = kl_parts(x)
    plus_k0_h = (p.s + 2 / _PI * bessel_k(0, x).value) / x
    rep.add_finding("finding_hole_field_plus_k0_vs_gauss",
                    _rel(plus_k0_h, fl.gauss_enclosed_charge("hole", x, spec) / x**2), 1e-3)
    ok = all(abs(fl.force_density("hole", "reference", x).value)
             > abs(fl.force_density("electron", "reference", x).value) for x in np.linspace(0.1, 0.9, 17))
    rep.add("force_hole_exceeds_electron_below_1", float(ok), 1.0, 0.0)
    vp_max, ex_max = force_magnitudes(c)
    rep.add("vp_force_below_alpha_times_exchange", float(vp_max < c.alpha * ex_max), 1.0, 0.0)
    return rep


def force_magnitudes(c=None, rs=None):
    """Largest |force density| on [0.5, 2] with and without vacuum polarization.

    Exchange force densities are those of the hole and electron charges in
    the reference, hole and electron fields; every pairing that involves the
    polarization charge or its field counts as a polarization force.
    """
    c = c or dn.Constants()
    rs = np.linspace(0.5, 2.0, 61) if rs is None else rs
    vp_pairs = [("vacuum_polarization", f) for f in fl.FIELD_SOURCES]
    vp_pairs += [(rho, "vacuum_polarization") for rho in ("hole", "electron")]
    ex_pairs = [(rho, f) for rho in ("hole", "electron") for f in ("reference", "hole", "electron")]
    vp = max(abs(fl.force_density(a, b, r, c).value) for r in rs for a, b in vp_pairs)
    ex = max(abs(fl.force_density(a, b, r, c).value) for r in rs for a, b in ex_pairs)
    return vp, ex


def suite_threebody(spec: QuadratureSpec | None = None) -> CheckReport:
    rep = CheckReport("threebody")
    s_h = _loglog_slope(lambda x: dn.three_fermion_single_exchange(x)[0], 1e-3, 1e-2)
    s_g = _loglog_slope(lambda x: dn.three_fermion_single_exchange(x)[1], 1e-3, 1e-2)
    rep.add("hole_square_exponent", s_h, -4.0, 0.05)
    rep.add("gradient_square_exponent", s_g, -6.0, 0.05)
    for r in (0.5, 1.0, 3.0):
        a = dn.three_fermion_single_exchange(r)
        b = dn.three_fermion_oracle(r, spec)
        rep.add(f"hole_square_vs_transform_r{r:g}", a[0], b[0], 1e-5, relative=True)
        rep.add(f"gradient_square_vs_transform_r{r:g}", a[1], b[1], 1e-5, relative=True)
    rep.add("double_exchange_symmetry", dn.three_fermion_double_exchange(0.7, 2.0)
            - dn.three_fermion_double_exchange(2.0, 0.7), 0.0, 1e-15)
    rep.add("double_exchange_positive", float(all(dn.three_fermion_double_exchange(a, b) > 0
                                               for a in (0.1, 1.0, 5.0) for b in (0.2, 2.0, 8.0))), 1.0, 0.0)
    return rep


_RUNNERS = {
    "specfun": suite_specfun,
    "spinor": suite_spinor,
    "fourier": suite_fourier,
    "sumrules": suite_sumrules,
    "fields": suite_fields,
    "threebody": suite_threebody,
}


def run_suite(name: str, spec: QuadratureSpec | None = None) -> CheckReport:
    if name == "all":
        rep = CheckReport("all")
        for key in SUITES:
            sub = run_suite(key, spec)
            for ch in sub.checks:
                rep.checks.append(Check(f"{key}.{ch.name}", ch.computed, ch.expected, ch.tolerance, ch.passed))
        return rep
    if name not in _RUNNERS:
        raise KeyError(name)
    runner = _RUNNERS[name]
    if name in ("specfun", "spinor"):
        return runner()
    return runner(spec)
