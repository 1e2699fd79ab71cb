"""Release criteria, one reported line each.

Run ``pytest tests/test_acceptance.py -v`` to see the PASS/FAIL table, or
execute the file directly with python.
"""

import csv
import math
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest
import scipy.special as ss

from dxsea import cli
from dxsea import densities as dn
from dxsea import fields as fl
from dxsea import spinor as sp
from dxsea.radialft import MomentumProfile, inverse_ft_gradient_radial, inverse_ft_radial

C = dn.Constants()
TIMES = {}


def _line(ok, label, detail):
    return f"{'PASS' if ok else 'FAIL'}  {label:<44s} {detail}"


def c01_hole_sum_rule():
    t = time.perf_counter()
    v = dn.sum_rule("hole")
    dt = time.perf_counter() - t
    return abs(v + 1) <= 1e-6 and dt < 1.0, f"integral={v!r} (target -1 +- 1e-6), {dt:.3f} s (< 1 s)"


def c02_electron_sum_rule():
    v = dn.sum_rule("electron")
    return abs(v - 1) <= 1e-10, f"integral={v!r} (target +1 +- 1e-10)"


def c03_mean_radii():
    h = dn.mean_radius("hole")
    e = dn.mean_radius("electron")
    ok = abs(h - 4 / math.pi) <= 1e-6 and abs(e - 2) <= 1e-8
    return ok, f"hole={h!r} (4/pi +- 1e-6), electron={e!r} (2 +- 1e-8)"


def c04_fourier_oracle():
    worst = 0.0
    for r in (0.2, 1.0, 5.0):
        a = inverse_ft_radial(MomentumProfile.inverse_energy_power(1), r)
        b = inverse_ft_radial(MomentumProfile.inverse_energy_power(2), r)
        worst = max(worst, abs(a / (ss.k1(r) / (2 * math.pi**2 * r)) - 1),
                    abs(b / (math.exp(-r) / (4 * math.pi * r)) - 1))
    r = 1.0
    g = inverse_ft_gradient_radial(MomentumProfile.inverse_energy_power(1), r)
    gref = ss.kv(2, r) / (2 * math.pi**2 * r**2)
    grel = abs(g / gref - 1)
    return worst <= 1e-5 and grel <= 1e-5, f"max rel err {worst:.2e}, gradient rel err {grel:.2e} (<= 1e-5)"


def c05_hierarchy_reduction():
    worst = 0.0
    for r in np.geomspace(1e-3, 30.0, 50):
        worst = max(worst, abs(dn.shell(("hole_n", 1), r) / dn.shell("hole", r) - 1),
                    abs(dn.shell(("electron_n", 1), r) / dn.shell("electron", r) - 1))
    return worst <= 1e-12, f"max rel deviation {worst:.2e} on 50 radii (<= 1e-12)"


def c06_infinite_sum():
    exact = dn.sum_rule("infinite_sum_numeric")
    approx = dn.sum_rule("infinite_sum_approx")
    ok = exact == -0.5 and abs(approx + 0.5) <= 1e-3
    return ok, f"p=0 value={exact!r} (exactly -1/2), approximation={approx!r} (-1/2 +- 1e-3)"


def c07a_fermi_partial_vs_si():
    worst = 0.0
    for z in (10.0, 20.5):
        si = ss.sici(z)[0]
        worst = max(worst, abs(dn.fermi_partial_sum(z) + 2 / math.pi * (si - math.sin(z))))
    return worst <= 1e-4, f"max |quadrature - Si closed form| = {worst:.2e} (<= 1e-4)"


def c07b_fermi_partial_vs_sine_form():
    diffs = [abs(dn.fermi_partial_sum(z) - (-1 + 2 / math.pi * math.sin(z))) for z in (10.0, 20.5)]
    return max(diffs) <= 1e-4, f"|quadrature - (-1 + (2/pi) sin Z)| = {diffs[0]:.2e}, {diffs[1]:.2e} (<= 1e-4)"


def c08_fermi_hole_sum_rule():
    v = dn.sum_rule("fermi_hole")
    return abs(v + 1) <= 1e-3, f"integral={v!r} (target -1 +- 1e-3)"


def c09_half_heights():
    a = dn.half_height_radius("fermi_hole")
    b = dn.half_height_radius("fermi_density_matrix")
    ok = abs(a - 1.81) <= 0.01 and abs(b - 2.50) <= 0.01
    return ok, f"hole={a:.5f} (1.81 +- 0.01), density matrix={b:.5f} (2.50 +- 0.01)"


def c10_spinor_battery():
    moms = sp.random_momenta(100)
    kinds = sp.SpinorKind.all()
    res = {
        "dirac": max(sp.dirac_residual(k, p) for p in moms for k in kinds),
        "charge conj": max(sp.charge_conjugation_residual(p) for p in moms),
        "completeness": max(sp.completeness_residual(f, p) for p in moms for f in ("u", "u_hat", "v", "v_hat")),
        "bilinears": max(sp.bilinear_identity_residual(p) for p in moms),
    }
    worst_x = 0.0
    g = sp.METRIC
    for p in moms:
        e = sp.Momentum3.of(p).energy()
        worst_x = max(worst_x, abs(sp.exchange_integrand_one_momentum("scalar", p) + 1 / e))
        for mu in range(4):
            for nu in range(4):
                worst_x = max(worst_x, abs(sp.exchange_integrand_one_momentum(("vector", mu, nu), p) + g[mu, nu] / e))
        for a, b, c, d in ((0, 1, 0, 1), (1, 2, 1, 2), (0, 3, 1, 2), (2, 3, 2, 3)):
            t = sp.exchange_integrand_one_momentum(("tensor", a, b, c, d), p)
            worst_x = max(worst_x, abs(t + (g[a, c] * g[b, d] - g[a, d] * g[b, c]) / e))
    res["exchange"] = worst_x
    worst = max(res.values())
    return worst <= 1e-12, f"max residual {worst:.2e} over 100 momenta (<= 1e-12)"


def c11_field_consistency():
    worst_g = worst_d = worst_p = 0.0
    for src in ("hole", "electron"):
        for r in np.geomspace(0.1, 20.0, 20):
            f = fl.field(src, r)
            worst_g = max(worst_g, abs(f - fl.gauss_enclosed_charge(src, r) / r**2) / max(abs(f), 1e-10))
            h = 1e-5 * r
            fd = -(fl.potential(src, r + h) - fl.potential(src, r - h)) / (2 * h)
            worst_d = max(worst_d, abs(f / fd - 1))
        for r in np.geomspace(0.05, 20.0, 30):
            worst_p = max(worst_p, abs(fl.poisson_residual(src, r)) / abs(4 * math.pi * dn.density(src, r).density))
    ok = worst_g <= 1e-5 and worst_d <= 1e-5 and worst_p <= 1e-4
    return ok, f"gauss {worst_g:.1e}, gradient {worst_d:.1e} (<= 1e-5), poisson {worst_p:.1e} (<= 1e-4)"


def c12_long_range():
    phi = fl.potential("hole", 50.0) * 50.0
    e = fl.field("hole", 50.0) * 2500.0
    r = np.geomspace(1e-4, 1e-3, 10)
    coef = -np.polyfit(np.log(r), [fl.potential("hole", x) for x in r], 1)[0]
    ok = abs(phi - 1) <= 1e-6 and abs(e - 1) <= 1e-6 and abs(coef / (2 / math.pi) - 1) <= 0.01
    return ok, f"r*phi={phi!r}, r^2*E={e!r} (1 +- 1e-6), log coefficient {coef:.6f} (2/pi +- 1%)"


def c13_geometry():
    g = dn.exciton_geometry()
    ok = abs(g.apex_angle_deg - 103.49) <= 0.05 and abs(g.positronium_ratio / 580 - 1) <= 0.03
    return ok, f"apex {g.apex_angle_deg:.3f} deg (103.49 +- 0.05), ratio {g.positronium_ratio:.1f} (580 +- 3%)"


def c14a_vp_slope():
    rs = np.linspace(3.0, 6.0, 31)
    slope = np.polyfit(rs, [math.log(abs(dn.density("vacuum_polarization", r).density)) for r in rs], 1)[0]
    return abs(slope / -2.0 - 1) <= 0.02, f"log-slope on [3, 6] = {slope:.4f} (-2.0 +- 2%)"


def c14b_vp_net_charge():
    net = dn.integrate_shell("vacuum_polarization", 1e-3, 40.0)
    return abs(net) < 1e-2 * C.alpha, f"|charge on [1e-3, 40]| = {abs(net) / C.alpha:.4f} alpha (< 0.01 alpha)"


def c14c_vp_field():
    worst = worst_struve_form = 0.0
    for r in np.linspace(0.5, 5.0, 10):
        gauss = fl.gauss_enclosed_charge("vacuum_polarization", r) / r**2
        worst = max(worst, abs(fl.field("vacuum_polarization", r) / gauss - 1))
        worst_struve_form = max(worst_struve_form, abs(fl.vp_field_struve_form(r) / gauss - 1))
    return worst <= 1e-3, (f"Struve field vs Gauss rel err {worst:.1e} (<= 1e-3); "
                           f"verbatim Struve form differs by {worst_struve_form:.2f} (reported)")


def c15_three_fermion_exponents():
    r = np.geomspace(1e-3, 1e-2, 12)
    h = np.polyfit(np.log(r), np.log([abs(dn.three_fermion_single_exchange(x)[0]) for x in r]), 1)[0]
    g = np.polyfit(np.log(r), np.log([abs(dn.three_fermion_single_exchange(x)[1]) for x in r]), 1)[0]
    ok = abs(h + 4) <= 0.05 and abs(g + 6) <= 0.05
    return ok, f"hole-square exponent {h:.4f} (-4 +- 0.05), gradient-square exponent {g:.4f} (-6 +- 0.05)"


def c16_figure2_neutrality():
    with tempfile.TemporaryDirectory() as d:
        assert cli.main(["figure", "--id", "2", "--out-dir", d]) == 0
        curves = {}
        for name in ("hole", "electron"):
            with open(Path(d) / f"fig2_{name}.csv", newline="") as fh:
                rows = list(csv.reader(fh))[1:]
            curves[name] = np.array(rows, dtype=float)
    r = curves["hole"][:, 0]
    total = np.trapezoid(curves["hole"][:, 1] + curves["electron"][:, 1], r)
    # analytic pieces outside the plotted window [0.01, 10]
    r0, r1 = r[0], r[-1]
    head = dn.integrate_shell("hole", 0.0, r0) + (1 - (1 + r0) * math.exp(-r0))
    tail = dn.integrate_shell("hole", r1, 80.0) + (1 + r1) * math.exp(-r1)
    total += head + tail
    return abs(total) <= 1e-5, f"hole + electron integral = {total:.2e} (0 +- 1e-5)"


CRITERIA = [
    ("1 exchange-hole sum rule", c01_hole_sum_rule),
    ("2 exchange-electron sum rule", c02_electron_sum_rule),
    ("3 mean radii", c03_mean_radii),
    ("4 Fourier oracles", c04_fourier_oracle),
    ("5 hierarchy reduction", c05_hierarchy_reduction),
    ("6 infinite-sum charge", c06_infinite_sum),
    ("7a Fermi partial sum vs Si form", c07a_fermi_partial_vs_si),
    ("7b Fermi partial sum vs sine form", c07b_fermi_partial_vs_sine_form),
    ("8 Fermi hole sum rule", c08_fermi_hole_sum_rule),
    ("9 half-height radii", c09_half_heights),
    ("10 spinor battery", c10_spinor_battery),
    ("11 field consistency", c11_field_consistency),
    ("12 long-range limits", c12_long_range),
    ("13 exciton geometry", c13_geometry),
    ("14a vacuum polarization log-slope", c14a_vp_slope),
    ("14b vacuum polarization net charge", c14b_vp_net_charge),
    ("14c vacuum polarization field", c14c_vp_field),
    ("15 three-fermion exponents", c15_three_fermion_exponents),
    ("16 figure-2 neutrality", c16_figure2_neutrality),
]


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, fn, capsys):
    t = time.perf_counter()
    ok, detail = fn()
    TIMES[label] = time.perf_counter() - t
    with capsys.disabled():
        print("\n" + _line(ok, label, detail), end="")
    assert ok, detail


def test_total_runtime(capsys):
    total = sum(TIMES.values())
    with capsys.disabled():
        print("\n" + _line(total < 60.0, "runtime of all criteria", f"{total:.2f} s (< 60 s)"), end="")
    assert len(TIMES) == len(CRITERIA) and total < 60.0


if __name__ == "__main__":
    for label, fn in CRITERIA:
        ok, detail = fn()
        print(_line(ok, label, detail))
