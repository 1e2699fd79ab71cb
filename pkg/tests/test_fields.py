import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as ss
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from dxsea import densities as dn
from dxsea import fields as fl
from dxsea.checks import force_magnitudes
from dxsea.errors import DomainError

C = dn.Constants()
R20 = np.geomspace(0.1, 20.0, 20)


@pytest.mark.parametrize("src", ["hole", "electron"])
def test_gauss_law(src):
    for r in R20:
        f = fl.field(src, r)
        assert abs(f - fl.gauss_enclosed_charge(src, r) / r**2) <= 1e-5 * max(abs(f), 1e-10)


@pytest.mark.parametrize("src", ["hole", "electron"])
def test_field_is_minus_gradient(src):
    for r in R20:
        h = 1e-5 * r
        fd = -(fl.potential(src, r + h) - fl.potential(src, r - h)) / (2 * h)
        assert fl.field(src, r) == pytest.approx(fd, rel=1e-5)


@pytest.mark.parametrize("src", ["hole", "electron"])
def test_poisson(src):
    for r in np.geomspace(0.05, 20.0, 30):
        ref = abs(4 * math.pi * dn.density(src, r).density)
        assert abs(fl.poisson_residual(src, r)) <= 1e-4 * ref


def test_hole_potential_against_mpmath():
    for r in (0.05, 1.0, 6.0):
        with mp.workdps(30):
            z = mp.mpf(r)
            ref = mp.besselk(0, z) * (mp.struvel(1, z) + 2 / mp.pi) + mp.besselk(1, z) * mp.struvel(0, z)
        assert fl.potential("hole", r) == pytest.approx(float(ref), rel=1e-12)


def test_hole_potential_is_charge_integral():
    # potential of the hole charge -n by the shell theorem, with scipy on the oracle side
    r = 1.3
    shell = lambda x: -2 / math.pi * x * ss.k1(x)
    inner, _ = integrate.quad(shell, 0, r, epsabs=1e-14)
    outer, _ = integrate.quad(lambda x: shell(x) / x, r, 60, epsabs=1e-14)
    assert fl.potential("hole", r) == pytest.approx(-(inner / r + outer), rel=1e-9)


def test_exchange_energy_density_integral():
    for r in (0.2, 1.0, 5.0):
        assert fl.exchange_energy_density_integral(r) == pytest.approx(-fl.potential("hole", r), rel=1e-9)


def test_long_range_limits():
    assert fl.potential("hole", 50.0) * 50.0 == pytest.approx(1.0, abs=1e-6)
    assert fl.field("hole", 50.0) * 2500.0 == pytest.approx(1.0, abs=1e-6)
    neutral = (fl.field("hole", 50.0) + fl.field("electron", 50.0)) * 2500.0
    assert abs(neutral) < 1e-6


def test_small_r_log_coefficient():
    r = np.geomspace(1e-4, 1e-3, 10)
    coef = -np.polyfit(np.log(r), [fl.potential("hole", x) for x in r], 1)[0]
    assert coef == pytest.approx(2 / math.pi, rel=0.01)


def test_electron_field_small_r_branch_is_continuous():
    a = fl.field("electron", 0.1 * (1 - 1e-12))
    b = fl.field("electron", 0.1 * (1 + 1e-12))
    assert a == pytest.approx(b, rel=1e-10)
    assert fl.field("electron", 1e-6) == pytest.approx(-0.5 + 1e-6 / 3, rel=1e-12)


def test_vp_field_against_gauss():
    for r in np.linspace(0.5, 5.0, 10):
        gauss = fl.gauss_enclosed_charge("vacuum_polarization", r) / r**2
        assert fl.field("vacuum_polarization", r, C) == pytest.approx(gauss, rel=1e-3)


def test_alternative_forms_disagree_with_gauss():
    r = 1.0
    gauss_vp = fl.gauss_enclosed_charge("vacuum_polarization", r) / r**2
    assert fl.vp_field_struve_form(r) == pytest.approx(-gauss_vp, rel=1e-9)
    factored_e = -(1 - math.exp(-r)) * (1 + r) / r**2
    assert abs(factored_e - fl.field("electron", r)) > 0.1 * abs(fl.field("electron", r))


@given(st.floats(0.1, 0.9))
def test_force_ordering(r):
    assert abs(fl.force_density("hole", "reference", r).value) > abs(fl.force_density("electron", "reference", r).value)


def test_magnitude_hierarchy():
    vp, ex = force_magnitudes(C)
    assert vp < C.alpha * ex


def test_force_density_definition():
    r = 0.7
    f = fl.force_density("electron", "hole", r)
    assert f.value == pytest.approx(-dn.shell("electron", r) * fl.field("hole", r), rel=1e-15)
    assert (f.rho_source, f.field_source) == ("electron", "hole")


def test_field_sample():
    s = fl.field_sample("hole", 2.0)
    assert (s.potential, s.field_radial) == (fl.potential("hole", 2.0), fl.field("hole", 2.0))


def test_bad_inputs():
    with pytest.raises(DomainError):
        fl.potential("reference", 1.0)
    with pytest.raises(DomainError):
        fl.field("nothing", 1.0)
    with pytest.raises(DomainError):
        fl.force_density("reference", "hole", 1.0)
    with pytest.raises(DomainError):
        fl.poisson_residual("hole", 30.0)
    with pytest.raises(DomainError):
        fl.field("hole", -1.0)
