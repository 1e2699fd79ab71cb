import math

import numpy as np
import pytest
import scipy.special as ss
from hypothesis import given, settings
from hypothesis import strategies as st

from dxsea.errors import DomainError, NonConvergence
from dxsea.radialft import (
    MomentumProfile,
    QuadratureSpec,
    inverse_ft_gradient_radial,
    inverse_ft_radial,
    transform,
)

PI2 = math.pi**2


def closed_form(n, r):
    """Transforms of E^-n computed with scipy Bessel functions."""
    if n == 1:
        return ss.k1(r) / (2 * PI2 * r)
    if n == 2:
        return math.exp(-r) / (4 * math.pi * r)
    if n == 3:
        return ss.k0(r) / (2 * PI2)
    return math.exp(-r) / (8 * math.pi)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [0.2, 1.0, 5.0])
def test_energy_powers(n, r):
    prof = MomentumProfile.inverse_energy_power(n)
    assert inverse_ft_radial(prof, r) == pytest.approx(closed_form(n, r), rel=1e-5)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r", [0.05, 0.7, 3.0])
def test_energy_powers_tight(n, r):
    spec = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-16)
    prof = MomentumProfile.inverse_energy_power(n)
    assert inverse_ft_radial(prof, r, spec) == pytest.approx(closed_form(n, r), rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_energy_powers_far(n):
    # lobes of size 1/r cancel to a value near e^-r; the attainable relative accuracy drops
    r = 12.0
    spec = QuadratureSpec(rel_tol=1e-9, abs_tol=1e-16)
    prof = MomentumProfile.inverse_energy_power(n)
    assert inverse_ft_radial(prof, r, spec) == pytest.approx(closed_form(n, r), rel=1e-8)


@pytest.mark.parametrize("r", [0.2, 1.0, 5.0])
def test_one_plus_energy_two_tolerances(r):
    prof = MomentumProfile.inverse_one_plus_energy()
    loose = inverse_ft_radial(prof, r)
    tight = inverse_ft_radial(prof, r, QuadratureSpec(rel_tol=1e-11, abs_tol=1e-16))
    assert loose == pytest.approx(tight, rel=1e-5)


def test_one_plus_energy_is_positive_and_decreasing():
    prof = MomentumProfile.inverse_one_plus_energy()
    vals = [inverse_ft_radial(prof, r) for r in (0.5, 1.0, 2.0, 4.0)]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("r", [0.3, 1.0, 2.5])
def test_gradient_of_inverse_energy(r):
    ref = ss.kv(2, r) / (2 * PI2 * r)
    got = inverse_ft_gradient_radial(MomentumProfile.inverse_energy_power(1), r)
    assert got == pytest.approx(ref, rel=1e-5)


@pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("n", [1, 2])
def test_gradient_consistency(r, n):
    f = MomentumProfile.inverse_energy_power(n)
    h = 1e-4 * r
    fd = (inverse_ft_radial(f, r + h) - inverse_ft_radial(f, r - h)) / (2 * h)
    assert inverse_ft_gradient_radial(f, r) + fd == pytest.approx(0.0, abs=1e-5 * abs(fd))


@pytest.mark.parametrize("r", [0.4, 1.0, 3.3])
def test_step_profile(r):
    qf = 2.0
    x = qf * r
    ref = (math.sin(x) - x * math.cos(x)) / (2 * PI2 * r**3)
    assert inverse_ft_radial(MomentumProfile.step(qf), r) == pytest.approx(ref, rel=1e-12)


def test_exponential_profile():
    a = 0.5
    prof = MomentumProfile(lambda q: np.exp(-a * q * q), ("exponential",), label="gauss")
    for r in (0.3, 1.0, 2.0):
        ref = (4 * math.pi * a) ** -1.5 * math.exp(-r * r / (4 * a))
        assert inverse_ft_radial(prof, r) == pytest.approx(ref, rel=1e-7, abs=1e-14)


def test_custom_algebraic_profile_uses_numpy_path():
    prof = MomentumProfile(lambda q: 1.0 / (1.0 + q * q), ("algebraic", 2.0), label="E^-2 by hand")
    assert inverse_ft_radial(prof, 1.3) == pytest.approx(closed_form(2, 1.3), rel=1e-6)


@settings(max_examples=25)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.2, 5.0))
def test_linearity(a, b, r):
    f = MomentumProfile.inverse_energy_power(1)
    g = MomentumProfile.inverse_energy_power(2)
    tight = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-17)
    combo = f.scaled(a) + g.scaled(b)
    lhs = inverse_ft_radial(combo, r, tight)
    rhs = a * inverse_ft_radial(f, r, tight) + b * inverse_ft_radial(g, r, tight)
    scale = abs(a * inverse_ft_radial(f, r, tight)) + abs(b * inverse_ft_radial(g, r, tight))
    assert abs(lhs - rhs) <= 1e-10 * scale + 1e-300


def test_large_r_decay():
    f = MomentumProfile.inverse_energy_power(2)
    assert abs(inverse_ft_radial(f, 40.0)) < 1e-7 * inverse_ft_radial(f, 1.0)


def test_transform_reports_error_and_panels():
    res = transform(MomentumProfile.inverse_energy_power(1), 1.0)
    assert res.panels >= 16
    assert 0.0 <= res.error <= 1e-7 * abs(res.value) + 1e-12


def test_non_decaying_profile_is_rejected():
    with pytest.raises(NonConvergence):
        inverse_ft_radial(MomentumProfile.constant(1.0), 1.0)


def test_wrong_decay_class_is_rejected():
    with pytest.raises(DomainError):
        MomentumProfile(lambda q: 1.0 / np.sqrt(1.0 + q), ("algebraic", 2.0))
    with pytest.raises(DomainError):
        MomentumProfile(lambda q: q, ("bogus",))


def test_panel_budget():
    spec = QuadratureSpec(max_panels=16)
    with pytest.raises(NonConvergence):
        inverse_ft_radial(MomentumProfile.inverse_one_plus_energy(), 1.0, spec)


@pytest.mark.parametrize("kw", [dict(rel_tol=0), dict(abs_tol=-1), dict(max_panels=2), dict(accel_terms=1),
                                dict(tail_cut=-1.0)])
def test_spec_validation(kw):
    with pytest.raises(DomainError):
        QuadratureSpec(**kw)


@pytest.mark.parametrize("r", [0.0, -1.0, math.inf])
def test_bad_radius(r):
    with pytest.raises(DomainError):
        inverse_ft_radial(MomentumProfile.inverse_energy_power(2), r)
