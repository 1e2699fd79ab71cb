"""Special functions: Bessel K, modified Struve L, Bickley Ki1, Gamma.

Every public function returns a :class:`SpecialValue` carrying a rough
absolute error bound next to the value.  Bessel values come from the
kernel backend in exponentially scaled form and are unscaled here, so a
result past the double exponent range turns into ``0.0`` with the
``underflow`` flag set rather than an exception.

Products of K and L are the delicate part: L grows like I while K decays,
so ``K0*L_{-1} + K1*L0`` approaches ``1/z`` and ``1 - z*(...)`` is all
cancellation.  :func:`kl_parts` rewrites the combination through the
differences ``M = L - I`` and the Wronskian ``K0*I1 + K1*I0 = 1/z``,
which keeps full relative accuracy at every z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import DomainError

__all__ = [
    "SpecialValue",
    "bessel_k",
    "struve_l",
    "ki1",
    "gamma_fn",
    "kl_parts",
    "KLParts",
]

EPS = 2.220446049250313e-16
TWO_OVER_PI = 2.0 / math.pi

# beyond this z the scaled kernels are unscaled with exp(-z) -> 0
_EXP_LIMIT = 745.0
# Struve L overflows past this argument
_STRUVE_ZMAX = 700.0
# below this, orders -2 and -3 are summed directly (recursion loses digits)
_STRUVE_RECUR_MIN = 1.0
# switch from direct products to the M = L - I form
KL_SWITCH = 2.0


@dataclass(frozen=True)
class SpecialValue:
    value: float
    abs_error_estimate: float
    underflow: bool = False

    def __float__(self):
        return self.value


def _check_z(z, allow_zero):
    z = float(z)
    if math.isnan(z) or (z < 0.0) or (z == 0.0 and not allow_zero):
        raise DomainError(f"argument out of domain: z={z!r}")
    return z


def _unscale(scaled, z, nterms):
    """Multiply a scaled Bessel value by exp(-z), tracking underflow."""
    if z > _EXP_LIMIT:
        return SpecialValue(0.0, 0.0, True)
    val = scaled * math.exp(-z)
    if val == 0.0 or not math.isfinite(val):
        if val == 0.0:
            return SpecialValue(0.0, 0.0, True)
        raise DomainError(f"K overflows at z={z!r}")
    return SpecialValue(val, (4.0 + nterms) * EPS * abs(val))


def bessel_k(two_order: int, z: float) -> SpecialValue:
    """K_nu(z) with nu = two_order / 2.

    Supported orders are integers n >= -1 and half-integers n + 1/2 with
    n >= -1; negative orders use K_{-nu} = K_nu.
    """
    if not isinstance(two_order, int) or isinstance(two_order, bool):
        raise DomainError(f"order encoding must be an int, got {two_order!r}")
    if two_order < -2:
        raise DomainError(f"unsupported order {two_order / 2}")
    z = _check_z(z, allow_zero=False)
    two_order = abs(two_order)
    return _unscale(kernels.kv_scaled(two_order, z), z, two_order // 2)


def _struve_direct(order, z):
    val, asum = kernels.struve_series(order, z)
    return val, 4.0 * EPS * asum


def struve_l(order: int, z: float) -> SpecialValue:
    """Modified Struve function L_order(z) for order in {-3, ..., 1}."""
    if order not in (-3, -2, -1, 0, 1):
        raise DomainError(f"unsupported Struve order {order!r}")
    z = _check_z(z, allow_zero=True)
    if z > _STRUVE_ZMAX:
        raise DomainError(f"L_{order} overflows at z={z!r}")
    if z == 0.0:
        if order in (0, 1):
            return SpecialValue(0.0, 0.0)
        if order == -1:
            return SpecialValue(TWO_OVER_PI, 0.0)
        raise DomainError(f"L_{order} is singular at z=0")
    if order >= 0:
        return SpecialValue(*_struve_direct(order, z))
    if order == -1:
        v, e = _struve_direct(1, z)
        return SpecialValue(v + TWO_OVER_PI, e + EPS)
    if z < _STRUVE_RECUR_MIN:
        return SpecialValue(*_struve_direct(order, z))
    lm1, em1 = _struve_direct(1, z)
    lm1 += TWO_OVER_PI
    l0, e0 = _struve_direct(0, z)
    c = TWO_OVER_PI / z
    lm2 = -2.0 / z * lm1 + l0 + c
    em2 = 2.0 / z * em1 + e0 + 4.0 * EPS * (abs(2.0 / z * lm1) + abs(l0) + c)
    if order == -2:
        return SpecialValue(lm2, em2)
    lm3 = -4.0 / z * lm2 + lm1 - c / z
    em3 = 4.0 / z * em2 + em1 + 4.0 * EPS * (abs(4.0 / z * lm2) + abs(lm1) + c / z)
    return SpecialValue(lm3, em3)


@dataclass(frozen=True)
class KLParts:
    """Pieces of S(z) = K0(z) L_{-1}(z) + K1(z) L0(z).

    ``s`` is S itself, ``deficit_scaled`` is exp(z) * (1 - z S), and
    ``k0_scaled``/``k1_scaled`` are exp(z) K0, exp(z) K1.  The deficit is
    returned scaled because it decays like exp(-z) and callers often
    combine it with other exponentially small terms.
    """

    z: float
    s: float
    deficit_scaled: float
    k0_scaled: float
    k1_scaled: float


def kl_parts(z: float) -> KLParts:
    z = _check_z(z, allow_zero=False)
    k0s, k1s = kernels.k01_scaled(z)
    if z <= KL_SWITCH:
        l0, _ = kernels.struve_series(0, z)
        l1, _ = kernels.struve_series(1, z)
        ez = math.exp(-z)
        s = (k0s * (l1 + TWO_OVER_PI) + k1s * l0) * ez
        return KLParts(z, s, (1.0 - z * s) / ez, k0s, k1s)
    m0, p1 = kernels.struve_m_scaled(z)
    rest = k0s * p1 + k1s * m0
    ez = math.exp(-z) if z < _EXP_LIMIT else 0.0
    return KLParts(z, 1.0 / z + rest * ez, -z * rest, k0s, k1s)


def ki1(z: float) -> SpecialValue:
    """Bickley function Ki1(z) = integral of K0 from z to infinity."""
    z = _check_z(z, allow_zero=True)
    if z == 0.0:
        return SpecialValue(0.5 * math.pi, EPS)
    p = kl_parts(z)
    if z >= _EXP_LIMIT:
        return SpecialValue(0.0, 0.0, True)
    val = 0.5 * math.pi * p.deficit_scaled * math.exp(-z)
    return SpecialValue(val, 64.0 * EPS * max(abs(val), 1e-300 if z > 2 else EPS))


def gamma_fn(x: float) -> SpecialValue:
    """Gamma at positive integers and half-integers by upward recurrence."""
    two_x = 2.0 * float(x)
    if not (two_x >= 1.0 and two_x == math.floor(two_x)):
        raise DomainError(f"gamma_fn needs a positive integer or half-integer, got {x!r}")
    n2 = int(two_x)
    if n2 % 2:
        val, a = math.sqrt(math.pi), 0.5
    else:
        val, a = 1.0, 1.0
    steps = 0
    while a < 0.5 * n2:
        val *= a
        a += 1.0
        steps += 1
    if not math.isfinite(val):
        raise DomainError(f"gamma_fn overflows at x={x!r}")
    return SpecialValue(val, (1 + steps) * EPS * val)
