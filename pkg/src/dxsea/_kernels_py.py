"""Pure-Python numerical kernels.

This is the reference implementation of every hot loop in the package and
the fallback used when the compiled ``_ckernels`` extension is missing.
The compiled module mirrors these signatures exactly; ``_backend`` picks one
at import time.

All Bessel values are returned *scaled* by ``exp(z)`` so callers can decide
how to handle underflow.
"""

import math

import numpy as np

BACKEND = "python"

EULER_GAMMA = 0.57721566490153286061
TWO_OVER_PI = 2.0 / math.pi
SQRT_PI = math.sqrt(math.pi)
EPS = 2.220446049250313e-16

# series/continued-fraction switch for K0, K1
K_SWITCH = 2.0

# Gauss-Legendre rules on [-1, 1]
GL16_X, GL16_W = np.polynomial.legendre.leggauss(16)
GL32_X, GL32_W = np.polynomial.legendre.leggauss(32)
_GL32 = tuple(zip(GL32_X.tolist(), GL32_W.tolist()))

# profile codes understood by lobe_integrals
PROFILE_EPOW = 0  # (1 + q^2)^(-param/2)
PROFILE_ONE_PLUS_E = 1  # 1 / (1 + sqrt(1 + q^2))
PROFILE_STEP = 2  # 1 for q < param else 0

TRIG_SIN = 0
TRIG_COS = 1


def _k01_series(z):
    """K0, K1 from the ascending series; accurate for 0 < z <= 2."""
    y = 0.25 * z * z
    lg = math.log(0.5 * z)
    # K0
    term = 1.0
    harm = 0.0
    i0 = 1.0
    s0 = 0.0
    k = 0
    while True:
        k += 1
        term *= y / (k * k)
        harm += 1.0 / k
        i0 += term
        s0 += term * harm
        if term * (1.0 + harm) < EPS * 1e-2 * abs(i0):
            break
    k0 = -(lg + EULER_GAMMA) * i0 + s0
    # K1
    term = 1.0  # y^k / (k! (k+1)!)
    hk = 0.0
    i1s = 1.0  # I1 = (z/2) * sum
    s1 = (2.0 * -EULER_GAMMA + 1.0)  # psi(1) + psi(2)
    k = 0
    while True:
        k += 1
        term *= y / (k * (k + 1))
        hk += 1.0 / k
        i1s += term
        add = term * (2.0 * hk + 1.0 / (k + 1) - 2.0 * EULER_GAMMA)
        s1 += add
        if term * (2.0 + 2.0 * hk) < EPS * 1e-2 * abs(i1s):
            break
    k1 = 1.0 / z + lg * 0.5 * z * i1s - 0.25 * z * s1
    return k0, k1


def _k01_cf2_scaled(z, mu):
    """exp(z)*K_mu, exp(z)*K_{mu+1} by Steed's CF2 method, z >= 2, |mu| <= 1/2."""
    mu2 = mu * mu
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu2
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 100000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < EPS:
            break
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * z)) / s
    kmu1 = kmu * (mu + z + 0.5 - h) / z
    return kmu, kmu1


def k01_scaled(z):
    """Return (exp(z) K0(z), exp(z) K1(z)) for z > 0."""
    if z <= K_SWITCH:
        k0, k1 = _k01_series(z)
        ez = math.exp(z)
        return k0 * ez, k1 * ez
    return _k01_cf2_scaled(z, 0.0)


def kv_scaled(two_nu, z):
    """exp(z) K_nu(z) for nu = two_nu / 2 >= 0, by upward recurrence."""
    if two_nu % 2 == 0:
        n = two_nu // 2
        a, b = k01_scaled(z)
        if n == 0:
            return a
        nu = 1.0
    else:
        a = math.sqrt(math.pi / (2.0 * z))
        b = a * (1.0 + 1.0 / z)
        n = two_nu // 2
        if n == 0:
            return a
        nu = 1.5
    for _ in range(n - 1):
        a, b = b, b * (2.0 * nu / z) + a
        nu += 1.0
    return b


def struve_series(nu, z):
    """Ascending series of L_nu(z) for integer nu in {-3, ..., 1}.

    Returns (value, sum of |terms|).  Terms are all of one sign after the
    first two, so the absolute sum bounds the rounding error.
    """
    h = 0.5 * z
    # Gamma(nu + 3/2) for nu in {-3..1}
    g = (4.0 * SQRT_PI / 3.0, -2.0 * SQRT_PI, SQRT_PI, 0.5 * SQRT_PI, 0.75 * SQRT_PI)[nu + 3]
    t = h ** (nu + 1) / (0.5 * SQRT_PI * g)
    total = t
    asum = abs(t)
    hh = h * h
    k = 0
    while True:
        t *= hh / ((k + 1.5) * (k + nu + 1.5))
        k += 1
        total += t
        asum += abs(t)
        if abs(t) <= EPS * 0.25 * abs(total) and k > nu + 3:
            break
        if k > 5000:
            break
    return total, asum


def struve_m_scaled(z):
    """Return (M0(z), M1(z) + 2/pi), M_nu = L_nu - I_nu, for z > 0.

    Uses the integral representation over [0, 1] mapped to t = sin(theta),
    truncated where exp(-z t) drops below 1e-26.
    """
    smax = 60.0 / z
    tmax = math.asin(smax) if smax < 1.0 else 0.5 * math.pi
    acc0 = 0.0
    acc1 = 0.0
    for lo, hi in ((0.0, tmax / 16.0), (tmax / 16.0, tmax / 4.0), (tmax / 4.0, tmax)):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for x, w in _GL32:
            th = mid + half * x
            st = math.sin(th)
            ct = math.cos(th)
            e = math.exp(-z * st)
            acc0 += w * half * e
            acc1 += w * half * e * st * st * ct / (1.0 + ct)
    m0 = -TWO_OVER_PI * acc0
    p1 = TWO_OVER_PI * (z * acc1 + math.exp(-z))
    return m0, p1


def _profile(code, param, q):
    if code == PROFILE_EPOW:
        return (1.0 + q * q) ** (-0.5 * param)
    if code == PROFILE_ONE_PLUS_E:
        return 1.0 / (1.0 + math.sqrt(1.0 + q * q))
    return 1.0 if q < param else 0.0


def lobe_integrals(code, param, power, trig, r, edges, nsub):
    """Integrals of q^power * f(q) * trig(q r) over consecutive panels.

    ``edges`` has n+1 entries, ``nsub[i]`` is the number of 16-point
    Gauss-Legendre sub-panels used on [edges[i], edges[i+1]].
    """
    n = len(edges) - 1
    out = np.empty(n)
    xs = GL16_X.tolist()
    ws = GL16_W.tolist()
    for i in range(n):
        a = edges[i]
        m = nsub[i]
        step = (edges[i + 1] - a) / m
        acc = 0.0
        for j in range(m):
            lo = a + j * step
            half = 0.5 * step
            mid = lo + half
            for x, w in zip(xs, ws):
                q = mid + half * x
                f = _profile(code, param, q)
                ph = q * r
                tv = math.sin(ph) if trig == TRIG_SIN else math.cos(ph)
                acc += w * half * f * q ** power * tv
        out[i] = acc
    return out
