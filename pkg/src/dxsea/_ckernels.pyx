# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterparts of the routines in ``_kernels_py``.

Signatures and numerics match the pure-Python module line for line; only
the loops are typed.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, log, sin, cos, asin, fabs, pow, M_PI

cnp.import_array()

BACKEND = "cython"

cdef double EULER_GAMMA = 0.57721566490153286061
cdef double TWO_OVER_PI = 2.0 / M_PI
cdef double SQRT_PI = sqrt(M_PI)
cdef double EPS = 2.220446049250313e-16
cdef double K_SWITCH = 2.0

_x16, _w16 = np.polynomial.legendre.leggauss(16)
_x32, _w32 = np.polynomial.legendre.leggauss(32)
cdef double[16] GL16_X
cdef double[16] GL16_W
cdef double[32] GL32_X
cdef double[32] GL32_W
cdef int _i
for _i in range(16):
    GL16_X[_i] = _x16[_i]
    GL16_W[_i] = _w16[_i]
for _i in range(32):
    GL32_X[_i] = _x32[_i]
    GL32_W[_i] = _w32[_i]

PROFILE_EPOW = 0
PROFILE_ONE_PLUS_E = 1
PROFILE_STEP = 2
TRIG_SIN = 0
TRIG_COS = 1


cdef void _k01_series(double z, double* k0out, double* k1out) nogil:
    cdef double y = 0.25 * z * z
    cdef double lg = log(0.5 * z)
    cdef double term = 1.0, harm = 0.0, i0 = 1.0, s0 = 0.0
    cdef int k = 0
    while True:
        k += 1
        term *= y / (<double>k * k)
        harm += 1.0 / k
        i0 += term
        s0 += term * harm
        if term * (1.0 + harm) < EPS * 1e-2 * fabs(i0):
            break
    k0out[0] = -(lg + EULER_GAMMA) * i0 + s0
    term = 1.0
    cdef double hk = 0.0, i1s = 1.0
    cdef double s1 = 2.0 * -EULER_GAMMA + 1.0
    k = 0
    while True:
        k += 1
        term *= y / (<double>k * (k + 1))
        hk += 1.0 / k
        i1s += term
        s1 += term * (2.0 * hk + 1.0 / (k + 1) - 2.0 * EULER_GAMMA)
        if term * (2.0 + 2.0 * hk) < EPS * 1e-2 * fabs(i1s):
            break
    k1out[0] = 1.0 / z + lg * 0.5 * z * i1s - 0.25 * z * s1


cdef void _k01_cf2_scaled(double z, double mu, double* kmu_out, double* kmu1_out) nogil:
    cdef double mu2 = mu * mu
    cdef double b = 2.0 * (1.0 + z)
    cdef double d = 1.0 / b
    cdef double h = d, delh = d
    cdef double q1 = 0.0, q2 = 1.0
    cdef double a1 = 0.25 - mu2
    cdef double q = a1, c = a1, a = -a1
    cdef double s = 1.0 + q * delh
    cdef double qnew, dels
    cdef int i
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
        if fabs(dels / s) < EPS:
            break
    h = a1 * h
    cdef double kmu = sqrt(M_PI / (2.0 * z)) / s
    kmu_out[0] = kmu
    kmu1_out[0] = kmu * (mu + z + 0.5 - h) / z


cdef void _k01(double z, double* k0, double* k1) nogil:
    cdef double ez
    if z <= K_SWITCH:
        _k01_series(z, k0, k1)
        ez = exp(z)
        k0[0] *= ez
        k1[0] *= ez
    else:
        _k01_cf2_scaled(z, 0.0, k0, k1)


def k01_scaled(double z):
    """Return (exp(z) K0(z), exp(z) K1(z)) for z > 0."""
    cdef double k0, k1
    _k01(z, &k0, &k1)
    return k0, k1


def kv_scaled(int two_nu, double z):
    """exp(z) K_nu(z) for nu = two_nu / 2 >= 0, by upward recurrence."""
    cdef double a, b, nu, t
    cdef int n, j
    n = two_nu // 2
    if two_nu % 2 == 0:
        _k01(z, &a, &b)
        if n == 0:
            return a
        nu = 1.0
    else:
        a = sqrt(M_PI / (2.0 * z))
        b = a * (1.0 + 1.0 / z)
        if n == 0:
            return a
        nu = 1.5
    for j in range(n - 1):
        t = b * (2.0 * nu / z) + a
        a = b
        b = t
        nu += 1.0
    return b


def struve_series(int nu, double z):
    """Ascending series of L_nu(z), nu in {-3..1}; returns (value, sum |terms|)."""
    cdef double h = 0.5 * z
    cdef double g = (4.0 * SQRT_PI / 3.0, -2.0 * SQRT_PI, SQRT_PI, 0.5 * SQRT_PI, 0.75 * SQRT_PI)[nu + 3]
    cdef double t = pow(h, nu + 1) / (0.5 * SQRT_PI * g)
    cdef double total = t
    cdef double asum = fabs(t)
    cdef double hh = h * h
    cdef int k = 0
    while True:
        t *= hh / ((k + 1.5) * (k + nu + 1.5))
        k += 1
        total += t
        asum += fabs(t)
        if fabs(t) <= EPS * 0.25 * fabs(total) and k > nu + 3:
            break
        if k > 5000:
            break
    return total, asum


def struve_m_scaled(double z):
    """Return (M0(z), M1(z) + 2/pi) with M_nu = L_nu - I_nu, z > 0."""
    cdef double smax = 60.0 / z
    cdef double tmax = asin(smax) if smax < 1.0 else 0.5 * M_PI
    cdef double acc0 = 0.0, acc1 = 0.0
    cdef double[4] cuts
    cuts[0] = 0.0
    cuts[1] = tmax / 16.0
    cuts[2] = tmax / 4.0
    cuts[3] = tmax
    cdef int p, j
    cdef double lo, hi, half, mid, th, st, ct, e
    for p in range(3):
        lo = cuts[p]
        hi = cuts[p + 1]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for j in range(32):
            th = mid + half * GL32_X[j]
            st = sin(th)
            ct = cos(th)
            e = exp(-z * st)
            acc0 += GL32_W[j] * half * e
            acc1 += GL32_W[j] * half * e * st * st * ct / (1.0 + ct)
    return -TWO_OVER_PI * acc0, TWO_OVER_PI * (z * acc1 + exp(-z))


cdef inline double _profile(int code, double param, double q) nogil:
    if code == 0:
        return pow(1.0 + q * q, -0.5 * param)
    if code == 1:
        return 1.0 / (1.0 + sqrt(1.0 + q * q))
    return 1.0 if q < param else 0.0


def lobe_integrals(int code, double param, int power, int trig, double r, edges, nsub):
    """Integrals of q^power * f(q) * trig(q r) over consecutive panels."""
    cdef double[::1] ed = np.ascontiguousarray(edges, dtype=np.float64)
    cdef long[::1] ns = np.ascontiguousarray(nsub, dtype=np.int64)
    cdef Py_ssize_t n = ed.shape[0] - 1
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef long j, m
    cdef int k
    cdef double a, step, acc, lo, half, mid, q, f, ph, tv
    with nogil:
        for i in range(n):
            a = ed[i]
            m = ns[i]
            step = (ed[i + 1] - a) / m
            acc = 0.0
            for j in range(m):
                lo = a + j * step
                half = 0.5 * step
                mid = lo + half
                for k in range(16):
                    q = mid + half * GL16_X[k]
                    f = _profile(code, param, q)
                    ph = q * r
                    if trig == 0:
                        tv = sin(ph)
                    else:
                        tv = cos(ph)
                    acc += GL16_W[k] * half * f * pow(q, power) * tv
            out[i] = acc
    return out_arr
