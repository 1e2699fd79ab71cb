"""Radially symmetric inverse Fourier transforms in three dimensions.

For a profile f(|p|) the transform reduces to a one-dimensional sine
integral,

    F(r) = (2 pi^2 r)^-1  int_0^inf q f(q) sin(q r) dq,

and the radial component of the transform of ``p f(|p|)`` is -F'(r).
Both integrals oscillate and, for profiles with algebraic decay, converge
only conditionally.  The evaluation splits the half line at the zeros of
the trigonometric factor, integrates each lobe with 16-point
Gauss-Legendre, closes every partial sum with the asymptotic tail of the
leading power law and accelerates the closed sums with Wynn's epsilon
algorithm.  The value returned for a conditionally convergent integral is
therefore its Abel limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._backend import kernels
from .errors import DomainError, NonConvergence
from .quadrature import wynn_epsilon

__all__ = [
    "MomentumProfile",
    "QuadratureSpec",
    "TransformResult",
    "inverse_ft_radial",
    "inverse_ft_gradient_radial",
    "transform",
]

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_SIN, _COS = kernels.TRIG_SIN, kernels.TRIG_COS
_TWO_PI2 = 2.0 * math.pi**2
_MAX_SUB = 64


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the oscillatory transforms.

    ``tail_cut`` is the momentum below which partial sums are not fed to
    the accelerator: the tail closure assumes the leading power law of the
    profile, which is only accurate once q is well past the scale of the
    profile (1 in these units).
    """

    rel_tol: float = 1e-7
    abs_tol: float = 1e-12
    max_panels: int = 2000
    accel_terms: int = 10
    tail_cut: float = 4.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_panels < 8:
            raise DomainError("max_panels must be at least 8")
        if self.accel_terms < 4:
            raise DomainError("accel_terms must be at least 4")
        if not self.tail_cut >= 0:
            raise DomainError("tail_cut must be non-negative")


def _as_vectorized(fun):
    probe = np.array([0.5, 1.5])
    try:
        out = np.asarray(fun(probe), dtype=float)
        if out.shape == probe.shape:
            return fun
    except Exception:
        pass
    vec = np.vectorize(lambda q: float(fun(float(q))), otypes=[float])
    return vec


@dataclass(frozen=True)
class MomentumProfile:
    """A radial momentum-space profile q -> f(q) and its decay class.

    ``decay`` is ``("algebraic", k)`` for f ~ c q^-k, ``("exponential",)``
    or ``("compact", q_max)``.  Profiles with a built-in ``code`` run in
    the compiled lobe kernel; anything else goes through numpy.
    """

    evaluator: Callable
    decay: tuple
    code: int | None = None
    param: float = 0.0
    label: str = "custom"
    _vec: Callable = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        kind = self.decay[0]
        if kind not in ("algebraic", "exponential", "compact"):
            raise DomainError(f"unknown decay class {kind!r}")
        object.__setattr__(self, "_vec", _as_vectorized(self.evaluator))
        if kind == "compact":
            if not self.decay[1] > 0:
                raise DomainError("compact support needs q_max > 0")
            return
        vals = self(np.array([1e2, 1e3]))
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"profile {self.label} is not finite at q = 1e2, 1e3")
        if kind == "algebraic":
            k = float(self.decay[1])
            a, b = np.abs(vals) * np.array([1e2, 1e3]) ** k
            # |f| q^k must stay bounded: allow a modest drift, not growth
            if b > 10.0 * a + 1e-300:
                raise DomainError(
                    f"profile {self.label} decays slower than q^-{k:g}"
                )

    def __call__(self, q):
        return self._vec(q)

    @property
    def power_law(self) -> float | None:
        return float(self.decay[1]) if self.decay[0] == "algebraic" else None

    # Built-in profiles ----------------------------------------------------

    @classmethod
    def inverse_energy_power(cls, n: float) -> "MomentumProfile":
        """f(q) = E(q)^-n with E = sqrt(1 + q^2)."""
        n = float(n)
        return cls(
            lambda q, n=n: (1.0 + np.asarray(q, dtype=float) ** 2) ** (-0.5 * n),
            ("algebraic", n),
            code=kernels.PROFILE_EPOW,
            param=n,
            label=f"E^-{n:g}",
        )

    @classmethod
    def inverse_one_plus_energy(cls) -> "MomentumProfile":
        """f(q) = 1 / (1 + E(q))."""
        return cls(
            lambda q: 1.0 / (1.0 + np.sqrt(1.0 + np.asarray(q, dtype=float) ** 2)),
            ("algebraic", 1.0),
            code=kernels.PROFILE_ONE_PLUS_E,
            label="1/(1+E)",
        )

    @classmethod
    def step(cls, q_max: float) -> "MomentumProfile":
        """Indicator of the ball q < q_max (a filled Fermi sphere)."""
        q_max = float(q_max)
        return cls(
            lambda q, a=q_max: np.where(np.asarray(q, dtype=float) < a, 1.0, 0.0),
            ("compact", q_max),
            code=kernels.PROFILE_STEP,
            param=q_max,
            label=f"step({q_max:g})",
        )

    @classmethod
    def constant(cls, c: float = 1.0) -> "MomentumProfile":
        return cls(lambda q, c=c: np.full(np.shape(q), c, dtype=float), ("algebraic", 0.0),
                   label=f"const({c:g})")

    def scaled(self, a: float) -> "MomentumProfile":
        ev = self._vec
        return MomentumProfile(lambda q: a * ev(q), self.decay, label=f"{a:g}*{self.label}")

    def __add__(self, other: "MomentumProfile") -> "MomentumProfile":
        f, g = self._vec, other._vec
        return MomentumProfile(lambda q: f(q) + g(q), _slower(self.decay, other.decay),
                               label=f"{self.label}+{other.label}")


def _slower(d1, d2):
    rank = {"compact": 0, "exponential": 1, "algebraic": 2}
    if rank[d1[0]] != rank[d2[0]]:
        return d1 if rank[d1[0]] > rank[d2[0]] else d2
    if d1[0] == "algebraic":
        return ("algebraic", min(d1[1], d2[1]))
    if d1[0] == "compact":
        return ("compact", max(d1[1], d2[1]))
    return d1


@dataclass(frozen=True)
class TransformResult:
    value: float
    error: float
    panels: int


def _nsub(edges):
    left = edges[:-1]
    width = np.diff(edges)
    n = np.ceil(width / np.maximum(1.0, 0.25 * left)).astype(np.int64)
    return np.clip(n, 1, _MAX_SUB)


def _lobes(profile, power, trig, r, edges):
    nsub = _nsub(edges)
    if profile.code is not None:
        return np.asarray(
            kernels.lobe_integrals(profile.code, profile.param, power, trig, r, edges, nsub)
        )
    lo = np.repeat(edges[:-1], nsub)
    width = np.repeat(np.diff(edges) / nsub, nsub)
    offs = np.concatenate([np.arange(m) for m in nsub])
    half = 0.5 * width
    mid = lo + offs * width + half
    q = mid[:, None] + half[:, None] * _GL_X[None, :]
    tv = np.sin(q * r) if trig == _SIN else np.cos(q * r)
    vals = profile(q) * q**power * tv
    sub = (vals @ _GL_W) * half
    starts = np.concatenate([[0], np.cumsum(nsub)[:-1]])
    return np.add.reduceat(sub, starts)


def _tail(m, big_q, r, trig, terms=8):
    """Abel value of int_Q^inf q^m trig(q r) dq from integration by parts."""
    ir = 1j * r
    total = 0.0 + 0.0j
    coef = 1.0
    last = math.inf
    for j in range(terms):
        t = coef * big_q ** (m - j) / ir**j
        if abs(t) > last:
            break
        total += t
        last = abs(t)
        coef *= -(m - j)
        if coef == 0.0:
            break
    val = -np.exp(1j * big_q * r) / ir * total
    return val.imag if trig == _SIN else val.real


def _edge(k, r, trig):
    return (k * math.pi if trig == _SIN else (k - 0.5) * math.pi) / r


def _oscillatory(profile, power, trig, r, spec):
    """int_0^inf q^power f(q) trig(q r) dq with the contract of the module."""
    kind = profile.decay[0]
    if kind == "compact":
        q_max = float(profile.decay[1])
        n = int(math.floor(q_max * r / math.pi)) + 1
        if n > spec.max_panels:
            raise NonConvergence(f"{n} lobes needed below q_max={q_max}")
        inner = [_edge(k, r, trig) for k in range(1, n + 1)]
        edges = np.array([0.0] + [e for e in inner if e < q_max] + [q_max])
        lobes = _lobes(profile, power, trig, r, edges)
        val = math.fsum(lobes)
        return TransformResult(val, 1e-14 * (1.0 + np.abs(lobes).sum()), len(lobes))

    if kind == "algebraic":
        k = float(profile.decay[1])
        m = power - k
        if k <= 0.0:
            raise NonConvergence(
                f"profile {profile.label} does not decay; its transform is a distribution"
            )
    batch = 16
    edges = np.array([0.0] + [_edge(j, r, trig) for j in range(1, batch + 1)])
    lobes = list(_lobes(profile, power, trig, r, edges))
    closed = []
    partial = math.fsum(lobes)
    n_done = len(lobes)
    estimates = []
    while True:
        # closed partial sums for every lobe boundary past tail_cut
        cum = np.cumsum(lobes)
        start = n_done - batch if closed else 0
        for i in range(start, n_done):
            big_q = edges[i + 1] if i + 1 < len(edges) else _edge(i + 1, r, trig)
            if big_q < spec.tail_cut:
                continue
            if kind == "algebraic":
                amp = float(profile(np.array([big_q]))[0]) * big_q**k
                closed.append(cum[i] + amp * _tail(m, big_q, r, trig))
            else:
                closed.append(cum[i])
        partial = cum[-1]
        if kind == "exponential":
            tail_size = max(abs(x) for x in lobes[-4:])
            if len(closed) >= 4 and tail_size <= max(spec.abs_tol, spec.rel_tol * abs(partial)) * 1e-3:
                return TransformResult(float(partial), tail_size, n_done)
        elif len(closed) >= spec.accel_terms + 1:
            est, prev = wynn_epsilon(closed[-(spec.accel_terms + 1):])
            estimates.append(est)
            tol = max(spec.abs_tol, spec.rel_tol * abs(est))
            if len(estimates) >= 2 and abs(est - estimates[-2]) <= tol and abs(est - prev) <= tol:
                return TransformResult(est, max(abs(est - estimates[-2]), abs(est - prev)), n_done)
        if n_done + batch > spec.max_panels:
            raise NonConvergence(
                f"transform of {profile.label} at r={r} not converged after {n_done} lobes"
            )
        new_edges = np.array([_edge(j, r, trig) for j in range(n_done, n_done + batch + 1)])
        if n_done == 0:
            new_edges[0] = 0.0
        more = _lobes(profile, power, trig, r, new_edges)
        lobes.extend(more)
        edges = np.concatenate([edges, new_edges[1:]])
        n_done += batch


def _check_r(r):
    r = float(r)
    if not r > 0 or not math.isfinite(r):
        raise DomainError(f"r must be positive and finite, got {r!r}")
    return r


def transform(f: MomentumProfile, r: float, spec: QuadratureSpec | None = None) -> TransformResult:
    """Inverse transform with its error estimate and panel count."""
    r = _check_r(r)
    spec = spec or QuadratureSpec()
    res = _oscillatory(f, 1, _SIN, r, spec)
    scale = 1.0 / (_TWO_PI2 * r)
    return TransformResult(res.value * scale, res.error * scale, res.panels)


def inverse_ft_radial(f: MomentumProfile, r: float, spec: QuadratureSpec | None = None) -> float:
    """(2 pi)^-3 int f(|p|) exp(i p.r) d^3p for a radial profile."""
    return transform(f, r, spec).value


def inverse_ft_gradient_radial(f: MomentumProfile, r: float, spec: QuadratureSpec | None = None) -> float:
    """Radial part of the transform of p f(|p|), equal to -d/dr of the transform of f."""
    r = _check_r(r)
    spec = spec or QuadratureSpec()
    s = _oscillatory(f, 1, _SIN, r, spec)
    c = _oscillatory(f, 2, _COS, r, spec)
    return (s.value - r * c.value) / (_TWO_PI2 * r * r)
