"""Dirac matrices, plane-wave spinors and their bilinear identities.

Standard (Dirac) representation, metric (+, -, -, -), units m_e = 1.
The four spinor families are u, u_hat (electron), v, v_hat (positron),
each with spin up/down along z.  Spinors carry the factor
sqrt((E + 1) / 2E) and are otherwise dimensionless; plane-wave
normalization belongs to the density layer.

Four-momentum conventions.  The hat families are negative-energy states.
Their completeness relations hold with p^mu = (-E, p), while their Dirac
equations hold, with the sign pattern used below, for p^mu = (E, -p), the
opposite overall sign.  Both conventions are exposed through
:func:`four_momentum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DomainError

__all__ = [
    "Momentum3",
    "SpinorKind",
    "GAMMA",
    "METRIC",
    "IDENTITY",
    "sigma",
    "slash",
    "make_spinor",
    "bar",
    "four_momentum",
    "bilinear",
    "dirac_residual",
    "charge_conjugation_residual",
    "completeness_residual",
    "bilinear_identity_residual",
    "rest_frame_densities",
    "exchange_integrand_one_momentum",
    "exchange_integrand_two_momenta",
    "exchange_integrand_contraction",
    "random_momenta",
]

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_Z2 = np.zeros((2, 2), dtype=complex)
_I2 = np.eye(2, dtype=complex)

IDENTITY = np.eye(4, dtype=complex)
GAMMA = (np.block([[_I2, _Z2], [_Z2, -_I2]]),) + tuple(
    np.block([[_Z2, s], [-s, _Z2]]) for s in _PAULI
)
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
for _g in GAMMA:
    _g.setflags(write=False)
IDENTITY.setflags(write=False)
METRIC.setflags(write=False)


def sigma(mu: int, nu: int) -> np.ndarray:
    """sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu]."""
    return 0.5j * (GAMMA[mu] @ GAMMA[nu] - GAMMA[nu] @ GAMMA[mu])


def slash(p4) -> np.ndarray:
    """gamma^mu p_mu for a contravariant four-vector p4."""
    return p4[0] * GAMMA[0] - p4[1] * GAMMA[1] - p4[2] * GAMMA[2] - p4[3] * GAMMA[3]


@dataclass(frozen=True)
class Momentum3:
    px: float
    py: float
    pz: float

    @classmethod
    def of(cls, p) -> "Momentum3":
        if isinstance(p, Momentum3):
            return p
        px, py, pz = (float(x) for x in p)
        return cls(px, py, pz)

    def vec(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])

    def energy(self) -> float:
        return math.sqrt(1.0 + self.px**2 + self.py**2 + self.pz**2)

    def __neg__(self):
        return Momentum3(-self.px, -self.py, -self.pz)


_TAGS = ("u", "u_hat", "v", "v_hat")
_SPINS = ("up", "down")


@dataclass(frozen=True)
class SpinorKind:
    tag: str
    spin: str

    def __post_init__(self):
        if self.tag not in _TAGS or self.spin not in _SPINS:
            raise DomainError(f"unknown spinor kind {self.tag!r}/{self.spin!r}")

    @property
    def sign_factor(self) -> int:
        """+1 for electron families, -1 for positron families."""
        return 1 if self.tag in ("u", "u_hat") else -1

    @property
    def is_hat(self) -> bool:
        return self.tag.endswith("_hat")

    @classmethod
    def all(cls):
        return [cls(t, s) for t in _TAGS for s in _SPINS]


def _kind(k) -> SpinorKind:
    if isinstance(k, SpinorKind):
        return k
    return SpinorKind(*k)


def make_spinor(kind, p) -> np.ndarray:
    """Plane-wave spinor of the given family and spin at momentum p."""
    kind = _kind(kind)
    p = Momentum3.of(p)
    e = p.energy()
    a = e + 1.0
    pre = math.sqrt(a / (2.0 * e))
    pp = complex(p.px, p.py) / a
    pm = complex(p.px, -p.py) / a
    z = p.pz / a
    table = {
        ("u", "up"): (1, 0, z, pp),
        ("u", "down"): (0, 1, pm, -z),
        ("u_hat", "up"): (-z, -pp, 1, 0),
        ("u_hat", "down"): (-pm, z, 0, 1),
        ("v", "up"): (pm, -z, 0, 1),
        ("v", "down"): (z, pp, 1, 0),
        ("v_hat", "up"): (0, 1, -pm, z),
        ("v_hat", "down"): (1, 0, -z, -pp),
    }
    return pre * np.array(table[(kind.tag, kind.spin)], dtype=complex)


def bar(psi: np.ndarray) -> np.ndarray:
    """Dirac adjoint as a row vector."""
    return psi.conj() @ GAMMA[0]


def four_momentum(kind, p, *, dirac_equation: bool = False) -> np.ndarray:
    """Contravariant four-momentum attached to a spinor family.

    Electron and positron families (u, v) use (E, p).  Hat families use
    (-E, p), except that their Dirac equation is stated for (E, -p).
    """
    kind = _kind(kind)
    p = Momentum3.of(p)
    e = p.energy()
    if not kind.is_hat:
        return np.array([e, p.px, p.py, p.pz])
    if dirac_equation:
        return np.array([e, -p.px, -p.py, -p.pz])
    return np.array([-e, p.px, p.py, p.pz])


def _gamma_string(spec) -> np.ndarray:
    if isinstance(spec, str):
        spec = (spec,)
    name, *idx = spec
    if any(i not in (0, 1, 2, 3) for i in idx):
        raise DomainError(f"Lorentz index out of range in {spec!r}")
    if name == "scalar" and not idx:
        return IDENTITY
    if name == "vector" and len(idx) == 1:
        return GAMMA[idx[0]]
    if name == "tensor" and len(idx) == 2:
        return sigma(*idx)
    raise DomainError(f"unknown gamma string {spec!r}")


def bilinear(bra, gamma_string, ket) -> complex:
    """psi_bar_bra Gamma psi_ket for (kind, momentum) pairs."""
    b = make_spinor(bra[0], bra[1])
    k = make_spinor(ket[0], ket[1])
    return complex(bar(b) @ _gamma_string(gamma_string) @ k)


# sign s in (s * pslash - 1) psi = 0
_DIRAC_SIGN = {"u": 1.0, "u_hat": -1.0, "v": -1.0, "v_hat": 1.0}


def dirac_residual(kind, p) -> float:
    kind = _kind(kind)
    p4 = four_momentum(kind, p, dirac_equation=True)
    op = _DIRAC_SIGN[kind.tag] * slash(p4) - IDENTITY
    return float(np.abs(op @ make_spinor(kind, p)).max())


def charge_conjugation_residual(p) -> float:
    """Max deviation over the identities i gamma^2 psi* = rhs."""
    p = Momentum3.of(p)
    c = 1j * GAMMA[2]

    def conj(tag, spin, q=p):
        return c @ make_spinor((tag, spin), q).conj()

    pairs = [
        (conj("u", "up"), make_spinor(("u_hat", "down"), -p)),
        (conj("u", "up"), make_spinor(("v", "up"), p)),
        (conj("u", "down"), -make_spinor(("u_hat", "up"), -p)),
        (conj("u", "down"), -make_spinor(("v", "down"), p)),
        (conj("u_hat", "up"), -make_spinor(("u", "down"), -p)),
        (conj("u_hat", "up"), -make_spinor(("v_hat", "up"), p)),
        (conj("u_hat", "down"), make_spinor(("u", "up"), -p)),
        (conj("u_hat", "down"), make_spinor(("v_hat", "down"), p)),
    ]
    return float(max(np.abs(a - b).max() for a, b in pairs))


# sum_s psi psi_bar = sign * (pslash + mass_sign) / 2E
_COMPLETENESS = {"u": (1.0, 1.0), "v": (1.0, -1.0), "u_hat": (-1.0, 1.0), "v_hat": (-1.0, -1.0)}


def completeness_residual(family: str, p) -> float:
    if family not in _TAGS:
        raise DomainError(f"unknown family {family!r}")
    p = Momentum3.of(p)
    total = sum(np.outer(make_spinor((family, s), p), bar(make_spinor((family, s), p))) for s in _SPINS)
    sgn, ms = _COMPLETENESS[family]
    p4 = four_momentum((family, "up"), p)
    expect = sgn * (slash(p4) + ms * IDENTITY) / (2.0 * p.energy())
    return float(np.abs(total - expect).max())


def bilinear_identity_residual(p) -> float:
    """Max deviation of the scalar, density and current bilinears.

    Covers psi_bar psi = +-1/E, psi_bar gamma^0 psi' = delta, the current
    psi_bar gamma psi' = +-p/E delta for every family and spin pair, and the
    orthogonality of gamma^0 between u and u_hat and between v and v_hat.
    """
    p = Momentum3.of(p)
    e = p.energy()
    pv = p.vec()
    scalar = {"u": 1.0, "v": -1.0, "u_hat": -1.0, "v_hat": 1.0}
    current = {"u": 1.0, "v": 1.0, "u_hat": -1.0, "v_hat": -1.0}
    worst = 0.0
    for tag in _TAGS:
        for s1, s2 in product(_SPINS, _SPINS):
            d = 1.0 if s1 == s2 else 0.0
            bra = ((tag, s1), p)
            ket = ((tag, s2), p)
            worst = max(worst, abs(bilinear(bra, "scalar", ket) - scalar[tag] * d / e))
            worst = max(worst, abs(bilinear(bra, ("vector", 0), ket) - d))
            for i in range(3):
                worst = max(worst, abs(bilinear(bra, ("vector", i + 1), ket) - current[tag] * pv[i] * d / e))
    for a, b in (("u", "u_hat"), ("v", "v_hat")):
        for s1, s2 in product(_SPINS, _SPINS):
            worst = max(worst, abs(bilinear(((a, s1), p), ("vector", 0), ((b, s2), p))))
    return float(worst)


def rest_frame_densities():
    """Bilinears of the reference spinor u_hat(0, up) with s_e = +1.

    Returns ``(n, m, s)``: the vector density n^mu, the scalar m and the
    antisymmetric tensor s^{mu nu}, without plane-wave normalization.
    """
    ref = (("u_hat", "up"), (0.0, 0.0, 0.0))
    n = np.array([bilinear(ref, ("vector", mu), ref).real for mu in range(4)])
    m = bilinear(ref, "scalar", ref).real
    s = np.array([[bilinear(ref, ("tensor", mu, nu), ref).real for nu in range(4)] for mu in range(4)])
    return n, m, s


def _channel_matrices(channel):
    if isinstance(channel, str):
        channel = (channel,)
    name, *idx = channel
    if any(i not in (0, 1, 2, 3) for i in idx):
        raise DomainError(f"Lorentz index out of range in {channel!r}")
    if name == "scalar" and not idx:
        return IDENTITY, IDENTITY
    if name == "vector" and len(idx) == 2:
        return GAMMA[idx[0]], GAMMA[idx[1]]
    if name == "tensor" and len(idx) == 4:
        return sigma(idx[0], idx[1]), sigma(idx[2], idx[3])
    raise DomainError(f"unknown exchange channel {channel!r}")


def exchange_integrand_one_momentum(channel, p) -> complex:
    """Spinor factor multiplying cos(p.(r - r')) in the one-momentum exchange term.

    Electron-sea (u_hat) minus positron-sea (v_hat) contributions, each a
    spin sum of Gamma' u_hat(0, up) products, symmetrized over the order
    of the two vertex matrices.  The expected value is -g/E for the vector
    channel, -1/E for the scalar channel and -g g/E for the tensor channel.
    """
    g1, g2 = _channel_matrices(channel)
    p = Momentum3.of(p)
    ref = make_spinor(("u_hat", "up"), (0.0, 0.0, 0.0))
    ref_bar = bar(ref)

    def sea(tag, a, b):
        acc = 0.0j
        for s in _SPINS:
            psi = make_spinor((tag, s), p)
            acc += (bar(psi) @ a @ ref) * (ref_bar @ b @ psi)
        return acc

    a_sym = 0.5 * (sea("u_hat", g1, g2) + sea("u_hat", g2, g1))
    b_sym = 0.5 * (sea("v_hat", g1, g2) + sea("v_hat", g2, g1))
    return complex(-(a_sym - b_sym))


def _axis_phase(p, q, r):
    return (p.pz - q.pz) * r, (p.pz + q.pz) * r


def exchange_integrand_two_momenta(p, p2, separation_r: float) -> float:
    """mu = nu = 0 integrand of the two-momentum exchange term, separation along z."""
    if not separation_r > 0:
        raise DomainError(f"separation must be positive, got {separation_r!r}")
    p = Momentum3.of(p)
    q = Momentum3.of(p2)
    ee = p.energy() * q.energy()
    dot = float(p.vec() @ q.vec())
    minus, plus = _axis_phase(p, q, separation_r)
    return (-2.0 * (1.0 / ee + 1.0 + dot / ee) * math.cos(minus)
            - 2.0 * (1.0 / ee - 1.0 - dot / ee) * math.cos(plus))


def exchange_integrand_contraction(p, p2, separation_r: float) -> float:
    """The same integrand from explicit spinor products and plane-wave phases."""
    if not separation_r > 0:
        raise DomainError(f"separation must be positive, got {separation_r!r}")
    p = Momentum3.of(p)
    q = Momentum3.of(p2)
    minus, plus = _axis_phase(p, q, separation_r)
    g0 = GAMMA[0]
    total = 0.0
    for s1, s2 in product(_SPINS, _SPINS):
        def term(t1, t2, phase):
            a = make_spinor((t1, s1), p)
            b = make_spinor((t2, s2), q)
            x = (bar(a) @ g0 @ b) * (bar(b) @ g0 @ a) * np.exp(1j * phase)
            return 2.0 * x.real

        total += term("u_hat", "u_hat", -minus) + term("v_hat", "v_hat", minus)
        total -= term("u_hat", "v_hat", -plus) + term("v_hat", "u_hat", plus)
    return -0.5 * total


def random_momenta(n: int, seed: int = 20240101, bound: float = 3.0):
    """Reproducible momenta with components uniform in [-bound, bound]."""
    rng = np.random.default_rng(seed)
    return [Momentum3(*row) for row in rng.uniform(-bound, bound, size=(n, 3))]
