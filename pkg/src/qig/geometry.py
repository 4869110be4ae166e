"""Closed-form dual geometry of the qubit in polar coordinates ``(w, theta, phi)``.

Index 0 is ``w``, 1 is ``theta`` and 2 is ``phi``.  Connection arrays follow
:mod:`qig.oracle`: ``gamma[l, j, k] = G_ljk`` with the first index lowered.
With ``t = (1 - w) / (1 + w)`` every radial coefficient is a ratio
``sinh(s ln t) / (2 s)``, which is evaluated through its ``s -> 0`` limit at
the ends of the ``q`` range.
"""

from dataclasses import dataclass

import numpy as np

from .divergences import Q_LIMIT_TOL
from .errors import BadParameter, OutOfDomain
from .metrics import pair_coefficient
from .oracle import ConnectionCoefficients, Curvature, curvature_from_connection

POLAR_LABELS = ("dw", "dtheta", "dphi")


@dataclass(frozen=True)
class QubitGeometryPoint:
    q: float
    w: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.w < 1.0:
            raise OutOfDomain(f"w must lie in (0, 1), got {self.w}")
        if not 0.0 < self.theta < np.pi:
            raise OutOfDomain(f"theta must lie in (0, pi), got {self.theta}")
        if not -Q_LIMIT_TOL < self.q < 1.0 + Q_LIMIT_TOL:
            raise BadParameter(f"q must lie in [0, 1], got {self.q}")

    @property
    def coords(self):
        return np.array([self.w, self.theta, self.phi])


def _sinhc(s, lt):
    # sinh(s lt) / (2 s), finite at s = 0
    if abs(s) < Q_LIMIT_TOL:
        return lt / 2.0
    return np.sinh(s * lt) / (2.0 * s)


def _orbit_term(q, w):
    # [t^q (1+w) + t^-q (1-w) - 2] / (4 q (1-q))
    lt = np.log((1.0 - w) / (1.0 + w))
    if abs(q - 1.0) < Q_LIMIT_TOL or abs(q) < Q_LIMIT_TOL:
        return w * lt / 2.0
    a = np.exp(q * lt) * (1.0 + w) + np.exp(-q * lt) * (1.0 - w) - 2.0
    return a / (4.0 * q * (1.0 - q))


def polar_metric(q, w, theta):
    """Tsallis metric in ``(w, theta, phi)``: ``diag(1/(1-w^2), c/4, c sin^2(theta)/4)``."""
    c = pair_coefficient((1.0 + w) / 2.0, (1.0 - w) / 2.0, q) / 4.0
    return np.diag([1.0 / (1.0 - w * w), c, c * np.sin(theta) ** 2])


def polar_connection(q, w, theta, which="primal", flipped_dual=False):
    """Closed-form ``G_ljk`` (or ``G*_ljk``) of the rescaled Tsallis divergence.

    ``flipped_dual=True`` gives the dual radial coefficients ``G*_122`` and
    ``G*_133`` the opposite sign; that variant violates ``d_theta g_{w theta} = G_{theta theta w} + G*_{w theta theta}``
    and autoduality at ``q = 1/2``.
    """
    if which not in ("primal", "dual"):
        raise ValueError(f"which must be 'primal' or 'dual', got {which!r}")
    lt = np.log((1.0 - w) / (1.0 + w))
    p = 1.0 - q
    s2 = np.sin(theta) ** 2
    cs = np.cos(theta) * np.sin(theta)
    orbit = _orbit_term(q, w) * cs
    g = np.zeros((3, 3, 3))
    if which == "primal":
        g[0, 0, 0] = 2.0 * p * w / (1.0 - w * w) ** 2
        g[0, 1, 1] = _sinhc(q, lt)
        g[1, 0, 1] = -_sinhc(p, lt)
    else:
        g[0, 0, 0] = 2.0 * q * w / (1.0 - w * w) ** 2
        g[0, 1, 1] = -_sinhc(p, lt) if flipped_dual else _sinhc(p, lt)
        g[1, 0, 1] = -_sinhc(q, lt)
    g[0, 2, 2] = s2 * g[0, 1, 1]
    g[2, 0, 2] = s2 * g[1, 0, 1]
    g[1, 2, 2] = orbit
    g[2, 1, 2] = -orbit
    # symmetric in the last two indices
    g[1, 1, 0] = g[1, 0, 1]
    g[2, 2, 0] = g[2, 0, 2]
    g[2, 2, 1] = g[2, 1, 2]
    return g


def polar_curvature(q, w, theta, which="primal", h=1e-5):
    """Curvature of the closed-form connection, differentiating the exact coefficients numerically."""
    pt = QubitGeometryPoint(q, w, theta)

    def conn(x):
        return polar_connection(q, x[0], x[1], which)

    def metric(x):
        return polar_metric(q, x[0], x[1])

    c = curvature_from_connection(conn, metric, pt.coords, h)
    return Curvature(c.riemann, c.ricci, c.scalar, c.basepoint, which)


def listed_riemann_q1(w, theta):
    """The seven ``q -> 1`` Riemann reference components, completed by antisymmetry in ``m, n``.

    Returned as ``R[k, l, m, n] = R^k_lmn``.  These do not follow from
    :func:`polar_connection` at ``q = 1``, whose curvature vanishes.
    """
    s, c = np.sin(theta), np.cos(theta)
    r = np.zeros((3, 3, 3, 3))
    listed = {
        (0, 1, 0, 1): 1.0,
        (0, 2, 0, 2): s * s,
        (0, 2, 1, 2): 2.0 * w * c * s,
        (1, 0, 0, 1): 1.0 / w,
        (1, 2, 1, 2): c * c - s * s,
        (2, 0, 0, 2): 1.0 / w ** 2,
        (2, 1, 1, 2): 1.0 + (c / s) ** 2,
    }
    for (k, l, m, n), v in listed.items():
        r[k, l, m, n] = v
        r[k, l, n, m] = -v
    return r


def _artanh(w):
    return 0.5 * np.log((1.0 + w) / (1.0 - w))


SCALAR_LIMITS = ("q1", "q1_dual", "q0", "q0_dual", "half")


def scalar_curvature_limits(w, which):
    """Reference closed forms for the scalar curvature of the qubit connections at the ends of the ``q`` range and at ``q = 1/2``.

    ``which`` is one of ``q1``, ``q1_dual``, ``q0``, ``q0_dual``, ``half``.
    The two ends are exchanged: ``q0 = q1_dual`` and ``q0_dual = q1``.
    """
    if not 0.0 < w < 1.0:
        raise OutOfDomain(f"w must lie in (0, 1), got {w}")
    if which == "half":
        return 0.5 - (np.sqrt(1.0 - w * w) + 1.0) / w ** 2
    if which in ("q1", "q0_dual"):
        return 2.0 * (1.0 - 1.0 / w ** 2)
    if which in ("q1_dual", "q0"):
        a = _artanh(w)
        return (4.0 * a * (w - (1.0 - w * w) * a) - 2.0) / ((1.0 - w * w) * a * a)
    raise BadParameter(f"unknown curvature limit {which!r}; expected one of {SCALAR_LIMITS}")


# --- typed entry points ------------------------------------------------------

def qubit_connection_closed(pt, which="primal"):
    return ConnectionCoefficients(polar_connection(pt.q, pt.w, pt.theta, which), pt.coords, which)


def qubit_curvature_closed(pt, which="primal"):
    """Reference ``q -> 1`` Riemann components ``R^k_lmn`` (primal connection only)."""
    if which != "primal" or abs(pt.q - 1.0) >= Q_LIMIT_TOL:
        raise BadParameter("closed-form Riemann components are available only for q -> 1, primal")
    return listed_riemann_q1(pt.w, pt.theta)
