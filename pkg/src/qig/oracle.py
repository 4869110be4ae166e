"""Finite-difference information geometry from a divergence and a chart.

Every quantity is a mixed partial derivative of ``F(x, y)`` on the product
``M x M`` taken with independent left (``x``) and right (``y``) perturbations
and then restricted to the diagonal ``x = y``:

* metric        ``g_jk      = -d^2 F / dx_j dy_k``
* connection    ``G_ljk     = -d^3 F / dx_j dx_k dy_l``
* dual          ``G*_ljk    = -d^3 F / dy_j dy_k dx_l``

The first index of a connection array is the lowered one, i.e.
``G_ljk = g(nabla_j d_k, d_l)``.  Each derivative direction contributes a
central difference, so a second mixed partial is a 4-point stencil and a third
one an 8-point stencil.
"""

import itertools
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainMargin, SingularMetric
from .metrics import MetricTensor

DEFAULT_H2 = 1e-3
DEFAULT_H3 = 1e-2
SINGULAR_COND = 1e12

# central first-derivative weights (offset, weight) in units of h
_WEIGHTS = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((1, 2.0 / 3.0), (-1, -2.0 / 3.0), (2, -1.0 / 12.0), (-2, 1.0 / 12.0)),
}


@dataclass(frozen=True)
class FDScheme:
    """Step sizes: ``h2`` for metrics, ``h3`` for connections, ``hc`` for derivatives of connections."""

    h2: float = DEFAULT_H2
    h3: float = DEFAULT_H3
    hc: float = DEFAULT_H3
    order: int = 2

    def __post_init__(self):
        if min(self.h2, self.h3, self.hc) <= 0:
            raise ValueError("finite-difference steps must be positive")
        if self.order not in _WEIGHTS:
            raise ValueError(f"order must be one of {sorted(_WEIGHTS)}, got {self.order}")

    @property
    def reach(self):
        """Largest stencil offset along one axis, in units of h, per derivative direction."""
        return max(abs(o) for o, _ in _WEIGHTS[self.order])

    @classmethod
    def from_env(cls, var="QIG_FD_STEP"):
        """Read ``h2[,h3[,hc]]`` from an environment variable, falling back to defaults."""
        raw = os.environ.get(var)
        if not raw:
            return cls()
        steps = [float(s) for s in raw.split(",") if s.strip()]
        names = ("h2", "h3", "hc")
        return cls(**dict(zip(names, steps)))


@dataclass(frozen=True)
class ConnectionCoefficients:
    values: np.ndarray
    basepoint: np.ndarray
    which: str
    torsion_residual: float = 0.0

    def __getitem__(self, idx):
        return float(self.values[idx])


@dataclass(frozen=True)
class Curvature:
    riemann: np.ndarray  # R^k_{lmn}
    ricci: np.ndarray
    scalar: float
    basepoint: Optional[np.ndarray] = None
    which: str = "primal"
    diagnostics: dict = field(default_factory=dict)


class _Stencil:
    """Caches chart states and divergence values on an integer offset lattice."""

    def __init__(self, divergence, chart, x, h):
        self.divergence = divergence
        self.chart = chart
        self.x = np.asarray(x, dtype=float)
        self.h = h
        self._states = {}
        self._values = {}

    def state(self, offset):
        st = self._states.get(offset)
        if st is None:
            st = self.chart.to_state(self.x + self.h * np.asarray(offset, dtype=float))
            self._states[offset] = st
        return st

    def value(self, left, right):
        key = (left, right)
        v = self._values.get(key)
        if v is None:
            v = self.divergence(self.state(left), self.state(right))
            self._values[key] = v
        return v

    def mixed(self, left_dirs, right_dirs, order=2):
        """Central mixed partial along the given left and right coordinate directions.

        Each direction contributes one central first difference, so order 2
        gives the 4-point (second) and 8-point (third) product stencils.
        """
        n = self.chart.dim
        dirs = list(left_dirs) + list(right_dirs)
        nleft = len(left_dirs)
        total = 0.0
        for taps in itertools.product(_WEIGHTS[order], repeat=len(dirs)):
            lo = [0] * n
            ro = [0] * n
            weight = 1.0
            for pos, ((off, wt), d) in enumerate(zip(taps, dirs)):
                (lo if pos < nleft else ro)[d] += off
                weight *= wt
            total += weight * self.value(tuple(lo), tuple(ro))
        return total / self.h ** len(dirs)


def _check_margin(chart, x, reach):
    x = np.asarray(x, dtype=float)
    if not chart.domain_check(x):
        raise DomainMargin(f"{x} is outside the domain of {chart.name}")
    for j in range(chart.dim):
        for s in (1, -1):
            xp = x.copy()
            xp[j] += s * reach
            if not chart.domain_check(xp):
                raise DomainMargin(f"stencil of reach {reach} leaves {chart.name} along coordinate {j}")


def metric_fd(divergence, chart, x, scheme=None):
    """Metric components ``-d^2 F / dx_j dy_k`` at ``x`` (symmetrized)."""
    scheme = scheme or FDScheme()
    _check_margin(chart, x, 2 * scheme.reach * scheme.h2)
    st = _Stencil(divergence, chart, x, scheme.h2)
    n = chart.dim
    raw = np.array([[-st.mixed((j,), (k,), scheme.order) for k in range(n)] for j in range(n)])
    asym = float(np.max(np.abs(raw - raw.T)))
    g = 0.5 * (raw + raw.T)
    return MetricTensor(g, chart.coframe_labels, basepoint=np.asarray(x, dtype=float),
                        q=divergence.q), asym


def connection_fd(divergence, chart, x, scheme=None, which="primal"):
    """Connection coefficients ``G_ljk`` (``which="primal"``) or ``G*_ljk`` (``"dual"``)."""
    if which not in ("primal", "dual"):
        raise ValueError(f"which must be 'primal' or 'dual', got {which!r}")
    scheme = scheme or FDScheme()
    _check_margin(chart, x, 3 * scheme.reach * scheme.h3)
    st = _Stencil(divergence, chart, x, scheme.h3)
    o = scheme.order
    n = chart.dim
    gam = np.zeros((n, n, n))
    for l in range(n):
        for j in range(n):
            for k in range(j, n):
                if which == "primal":
                    v = -st.mixed((j, k), (l,), o)
                else:
                    v = -st.mixed((l,), (j, k), o)
                gam[l, j, k] = gam[l, k, j] = v
    # torsion check: recompute with the roles of j and k exchanged in the stencil
    resid = 0.0
    for l, j, k in itertools.product(range(n), repeat=3):
        if j < k:
            alt = -st.mixed((k, j), (l,), o) if which == "primal" else -st.mixed((l,), (k, j), o)
            resid = max(resid, abs(alt - gam[l, j, k]))
    return ConnectionCoefficients(gam, np.asarray(x, dtype=float), which, resid)


def skewness_fd(divergence, chart, x, scheme=None):
    """Skewness tensor ``T_ljk = G_ljk - G*_ljk``."""
    primal = connection_fd(divergence, chart, x, scheme, "primal").values
    dual = connection_fd(divergence, chart, x, scheme, "dual").values
    return primal - dual


def inverse_metric(g):
    g = np.asarray(g, dtype=float)
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularMetric(f"metric is singular (condition number {cond:.3e})")
    return np.linalg.inv(g)


def raise_first_index(gamma_lower, g):
    """``G^k_ij = g^{kl} G_lij``."""
    return np.einsum("kl,lij->kij", inverse_metric(g), gamma_lower)


def curvature_from_connection(connection_field, metric_field, x, h):
    """Riemann tensor, Ricci tensor and scalar curvature of a connection field.

    ``connection_field(x)`` returns lowered coefficients ``G_lij`` and
    ``metric_field(x)`` the metric matrix; derivatives of the raised
    coefficients are central differences with step ``h``.  Conventions::

        R^k_lmn = d_m G^k_nl - d_n G^k_ml + G^e_nl G^k_me - G^e_ml G^k_ne
        Ric_ln  = R^m_lmn,      scalar = g^ln Ric_ln
    """
    x = np.asarray(x, dtype=float)
    g0 = np.asarray(metric_field(x), dtype=float)
    gu = raise_first_index(connection_field(x), g0)
    n = x.size
    dgu = np.zeros((n,) + gu.shape)  # dgu[m, k, i, j] = d_m G^k_ij
    for m in range(n):
        e = np.zeros(n)
        e[m] = h
        plus = raise_first_index(connection_field(x + e), metric_field(x + e))
        minus = raise_first_index(connection_field(x - e), metric_field(x - e))
        dgu[m] = (plus - minus) / (2.0 * h)
    # riemann[k, l, m, n]
    # half[k, l, m, n] = d_m G^k_nl + G^e_nl G^k_me; antisymmetrizing in (m, n) is then exact
    half = np.einsum("mknl->klmn", dgu) + np.einsum("enl,kme->klmn", gu, gu)
    riemann = half - np.swapaxes(half, 2, 3)
    ricci = np.einsum("mlmn->ln", riemann)
    scalar = float(np.einsum("ln,ln->", inverse_metric(g0), ricci))
    return Curvature(riemann, ricci, scalar, x)


def curvature_fd(divergence, chart, x, scheme=None, which="primal"):
    """Curvature of the divergence-induced (dual) connection, entirely by finite differences."""
    scheme = scheme or FDScheme()
    _check_margin(chart, x, scheme.hc + 3 * scheme.reach * scheme.h3)

    def conn(p):
        return connection_fd(divergence, chart, p, scheme, which).values

    def metric(p):
        return metric_fd(divergence, chart, p, scheme)[0].components

    curv = curvature_from_connection(conn, metric, x, scheme.hc)
    return Curvature(curv.riemann, curv.ricci, curv.scalar, curv.basepoint, which)


def duality_residual(divergence, chart, x, scheme=None):
    """Max of ``|d_i g_jk - G_kij - G*_jik|``, which vanishes for dually related connections."""
    scheme = scheme or FDScheme()
    x = np.asarray(x, dtype=float)
    n = chart.dim
    primal = connection_fd(divergence, chart, x, scheme, "primal").values
    dual = connection_fd(divergence, chart, x, scheme, "dual").values
    resid = 0.0
    for i in range(n):
        e = np.zeros(n)
        e[i] = scheme.h3
        gp = metric_fd(divergence, chart, x + e, scheme)[0].components
        gm = metric_fd(divergence, chart, x - e, scheme)[0].components
        dg = (gp - gm) / (2.0 * scheme.h3)
        for j in range(n):
            for k in range(n):
                resid = max(resid, abs(dg[j, k] - primal[k, i, j] - dual[j, i, k]))
    return resid
