"""Symplectic tomograms of one-mode Gaussian states.

The tomogram in the frame ``(mu, nu)`` is the normal density of the quadrature
``X = mu q + nu p``: mean ``mu <q> + nu <p>`` and variance
``mu^2 s_qq + nu^2 s_pp + 2 mu nu s_qp``.
"""

import json
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .charts import Chart
from .divergences import _check_q
from .errors import BadParameter, DegenerateQuadrature
from .oracle import FDScheme, metric_fd

VARIANCE_FLOOR = 1e-14
TAIL_SIGMAS = 12.0
COORD_LABELS = ("dy1", "dy2", "dy3", "dy4", "dy5")


@dataclass(frozen=True)
class GaussianState:
    sqq: float
    spp: float
    sqp: float = 0.0
    qmean: float = 0.0
    pmean: float = 0.0

    def __post_init__(self):
        if self.sqq < 0 or self.spp < 0:
            raise BadParameter(f"variances must be non-negative, got sqq={self.sqq}, spp={self.spp}")

    @classmethod
    def from_vector(cls, y):
        return cls(*(float(v) for v in y))

    def vector(self):
        return np.array([self.sqq, self.spp, self.sqp, self.qmean, self.pmean])

    def to_dict(self):
        return {"sqq": self.sqq, "spp": self.spp, "sqp": self.sqp,
                "qmean": self.qmean, "pmean": self.pmean}

    @classmethod
    def from_dict(cls, d):
        return cls(d["sqq"], d["spp"], d.get("sqp", 0.0), d.get("qmean", 0.0), d.get("pmean", 0.0))

    def to_json(self):
        return json.dumps(self.to_dict())


GROUND_STATE = GaussianState(0.5, 0.5)


@dataclass(frozen=True)
class SymplecticFrame:
    mu: float
    nu: float

    def __post_init__(self):
        if self.mu * self.mu + self.nu * self.nu <= 0:
            raise BadParameter("symplectic frame needs (mu, nu) != (0, 0)")


def gaussian_tomogram_params(s, f):
    """``(X_bar, sigma)`` of the quadrature distribution."""
    xbar = f.mu * s.qmean + f.nu * s.pmean
    var = f.mu ** 2 * s.sqq + f.nu ** 2 * s.spp + 2.0 * f.mu * f.nu * s.sqp
    if var <= VARIANCE_FLOOR:
        raise DegenerateQuadrature(f"quadrature variance {var:.3e} vanishes in frame ({f.mu}, {f.nu})")
    return xbar, var


def gaussian_tomogram(s, f):
    """Density ``X -> (2 pi sigma)^(-1/2) exp(-(X - X_bar)^2 / (2 sigma))``."""
    xbar, var = gaussian_tomogram_params(s, f)
    norm = 1.0 / np.sqrt(2.0 * np.pi * var)
    return lambda x: norm * np.exp(-(np.asarray(x) - xbar) ** 2 / (2.0 * var))


def _normal_kl(m1, v1, m2, v2):
    return 0.5 * (np.log(v2 / v1) + v1 / v2 + (m1 - m2) ** 2 / v2 - 1.0)


def gaussian_overlap(s, s2, f, q, b_sign=1):
    """``int W^q W2^(1-q) dX`` by completing the square.

    ``b_sign=-1`` flips the sign of the second term of the linear coefficient
    ``B``; that variant does not vanish on the diagonal and is kept only for
    comparison.
    """
    x1, v1 = gaussian_tomogram_params(s, f)
    x2, v2 = gaussian_tomogram_params(s2, f)
    a = q / (2.0 * v1) + (1.0 - q) / (2.0 * v2)
    b = q * x1 / v1 + b_sign * (1.0 - q) * x2 / v2
    c = q * x1 ** 2 / (2.0 * v1) + (1.0 - q) * x2 ** 2 / (2.0 * v2)
    pref = 1.0 / np.sqrt(2.0 * np.pi * v1 ** q * v2 ** (1.0 - q))
    return float(pref * np.sqrt(np.pi / a) * np.exp(b * b / (4.0 * a) - c))


def gaussian_tsallis(s, s2, f, q, b_sign=1):
    """Rescaled Tsallis divergence of two Gaussian tomograms in the frame ``f``.

    At ``q`` in {0, 1} the Kullback-Leibler divergence of the two normals.
    """
    limit = _check_q(q)
    if limit is not None:
        x1, v1 = gaussian_tomogram_params(s, f)
        x2, v2 = gaussian_tomogram_params(s2, f)
        if limit == "one":
            return float(_normal_kl(x1, v1, x2, v2))
        return float(_normal_kl(x2, v2, x1, v1))
    overlap = gaussian_overlap(s, s2, f, q, b_sign)
    return (1.0 - overlap) / (q * (1.0 - q))


def _window(means, variances):
    half = TAIL_SIGMAS * np.sqrt(max(variances))
    return min(means) - half, max(means) + half


def gaussian_tsallis_quadrature(s, s2, f, q):
    """Independent value of :func:`gaussian_tsallis` by adaptive quadrature of the overlap."""
    limit = _check_q(q)
    w1 = gaussian_tomogram(s, f)
    w2 = gaussian_tomogram(s2, f)
    x1, v1 = gaussian_tomogram_params(s, f)
    x2, v2 = gaussian_tomogram_params(s2, f)
    lo, hi = _window((x1, x2), (v1, v2))
    opts = dict(points=sorted({x1, x2}), limit=200, epsabs=1e-14, epsrel=1e-13)
    if limit is not None:
        p, r = (w1, w2) if limit == "one" else (w2, w1)
        val, _ = quad(lambda x: p(x) * (np.log(p(x)) - np.log(r(x))), lo, hi, **opts)
        return val
    val, _ = quad(lambda x: w1(x) ** q * w2(x) ** (1.0 - q), lo, hi, **opts)
    return (1.0 - val) / (q * (1.0 - q))


def admissibility(s):
    """Classical (``disc >= 0``) and Schrodinger-Robertson (``disc >= 1/4``) admissibility."""
    disc = s.sqq * s.spp - s.sqp ** 2
    return {"classical": bool(disc >= 0.0), "quantum": bool(disc >= 0.25 - 1e-15),
            "discriminant": float(disc)}


# --- metric ------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianDivergence:
    frame: SymplecticFrame
    q: float
    b_sign: int = 1

    def __call__(self, s, s2):
        return gaussian_tsallis(s, s2, self.frame, self.q, self.b_sign)


def gaussian_chart(frame):
    """The five moments ``(s_qq, s_pp, s_qp, <q>, <p>)`` as coordinates."""

    def inside(y):
        if y[0] < 0 or y[1] < 0:
            return False
        var = frame.mu ** 2 * y[0] + frame.nu ** 2 * y[1] + 2.0 * frame.mu * frame.nu * y[2]
        return var > VARIANCE_FLOOR

    return Chart("gaussian-moments", 5, GaussianState.from_vector, COORD_LABELS, inside, classical=True)


def symplectic_metric(s, f, q, scheme=None):
    """``-d^2 S_q / dy^j dy~^k`` on the diagonal, by the finite-difference oracle."""
    metric, _ = metric_fd(GaussianDivergence(f, q), gaussian_chart(f), s.vector(), scheme or FDScheme())
    return metric


def symplectic_fisher_rao_quadrature(s, f):
    """``int W d ln W (x) d ln W`` in the moment coordinates, by quadrature."""
    xbar, var = gaussian_tomogram_params(s, f)
    w = gaussian_tomogram(s, f)
    dx = np.array([0.0, 0.0, 0.0, f.mu, f.nu])
    dv = np.array([f.mu ** 2, f.nu ** 2, 2.0 * f.mu * f.nu, 0.0, 0.0])

    def score(x):
        return dx * (x - xbar) / var + dv * (-0.5 / var + (x - xbar) ** 2 / (2.0 * var * var))

    lo, hi = _window((xbar,), (var,))
    g = np.zeros((5, 5))
    for j in range(5):
        for k in range(j, 5):
            if not (dx[j] or dv[j]) or not (dx[k] or dv[k]):
                continue
            val, _ = quad(lambda x: w(x) * score(x)[j] * score(x)[k], lo, hi,
                          points=[xbar], limit=200, epsabs=1e-13, epsrel=1e-12)
            g[j, k] = g[k, j] = val
    return g
