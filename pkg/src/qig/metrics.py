"""Closed-form metric families induced by the rescaled Tsallis divergence.

Metrics are returned as :class:`MetricTensor` values in the co-frame in which
they are naturally written: transversal chart differentials (``dw`` or
``dk_j``) followed by left-invariant Maurer-Cartan forms ``theta^a``.  Use
:func:`qig.charts.pullback` with :func:`qig.charts.maurer_cartan_frame` to get
chart components away from ``t = 0``.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .charts import su_basis
from .divergences import Q_LIMIT_TOL
from .errors import BadParameter, OutOfDomain
from .hermitian import matrix_log, matrix_power

# Ratio of the Tsallis tangential coefficient to the Petz-form coefficient;
# identical for every (q, w), see qubit_petz_form.
PETZ_NORMALIZATION = 4.0

QUBIT_LABELS = ("dw", "theta1", "theta2", "theta3")
QUTRIT_TANGENT_LABELS = tuple(f"theta{j}" for j in range(1, 9))
QUTRIT_LABELS = ("dk1", "dk2") + QUTRIT_TANGENT_LABELS

# (theta index pairs, eigenvalue pair) for the three SU(2) copies inside SU(3)
QUTRIT_PAIRS = (((0, 1), (0, 1)), ((3, 4), (0, 2)), ((5, 6), (1, 2)))


@dataclass(frozen=True)
class MetricTensor:
    components: np.ndarray
    coframe_labels: Sequence[str]
    basepoint: Optional[object] = None
    q: Optional[float] = None

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] != len(self.coframe_labels):
            raise ValueError(f"components of shape {c.shape} do not match {len(self.coframe_labels)} labels")
        object.__setattr__(self, "components", c)
        object.__setattr__(self, "coframe_labels", tuple(self.coframe_labels))

    def __getitem__(self, key):
        a, b = key
        ia = self.coframe_labels.index(a) if isinstance(a, str) else a
        ib = self.coframe_labels.index(b) if isinstance(b, str) else b
        return float(self.components[ia, ib])

    def restrict(self, labels):
        idx = [self.coframe_labels.index(lab) for lab in labels]
        return MetricTensor(self.components[np.ix_(idx, idx)], labels, self.basepoint, self.q)

    def nondegenerate_part(self, tol=1e-14):
        """Drop co-frame rows/columns that vanish identically."""
        keep = [lab for i, lab in enumerate(self.coframe_labels)
                if np.max(np.abs(self.components[i])) > tol]
        return self.restrict(keep)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.components)[0])

    def to_dict(self):
        return {
            "coframe": list(self.coframe_labels),
            "components": (self.components + 0.0).tolist(),
            "q": self.q,
        }


def _check_open_q(q):
    if not 0.0 < q < 1.0:
        raise BadParameter(f"q must lie in (0, 1), got {q}")


def _is_limit(q):
    return abs(q - 1.0) < Q_LIMIT_TOL or abs(q) < Q_LIMIT_TOL


def _check_w(w):
    if not 0.0 <= w < 1.0:
        raise OutOfDomain(f"w must lie in [0, 1), got {w}")


def _power_gap(a, b, s):
    # a**s - b**s without cancellation for s near 0
    if a <= 0 or b <= 0:
        return a ** s - b ** s
    return b ** s * np.expm1(s * np.log(a / b))


def pair_coefficient(ka, kb, q):
    """Tangential coefficient ``2 (ka^q - kb^q)(ka^(1-q) - kb^(1-q)) / (q (1-q))``.

    At ``q`` in {0, 1} this becomes ``2 (ka - kb)(ln ka - ln kb)``.
    """
    if _is_limit(q):
        if ka == kb:
            return 0.0
        return 2.0 * (ka - kb) * (np.log(ka) - np.log(kb))
    _check_open_q(q)
    return 2.0 * _power_gap(ka, kb, q) * _power_gap(ka, kb, 1.0 - q) / (q * (1.0 - q))


def fisher_rao_simplex(k):
    """Fisher-Rao metric in the chart ``(k_1, ..., k_{N-1})``: ``delta_ij / k_i + 1 / k_N``."""
    k = np.asarray(k, dtype=float)
    if k.ndim != 1 or k.size < 2 or np.any(k <= 0) or abs(k.sum() - 1.0) > 1e-12:
        raise OutOfDomain(f"Fisher-Rao metric needs an interior probability vector, got {k}")
    g = np.diag(1.0 / k[:-1]) + 1.0 / k[-1]
    return MetricTensor(g, tuple(f"dk{j}" for j in range(1, k.size)), basepoint=k)


def qubit_metric(q, w):
    """Tsallis metric of a full-rank qubit in the co-frame ``(dw, theta1, theta2, theta3)``."""
    _check_w(w)
    if _is_limit(q):
        return qubit_metric_q1(w)
    _check_open_q(q)
    c = pair_coefficient((1.0 + w) / 2.0, (1.0 - w) / 2.0, q)
    g = np.diag([1.0 / (1.0 - w * w), c, c, 0.0])
    return MetricTensor(g, QUBIT_LABELS, basepoint=w, q=q)


def qubit_metric_q1(w):
    """The ``q -> 1`` (Kubo-Mori / Bogoliubov) member: tangential ``2 w ln((1+w)/(1-w))``."""
    _check_w(w)
    c = 2.0 * w * np.log((1.0 + w) / (1.0 - w))
    g = np.diag([1.0 / (1.0 - w * w), c, c, 0.0])
    return MetricTensor(g, QUBIT_LABELS, basepoint=w, q=1.0)


def qutrit_tangent_coefficients(k, q):
    """``(c12, c13, c23)`` for the spectrum ``k``."""
    k = np.asarray(k, dtype=float)
    return tuple(pair_coefficient(k[a], k[b], q) for _, (a, b) in QUTRIT_PAIRS)


def qutrit_metric(q, k):
    """Qutrit metric in the co-frame ``(dk1, dk2, theta1..theta8)``."""
    k = np.asarray(k, dtype=float)
    if k.shape != (3,):
        raise OutOfDomain(f"qutrit spectrum must have 3 entries, got {k.shape}")
    transversal = fisher_rao_simplex(k).components
    if not _is_limit(q):
        _check_open_q(q)
    g = np.zeros((10, 10))
    g[:2, :2] = transversal
    for (i, j), c in zip((p for p, _ in QUTRIT_PAIRS), qutrit_tangent_coefficients(k, q)):
        g[2 + i, 2 + i] = g[2 + j, 2 + j] = c
    return MetricTensor(g, QUTRIT_LABELS, basepoint=k, q=q)


def tangential_coefficients_general(k, q, basis=None):
    """Tangential block ``-Tr([T_a, rho0^q][T_b, rho0^(1-q)]) / (q (1-q))`` for any N.

    ``rho0 = diag(k)`` and ``T_a`` defaults to :func:`qig.charts.su_basis`.
    At the ``q`` limits the pair ``(rho0^q, rho0^(1-q)) / (q(1-q))`` is
    replaced by ``(ln rho0, rho0)``.
    """
    k = np.asarray(k, dtype=float)
    if k.ndim != 1 or np.any(k <= 0) or abs(k.sum() - 1.0) > 1e-12:
        raise OutOfDomain(f"need an interior probability vector, got {k}")
    n = k.size
    basis = su_basis(n) if basis is None else np.asarray(basis)
    rho0 = np.diag(k).astype(complex)
    if _is_limit(q):
        left, right, scale = matrix_log(rho0), rho0, 1.0
    else:
        _check_open_q(q)
        left, right, scale = matrix_power(rho0, q), matrix_power(rho0, 1.0 - q), 1.0 / (q * (1.0 - q))
    cl = [t @ left - left @ t for t in basis]
    cr = [t @ right - right @ t for t in basis]
    m = np.array([[-np.real(np.trace(a @ b)) for b in cr] for a in cl]) * scale
    return 0.5 * (m + m.T)


# --- radial limits -----------------------------------------------------------

def radial_limit_coefficient(q):
    """Pure-state tangential coefficient obtained as ``w -> 1`` of the qubit metric."""
    _check_open_q(q)
    return 2.0 / (q * (1.0 - q))


def radial_limit_coefficient_half(q):
    """The pure-state coefficient in the half register, ``1 / (q (1-q))``.

    It differs from :func:`radial_limit_coefficient` by a constant factor 2.
    """
    _check_open_q(q)
    return 1.0 / (q * (1.0 - q))


def radial_limit_metric(q, dim, stratum, k=None):
    """Tangential metric induced on a boundary stratum by the weak radial limit.

    ``dim`` is 2 or 3, ``stratum`` is ``"pure"`` or (for ``dim == 3``)
    ``"rank2"`` with ``k = (k1, k2)``, ``k1 + k2 = 1``.
    """
    if not 0.0 < q < 1.0:
        raise BadParameter(f"radial limit diverges at q = {q}; needs q in (0, 1)")
    c = radial_limit_coefficient(q)
    if dim == 2 and stratum == "pure":
        return MetricTensor(np.diag([c, c, 0.0]), QUBIT_LABELS[1:], q=q)
    if dim != 3:
        raise BadParameter(f"unsupported dimension/stratum: {dim}, {stratum}")
    diag = np.zeros(8)
    if stratum == "pure":
        diag[[0, 1, 3, 4]] = c
    elif stratum == "rank2":
        if k is None:
            raise BadParameter("rank2 stratum needs k = (k1, k2)")
        k1, k2 = (float(v) for v in k)
        if k1 <= 0 or k2 <= 0 or abs(k1 + k2 - 1.0) > 1e-12:
            raise OutOfDomain(f"rank-2 spectrum must satisfy k1 + k2 = 1 with k1, k2 > 0, got {k}")
        diag[[0, 1]] = pair_coefficient(k1, k2, q)
        diag[[3, 4]] = c * k1
        diag[[5, 6]] = c * k2
    else:
        raise BadParameter(f"unknown stratum {stratum!r}")
    return MetricTensor(np.diag(diag), QUTRIT_TANGENT_LABELS, basepoint=k, q=q)


def aitken_limit(values):
    """Aitken delta-squared extrapolation of the last three terms of a sequence."""
    x0, x1, x2 = (float(v) for v in values[-3:])
    denom = (x2 - x1) - (x1 - x0)
    if denom == 0.0:
        return x2
    return x2 - (x2 - x1) ** 2 / denom


def radial_ray_limit(func, eps=(1e-8, 1e-10, 1e-12, 1e-14)):
    """Numerically evaluate ``lim_{e -> 0} func(e)`` along a geometric sequence.

    Returns ``(extrapolated, raw_values)``.
    """
    raw = [func(e) for e in eps]
    return aitken_limit(raw), raw


# --- Petz classification -----------------------------------------------------

@dataclass(frozen=True)
class MonotoneFunction:
    q: float
    evaluate: Callable

    def __call__(self, t):
        return self.evaluate(t)

    @property
    def at_zero(self):
        """``f(0+)``; the radial limit exists exactly when this is non-zero."""
        return 0.0 if _is_limit(self.q) else self.q * (1.0 - self.q)


def petz_f(q):
    """Operator monotone function associated with the rescaled Tsallis metric.

    ``f(t) = q (1-q) (t-1)^2 / ((t^q - 1)(t^(1-q) - 1))``, and ``(t-1)/ln t``
    at ``q`` in {0, 1}; both are normalized so that ``f(1) = 1``.
    """
    q = float(q)
    if _is_limit(q):
        def f(t):
            t = np.asarray(t, dtype=float)
            lt = np.log(t)
            with np.errstate(invalid="ignore", divide="ignore"):
                out = np.where(lt == 0.0, 1.0, np.expm1(lt) / np.where(lt == 0.0, 1.0, lt))
            return out[()] if out.ndim == 0 else out
    else:
        _check_open_q(q)

        def f(t):
            t = np.asarray(t, dtype=float)
            lt = np.log(t)
            safe = np.where(lt == 0.0, 1.0, lt)
            num = q * (1.0 - q) * np.expm1(safe) ** 2
            den = np.expm1(q * safe) * np.expm1((1.0 - q) * safe)
            out = np.where(lt == 0.0, 1.0, num / den)
            return out[()] if out.ndim == 0 else out
    return MonotoneFunction(q, f)


def qubit_petz_form(q, w):
    """Qubit monotone metric ``1/(1-w^2) dw^2 + w^2 / ((1+w) f((1-w)/(1+w)))`` on ``theta1, theta2``.

    Its tangential coefficient is exactly ``1 / PETZ_NORMALIZATION`` of the one
    returned by :func:`qubit_metric`.
    """
    _check_w(w)
    f = petz_f(q)
    c = w * w / ((1.0 + w) * f((1.0 - w) / (1.0 + w)))
    g = np.diag([1.0 / (1.0 - w * w), c, c, 0.0])
    return MetricTensor(g, QUBIT_LABELS, basepoint=w, q=q)
