"""Real-coordinate charts on families of states.

A :class:`Chart` turns a coordinate vector into a state (a density matrix or,
for classical charts, a probability vector).  The exponential charts put the
unitary part in the form ``U = exp(i sum_a t_a T_a)`` with ``T_a`` Pauli or
Gell-Mann matrices, so that at ``t = 0`` the left-invariant Maurer-Cartan
co-frame ``U^-1 dU = i T_a theta^a`` reduces to ``theta^a = dt_a``.
"""

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, expm_frechet

from .errors import OutOfDomain
from .hermitian import GELL_MANN, PAULI

DOMAIN_MARGIN = 1e-6


@dataclass(frozen=True)
class Chart:
    name: str
    dim: int
    to_state: Callable
    coframe_labels: Sequence[str]
    domain_check: Callable = field(default=lambda x: True)
    classical: bool = False

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise OutOfDomain(f"{self.name} expects {self.dim} coordinates, got shape {x.shape}")
        if not self.domain_check(x):
            raise OutOfDomain(f"{x} is outside the domain of chart {self.name}")
        return self.to_state(x)


def su_basis(n):
    """Orthogonal traceless Hermitian basis with ``Tr T_a T_b = 2 delta_ab``.

    Pauli matrices for ``n = 2`` and the Gell-Mann matrices for ``n = 3``;
    for larger ``n`` the generalized Gell-Mann set, ordered pair by pair
    (symmetric then antisymmetric) followed by the diagonal generators.
    """
    if n == 2:
        return PAULI
    if n == 3:
        return GELL_MANN
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((n, n), dtype=complex)
            a[j, k], a[k, j] = -1j, 1j
            out += [s, a]
    for d in range(1, n):
        diag = np.zeros(n)
        diag[:d] = 1
        diag[d] = -d
        out.append(np.diag(diag * np.sqrt(2.0 / (d * (d + 1)))).astype(complex))
    return np.array(out)


def _basis_for(t):
    m = len(t)
    n = int(round(np.sqrt(m + 1)))
    if n * n - 1 != m:
        raise OutOfDomain(f"{m} group coordinates do not match any SU(N)")
    return su_basis(n)


def su_n_exponential(t):
    """``exp(i sum_a t_a T_a)``: 3 coordinates give SU(2), 8 give SU(3)."""
    t = np.asarray(t, dtype=float)
    basis = _basis_for(t)
    return expm(1j * np.tensordot(t, basis, axes=1))


def maurer_cartan_frame(t):
    """Matrix ``F`` with ``U^-1 dU = i T_b F[b, a] dt_a`` at the point ``t``.

    Uses the exact Frechet derivative of the matrix exponential; at ``t = 0``
    the result is the identity.
    """
    t = np.asarray(t, dtype=float)
    basis = _basis_for(t)
    gen = 1j * np.tensordot(t, basis, axes=1)
    u_inv = None
    frame = np.zeros((len(t), len(t)))
    for a, ta in enumerate(basis):
        u, du = expm_frechet(gen, 1j * ta)
        if u_inv is None:
            u_inv = u.conj().T
        omega = -1j * (u_inv @ du)
        frame[:, a] = [np.real(np.trace(tb @ omega)) / 2.0 for tb in basis]
    return frame


def pullback(components, jacobian):
    """Transport a covariant 2-tensor: ``J^T G J``."""
    jac = np.asarray(jacobian, dtype=float)
    return jac.T @ np.asarray(components, dtype=float) @ jac


# --- states ------------------------------------------------------------------

def bloch_direction(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def bloch_state(y):
    y = np.asarray(y, dtype=float)
    return 0.5 * (np.eye(2) + np.tensordot(y, PAULI, axes=1))


def bloch_vector(rho):
    rho = np.asarray(rho)
    return np.array([np.real(np.trace(rho @ s)) for s in PAULI])


def qubit_state(w, theta, phi):
    """``(1 + w n(theta, phi) . sigma) / 2`` for ``0 <= w <= 1``."""
    if not 0.0 <= w <= 1.0 or not np.isfinite(theta) or not np.isfinite(phi):
        raise OutOfDomain(f"qubit polar coordinates out of range: w={w}, theta={theta}, phi={phi}")
    return bloch_state(w * bloch_direction(theta, phi))


def qutrit_state(k, t):
    """``U diag(k) U^dagger`` with ``U = exp(i t . lambda)``."""
    k = np.asarray(k, dtype=float)
    if k.shape != (3,) or np.any(k <= 0) or abs(k.sum() - 1.0) > 1e-12:
        raise OutOfDomain(f"qutrit spectrum must be an interior probability 3-vector, got {k}")
    t = np.asarray(t, dtype=float)
    if t.shape != (8,):
        raise OutOfDomain(f"qutrit chart needs 8 group coordinates, got {t.shape}")
    u = su_n_exponential(t)
    return u @ np.diag(k).astype(complex) @ u.conj().T


def diagonal_qubit(w):
    return np.diag([(1.0 + w) / 2.0, (1.0 - w) / 2.0]).astype(complex)


# --- chart constructors ------------------------------------------------------

def _open_unit(w):
    return DOMAIN_MARGIN < w < 1.0 - DOMAIN_MARGIN


def qubit_polar_chart():
    def inside(x):
        w, th, _ = x
        return _open_unit(w) and DOMAIN_MARGIN < th < np.pi - DOMAIN_MARGIN

    return Chart("qubit-polar", 3, lambda x: qubit_state(*x), ("dw", "dtheta", "dphi"), inside)


def qubit_exp_chart():
    def to_state(x):
        u = su_n_exponential(x[1:])
        return u @ diagonal_qubit(x[0]) @ u.conj().T

    return Chart("qubit-exp", 4, to_state, ("dw", "theta1", "theta2", "theta3"),
                 lambda x: _open_unit(x[0]))


def qutrit_exp_chart():
    def to_state(x):
        k = np.array([x[0], x[1], 1.0 - x[0] - x[1]])
        u = su_n_exponential(x[2:])
        return u @ np.diag(k).astype(complex) @ u.conj().T

    def inside(x):
        return x[0] > 0 and x[1] > 0 and 1.0 - x[0] - x[1] > 0

    labels = ("dk1", "dk2") + tuple(f"theta{j}" for j in range(1, 9))
    return Chart("qutrit-exp", 10, to_state, labels, inside)


def bloch_chart():
    return Chart("qubit-bloch", 3, bloch_state, ("dy1", "dy2", "dy3"),
                 lambda x: float(np.dot(x, x)) < 1.0)


def simplex_chart(n, as_density=False):
    """Coordinates ``(k_1, ..., k_{n-1})`` with ``k_n = 1 - sum``."""

    def probs(x):
        return np.append(x, 1.0 - np.sum(x))

    to_state = (lambda x: np.diag(probs(x)).astype(complex)) if as_density else probs
    labels = tuple(f"dk{j}" for j in range(1, n))
    return Chart(f"simplex-{n}", n - 1, to_state, labels,
                 lambda x: bool(np.all(x > 0) and 1.0 - np.sum(x) > 0),
                 classical=not as_density)


def polar_to_exp_point(w, theta, phi):
    """Exponential-chart point ``(w, t)`` with the same state as ``qubit_state(w, theta, phi)``.

    ``exp(i a m . sigma)`` with ``m`` a unit vector rotates the Bloch vector
    by ``-2a`` about ``m``; taking ``m`` orthogonal to both the north pole and
    the target direction gives the required rotation.
    """
    n = bloch_direction(theta, phi)
    axis = np.cross(n, [0.0, 0.0, 1.0])
    norm = np.linalg.norm(axis)
    if norm < 1e-15:
        return np.array([w, 0.0, 0.0, 0.0]) if n[2] > 0 else np.array([w, np.pi / 2, 0.0, 0.0])
    angle = np.arctan2(norm, n[2])
    return np.concatenate([[w], axis / norm * (angle / 2.0)])
