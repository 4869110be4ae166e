"""Spin tomograms of qubits and qutrits.

A reference frame is a unitary ``u``; its tomogram is the distribution
``W(m|u) = <m| u rho u^dagger |m>`` with outcomes ordered by descending spin
projection ``m`` (``1/2, -1/2`` or ``1, 0, -1``).
"""

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm

from .errors import BadMetric, DegenerateFrame, NotAState, SingularQuorum
from .hermitian import PAULI, SIGMA_0, symmetrize
from .metrics import MetricTensor

UNITARY_TOL = 1e-12
PROB_TOL = 1e-12
POSITIVITY_TOL = 1e-10
MAX_CONDITION = 1e6

# spin-1 generators in the basis m = 1, 0, -1
J_Z = np.diag([1.0, 0.0, -1.0]).astype(complex)
_J_PLUS = np.sqrt(2.0) * np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
J_Y = (_J_PLUS - _J_PLUS.conj().T) / 2j
J_X = (_J_PLUS + _J_PLUS.conj().T) / 2

TETRAHEDRON = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3.0)


@dataclass(frozen=True)
class ReferenceFrame:
    u: np.ndarray
    label: str = ""
    direction: Optional[np.ndarray] = None
    euler: Optional[tuple] = None

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] not in (2, 3):
            raise ValueError(f"reference frame must be a 2x2 or 3x3 unitary, got shape {u.shape}")
        if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > UNITARY_TOL:
            raise ValueError("reference frame matrix is not unitary")
        if self.direction is not None and abs(np.linalg.norm(self.direction) - 1.0) > 1e-12:
            raise ValueError("frame direction must be a unit vector")
        object.__setattr__(self, "u", u)

    @property
    def dim(self):
        return self.u.shape[0]


@dataclass(frozen=True)
class Quorum:
    frames: Sequence[ReferenceFrame]
    condition: Optional[float] = None

    def __post_init__(self):
        frames = tuple(self.frames)
        dims = {f.dim for f in frames}
        if len(dims) != 1:
            raise ValueError("all frames of a quorum must act on the same dimension")
        n = dims.pop()
        if len(frames) != n + 1:
            raise ValueError(f"a quorum for dimension {n} has {n + 1} frames, got {len(frames)}")
        object.__setattr__(self, "frames", frames)

    @property
    def dim(self):
        return self.frames[0].dim

    def __len__(self):
        return len(self.frames)


@dataclass(frozen=True)
class Tomogram:
    probabilities: np.ndarray  # (frames, outcomes), m descending
    labels: Sequence[str] = field(default=())

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 2:
            raise ValueError(f"tomogram must be (frames, outcomes), got shape {p.shape}")
        if np.any(p < -PROB_TOL) or np.any(np.abs(p.sum(axis=1) - 1.0) > PROB_TOL):
            raise NotAState("tomogram rows must be probability distributions", "normalization")
        labels = tuple(self.labels) or tuple(f"u{k + 1}" for k in range(p.shape[0]))
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "labels", labels)

    def to_json(self):
        frames = [{"label": lab, "probabilities": row.tolist()}
                  for lab, row in zip(self.labels, self.probabilities)]
        return json.dumps({"frames": frames})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        frames = data["frames"]
        return cls(np.array([f["probabilities"] for f in frames]), [f["label"] for f in frames])


def tomogram_row(rho, frame):
    """``W(m|u)`` for one frame."""
    u = frame.u
    return np.real(np.diag(u @ np.asarray(rho) @ u.conj().T)).copy()


# --- qubit -------------------------------------------------------------------

def canonical_qubit_quorum():
    """Frames that rotate the spin onto the x, y and z axes."""
    u1 = expm(1j * np.pi / 4 * PAULI[1])
    u2 = expm(-1j * np.pi / 4 * PAULI[0])
    u3 = np.eye(2, dtype=complex)
    return Quorum([ReferenceFrame(u1, "x"), ReferenceFrame(u2, "y"), ReferenceFrame(u3, "z")])


def _is_canonical(quorum):
    ref = canonical_qubit_quorum()
    return quorum.dim == 2 and all(np.allclose(a.u, b.u, atol=1e-14)
                                   for a, b in zip(quorum.frames, ref.frames))


def qubit_tomogram(rho, quorum=None):
    quorum = quorum or canonical_qubit_quorum()
    rows = [tomogram_row(rho, f) for f in quorum.frames]
    return Tomogram(np.clip(rows, 0.0, None), [f.label for f in quorum.frames])


def qubit_reconstruct(tomogram):
    """Invert a canonical-quorum tomogram: ``rho = (sigma_0 + (2 W_k - 1) sigma_k) / 2``."""
    w = np.asarray(tomogram.probabilities)[:, 0]
    if w.shape != (3,):
        raise ValueError(f"qubit reconstruction needs three frames, got {w.shape[0]}")
    y = 2.0 * w - 1.0
    rho = 0.5 * (SIGMA_0 + np.tensordot(y, PAULI, axes=1))
    lam = np.linalg.eigvalsh(rho)[0]
    if lam < -POSITIVITY_TOL:
        lhs = float(np.sum((w - 0.5) ** 2))
        raise NotAState(f"tomogram is not physical: sum (W_k - 1/2)^2 = {lhs:.6g} > 1/4", "positivity")
    return rho


def uncertainty_check(w1, w2, w3):
    """``sum (W_k - 1/2)^2 <= 1/4``, equivalent to positivity of the reconstructed qubit."""
    lhs = float((w1 - 0.5) ** 2 + (w2 - 0.5) ** 2 + (w3 - 0.5) ** 2)
    return {"holds": lhs <= 0.25 + 1e-12, "lhs": lhs}


def frame_vector(frame):
    """``(Re u11 u12*, Im u11 u12*, |u11|^2 - 1/2)``, the gradient of ``W(1/2|u)`` in the Bloch vector."""
    u = frame.u
    z = u[0, 0] * np.conj(u[0, 1])
    return np.array([z.real, z.imag, abs(u[0, 0]) ** 2 - 0.5])


def frame_c_matrix(frame):
    v = frame_vector(frame)
    return np.outer(v, v)


def qubit_tomographic_metric(rho, frame):
    """Fisher-Rao metric of one frame's binary tomogram, in Bloch coordinates ``y1, y2, y3``."""
    w_up = tomogram_row(rho, frame)[0]
    if w_up <= PROB_TOL or w_up >= 1.0 - PROB_TOL:
        raise DegenerateFrame(f"W(1/2|u) = {w_up} lies on the boundary of the simplex")
    g = frame_c_matrix(frame) / (w_up * (1.0 - w_up))
    return MetricTensor(g, ("dy1", "dy2", "dy3"))


def quantum_from_tomographic(metrics):
    """``y_k = +- sqrt(1 - 1/G_kk)`` from the canonical per-frame metrics.

    Returns an array of shape ``(2, 3)``: the ``+`` branch and the ``-`` branch.
    """
    if len(metrics) != 3:
        raise ValueError("need the three canonical frame metrics")
    gkk = np.array([m.components[k, k] for k, m in enumerate(metrics)])
    if np.any(gkk < 1.0 - 1e-12):
        raise BadMetric(f"diagonal entries {gkk} must be >= 1")
    mag = np.sqrt(np.clip(1.0 - 1.0 / gkk, 0.0, None))
    return np.array([mag, -mag])


# --- qutrit ------------------------------------------------------------------

def spin1_rotation(phi, theta, psi=0.0):
    """Wigner matrix ``exp(-i phi Jz) exp(-i theta Jy) exp(-i psi Jz)`` (z-y-z, active)."""
    return expm(-1j * phi * J_Z) @ expm(-1j * theta * J_Y) @ expm(-1j * psi * J_Z)


def spin1_frame(direction, label=""):
    """Frame measuring the spin-1 projection along ``direction``."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    theta = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
    phi = float(np.arctan2(n[1], n[0]))
    u = spin1_rotation(phi, theta).conj().T
    return ReferenceFrame(u, label, direction=n, euler=(phi, theta, 0.0))


def superoperator(u):
    """``u (x) u*``, acting on row-major vectorized matrices."""
    return np.kron(u, np.conj(u))


def qutrit_linear_system(quorum):
    """``A`` and ``B`` with ``W = A y_red + B``, ``y_red = (y1..y8)`` the row-major entries of ``rho``."""
    a = np.zeros((8, 8), dtype=complex)
    b = np.zeros(8, dtype=complex)
    for k, frame in enumerate(quorum.frames):
        big = superoperator(frame.u)
        for r, row in ((2 * k, 0), (2 * k + 1, 4)):
            b[r] = big[row, 8]
            a[r] = big[row, :8]
            a[r, 0] -= big[row, 8]
            a[r, 4] -= big[row, 8]
    return a, b


def _system_condition(a):
    s = np.linalg.svd(a, compute_uv=False)
    rank = int(np.sum(s > 1e-10 * s[0]))
    cond = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
    return rank, cond


def checked_qutrit_quorum(frames):
    """Build a qutrit quorum, raising :class:`SingularQuorum` unless its linear system is invertible."""
    quorum = Quorum(frames)
    rank, cond = _system_condition(qutrit_linear_system(quorum)[0])
    if rank < 8 or cond > MAX_CONDITION:
        raise SingularQuorum(f"qutrit quorum has rank {rank}/8, condition number {cond:.3e}",
                             rank=rank, condition=cond)
    return Quorum(quorum.frames, cond)


def mub_qutrit_quorum():
    """Four mutually unbiased bases of C^3 (computational plus three Fourier-type bases)."""
    omega = np.exp(2j * np.pi / 3)
    f = np.array([[1, 1, 1], [1, omega, omega ** 2], [1, omega ** 2, omega]]) / np.sqrt(3.0)
    d = np.diag([1, omega, 1])
    us = [np.eye(3, dtype=complex), f.conj().T, (d @ f).conj().T, (d @ d @ f).conj().T]
    return checked_qutrit_quorum([ReferenceFrame(u, f"mub{k + 1}") for k, u in enumerate(us)])


def tetrahedral_spin1_quorum():
    """Spin-1 frames along the four tetrahedron vertices; raises :class:`SingularQuorum`.

    A spin-1 frame only measures ``<n.J>`` and ``<(n.J)^2>``, and for these four
    directions the resulting system has rank 6, short of the 8 needed.
    """
    frames = [spin1_frame(n, f"tetra{k + 1}") for k, n in enumerate(TETRAHEDRON)]
    return checked_qutrit_quorum(frames)


def default_qutrit_quorum():
    return mub_qutrit_quorum()


def qutrit_tomogram(rho, quorum=None):
    quorum = quorum or default_qutrit_quorum()
    rows = [tomogram_row(rho, f) for f in quorum.frames]
    return Tomogram(np.clip(rows, 0.0, None), [f.label for f in quorum.frames])


def qutrit_reconstruct(tomogram, quorum=None):
    """Solve ``A y_red = W - B`` for the density matrix and validate positivity."""
    quorum = quorum or default_qutrit_quorum()
    a, b = qutrit_linear_system(quorum)
    rank, cond = _system_condition(a)
    if rank < 8 or cond > MAX_CONDITION:
        raise SingularQuorum(f"qutrit quorum has rank {rank}/8, condition number {cond:.3e}",
                             rank=rank, condition=cond)
    p = np.asarray(tomogram.probabilities)
    if p.shape != (4, 3):
        raise ValueError(f"qutrit tomogram must be 4 x 3, got {p.shape}")
    w = p[:, :2].reshape(-1)
    y = np.linalg.solve(a, w - b)
    rho = np.append(y, 1.0 - y[0] - y[4]).reshape(3, 3)
    rho = symmetrize(rho)
    lam = np.linalg.eigvalsh(rho)[0]
    if lam < -POSITIVITY_TOL:
        raise NotAState(f"reconstructed matrix has eigenvalue {lam:.3e}", "positivity")
    return rho
