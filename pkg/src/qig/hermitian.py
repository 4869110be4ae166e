"""Small dense Hermitian linear algebra.

Density matrices are plain complex ``numpy`` arrays.  :func:`validate_density`
returns a symmetrized, read-only copy, which is what the rest of the package
means by a ``DensityMatrix``.  Functional calculus (powers, logs) goes through
the spectral decomposition.
"""

from typing import NamedTuple

import numpy as np

from .errors import NotAState, NotHermitian, SingularLog, SingularPower

HERMITIAN_TOL = 1e-10
STATE_TOL = 1e-12
RANK_TOL = 1e-12

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.array([SIGMA_1, SIGMA_2, SIGMA_3])


def _gell_mann():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return lam


GELL_MANN = _gell_mann()


class SpectralDecomposition(NamedTuple):
    """Eigenvalues in descending order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def weyl_basis(n):
    """Hermitian Weyl basis E^s_jk, E^a_jk (j<k) and E_jj for dimension ``n``."""
    out = []
    for j in range(n):
        for k in range(j, n):
            e = np.zeros((n, n), dtype=complex)
            if j == k:
                e[j, j] = 1
                out.append(e)
                continue
            e[j, k] = e[k, j] = 1
            out.append(e)
            a = np.zeros((n, n), dtype=complex)
            a[j, k], a[k, j] = 1j, -1j
            out.append(a)
    return np.array(out)


def hermitian_defect(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def symmetrize(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + m.conj().T)


def eigendecompose_hermitian(m):
    """Spectral decomposition of a Hermitian matrix.

    Matrices within ``1e-10`` of Hermitian are symmetrized first; anything
    further off raises :class:`NotHermitian`.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotHermitian(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m))))
    defect = hermitian_defect(m)
    if defect > HERMITIAN_TOL * scale:
        raise NotHermitian(f"matrix deviates from Hermitian by {defect:.3e}")
    vals, vecs = np.linalg.eigh(symmetrize(m))
    return SpectralDecomposition(vals[::-1].copy(), vecs[:, ::-1].copy())


def _apply(decomp, values):
    v = decomp.eigenvectors
    return (v * values) @ v.conj().T


def matrix_function(m, func):
    """Apply a scalar function to the spectrum of a Hermitian matrix."""
    d = eigendecompose_hermitian(m)
    return _apply(d, func(d.eigenvalues))


def matrix_power(rho, s):
    """``rho**s`` by spectral calculus.

    Eigenvalues are clamped at zero before powering, so ``0**s = 0`` for
    ``s > 0``.  Negative powers need a full-rank argument.
    """
    d = eigendecompose_hermitian(rho)
    lam = d.eigenvalues
    if s < 0 and lam[-1] <= RANK_TOL:
        raise SingularPower(f"negative power {s} of a matrix with eigenvalue {lam[-1]:.3e}")
    lam = np.clip(lam, 0.0, None)
    if s == 1:
        return symmetrize(rho)
    with np.errstate(divide="ignore"):
        powered = np.where(lam > 0, lam ** s, 0.0 if s > 0 else 1.0)
    return _apply(d, powered)


def matrix_log(rho):
    d = eigendecompose_hermitian(rho)
    if d.eigenvalues[-1] <= RANK_TOL:
        raise SingularLog(f"log of a matrix with eigenvalue {d.eigenvalues[-1]:.3e}")
    return _apply(d, np.log(d.eigenvalues))


def validate_density(m):
    """Return ``m`` as a read-only density matrix or raise :class:`NotAState`.

    The violated invariant (``"shape"``, ``"finite"``, ``"hermitian"``,
    ``"trace"`` or ``"positivity"``) is attached as ``err.invariant``.
    """
    m = np.array(m, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotAState(f"density matrix must be square, got shape {m.shape}", "shape")
    if not np.all(np.isfinite(m)):
        raise NotAState("density matrix has non-finite entries", "finite")
    defect = hermitian_defect(m)
    if defect > STATE_TOL:
        raise NotAState(f"not Hermitian (defect {defect:.3e})", "hermitian")
    m = symmetrize(m)
    tr = np.trace(m).real
    if abs(tr - 1.0) > STATE_TOL:
        raise NotAState(f"trace is {tr!r}, expected 1", "trace")
    lam_min = np.linalg.eigvalsh(m)[0]
    if lam_min < -STATE_TOL:
        raise NotAState(f"negative eigenvalue {lam_min:.6g}", "positivity")
    m.flags.writeable = False
    return m


def is_pure(rho, tol=1e-10):
    lam = np.linalg.eigvalsh(symmetrize(rho))
    return abs(lam[-1] - 1.0) <= tol


def random_density(n, rng, rank=None):
    """Random state from the Hilbert-Schmidt (Ginibre) ensemble."""
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary(n, rng):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    qm, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return qm * ph
