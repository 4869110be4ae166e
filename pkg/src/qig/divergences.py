"""Two-point potential functions on probability vectors and density matrices.

All quantum divergences take density matrices as produced by
:func:`qig.hermitian.validate_density` (or any Hermitian unit-trace array).
The Tsallis family is used in its rescaled form ``(1 - Tr rho^q sigma^(1-q)) /
(q (1 - q))``, which is symmetric under ``(rho, sigma, q) -> (sigma, rho, 1-q)``
and reaches relative von Neumann entropy at both ends of the parameter range.
"""

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BadParameter, NotAState, NumericalSpectrum, SingularLog, SupportMismatch
from .hermitian import RANK_TOL, eigendecompose_hermitian, matrix_log, matrix_power

Q_LIMIT_TOL = 1e-8
PROB_TOL = 1e-12


class DivergenceKind(enum.Enum):
    CLASSICAL_SHANNON_RELATIVE = "classical-shannon-relative"
    CLASSICAL_HELLINGER = "classical-hellinger"
    CLASSICAL_TSALLIS = "classical-tsallis"
    QUANTUM_TSALLIS_RESCALED = "quantum-tsallis-rescaled"
    QUANTUM_VON_NEUMANN_RELATIVE = "quantum-von-neumann-relative"
    QUANTUM_HALF_HALF = "quantum-half-half"


_QUANTUM = {
    DivergenceKind.QUANTUM_TSALLIS_RESCALED,
    DivergenceKind.QUANTUM_VON_NEUMANN_RELATIVE,
    DivergenceKind.QUANTUM_HALF_HALF,
}


def validate_probability(p):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise NotAState(f"probability vector must be 1-D and non-empty, got shape {p.shape}", "shape")
    if not np.all(np.isfinite(p)):
        raise NotAState("probability vector has non-finite entries", "finite")
    if np.any(p < -PROB_TOL):
        raise NotAState(f"negative probability {p.min():.3e}", "positivity")
    if abs(p.sum() - 1.0) > PROB_TOL:
        raise NotAState(f"probabilities sum to {p.sum()!r}", "normalization")
    return np.clip(p, 0.0, None)


def _check_q(q):
    q = float(q)
    if abs(q - 1.0) < Q_LIMIT_TOL:
        return "one"
    if abs(q) < Q_LIMIT_TOL:
        return "zero"
    if not 0.0 < q < 1.0:
        raise BadParameter(f"q must lie in (0, 1) or at a limit, got {q}")
    return None


def _tr_prod(a, b):
    return float(np.real(np.sum(a * b.T)))


# --- classical ---------------------------------------------------------------

def shannon_relative(p, r):
    """Kullback-Leibler divergence ``sum p_j (ln p_j - ln r_j)``."""
    p = validate_probability(p)
    r = validate_probability(r)
    if p.shape != r.shape:
        raise SupportMismatch("probability vectors have different lengths")
    supp = p > 0
    if np.any(r[supp] <= 0):
        raise SupportMismatch("r vanishes where p is positive")
    return float(np.sum(p[supp] * (np.log(p[supp]) - np.log(r[supp]))))


def hellinger_potential(p, r):
    """``4 (1 - sum sqrt(p_j r_j))``, in [0, 4]."""
    p = validate_probability(p)
    r = validate_probability(r)
    if p.shape != r.shape:
        raise SupportMismatch("probability vectors have different lengths")
    return float(4.0 * (1.0 - np.sum(np.sqrt(p * r))))


def classical_tsallis(p, r, q):
    """Rescaled Tsallis relative entropy of two probability vectors."""
    limit = _check_q(q)
    if limit == "one":
        return shannon_relative(p, r)
    if limit == "zero":
        return shannon_relative(r, p)
    p = validate_probability(p)
    r = validate_probability(r)
    if p.shape != r.shape:
        raise SupportMismatch("probability vectors have different lengths")
    overlap = np.sum(p ** q * r ** (1.0 - q))
    return float((1.0 - overlap) / (q * (1.0 - q)))


# --- quantum -----------------------------------------------------------------

def quantum_tsallis(rho, sigma, q):
    """Rescaled quantum Tsallis relative entropy.

    ``q`` within ``1e-8`` of 1 (resp. 0) dispatches to ``S(rho||sigma)``
    (resp. ``S(sigma||rho)``) instead of dividing by a vanishing ``q(1-q)``.
    """
    limit = _check_q(q)
    if limit == "one":
        return von_neumann_relative(rho, sigma)
    if limit == "zero":
        return von_neumann_relative(sigma, rho)
    overlap = _tr_prod(matrix_power(rho, q), matrix_power(sigma, 1.0 - q))
    return (1.0 - overlap) / (q * (1.0 - q))


def _entropy_term(rho):
    lam = eigendecompose_hermitian(rho).eigenvalues
    lam = lam[lam > RANK_TOL]
    return float(np.sum(lam * np.log(lam)))


def von_neumann_relative(rho, sigma):
    """``Tr rho (ln rho - ln sigma)``; ``sigma`` must be full rank."""
    try:
        log_sigma = matrix_log(sigma)
    except SingularLog as exc:
        raise SingularLog(f"relative entropy needs a full-rank second argument: {exc}") from None
    return _entropy_term(rho) - _tr_prod(np.asarray(rho), log_sigma)


def von_neumann_dual(rho, sigma):
    """``Tr sigma (ln sigma - ln rho)``, the ``q -> 0`` end of the Tsallis family."""
    return von_neumann_relative(sigma, rho)


def fidelity_root(rho, sigma):
    """``Tr sqrt(rho sigma)`` from the spectrum of the (non-Hermitian) product.

    The product is similar to ``sqrt(rho) sigma sqrt(rho)``, so this coincides
    with the usual root fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))``.
    """
    ev = np.linalg.eigvals(np.asarray(rho) @ np.asarray(sigma))
    if np.any(ev.real < -1e-10) or np.any(np.abs(ev.imag) > 1e-10):
        raise NumericalSpectrum(f"product spectrum is not non-negative: {ev}")
    return float(np.sum(np.sqrt(np.clip(ev.real, 0.0, None))))


def half_half_divergence(rho, sigma):
    """``1 - Tr sqrt(rho sigma)``, the alpha = z = 1/2 member of the alpha-z family."""
    return 1.0 - fidelity_root(rho, sigma)


# --- typed wrapper -----------------------------------------------------------

@dataclass(frozen=True)
class Divergence:
    """A two-point function ``evaluate(x, y)`` with its metadata."""

    kind: DivergenceKind
    q: Optional[float] = None
    evaluate: Callable = None

    @property
    def quantum(self):
        return self.kind in _QUANTUM

    def __call__(self, x, y):
        return self.evaluate(x, y)


def make_divergence(kind, q=None):
    kind = DivergenceKind(kind)
    if kind is DivergenceKind.CLASSICAL_SHANNON_RELATIVE:
        fn = shannon_relative
    elif kind is DivergenceKind.CLASSICAL_HELLINGER:
        fn = hellinger_potential
    elif kind is DivergenceKind.QUANTUM_VON_NEUMANN_RELATIVE:
        fn = von_neumann_relative
    elif kind is DivergenceKind.QUANTUM_HALF_HALF:
        fn = half_half_divergence
    else:
        if q is None:
            raise BadParameter(f"{kind.value} needs a q parameter")
        _check_q(q)
        base = classical_tsallis if kind is DivergenceKind.CLASSICAL_TSALLIS else quantum_tsallis
        fn = lambda x, y, _q=float(q), _f=base: _f(x, y, _q)
    return Divergence(kind, None if q is None else float(q), fn)
