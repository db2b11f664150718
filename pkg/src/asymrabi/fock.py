"""Truncated single-mode Fock space: ladder operators and coherent states.

All amplitudes are real. Coherent vectors are checked against a tail-mass
bound before use so that overlaps computed from truncated vectors stay within
round-off of the closed-form Gaussian.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import TruncationInsufficient

#: Upper bound on the Poisson weight of the highest retained Fock state.
TAIL_MASS_BOUND = 1e-12

#: Amplitudes beyond this are rejected outright.
MAX_AMPLITUDE = 10.0


@dataclass(frozen=True)
class FockSpace:
    """Photon numbers ``0..n_max`` (dimension ``n_max + 1``)."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max!r}")

    @property
    def dim(self):
        return self.n_max + 1


def _check_amplitude(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha) or abs(alpha) > MAX_AMPLITUDE:
        raise ValueError(f"coherent amplitude must be finite with |alpha| <= {MAX_AMPLITUDE}, got {alpha}")
    return alpha


def annihilation_matrix(space):
    """Matrix of ``b`` with ``b[n-1, n] = sqrt(n)``."""
    n = np.arange(1, space.dim)
    return np.diag(np.sqrt(n.astype(float)), k=1)


def creation_matrix(space):
    return annihilation_matrix(space).T.copy()


def number_matrix(space):
    return np.diag(np.arange(space.dim, dtype=float))


def tail_mass(alpha, n_max):
    """Poisson weight ``exp(-a^2) a^(2n) / n!`` of photon number ``n_max``."""
    alpha = abs(float(alpha))
    if alpha == 0.0:
        return 0.0
    log_p = -alpha * alpha + 2 * n_max * math.log(alpha) - math.lgamma(n_max + 1)
    return math.exp(log_p)


def required_n_max(alpha, bound=TAIL_MASS_BOUND):
    """Smallest cutoff (>= 1) whose tail mass for ``alpha`` is below ``bound``."""
    alpha = _check_amplitude(alpha)
    n = max(1, int(alpha * alpha))
    while tail_mass(alpha, n) >= bound:
        n += 1
    return n


def coherent_vector(alpha, space, return_norm=False):
    """Truncated, renormalized coherent state ``|alpha>``.

    Parameters
    ----------
    alpha : float
        Real amplitude.
    space : FockSpace
    return_norm : bool
        Also return the norm of the truncated vector before renormalization.

    Raises
    ------
    TruncationInsufficient
        If the weight of ``|n_max>`` is not below ``TAIL_MASS_BOUND``.
    """
    alpha = _check_amplitude(alpha)
    tm = tail_mass(alpha, space.n_max)
    if tm >= TAIL_MASS_BOUND:
        raise TruncationInsufficient(
            f"n_max={space.n_max} too small for alpha={alpha} "
            f"(tail mass {tm:.3g}; need n_max >= {required_n_max(alpha)})"
        )
    vec = np.empty(space.dim)
    vec[0] = math.exp(-0.5 * alpha * alpha)
    for n in range(1, space.dim):
        vec[n] = vec[n - 1] * alpha / math.sqrt(n)
    norm = np.linalg.norm(vec)
    if return_norm:
        return vec / norm, float(norm)
    return vec / norm


def coherent_overlap(alpha, beta):
    """Closed-form ``<alpha|beta> = exp(-(alpha - beta)^2 / 2)`` for real amplitudes."""
    d = _check_amplitude(alpha) - _check_amplitude(beta)
    return math.exp(-0.5 * d * d)
