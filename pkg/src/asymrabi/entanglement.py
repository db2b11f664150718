"""Entanglement diagnostics: partial traces, von Neumann entropy, negativity.

Two-qubit states are handled in the product basis
``|up,up>, |up,down>, |down,up>, |down,down>``; triplet-sector states are
embedded there with :func:`triplet_to_two_qubit` first.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import BasisMismatch, NotDensityMatrix

TWO_QUBIT_LABELS = ("uu", "ud", "du", "dd")

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ENTROPY_CUTOFF = 1e-14
NEGATIVITY_CLAMP = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotDensityMatrix(f"density matrix must be square, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise NotDensityMatrix("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotDensityMatrix(f"trace {tr!r} != 1")
        if np.linalg.eigvalsh(m)[0] < -PSD_TOL:
            raise NotDensityMatrix("density matrix has a negative eigenvalue")

    @property
    def dim(self):
        return self.matrix.shape[0]


@dataclass(frozen=True)
class EntanglementReport:
    """``entropy`` in bits; ``negativity`` is None when not applicable;
    ``partition`` names the subsystem that was traced out."""

    entropy: float
    negativity: float
    partition: str


def _as_matrix(rho):
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)


def reduced_density(state, dims, keep=0):
    """Partial trace of ``|state><state|`` on a bipartite space.

    Parameters
    ----------
    state : array, shape (dims[0] * dims[1],)
    dims : (int, int)
        Dimensions of the two factors, first factor major.
    keep : {0, 1}
        Factor to keep (0 is the spin/qubit factor in this library).
    """
    state = np.asarray(state)
    d0, d1 = dims
    if state.ndim != 1 or state.size != d0 * d1:
        raise BasisMismatch(f"state of size {state.size} does not factor as {d0} x {d1}")
    if keep not in (0, 1):
        raise BasisMismatch(f"keep must be 0 or 1, got {keep!r}")
    psi = state.reshape(d0, d1)
    rho = psi @ psi.conj().T if keep == 0 else psi.T @ psi.conj()
    return DensityMatrix(rho)


def von_neumann_entropy(rho):
    """``-sum p log2 p`` over the eigenvalues of ``rho``."""
    p = np.linalg.eigvalsh(_as_matrix(rho))
    p = np.where((p < 0) & (p >= -PSD_TOL), 0.0, p)
    p = p[p > ENTROPY_CUTOFF]
    if p.size <= 1:
        # pure: the lone survivor is 1 up to rounding
        return 0.0
    return float(max(0.0, -np.sum(p * np.log2(p))))


def triplet_to_two_qubit(state, fock_dim):
    """Embed ``|1>, |0>, |-1>`` (x) Fock into the four-dimensional qubit basis.

    ``|1> -> |uu>``, ``|0> -> (|ud> + |du>)/sqrt(2)``, ``|-1> -> |dd>``.
    """
    state = np.asarray(state)
    if state.size != 3 * fock_dim:
        raise BasisMismatch(f"triplet state of size {state.size} != 3 x {fock_dim}")
    t = state.reshape(3, fock_dim)
    out = np.zeros((4, fock_dim), dtype=state.dtype)
    out[0] = t[0]
    out[1] = out[2] = t[1] / math.sqrt(2.0)
    out[3] = t[2]
    return out.reshape(-1)


def two_qubit_reduced(triplet_state, fock_dim):
    """Reduced two-qubit density matrix of a triplet-sector state."""
    return reduced_density(triplet_to_two_qubit(triplet_state, fock_dim), (4, fock_dim), keep=0)


def partial_transpose(rho, dims=(2, 2), which=1):
    """Transpose factor ``which`` of a bipartite operator."""
    m = _as_matrix(rho)
    d0, d1 = dims
    t = m.reshape(d0, d1, d0, d1)
    t = t.transpose(0, 3, 2, 1) if which == 1 else t.transpose(2, 1, 0, 3)
    return t.reshape(d0 * d1, d0 * d1)


def negativity_of_matrix(pt):
    """Absolute sum of the negative eigenvalues of an already transposed matrix."""
    e = np.linalg.eigvalsh(pt)
    neg = -float(np.sum(e[e < 0]))
    return 0.0 if neg <= NEGATIVITY_CLAMP else neg


def negativity(rho):
    """``(||rho^T2||_1 - 1) / 2`` for a two-qubit density matrix."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(np.asarray(rho))
    if rho.dim != 4:
        raise NotDensityMatrix(f"negativity needs a 4x4 two-qubit state, got {rho.dim}x{rho.dim}")
    return negativity_of_matrix(partial_transpose(rho.matrix))


def transformed_partial_transpose(xi2, beta):
    """Partially transposed qubit state of ``|-1>|xi> + beta|0>|0> + |1>|-xi>``.

    Closed form in the qubit product basis; ``beta = -nu3 / B`` for the
    displaced-frame ground state.
    """
    g = beta / math.sqrt(2.0) * math.exp(-0.5 * xi2 * xi2)
    c = math.exp(-2.0 * xi2 * xi2)
    h = 0.5 * beta * beta
    m = np.array([
        [1.0, g, g, h],
        [g, h, c, g],
        [g, c, h, g],
        [h, g, g, 1.0],
    ])
    return m / (2.0 + beta * beta)


def negativity_closed_form(xi2, beta):
    return max((2.0 * math.exp(-2.0 * xi2 * xi2) - beta * beta) / (2.0 * (2.0 + beta * beta)), 0.0)


def closed_form_disagreements(xis, betas, tol=1e-10):
    """Grid points where the closed form differs from the eigenvalue negativity.

    Returns a list of ``(xi2, beta, closed_form, eigenvalue_value)``. Outside
    ``beta**2 <= 2`` a second eigenvalue, ``(1 - beta**2/2)/(2 + beta**2)``,
    turns negative and the closed form undercounts.
    """
    out = []
    for xi in xis:
        for beta in betas:
            cf = negativity_closed_form(xi, beta)
            ev = negativity_of_matrix(transformed_partial_transpose(xi, beta))
            if abs(cf - ev) > tol:
                out.append((float(xi), float(beta), cf, ev))
    return out


def negativity_perturbative(params):
    """Weak-coupling negativity estimate, quadratic in the couplings."""
    w_a, w_b, g1, g2 = params.w_a, params.w_b, params.g1, params.g2
    k = (1.0 - 1.0 / math.sqrt(2.0)) ** 2
    return w_b * (k * g2 * g2 + g1 * g2) / (4.0 * w_a * (w_a + w_b) ** 2)


def single_qubit_report(state, fock_dim):
    rho = reduced_density(state, (2, fock_dim), keep=0)
    return EntanglementReport(von_neumann_entropy(rho), None, "field")


def two_qubit_report(triplet_state, fock_dim):
    rho = two_qubit_reduced(triplet_state, fock_dim)
    return EntanglementReport(von_neumann_entropy(rho), negativity(rho), "field")
