"""Ground states by dense diagonalization, with Fock-cutoff convergence."""
from dataclasses import dataclass
import logging

import numpy as np
import scipy.linalg

from .errors import DegenerateGround, NoConvergence
from .fock import FockSpace
from .hamiltonian import HermitianOperator, build

log = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-10

DEFAULT_TOL = 1e-8
DEFAULT_N_START = 20
DEFAULT_N_STEP = 10
DEFAULT_N_CAP = 200


@dataclass
class GroundStateSolution:
    """Converged ground state.

    ``energy_convergence`` is ``|E(n_max_used) - E(n_max_used - step)|``;
    ``history`` lists every ``(n_max, energy)`` visited. When the ground
    level is degenerate ``degenerate_subspace`` holds an orthonormal basis of
    it (columns) and ``state`` is just its first member.
    """

    energy: float
    state: np.ndarray
    n_max_used: int
    energy_convergence: float
    gap: float
    hamiltonian: HermitianOperator
    history: list
    degenerate_subspace: np.ndarray = None

    @property
    def degenerate(self):
        return self.degenerate_subspace is not None


def _matrix(H):
    return H.matrix if isinstance(H, HermitianOperator) else np.asarray(H)


def fix_phase(v):
    """Rotate ``v`` so its largest-magnitude component is real and positive."""
    k = int(np.argmax(np.abs(v)))
    ph = v[k] / abs(v[k])
    out = v * np.conj(ph)
    if np.iscomplexobj(out):
        out[k] = abs(out[k])
    return out


def lowest_eigenvalues(H, count=2):
    m = _matrix(H)
    count = min(count, m.shape[0])
    return scipy.linalg.eigh(m, eigvals_only=True, subset_by_index=[0, count - 1])


def ground_state(H):
    """Lowest eigenvalue and a unit eigenvector with a fixed phase.

    Raises
    ------
    DegenerateGround
        If the two lowest eigenvalues differ by less than ``DEGENERACY_TOL``.
        The exception carries ``energy``, ``gap`` and ``subspace``.
    """
    m = _matrix(H)
    w, v = scipy.linalg.eigh(m, subset_by_index=[0, min(1, m.shape[0] - 1)])
    energy = float(w[0])
    gap = float(w[1] - w[0]) if len(w) > 1 else np.inf
    if gap < DEGENERACY_TOL:
        wall, vall = scipy.linalg.eigh(m)
        sub = vall[:, np.abs(wall - wall[0]) < DEGENERACY_TOL]
        raise DegenerateGround(
            f"ground level degenerate (gap {gap:.3g} < {DEGENERACY_TOL})",
            energy=energy, gap=gap, subspace=sub,
        )
    return energy, fix_phase(v[:, 0])


def rayleigh_quotient(H, v):
    m = _matrix(H)
    return float(np.real(np.vdot(v, m @ v)) / np.real(np.vdot(v, v)))


def subspace_projection_norm(v, subspace):
    """Norm of the projection of unit ``v`` onto the span of ``subspace`` columns."""
    return float(np.linalg.norm(subspace.conj().T @ v))


def converged_ground_state(model, tol=DEFAULT_TOL, n_start=DEFAULT_N_START,
                           n_step=DEFAULT_N_STEP, n_cap=DEFAULT_N_CAP,
                           frame="original", allow_degenerate=False):
    """Grow the Fock cutoff until the ground energy changes by less than ``tol``.

    The first comparison is between ``n_start - n_step`` and ``n_start``, so a
    model that is already converged reports ``n_max_used == n_start``.

    Parameters
    ----------
    model : SingleQubitParams or TwoQubitParams
    frame : {"original", "rotated"}
        Two-qubit frame; ignored for the single-qubit model.
    allow_degenerate : bool
        Return a flagged solution instead of raising ``DegenerateGround``.

    Raises
    ------
    NoConvergence
        If ``n_cap`` is reached with the energy still moving by ``>= tol``.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n_start < 8 or n_step < 1 or n_cap < n_start:
        raise ValueError(f"bad cutoff schedule n_start={n_start}, n_step={n_step}, n_cap={n_cap}")

    n_prev = max(1, n_start - n_step)
    e_prev = float(lowest_eigenvalues(build(model, FockSpace(n_prev), frame), 1)[0])
    history = [(n_prev, e_prev)]
    n = n_start
    while True:
        H = build(model, FockSpace(n), frame)
        w = lowest_eigenvalues(H, 2)
        history.append((n, float(w[0])))
        delta = abs(float(w[0]) - e_prev)
        if delta < tol:
            break
        if n >= n_cap:
            raise NoConvergence(
                f"ground energy still changing by {delta:.3g} at n_max={n} (tol {tol})"
            )
        e_prev = float(w[0])
        n = min(n + n_step, n_cap)

    try:
        energy, state = ground_state(H)
        sub = None
        gap = float(w[1] - w[0])
    except DegenerateGround as exc:
        if not allow_degenerate:
            raise
        energy, gap, sub = exc.energy, exc.gap, exc.subspace
        state = fix_phase(sub[:, 0])
    log.debug("converged %s at n_max=%d (delta %.3g)", model, n, delta)
    return GroundStateSolution(
        energy=energy, state=state, n_max_used=n, energy_convergence=delta,
        gap=gap, hamiltonian=H, history=history, degenerate_subspace=sub,
    )
