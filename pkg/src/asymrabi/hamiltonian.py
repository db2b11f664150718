"""Dense Hamiltonians of the single- and two-qubit asymmetric Rabi models.

Basis ordering is spin-major, Fock-minor. Single qubit: ``|up>, |down>``
with ``sigma_z |up> = +|up>``. Two qubits (triplet sector only):
``|1>, |0>, |-1>`` with ``J_z |m> = m |m>`` and
``J_+ |m> = sqrt(2 - m(m+1)) |m+1>``.

Matrices are filled entry by entry rather than through Kronecker products;
only the banded spin-flip/photon-hop entries are nonzero.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .fock import FockSpace

SQRT2 = math.sqrt(2.0)

SINGLE_SPIN_LABELS = ("up", "down")
TRIPLET_LABELS = (1, 0, -1)

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class SingleQubitParams:
    """``w_a`` qubit splitting, ``w_b`` oscillator frequency, ``lambda1``
    corotating and ``lambda2`` counterrotating coupling."""

    w_a: float
    w_b: float
    lambda1: float
    lambda2: float

    def __post_init__(self):
        _check_params(self.w_a, self.w_b, self.lambda1, self.lambda2)

    @property
    def couplings(self):
        return self.lambda1, self.lambda2


@dataclass(frozen=True)
class TwoQubitParams:
    """``w_a`` per-qubit splitting, ``w_b`` oscillator frequency, ``g1``
    corotating and ``g2`` counterrotating coupling."""

    w_a: float
    w_b: float
    g1: float
    g2: float

    def __post_init__(self):
        _check_params(self.w_a, self.w_b, self.g1, self.g2)

    @property
    def couplings(self):
        return self.g1, self.g2


def _check_params(w_a, w_b, c1, c2):
    vals = (w_a, w_b, c1, c2)
    if not all(math.isfinite(v) for v in vals):
        raise ValueError(f"parameters must be finite, got {vals}")
    if w_a <= 0 or w_b <= 0:
        raise ValueError(f"frequencies must be positive, got w_a={w_a}, w_b={w_b}")
    if c1 < 0 or c2 < 0:
        raise ValueError(f"couplings must be non-negative, got {c1}, {c2}")


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix on ``spin (x) Fock``.

    ``frame`` is ``"original"`` or ``"rotated"`` for two-qubit operators and
    ``None`` for the single-qubit model; it keeps states from different frames
    from being compared by accident.
    """

    matrix: np.ndarray
    spin_labels: tuple
    space: FockSpace
    frame: str = None
    hermiticity_residual: float = field(init=False)

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if m.shape[0] != len(self.spin_labels) * self.space.dim:
            raise ValueError(
                f"matrix dimension {m.shape[0]} != {len(self.spin_labels)} x {self.space.dim}"
            )
        resid = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if resid > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian (residual {resid:.3g})")
        object.__setattr__(self, "hermiticity_residual", resid)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def dims(self):
        """``(spin dimension, Fock dimension)``."""
        return len(self.spin_labels), self.space.dim

    @property
    def basis(self):
        return [(s, n) for s in self.spin_labels for n in range(self.space.dim)]


def _hop(H, row_spin, col_spin, d, amp):
    """Add ``amp * sqrt(n+1)`` at ``(row_spin, n+1), (col_spin, n)`` and its mirror."""
    if amp == 0:
        return
    n = np.arange(d - 1)
    r = row_spin * d + n + 1
    c = col_spin * d + n
    v = amp * np.sqrt(n + 1.0)
    H[r, c] += v
    H[c, r] += v


def build_single_qubit(params, space):
    """``w_a/2 sz + w_b b^dag b + lambda1/2 (b^dag s- + b s+) + lambda2/2 (b^dag s+ + b s-)``."""
    d = space.dim
    H = np.zeros((2 * d, 2 * d))
    n = np.arange(d, dtype=float)
    idx = np.arange(d)
    H[idx, idx] = 0.5 * params.w_a + params.w_b * n
    H[d + idx, d + idx] = -0.5 * params.w_a + params.w_b * n
    UP, DOWN = 0, 1
    # b^dag s-: |up,n> -> sqrt(n+1) |down,n+1>
    _hop(H, DOWN, UP, d, 0.5 * params.lambda1)
    # b^dag s+: |down,n> -> sqrt(n+1) |up,n+1>
    _hop(H, UP, DOWN, d, 0.5 * params.lambda2)
    return HermitianOperator(H, SINGLE_SPIN_LABELS, space)


def build_two_qubit(params, space):
    """``w_a Jz + w_b b^dag b + g1 (b^dag J- + b J+) + g2 (b^dag J+ + b J-)``."""
    d = space.dim
    H = np.zeros((3 * d, 3 * d))
    n = np.arange(d, dtype=float)
    for k, m in enumerate(TRIPLET_LABELS):
        H[k * d + np.arange(d), k * d + np.arange(d)] = params.w_a * m + params.w_b * n
    # Spin indices: 0 -> m=1, 1 -> m=0, 2 -> m=-1. Every J+- element is sqrt(2).
    for upper, lower in ((0, 1), (1, 2)):
        # b^dag J-: |upper,n> -> |lower,n+1>
        _hop(H, lower, upper, d, SQRT2 * params.g1)
        # b^dag J+: |lower,n> -> |upper,n+1>
        _hop(H, upper, lower, d, SQRT2 * params.g2)
    return HermitianOperator(H, TRIPLET_LABELS, space, frame="original")


def build_two_qubit_rotated(params, space):
    """``w_a Jx + w_b b^dag b + (g1+g2)(b^dag+b) Jz + i(g1-g2)(b^dag-b) Jy``.

    ``i Jy = (J+ - J-)/2`` is real, so the last term is a real symmetric
    matrix and the whole operator is returned with a real dtype.
    """
    d = space.dim
    H = np.zeros((3 * d, 3 * d))
    n = np.arange(d, dtype=float)
    idx = np.arange(d)
    for k in range(3):
        H[k * d + idx, k * d + idx] = params.w_b * n
    # w_a Jx: <m+1|Jx|m> = 1/sqrt(2), diagonal in photon number.
    jx = params.w_a / SQRT2
    for upper, lower in ((0, 1), (1, 2)):
        H[upper * d + idx, lower * d + idx] = jx
        H[lower * d + idx, upper * d + idx] = jx
    # (g1+g2) m (b^dag + b)
    s = params.g1 + params.g2
    for k, m in enumerate(TRIPLET_LABELS):
        _hop(H, k, k, d, s * m)
    # (g1-g2)/sqrt(2) [|m+1,n+1><m,n| - |m+1,n><m,n+1|] + h.c.
    a = (params.g1 - params.g2) / SQRT2
    for upper, lower in ((0, 1), (1, 2)):
        _hop(H, upper, lower, d, a)
        _hop(H, lower, upper, d, -a)
    return HermitianOperator(H, TRIPLET_LABELS, space, frame="rotated")


def build(params, space, frame="original"):
    """Dispatch on the parameter type; ``frame`` applies to two-qubit models only."""
    if isinstance(params, SingleQubitParams):
        return build_single_qubit(params, space)
    if isinstance(params, TwoQubitParams):
        if frame == "original":
            return build_two_qubit(params, space)
        if frame == "rotated":
            return build_two_qubit_rotated(params, space)
        raise ValueError(f"unknown frame {frame!r}")
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def spin1_y_rotation():
    """``exp(-i pi Jy / 2)`` on ``|1>, |0>, |-1>`` (real Wigner d-matrix)."""
    r = 1.0 / SQRT2
    return np.array([[0.5, -r, 0.5], [r, 0.0, -r], [0.5, r, 0.5]])


def frame_rotation(space):
    """Unitary mapping the original two-qubit frame onto the rotated one.

    ``U = exp(-i pi Jy / 2) (x) (-1)^(b^dag b)`` satisfies
    ``U H_original U^dag = H_rotated``. The photon-parity factor flips the
    sign of ``b``; the spin factor takes ``Jz`` to ``Jx``. Both factors act
    locally (on the qubits and on the field), so entanglement between the
    two qubits is unchanged by it. This is a convention chosen here, checked
    numerically; nothing downstream depends on it.
    """
    parity = (-1.0) ** np.arange(space.dim)
    return np.kron(spin1_y_rotation(), np.diag(parity))
