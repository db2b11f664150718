"""Displaced-frame (polaron-type) ground states of the asymmetric Rabi models.

Single qubit: the generator ``xi1 (b^dag - b) sigma_x`` is fixed by

    exp(2 xi^2) [(l1 + l2) - 4 w_b xi] = (l1 - l2) + 4 w_a xi

and the ground state is ``exp(-S)|down>|0>``. Two qubits (rotated frame):
the generator ``xi2 (b^dag - b) J_z`` leaves a three-level spin problem with
parameters ``A`` and ``B``; ``xi2`` is fixed by ``D1(xi2) = 0``, which removes
the counterrotating coupling between its two lowest levels.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateB, DimensionMismatch, RootAmbiguous, RootNotFound
from .fock import FockSpace, coherent_vector
from .hamiltonian import SQRT2, SingleQubitParams, TwoQubitParams
from .rootfind import continue_root

DEGENERATE_B_TOL = 1e-14
ROOT_RESIDUAL_TOL = 1e-10


@dataclass
class TransformedAnsatz:
    xi: float
    energy_transformed: float
    energy_quadratic_approx: float
    ansatz_state: np.ndarray
    root_residual: float
    space: FockSpace
    frame: str = None
    truncation_norm: float = 1.0
    eigensystem: "ThreeLevelEigensystem" = None


@dataclass
class ThreeLevelEigensystem:
    """Spin part of the displaced two-qubit Hamiltonian,
    ``[[A, B, 0], [B, 0, B], [0, B, A]]`` on ``|-1>, |0>, |1>``.

    ``phi[k]`` is the k-th eigenvector (ascending ``nu``) in that basis and
    ``normalizers[k]`` the norm of its unnormalized closed form.
    """

    A: float
    B: float
    nu: np.ndarray
    phi: np.ndarray
    normalizers: np.ndarray

    @property
    def matrix(self):
        A, B = self.A, self.B
        return np.array([[A, B, 0.0], [B, 0.0, B], [0.0, B, A]])


# -- single qubit -----------------------------------------------------------

def xi1_condition(params, xi):
    """Residual of the single-qubit displacement condition and its derivative."""
    s = params.lambda1 + params.lambda2
    d = params.lambda1 - params.lambda2
    e = math.exp(2.0 * xi * xi)
    lhs = s - 4.0 * params.w_b * xi
    f = e * lhs - d - 4.0 * params.w_a * xi
    df = 4.0 * xi * e * lhs - 4.0 * params.w_b * e - 4.0 * params.w_a
    return f, df


def xi1_bracket(params):
    """Interval ``[0, hi]`` with a sign change of the condition.

    Starts from ``(l1 + l2) / (4 w_b)``, where the left side vanishes, and
    doubles until the residual turns negative.
    """
    f = lambda x: xi1_condition(params, x)[0]
    if f(0.0) == 0.0:
        return 0.0, 0.0
    hi = max(
        (params.lambda1 + params.lambda2) / (4.0 * params.w_b),
        (params.lambda2 - params.lambda1) / (4.0 * params.w_a),
        1e-12,
    )
    for _ in range(60):
        if f(hi) < 0:
            return 0.0, hi
        hi *= 2.0
    raise RootNotFound(f"could not bracket the displacement root for {params}")


def solve_xi1(params):
    """Root of the single-qubit condition continuously connected to ``xi = 0``."""
    if params.lambda1 == 0 and params.lambda2 == 0:
        return 0.0

    def scaled(x, s):
        return xi1_condition(
            SingleQubitParams(params.w_a, params.w_b, s * params.lambda1, s * params.lambda2), x
        )

    return continue_root(scaled)


def xi1_linear_approx(params):
    return params.lambda2 / (2.0 * (params.w_a + params.w_b))


def energy_g1(params, xi1):
    eta = math.exp(-2.0 * xi1 * xi1)
    l1, l2 = params.lambda1, params.lambda2
    return (xi1 * xi1 * params.w_b - 0.5 * (l1 + l2) * xi1
            - 0.5 * eta * (params.w_a - xi1 * (l1 - l2)))


def energy_g1_quadratic(params):
    s = params.w_a + params.w_b
    l1, l2 = params.lambda1, params.lambda2
    return -0.5 * params.w_a - l2 * l2 / (4.0 * s) + l2 ** 3 * (l1 - l2) / (8.0 * s ** 3)


def ansatz_single(params, space, xi1=None):
    """``(|psi+>|-xi> - |psi->|xi>)/sqrt(2)`` with ``|psi+-> = (|up> +- |down>)/sqrt(2)``."""
    xi = solve_xi1(params) if xi1 is None else xi1
    minus, n1 = coherent_vector(-xi, space, return_norm=True)
    plus, n2 = coherent_vector(xi, space, return_norm=True)
    up = 0.5 * (minus - plus)
    down = 0.5 * (minus + plus)
    state = np.concatenate([up, down])
    state /= np.linalg.norm(state)
    return TransformedAnsatz(
        xi=xi,
        energy_transformed=energy_g1(params, xi),
        energy_quadratic_approx=energy_g1_quadratic(params),
        ansatz_state=state,
        root_residual=abs(xi1_condition(params, xi)[0]),
        space=space,
        truncation_norm=min(n1, n2),
    )


# -- two qubits ---------------------------------------------------------------

def three_level_parameters(params, xi2):
    """``(A, B, eta)`` of the displaced three-level problem."""
    eta = math.exp(-0.5 * xi2 * xi2)
    A = params.w_b * xi2 * xi2 - 2.0 * xi2 * (params.g1 + params.g2)
    B = eta * (params.w_a - xi2 * (params.g1 - params.g2)) / SQRT2
    return A, B, eta


def _d1_parts(params, xi):
    s = params.g1 + params.g2
    d = params.g1 - params.g2
    w_a, w_b = params.w_a, params.w_b
    eta = math.exp(-0.5 * xi * xi)
    deta = -xi * eta
    A = w_b * xi * xi - 2.0 * xi * s
    dA = 2.0 * w_b * xi - 2.0 * s
    c = w_a - xi * d
    B = eta * c / SQRT2
    dB = (deta * c - eta * d) / SQRT2
    # sqrt(A^2 + 8 B^2) without squaring the 1/sqrt(2) back out
    R = math.hypot(A, 2.0 * eta * c)
    dR = (A * dA + 8.0 * B * dB) / R if R > 0 else 0.0
    P = w_a * xi + d
    Q = s - w_b * xi
    return eta, deta, P, A, dA, B, dB, R, dR, Q


def d1_condition(params, xi):
    """``D1(xi)`` and its derivative."""
    eta, deta, P, A, dA, B, dB, R, dR, Q = _d1_parts(params, xi)
    w_a, w_b = params.w_a, params.w_b
    f = eta * P * (A + R) - 2.0 * SQRT2 * B * Q
    df = (deta * P * (A + R) + eta * w_a * (A + R) + eta * P * (dA + dR)
          - 2.0 * SQRT2 * (dB * Q - B * w_b))
    return f, df


def reduced_d1_condition(params, xi):
    """``D1(xi) / B(xi)`` and its derivative.

    Wherever ``B = 0`` with ``A < 0`` both terms of ``D1`` vanish, so ``D1``
    has a root at ``xi = w_a / (g1 - g2)`` that carries no information about
    the displaced ground state. Dividing it out leaves the same roots
    elsewhere. For ``A <= 0`` the ratio ``(A + R) / B`` is evaluated as
    ``8 B / (R - A)``, which has no cancellation; for ``A > 0`` it keeps a
    pole at ``B = 0``.
    """
    eta, deta, P, A, dA, B, dB, R, dR, Q = _d1_parts(params, xi)
    w_a, w_b = params.w_a, params.w_b
    if A <= 0:
        den = R - A
        K = 8.0 * B / den
        dK = 8.0 * (dB * den - B * (dR - dA)) / (den * den)
    else:
        K = (A + R) / B
        dK = ((dA + dR) * B - (A + R) * dB) / (B * B)
    f = eta * P * K - 2.0 * SQRT2 * Q
    df = (deta * P + eta * w_a) * K + eta * P * dK + 2.0 * SQRT2 * w_b
    return f, df


def solve_xi2(params):
    """Root of ``D1`` continuously connected to ``xi = 0`` at zero coupling.

    The branch is followed on :func:`reduced_d1_condition`, so the root at
    ``B = 0`` is never picked up.
    """
    if params.g1 == 0 and params.g2 == 0:
        return 0.0

    def scaled(x, s):
        return reduced_d1_condition(TwoQubitParams(params.w_a, params.w_b, s * params.g1, s * params.g2), x)

    xi = continue_root(scaled)
    resid = abs(d1_condition(params, xi)[0])
    if resid > ROOT_RESIDUAL_TOL:
        raise RootAmbiguous(f"continuation ended on a pole of D1/B at xi={xi} (|D1|={resid:.3g})")
    return xi


def xi2_linear_approx(params):
    w_a, w_b = params.w_a, params.w_b
    return ((w_b - w_a) * params.g1 + (w_b + w_a) * params.g2) / (w_b * w_b + w_a * w_a)


def three_level_eigensystem(params, xi2):
    A, B, _ = three_level_parameters(params, xi2)
    if abs(B) < DEGENERATE_B_TOL:
        raise DegenerateB(f"|B| = {abs(B):.3g} at xi2={xi2}; eigenvectors undefined")
    R = math.hypot(A, SQRT2 * 2.0 * B)
    nu = np.array([0.5 * (A - R), A, 0.5 * (A + R)])
    raw = np.array([
        [1.0, -(A + R) / (2.0 * B), 1.0],
        [-1.0, 0.0, 1.0],
        [1.0, -(A - R) / (2.0 * B), 1.0],
    ])
    norms = np.linalg.norm(raw, axis=1)
    return ThreeLevelEigensystem(A=A, B=B, nu=nu, phi=raw / norms[:, None], normalizers=norms)


def energy_g2(params, xi2=None):
    """Lowest three-level eigenvalue ``nu_1`` at the solved ``xi2``."""
    xi = solve_xi2(params) if xi2 is None else xi2
    return float(three_level_eigensystem(params, xi).nu[0])


def energy_g2_quadratic(params):
    return -params.w_a - (params.g1 + params.g2) * params.g2 / (params.w_a * params.w_b)


def ansatz_two_qubit(params, space, xi2=None):
    """``|-1>|xi> - (nu3/B)|0>|0> + |1>|-xi>``, normalized, in the rotated frame.

    Laid out on the Hamiltonian basis ``|1>, |0>, |-1>``.
    """
    xi = solve_xi2(params) if xi2 is None else xi2
    es = three_level_eigensystem(params, xi)
    coeff = es.phi[0, 1] * es.normalizers[0]
    alt = -es.nu[2] / es.B
    if not math.isclose(coeff, alt, rel_tol=1e-12, abs_tol=1e-12):
        raise ArithmeticError(f"eigenvector coefficient {coeff} != -nu3/B = {alt}")
    plus, n1 = coherent_vector(xi, space, return_norm=True)
    minus, n2 = coherent_vector(-xi, space, return_norm=True)
    vac = np.zeros(space.dim)
    vac[0] = 1.0
    state = np.concatenate([minus, coeff * vac, plus])
    state /= np.linalg.norm(state)
    return TransformedAnsatz(
        xi=xi,
        energy_transformed=float(es.nu[0]),
        energy_quadratic_approx=energy_g2_quadratic(params),
        ansatz_state=state,
        root_residual=abs(d1_condition(params, xi)[0]),
        space=space,
        frame="rotated",
        truncation_norm=min(n1, n2),
        eigensystem=es,
    )


def fidelity(a, b):
    """``|<a|b>|`` clipped to ``[0, 1]``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"state shapes differ: {a.shape} vs {b.shape}")
    return float(min(1.0, abs(np.vdot(a, b))))

