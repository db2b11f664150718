"""Shared oracles and the acceptance summary hook.

The reference Hamiltonians here are assembled with ``np.kron`` from Pauli and
spin-1 matrices, independently of the entry-filling code in the library.
"""
import math

import numpy as np
import pytest
from scipy.optimize import brentq

SQRT2 = math.sqrt(2.0)

# spin-1/2 on (up, down)
SIGMA_Z = np.diag([1.0, -1.0])
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
SIGMA_MINUS = SIGMA_PLUS.T

# spin-1 on (|1>, |0>, |-1>)
J_Z = np.diag([1.0, 0.0, -1.0])
J_PLUS = np.array([[0.0, SQRT2, 0.0], [0.0, 0.0, SQRT2], [0.0, 0.0, 0.0]])
J_MINUS = J_PLUS.T
J_X = 0.5 * (J_PLUS + J_MINUS)
J_Y = -0.5j * (J_PLUS - J_MINUS)


def ladder(n_max):
    return np.diag(np.sqrt(np.arange(1.0, n_max + 1)), 1)


def reference_single(w_a, w_b, l1, l2, n_max):
    b = ladder(n_max)
    bd = b.T
    one_f = np.eye(n_max + 1)
    return (0.5 * w_a * np.kron(SIGMA_Z, one_f)
            + w_b * np.kron(np.eye(2), bd @ b)
            + 0.5 * l1 * (np.kron(SIGMA_MINUS, bd) + np.kron(SIGMA_PLUS, b))
            + 0.5 * l2 * (np.kron(SIGMA_PLUS, bd) + np.kron(SIGMA_MINUS, b)))


def reference_two(w_a, w_b, g1, g2, n_max):
    b = ladder(n_max)
    bd = b.T
    return (w_a * np.kron(J_Z, np.eye(n_max + 1))
            + w_b * np.kron(np.eye(3), bd @ b)
            + g1 * (np.kron(J_MINUS, bd) + np.kron(J_PLUS, b))
            + g2 * (np.kron(J_PLUS, bd) + np.kron(J_MINUS, b)))


def reference_two_rotated(w_a, w_b, g1, g2, n_max):
    """Literal complex-arithmetic assembly, including the ``i J_y`` term."""
    b = ladder(n_max)
    bd = b.T
    return (w_a * np.kron(J_X, np.eye(n_max + 1))
            + w_b * np.kron(np.eye(3), bd @ b)
            + (g1 + g2) * np.kron(J_Z, bd + b)
            + 1j * (g1 - g2) * np.kron(J_Y, bd - b))


def brentq_xi1(w_a, w_b, l1, l2):
    """Smallest positive root of the single-qubit condition, by plain bisection-type search."""
    f = lambda x: math.exp(2 * x * x) * ((l1 + l2) - 4 * w_b * x) - (l1 - l2) - 4 * w_a * x
    return _first_root(f)


def brentq_xi2(w_a, w_b, g1, g2):
    def f(x):
        eta = math.exp(-0.5 * x * x)
        A = w_b * x * x - 2 * x * (g1 + g2)
        B = eta * (w_a - x * (g1 - g2)) / SQRT2
        return eta * (w_a * x + g1 - g2) * (A + math.sqrt(A * A + 8 * B * B)) - 2 * SQRT2 * B * (g1 + g2 - w_b * x)
    return _first_root(f)


def _first_root(f, hi=3.0, n=30001):
    """Root nearest zero on [0, hi], found on a fine grid then refined."""
    if abs(f(0.0)) < 1e-14:
        return 0.0
    xs = np.linspace(1e-9, hi, n)
    vals = np.array([f(x) for x in xs])
    idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    if idx.size == 0:
        raise AssertionError("oracle found no sign change")
    i = idx[0]
    return brentq(f, xs[i], xs[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        ACCEPTANCE_LINES[number] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        passed, detail = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
