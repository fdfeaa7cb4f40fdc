"""Brute-force reference simulation for tests and acceptance runs.

Deliberately shares no kernel code with the backend module: phases
come from per-entry polynomial evaluation (no cost table), the mixer
is an explicit 2x2 matrix applied qubit by qubit through gather
indices, and the expectation is a plain sequential left-fold sum.
Agreement with the fast path is therefore evidence, not tautology.
"""

from __future__ import annotations

import cmath

import numpy as np

from .circuit import QaoaParams
from .costpoly import Polynomial, evaluate
from .errors import ContractViolation

MAX_ORACLE_QUBITS = 14
DEFAULT_FD_STEP = 1e-5


def _check_size(poly: Polynomial) -> None:
    if poly.n > MAX_ORACLE_QUBITS:
        raise ContractViolation(
            f"dense oracle is capped at n <= {MAX_ORACLE_QUBITS}, got {poly.n}"
        )


def _rx_dense(psi: np.ndarray, n: int, theta: float) -> np.ndarray:
    m00 = complex(np.cos(theta / 2.0), 0.0)
    m01 = -1j * np.sin(theta / 2.0)
    for j in range(n):
        idx0 = np.nonzero((np.arange(psi.shape[0]) >> j) & 1 == 0)[0]
        idx1 = idx0 + (1 << j)
        lo = psi[idx0]
        hi = psi[idx1]
        psi[idx0] = m00 * lo + m01 * hi
        psi[idx1] = m01 * lo + m00 * hi
    return psi


def dense_simulate(poly: Polynomial, params: QaoaParams) -> np.ndarray:
    """Reference statevector for the depth-p circuit."""
    _check_size(poly)
    size = 1 << poly.n
    psi = np.full(size, 1.0 / np.sqrt(size), dtype=np.complex128)
    for gamma, beta in zip(params.gammas, params.betas):
        for x in range(size):
            psi[x] *= cmath.exp(-1j * gamma * evaluate(poly, x))
        _rx_dense(psi, poly.n, -2.0 * beta)
    return psi


def dense_expectation(poly: Polynomial, params: QaoaParams) -> float:
    """Sequential sum of f(x) |psi_x|^2 over the dense statevector."""
    psi = dense_simulate(poly, params)
    total = 0.0
    for x in range(psi.shape[0]):
        a = psi[x]
        total += evaluate(poly, x) * (a.real * a.real + a.imag * a.imag)
    return total


def _expectation_from_values(values: np.ndarray, params: QaoaParams) -> float:
    # same circuit math as dense_simulate, with f(x) evaluated once up
    # front; keeps finite differencing affordable at p = 6
    size = values.shape[0]
    n = int(size).bit_length() - 1
    psi = np.full(size, 1.0 / np.sqrt(size), dtype=np.complex128)
    for gamma, beta in zip(params.gammas, params.betas):
        psi *= np.cos(-gamma * values) + 1j * np.sin(-gamma * values)
        _rx_dense(psi, n, -2.0 * beta)
    total = 0.0
    for x in range(size):
        a = psi[x]
        total += values[x] * (a.real * a.real + a.imag * a.imag)
    return total


def fd_gradient(poly: Polynomial, params: QaoaParams, h: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Central-difference gradient in [gamma_1, beta_1, ...] order."""
    _check_size(poly)
    if h <= 0.0:
        raise ContractViolation(f"finite-difference step must be > 0, got {h}")
    values = np.array([evaluate(poly, x) for x in range(1 << poly.n)])
    base = np.empty(2 * params.p, dtype=np.float64)
    base[0::2] = params.gammas
    base[1::2] = params.betas

    def at(vec) -> float:
        return _expectation_from_values(
            values, QaoaParams(betas=vec[1::2], gammas=vec[0::2])
        )

    grad = np.empty_like(base)
    for i in range(base.shape[0]):
        plus = base.copy()
        plus[i] += h
        minus = base.copy()
        minus[i] -= h
        grad[i] = (at(plus) - at(minus)) / (2.0 * h)
    return grad
