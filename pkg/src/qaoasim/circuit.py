"""QAOA circuit assembly: plus-state init, alternating cost/mixer layers.

The depth-p circuit applies, for i = 1..p, the diagonal cost phase
exp(-i * gamma_i * f) followed by Rx(-2 * beta_i) on every qubit.
Simulation always restarts from the plus state so that expectation,
gradient and sampling calls on one handle are order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend, costpoly
from .errors import ContractViolation


@dataclass(frozen=True)
class QaoaParams:
    """The 2p variational angles, in radians."""

    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __init__(self, betas, gammas):
        betas = tuple(float(b) for b in betas)
        gammas = tuple(float(g) for g in gammas)
        if len(betas) != len(gammas):
            raise ContractViolation(
                f"betas and gammas must have equal length "
                f"({len(betas)} vs {len(gammas)})"
            )
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "gammas", gammas)

    @property
    def p(self) -> int:
        return len(self.betas)


def linear_ramp_params(p: int) -> QaoaParams:
    """Constant-speed schedule: beta_i = 1 - i/p, gamma_i = i/p, i = 1..p."""
    if p < 1:
        raise ContractViolation(f"ramp schedule needs p >= 1, got {p}")
    betas = [1.0 - i / p for i in range(1, p + 1)]
    gammas = [i / p for i in range(1, p + 1)]
    return QaoaParams(betas, gammas)


def flatten_params(params: QaoaParams) -> np.ndarray:
    """Flat vector in execution order: [gamma_1, beta_1, gamma_2, beta_2, ...]."""
    out = np.empty(2 * params.p, dtype=np.float64)
    out[0::2] = params.gammas
    out[1::2] = params.betas
    return out


def unflatten_params(vec) -> QaoaParams:
    vec = np.asarray(vec, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] % 2 != 0:
        raise ContractViolation("flat parameter vector must have even length")
    return QaoaParams(betas=vec[1::2], gammas=vec[0::2])


class SimHandle:
    """Bundles a problem's cost table with a statevector and its context."""

    def __init__(
        self,
        polynomial: costpoly.Polynomial,
        table: costpoly.CostTable,
        state: backend.StateBuffer,
        ctx: backend.BackendContext,
    ):
        self.n = polynomial.n
        self.polynomial = polynomial
        self.table = table
        self.state = state
        self.ctx = ctx
        self._scratch: backend.RealBuffer | None = None

    def _scratch_real(self) -> backend.RealBuffer:
        # allocated on first use, then reused
        if self._scratch is None:
            self._scratch = backend.alloc_real(1 << self.n, self.ctx)
        return self._scratch


def create_handle(poly: costpoly.Polynomial, backend_name: str | None = None) -> SimHandle:
    """Precompute the cost table and allocate the plus-state statevector."""
    ctx = backend.create_context(backend_name)
    table = costpoly.precompute(poly, ctx)
    state = backend.alloc_plus_state(poly.n, ctx)
    return SimHandle(polynomial=poly, table=table, state=state, ctx=ctx)


def simulate(handle: SimHandle, params: QaoaParams) -> None:
    """Reset to the plus state, then apply the p cost/mixer layer pairs."""
    backend.reset_plus(handle.state)
    for gamma, beta in zip(params.gammas, params.betas):
        backend.apply_diagonal_phase(handle.state, handle.table.values, gamma)
        backend.apply_rx_layer(handle.state, -2.0 * beta)


def expectation_of_state(handle: SimHandle) -> float:
    """<psi|H_C|psi> of the handle's current state via weighted tree sum."""
    scratch = handle._scratch_real()
    backend.weighted_probabilities(handle.state, handle.table.values, scratch)
    value = backend.tree_reduce_sum(scratch)
    # round-off guard: a weighted average of table entries cannot leave
    # the table's range
    return min(max(value, handle.table.min_value), handle.table.max_value)


def expectation(handle: SimHandle, params: QaoaParams) -> float:
    simulate(handle, params)
    return expectation_of_state(handle)


def statevector(handle: SimHandle, params: QaoaParams) -> np.ndarray:
    simulate(handle, params)
    return backend.export_state(handle.state)
