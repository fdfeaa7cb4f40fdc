"""Adjoint-mode gradient of the expectation value.

Two statevectors are kept live: the ket (the handle's own buffer,
holding the forward-simulated state) and a bra initialized to
H_C * ket.  Walking the layers backward, each parameter's derivative
is 2 * Im(<bra| H |ket>) with H the layer's generator, after which the
layer's inverse unitary is applied to both vectors.  The mixer
contraction <bra| sum_j X_j |ket> is evaluated by index pairing, so no
third vector is ever materialized.

Total statevector-wide layer passes: 2p forward, 1 bra preparation and
4p inverse applications, i.e. 6p + 1, linear in depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import backend, circuit
from .errors import ContractViolation

LAYER_APPLICATIONS_PER_DEPTH = 6
LAYER_APPLICATIONS_CONSTANT = 1


@dataclass(frozen=True)
class Gradient:
    d_betas: tuple[float, ...]
    d_gammas: tuple[float, ...]
    layer_applications: int

    @property
    def p(self) -> int:
        return len(self.d_betas)


def gradient(handle: circuit.SimHandle, params: circuit.QaoaParams) -> Gradient:
    """Derivatives of expectation w.r.t. every beta and gamma.

    The handle's state buffer is reused as the ket and ends up back at
    the plus state; since simulation always restarts from the plus
    state this does not disturb later calls on the same handle.
    """
    p = params.p
    if p < 1:
        raise ContractViolation("gradient needs depth p >= 1")

    table = handle.table.values
    circuit.simulate(handle, params)
    ket = handle.state

    bra = backend.clone_state(ket)
    try:
        backend.diagonal_multiply(bra, table)

        d_betas = [0.0] * p
        d_gammas = [0.0] * p
        for i in range(p - 1, -1, -1):
            beta = params.betas[i]
            gamma = params.gammas[i]
            # mixer layer: generator is -sum_j X_j
            d_betas[i] = -2.0 * backend.xsum_inner(bra, ket).imag
            backend.apply_rx_layer(bra, 2.0 * beta)
            backend.apply_rx_layer(ket, 2.0 * beta)
            # cost layer: generator is the diagonal table
            d_gammas[i] = 2.0 * backend.diag_weighted_inner(bra, table, ket).imag
            backend.apply_diagonal_phase(bra, table, -gamma)
            backend.apply_diagonal_phase(ket, table, -gamma)
    finally:
        bra.free()

    return Gradient(
        d_betas=tuple(d_betas),
        d_gammas=tuple(d_gammas),
        layer_applications=LAYER_APPLICATIONS_PER_DEPTH * p
        + LAYER_APPLICATIONS_CONSTANT,
    )
