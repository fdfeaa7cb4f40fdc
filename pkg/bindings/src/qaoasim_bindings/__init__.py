"""End-user layer over the qaoasim simulator.

Problems come in as plain nested lists (term weights with variable
indices, or graph edges), results go out as plain floats, ints and
lists.  Every operation delegates to the core package; nothing numeric
is re-implemented here, so bound results are bit-equal to the core
API's.
"""

from __future__ import annotations

import qaoasim as _core

__version__ = "0.1.0"

__all__ = [
    "BoundHandle",
    "create",
    "expectation",
    "gradient",
    "optimize",
    "sample",
    "statevector",
]


def _check_index(i: int, n: int) -> int:
    i = int(i)
    if i < 0 or i >= n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    return i


def _to_params(betas, gammas) -> _core.QaoaParams:
    return _core.QaoaParams(betas=betas, gammas=gammas)


class BoundHandle:
    """Wraps a core simulator handle; construct via create()."""

    def __init__(self, handle: _core.SimHandle):
        self._handle = handle

    @property
    def num_qubits(self) -> int:
        return self._handle.n

    def expectation(self, betas, gammas) -> float:
        return float(_core.expectation(self._handle, _to_params(betas, gammas)))

    def statevector(self, betas, gammas) -> list[complex]:
        amps = _core.statevector(self._handle, _to_params(betas, gammas))
        return [complex(a) for a in amps]

    def sample(self, betas, gammas, shots: int, seed: int) -> list[tuple[int, float]]:
        samples = _core.sample(
            self._handle, _to_params(betas, gammas), shots, seed
        )
        return [(int(b), float(c)) for b, c in samples.records]

    def gradient(self, betas, gammas) -> dict:
        grad = _core.gradient(self._handle, _to_params(betas, gammas))
        return {
            "d_betas": [float(v) for v in grad.d_betas],
            "d_gammas": [float(v) for v in grad.d_gammas],
            "layer_applications": int(grad.layer_applications),
        }

    def optimize(self, betas, gammas, **config) -> dict:
        cfg = _core.OptimizeConfig(**config) if config else None
        result = _core.minimize(self._handle, _to_params(betas, gammas), cfg)
        return {
            "betas": [float(v) for v in result.params.betas],
            "gammas": [float(v) for v in result.params.gammas],
            "value": float(result.value),
            "iterations": int(result.iterations),
            "gradient_norm": float(result.gradient_norm),
            "converged": bool(result.converged),
            "trace": [(float(f), float(g)) for f, g in result.trace],
            "failure_reason": result.failure_reason,
        }


def create(n: int, terms=None, edges=None, backend: str | None = None) -> BoundHandle:
    """Build a handle from term lists [(weight, [indices])] or an edge list.

    Edges may be (u, v) or (u, v, weight) in either vertex order; they
    select the MaxCut encoding (minimize the negated cut value).
    """
    if (terms is None) == (edges is None):
        raise ValueError("give exactly one of terms= or edges=")
    if terms is not None:
        converted = []
        for weight, indices in terms:
            mask = 0
            for i in indices:
                mask |= 1 << _check_index(i, n)
            converted.append((float(weight), mask))
        poly = _core.Polynomial(n, converted)
    else:
        normalized = []
        for edge in edges:
            u = _check_index(edge[0], n)
            v = _check_index(edge[1], n)
            w = float(edge[2]) if len(edge) > 2 else 1.0
            normalized.append((min(u, v), max(u, v), w))
        poly = _core.maxcut_polynomial(_core.Graph(n, normalized))
    return BoundHandle(_core.create_handle(poly, backend_name=backend))


def expectation(handle: BoundHandle, betas, gammas) -> float:
    return handle.expectation(betas, gammas)


def statevector(handle: BoundHandle, betas, gammas) -> list[complex]:
    return handle.statevector(betas, gammas)


def sample(handle: BoundHandle, betas, gammas, shots: int, seed: int):
    return handle.sample(betas, gammas, shots, seed)


def gradient(handle: BoundHandle, betas, gammas) -> dict:
    return handle.gradient(betas, gammas)


def optimize(handle: BoundHandle, betas, gammas, **config) -> dict:
    return handle.optimize(betas, gammas, **config)
