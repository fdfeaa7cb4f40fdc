"""Native L-BFGS minimizer (two-loop recursion, strong Wolfe line search).

The engine works on plain vectors through a value-and-gradient
callback; the QAOA entry point wires that callback to the expectation
value and the adjoint gradient over the flattened
[gamma_1, beta_1, gamma_2, beta_2, ...] parameter vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import adjoint, circuit
from .errors import ContractViolation

_CURVATURE_SKIP_REL = 1e-10


@dataclass(frozen=True)
class OptimizeConfig:
    max_iterations: int = 100
    memory: int = 10
    grad_tol: float = 1e-6
    c1: float = 1e-4
    c2: float = 0.9
    initial_step: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.c1 < self.c2 < 1.0):
            raise ContractViolation(
                f"line-search constants need 0 < c1 < c2 < 1, "
                f"got c1={self.c1}, c2={self.c2}"
            )
        if self.memory < 1:
            raise ContractViolation(f"memory must be >= 1, got {self.memory}")
        if self.grad_tol <= 0.0:
            raise ContractViolation(f"grad_tol must be > 0, got {self.grad_tol}")


@dataclass
class OptimizeResult:
    x: np.ndarray
    value: float
    iterations: int
    gradient_norm: float
    converged: bool
    trace: list[tuple[float, float]]
    evaluations: int
    failure_reason: str | None = None
    params: circuit.QaoaParams | None = None


def _interpolate(a_lo, f_lo, g_lo, a_hi, f_hi):
    """Minimum of the quadratic through (a_lo, f_lo, g_lo) and (a_hi, f_hi)."""
    denom = f_hi - f_lo - g_lo * (a_hi - a_lo)
    if denom <= 0.0:
        return None
    cand = a_lo + 0.5 * g_lo * (a_lo - a_hi) * (a_hi - a_lo) / denom
    span = abs(a_hi - a_lo)
    lo, hi = min(a_lo, a_hi), max(a_lo, a_hi)
    if not np.isfinite(cand) or cand < lo + 0.1 * span or cand > hi - 0.1 * span:
        return None
    return cand


class _LineSearch:
    """Strong-Wolfe search along d: bracket by step doubling, then zoom by
    interpolation with bisection fallback.  Bounded in both stages."""

    MAX_BRACKET = 20
    MAX_ZOOM = 30

    def __init__(self, evaluate, x, d, f0, g0, c1, c2):
        self.evaluate = evaluate
        self.x = x
        self.d = d
        self.f0 = f0
        self.dphi0 = float(np.dot(g0, d))
        self.c1 = c1
        self.c2 = c2

    def _phi(self, a):
        f, g = self.evaluate(self.x + a * self.d)
        return f, g, float(np.dot(g, self.d))

    def _sufficient(self, a, f) -> bool:
        return f <= self.f0 + self.c1 * a * self.dphi0

    def _curvature(self, dphi) -> bool:
        return abs(dphi) <= -self.c2 * self.dphi0

    def run(self, a_first):
        a_prev, f_prev, dphi_prev = 0.0, self.f0, self.dphi0
        a = a_first
        for attempt in range(self.MAX_BRACKET):
            f_a, g_a, dphi_a = self._phi(a)
            if not self._sufficient(a, f_a) or (attempt > 0 and f_a >= f_prev):
                return self._zoom(a_prev, f_prev, dphi_prev, a, f_a)
            if self._curvature(dphi_a):
                return a, f_a, g_a
            if dphi_a >= 0.0:
                return self._zoom(a, f_a, dphi_a, a_prev, f_prev)
            a_prev, f_prev, dphi_prev = a, f_a, dphi_a
            a *= 2.0
        return None

    def _zoom(self, a_lo, f_lo, dphi_lo, a_hi, f_hi):
        for _ in range(self.MAX_ZOOM):
            a = _interpolate(a_lo, f_lo, dphi_lo, a_hi, f_hi)
            if a is None:
                a = 0.5 * (a_lo + a_hi)
            f_a, g_a, dphi_a = self._phi(a)
            if not self._sufficient(a, f_a) or f_a >= f_lo:
                a_hi, f_hi = a, f_a
            else:
                if self._curvature(dphi_a):
                    return a, f_a, g_a
                if dphi_a * (a_hi - a_lo) >= 0.0:
                    a_hi, f_hi = a_lo, f_lo
                a_lo, f_lo, dphi_lo = a, f_a, dphi_a
            if abs(a_hi - a_lo) < 1e-16 * max(1.0, abs(a_lo)):
                break
        return None


def _curvature_ok(s: np.ndarray, y: np.ndarray) -> bool:
    """Keep a history pair only when s.y is safely positive; pairs with
    non-positive curvature would break the Hessian approximation."""
    sy = float(np.dot(s, y))
    return sy > _CURVATURE_SKIP_REL * float(np.linalg.norm(s)) * float(
        np.linalg.norm(y)
    )


def _two_loop(g, pairs):
    q = g.copy()
    alphas = []
    for s, y, rho in reversed(pairs):
        a = rho * float(np.dot(s, q))
        alphas.append(a)
        q -= a * y
    if pairs:
        s, y, _ = pairs[-1]
        q *= float(np.dot(s, y)) / float(np.dot(y, y))
    for (s, y, rho), a in zip(pairs, reversed(alphas)):
        b = rho * float(np.dot(y, q))
        q += (a - b) * s
    return -q


def minimize_callback(
    provider: Callable[[np.ndarray], tuple[float, np.ndarray]],
    init,
    cfg: OptimizeConfig | None = None,
) -> OptimizeResult:
    """Minimize a plain objective given a (value, gradient) provider."""
    cfg = cfg or OptimizeConfig()
    x = np.asarray(init, dtype=np.float64).copy()
    dim = x.shape[0]
    evals = 0

    def evaluate(v):
        nonlocal evals
        f, g = provider(v)
        g = np.asarray(g, dtype=np.float64)
        if g.shape != (dim,):
            raise ContractViolation(
                f"gradient shape {g.shape} does not match parameter "
                f"dimension {dim}"
            )
        evals += 1
        return float(f), g

    f, g = evaluate(x)
    gnorm = float(np.max(np.abs(g))) if dim else 0.0
    trace = [(f, gnorm)]
    pairs: list[tuple[np.ndarray, np.ndarray, float]] = []
    iterations = 0
    converged = gnorm <= cfg.grad_tol
    failure_reason = None

    while not converged and iterations < cfg.max_iterations:
        d = _two_loop(g, pairs)
        if float(np.dot(g, d)) >= 0.0:
            d = -g
        if iterations == 0:
            a_first = cfg.initial_step / float(np.linalg.norm(g))
        else:
            a_first = cfg.initial_step
        search = _LineSearch(evaluate, x, d, f, g, cfg.c1, cfg.c2)
        hit = search.run(a_first)
        if hit is None:
            failure_reason = (
                "line search exhausted its bisection budget without "
                "satisfying the Wolfe conditions"
            )
            break
        a, f_new, g_new = hit
        s = a * d
        y = g_new - g
        x = x + s
        f, g = f_new, g_new
        iterations += 1
        gnorm = float(np.max(np.abs(g)))
        trace.append((f, gnorm))
        if _curvature_ok(s, y):
            pairs.append((s, y, 1.0 / float(np.dot(s, y))))
            if len(pairs) > cfg.memory:
                pairs.pop(0)
        converged = gnorm <= cfg.grad_tol

    return OptimizeResult(
        x=x,
        value=f,
        iterations=iterations,
        gradient_norm=gnorm,
        converged=converged,
        trace=trace,
        evaluations=evals,
        failure_reason=failure_reason,
    )


def minimize(
    handle: circuit.SimHandle,
    init: circuit.QaoaParams | None = None,
    cfg: OptimizeConfig | None = None,
    *,
    depth: int | None = None,
) -> OptimizeResult:
    """Train the 2p angles against the expectation value.

    Objective and gradient come from the simulator (adjoint gradients);
    when no explicit start is given, the linear-ramp schedule at the
    requested depth is used.
    """
    if init is None:
        if depth is None:
            raise ContractViolation("minimize needs init params or a depth")
        init = circuit.linear_ramp_params(depth)
    if init.p < 1:
        raise ContractViolation("minimize needs depth p >= 1")

    def provider(vec):
        params = circuit.unflatten_params(vec)
        value = circuit.expectation(handle, params)
        grad = adjoint.gradient(handle, params)
        flat = np.empty(2 * params.p, dtype=np.float64)
        flat[0::2] = grad.d_gammas
        flat[1::2] = grad.d_betas
        return value, flat

    result = minimize_callback(provider, circuit.flatten_params(init), cfg)
    result.params = circuit.unflatten_params(result.x)
    return result
