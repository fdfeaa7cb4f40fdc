"""Buffer management and data-parallel operations over 2^n-sized arrays.

Everything that costs O(2^n) goes through this module so that kernel
invocations and live allocations can be instrumented.  A StateBuffer
and its BackendContext are single-owner: callers never run two
operations concurrently on the same context.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import kernels, rng
from .errors import ContractViolation, ResourceError

DEFAULT_MEM_CEILING_BYTES = 16 << 30
DEFAULT_MAX_QUBITS = 30

_BYTES_PER_AMPLITUDE = 16


def mem_ceiling_bytes() -> int:
    raw = os.environ.get("QAOA_MEM_CEILING_BYTES")
    return int(raw) if raw else DEFAULT_MEM_CEILING_BYTES


def max_qubits() -> int:
    raw = os.environ.get("QAOA_MAX_QUBITS")
    return int(raw) if raw else DEFAULT_MAX_QUBITS


class BackendContext:
    """Execution context: kernel set plus instrumentation counters."""

    def __init__(self, backend: str | None = None):
        self.kernels = kernels.get(backend)
        self.backend = kernels.backend_name(self.kernels)
        self.kernel_invocations = 0
        self.live_statevectors = 0
        self.peak_live_statevectors = 0
        self._next_alloc_id = 0

    def _count(self, launches: int = 1) -> None:
        self.kernel_invocations += launches

    def _alloc_id(self) -> int:
        self._next_alloc_id += 1
        return self._next_alloc_id

    def _register_state(self) -> int:
        self.live_statevectors += 1
        self.peak_live_statevectors = max(
            self.peak_live_statevectors, self.live_statevectors
        )
        return self._alloc_id()

    def _release_state(self) -> None:
        self.live_statevectors -= 1

    def reset_peak(self) -> None:
        self.peak_live_statevectors = self.live_statevectors


class StateBuffer:
    """2^n complex128 amplitudes owned by a BackendContext."""

    __slots__ = ("n", "data", "ctx", "alloc_id", "_freed")

    def __init__(self, n: int, data: np.ndarray, ctx: BackendContext):
        self.n = n
        self.data = data
        self.ctx = ctx
        self.alloc_id = ctx._register_state()
        self._freed = False

    def free(self) -> None:
        if not self._freed:
            self._freed = True
            self.ctx._release_state()

    def __del__(self):
        try:
            self.free()
        except Exception:
            pass

    def __len__(self) -> int:
        return self.data.shape[0]


class RealBuffer:
    """Float64 scratch/value array owned by a BackendContext."""

    __slots__ = ("length", "data", "ctx", "alloc_id")

    def __init__(self, length: int, data: np.ndarray, ctx: BackendContext):
        self.length = length
        self.data = data
        self.ctx = ctx
        self.alloc_id = ctx._alloc_id()

    def __len__(self) -> int:
        return self.length


def create_context(backend: str | None = None) -> BackendContext:
    return BackendContext(backend)


def check_state_alloc(n: int) -> None:
    if n < 1:
        raise ContractViolation(f"qubit count must be >= 1, got {n}")
    ceiling = max_qubits()
    if n > ceiling:
        raise ContractViolation(
            f"qubit count {n} exceeds the configured ceiling of {ceiling}"
        )
    nbytes = (1 << n) * _BYTES_PER_AMPLITUDE
    if nbytes > mem_ceiling_bytes():
        raise ResourceError(
            f"statevector for n={n} needs {nbytes} bytes, "
            f"over the {mem_ceiling_bytes()} byte ceiling"
        )


def alloc_plus_state(n: int, ctx: BackendContext) -> StateBuffer:
    """Allocate 2^n amplitudes, all set to 1/sqrt(2^n)."""
    check_state_alloc(n)
    try:
        data = np.empty(1 << n, dtype=np.complex128)
    except MemoryError as exc:
        raise ResourceError(
            f"allocation of {(1 << n) * _BYTES_PER_AMPLITUDE} bytes failed"
        ) from exc
    state = StateBuffer(n, data, ctx)
    ctx.kernels.fill_plus(state.data)
    ctx._count()
    return state


def reset_plus(state: StateBuffer) -> None:
    state.ctx.kernels.fill_plus(state.data)
    state.ctx._count()


def clone_state(state: StateBuffer) -> StateBuffer:
    clone = StateBuffer(state.n, state.data.copy(), state.ctx)
    state.ctx._count()
    return clone


def alloc_real(length: int, ctx: BackendContext) -> RealBuffer:
    if length < 1:
        raise ContractViolation(f"buffer length must be >= 1, got {length}")
    nbytes = length * 8
    if nbytes > mem_ceiling_bytes():
        raise ResourceError(
            f"allocation of {nbytes} bytes is over the "
            f"{mem_ceiling_bytes()} byte ceiling"
        )
    try:
        data = np.empty(length, dtype=np.float64)
    except MemoryError as exc:
        raise ResourceError(f"allocation of {nbytes} bytes failed") from exc
    return RealBuffer(length, data, ctx)


def _check_equal_length(a, b, what: str) -> None:
    if len(a) != len(b):
        raise ContractViolation(
            f"{what}: length mismatch ({len(a)} vs {len(b)})"
        )


def _reduction_levels(length: int) -> int:
    levels = 0
    while length > 1:
        length = (length + 1) >> 1
        levels += 1
    return levels


def apply_diagonal_phase(state: StateBuffer, table: RealBuffer, gamma: float) -> None:
    """Multiply each amplitude by exp(-i * gamma * table[i])."""
    _check_equal_length(state, table, "apply_diagonal_phase")
    state.ctx.kernels.phase_by_table(state.data, table.data, float(gamma))
    state.ctx._count()


def diagonal_multiply(state: StateBuffer, table: RealBuffer) -> None:
    """Multiply each amplitude by table[i] (real diagonal, not unitary)."""
    _check_equal_length(state, table, "diagonal_multiply")
    state.ctx.kernels.diag_scale(state.data, table.data)
    state.ctx._count()


def apply_rx_layer(state: StateBuffer, theta: float) -> None:
    """Apply Rx(theta) to every qubit, one data-parallel pass per qubit."""
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    k = state.ctx.kernels
    for j in range(state.n):
        k.rx_qubit(state.data, j, c, s)
    state.ctx._count(state.n)


def weighted_probabilities(state: StateBuffer, table: RealBuffer, out: RealBuffer) -> None:
    _check_equal_length(state, table, "weighted_probabilities")
    _check_equal_length(state, out, "weighted_probabilities")
    state.ctx.kernels.weighted_probs(state.data, table.data, out.data)
    state.ctx._count()


def tree_reduce_sum(buf: RealBuffer) -> float:
    """Pairwise-tree sum; fixed association, deterministic."""
    if len(buf) < 1:
        raise ContractViolation("tree_reduce_sum: empty buffer")
    total = float(buf.ctx.kernels.tree_sum(buf.data))
    buf.ctx._count(_reduction_levels(len(buf)))
    return total


def reduce_min_max(buf: RealBuffer) -> tuple[float, float]:
    if len(buf) < 1:
        raise ContractViolation("reduce_min_max: empty buffer")
    k = buf.ctx.kernels
    lo = float(k.reduce_min(buf.data))
    hi = float(k.reduce_max(buf.data))
    buf.ctx._count(2)
    return lo, hi


def inner_product(a: StateBuffer, b: StateBuffer) -> complex:
    """Sum of conj(a_i) * b_i with pairwise-tree association."""
    _check_equal_length(a, b, "inner_product")
    val = complex(a.ctx.kernels.inner(a.data, b.data))
    a.ctx._count(_reduction_levels(len(a)) + 1)
    return val


def diag_weighted_inner(a: StateBuffer, table: RealBuffer, b: StateBuffer) -> complex:
    """Sum of conj(a_i) * table[i] * b_i, fused, no scratch statevector."""
    _check_equal_length(a, b, "diag_weighted_inner")
    _check_equal_length(a, table, "diag_weighted_inner")
    val = complex(a.ctx.kernels.diag_inner(a.data, table.data, b.data))
    a.ctx._count(_reduction_levels(len(a)) + 1)
    return val


def xsum_inner(a: StateBuffer, b: StateBuffer) -> complex:
    """Sum over qubits j of <a| X_j |b>, by index pairing (no scratch)."""
    _check_equal_length(a, b, "xsum_inner")
    val = complex(a.ctx.kernels.xsum(a.data, b.data, a.n))
    a.ctx._count(a.n * (_reduction_levels(len(a)) + 1))
    return val


def _probability_tree(state: StateBuffer) -> list[np.ndarray]:
    """Leaf probabilities plus all pairwise partial-sum levels up to the root."""
    k = state.ctx.kernels
    leaves = np.empty(len(state), dtype=np.float64)
    k.probs(state.data, leaves)
    levels = [leaves]
    while levels[-1].shape[0] > 1:
        nxt = np.empty(levels[-1].shape[0] >> 1, dtype=np.float64)
        k.pairwise_level(levels[-1], nxt)
        levels.append(nxt)
    state.ctx._count(len(levels))
    return levels


def sample_indices(state: StateBuffer, shots: int, seed: int) -> np.ndarray:
    """Draw basis-state indices i.i.d. with probability |amp_i|^2.

    Inverse-CDF over the pairwise partial-sum tree: one splitmix64
    uniform per shot (counter = shot index), then a root-to-leaf
    descent.  Identical (state, shots, seed) give identical output on
    any platform.
    """
    if shots < 1:
        raise ContractViolation(f"shots must be >= 1, got {shots}")
    levels = _probability_tree(state)
    total = levels[-1][0]
    if abs(total - 1.0) > 1e-9:
        raise ContractViolation(
            f"state is not normalized: sum of probabilities = {total!r}"
        )
    u = rng.uniform_block(seed, 0, shots) * total
    idx = np.zeros(shots, dtype=np.int64)
    for level in range(len(levels) - 2, -1, -1):
        left = levels[level][2 * idx]
        go_right = u >= left
        u = np.where(go_right, u - left, u)
        idx = 2 * idx + go_right
    state.ctx._count()
    return idx


def export_state(state: StateBuffer) -> np.ndarray:
    """Bit-exact host copy of the amplitudes, index order preserved."""
    return state.data.copy()
