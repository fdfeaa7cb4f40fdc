"""Boolean-monomial objective functions and cost-table precomputation.

An objective over n binary variables is a weighted sum of monomials;
each monomial is stored as a bitmask over the variables it multiplies.
Term k contributes its weight at assignment x exactly when
(x AND mask_k) == mask_k.  The full table of 2^n values is precomputed
with one AND plus one compare per term and entry; non-matching terms
are skipped without arithmetic.

Floating-point sums run in the given term order in both the scalar
evaluator and the table kernel, so table entries equal per-entry
evaluation bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .errors import ContractViolation, ParseError

MAX_SPIN_TERM_VARS = 20


def _freeze_terms(n: int, terms: Iterable[tuple[float, int]], kind: str):
    weights = []
    masks = []
    for w, m in terms:
        m = int(m)
        if m < 0 or m >= (1 << n):
            raise ContractViolation(
                f"{kind} term mask {m:#x} out of range for n={n}"
            )
        weights.append(float(w))
        masks.append(m)
    w_arr = np.asarray(weights, dtype=np.float64)
    m_arr = np.asarray(masks, dtype=np.int64)
    w_arr.flags.writeable = False
    m_arr.flags.writeable = False
    return w_arr, m_arr


@dataclass(frozen=True)
class Polynomial:
    """Objective f(x) = sum_k w_k * [x matches mask_k], x in {0,1}^n."""

    n: int
    weights: np.ndarray
    masks: np.ndarray

    def __init__(self, n: int, terms: Iterable[tuple[float, int]] = ()):
        if n < 1:
            raise ContractViolation(f"num_vars must be >= 1, got {n}")
        w, m = _freeze_terms(n, terms, "polynomial")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "masks", m)

    @property
    def num_terms(self) -> int:
        return int(self.weights.shape[0])

    @property
    def terms(self) -> list[tuple[float, int]]:
        return [(float(w), int(m)) for w, m in zip(self.weights, self.masks)]


@dataclass(frozen=True)
class SpinPolynomial:
    """Objective over s in {-1,+1}^n; masks select the spins of each monomial."""

    n: int
    weights: np.ndarray
    masks: np.ndarray

    def __init__(self, n: int, terms: Iterable[tuple[float, int]] = ()):
        if n < 1:
            raise ContractViolation(f"num_vars must be >= 1, got {n}")
        w, m = _freeze_terms(n, terms, "spin polynomial")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "masks", m)

    @property
    def terms(self) -> list[tuple[float, int]]:
        return [(float(w), int(m)) for w, m in zip(self.weights, self.masks)]


@dataclass(frozen=True)
class CostTable:
    """All 2^n objective values, resident in a backend RealBuffer."""

    n: int
    values: backend.RealBuffer
    min_value: float
    max_value: float


def indices_to_mask(indices: Sequence[int], n: int) -> int:
    mask = 0
    for i in indices:
        if i < 0 or i >= n:
            raise ContractViolation(f"variable index {i} out of range for n={n}")
        mask |= 1 << i
    return mask


def mask_to_indices(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def evaluate(poly: Polynomial, x: int) -> float:
    """Scalar objective value at assignment x (term-ordered float sum)."""
    if x < 0 or x >= (1 << poly.n):
        raise ContractViolation(f"assignment {x} out of range for n={poly.n}")
    acc = 0.0
    for w, m in zip(poly.weights, poly.masks):
        if x & m == m:
            acc += w
    return acc


def precompute(poly: Polynomial, ctx: backend.BackendContext) -> CostTable:
    """Fill the 2^n cost table in parallel and record its min/max."""
    backend.check_state_alloc(poly.n)
    values = backend.alloc_real(1 << poly.n, ctx)
    ctx.kernels.precompute_table(poly.weights, poly.masks, values.data)
    ctx._count()
    lo, hi = backend.reduce_min_max(values)
    return CostTable(n=poly.n, values=values, min_value=lo, max_value=hi)


def _submasks_ascending(mask: int):
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def spin_to_boolean(sp: SpinPolynomial) -> Polynomial:
    """Substitute s_i = 1 - 2*x_i and expand into boolean monomials.

    Each spin monomial over v variables expands into 2^v boolean terms
    with weights w * (-2)^|subset|; duplicate masks arising from the
    expansion are merged by weight summation.
    """
    merged: dict[int, float] = {}
    for w, mask in zip(sp.weights, sp.masks):
        mask = int(mask)
        size = bin(mask).count("1")
        if size > MAX_SPIN_TERM_VARS:
            raise ContractViolation(
                f"spin term {mask:#x} touches {size} variables "
                f"(limit {MAX_SPIN_TERM_VARS})"
            )
        for sub in _submasks_ascending(mask):
            coeff = w * ((-2.0) ** bin(sub).count("1"))
            merged[sub] = merged.get(sub, 0.0) + coeff
    return Polynomial(sp.n, [(w, m) for m, w in merged.items()])


def write_terms(path, poly: Polynomial) -> None:
    """Term file: header `vars n`, then one `weight i1 i2 ...` line per term."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"vars {poly.n}\n")
        for w, m in zip(poly.weights, poly.masks):
            idx = " ".join(str(i) for i in mask_to_indices(int(m)))
            fh.write(f"{w:.17g} {idx}".rstrip() + "\n")


def read_terms(path) -> Polynomial:
    n = None
    terms: list[tuple[float, int]] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if n is None:
                if tokens[0] != "vars" or len(tokens) != 2:
                    raise ParseError("expected header `vars n`", lineno)
                try:
                    n = int(tokens[1])
                except ValueError:
                    raise ParseError(f"bad variable count {tokens[1]!r}", lineno)
                continue
            try:
                w = float(tokens[0])
                indices = [int(t) for t in tokens[1:]]
            except ValueError as exc:
                raise ParseError(f"bad term line: {exc}", lineno)
            for i in indices:
                if i < 0 or i >= n:
                    raise ParseError(f"variable index {i} out of range", lineno)
            terms.append((w, indices_to_mask(indices, n)))
    if n is None:
        raise ParseError("missing `vars n` header")
    return Polynomial(n, terms)
