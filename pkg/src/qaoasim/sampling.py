"""Shot sampling from the QAOA output distribution.

Records keep draw order (no sorting) so that byte-level
reproducibility of a seeded run is directly visible in the output.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import backend, circuit
from .errors import ContractViolation


@dataclass(frozen=True)
class SampleSet:
    shots: int
    seed: int
    records: tuple[tuple[int, float], ...]


def draw(handle: circuit.SimHandle, shots: int, seed: int) -> SampleSet:
    """Sample the handle's current state without re-simulating."""
    if shots < 1:
        raise ContractViolation(f"shots must be >= 1, got {shots}")
    indices = backend.sample_indices(handle.state, shots, seed)
    table = handle.table.values.data
    records = tuple((int(i), float(table[i])) for i in indices)
    return SampleSet(shots=shots, seed=seed, records=records)


def sample(
    handle: circuit.SimHandle,
    params: circuit.QaoaParams,
    shots: int,
    seed: int,
) -> SampleSet:
    """Simulate, then draw `shots` bitstrings with their objective values."""
    if shots < 1:
        raise ContractViolation(f"shots must be >= 1, got {shots}")
    circuit.simulate(handle, params)
    return draw(handle, shots, seed)


def best_of(samples: SampleSet) -> tuple[int, float]:
    """Record with minimal cost; ties break to the smaller bitstring."""
    if not samples.records:
        raise ContractViolation("best_of on an empty sample set")
    best = min(samples.records, key=lambda rec: (rec[1], rec[0]))
    return best[0], best[1]


def histogram(samples: SampleSet) -> dict[int, int]:
    """Bitstring -> count aggregation (keys sorted for stable output)."""
    counts = Counter(bitstring for bitstring, _ in samples.records)
    return dict(sorted(counts.items()))
