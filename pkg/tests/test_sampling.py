import math

import numpy as np
import pytest

import qaoasim as qs
from qaoasim.errors import ContractViolation

from conftest import random_instance, random_params


class TestSample:
    def test_uniform_baseline_tv_distance(self, backend):
        poly = random_instance(5, 6)
        handle = qs.create_handle(poly, backend_name=backend)
        samples = qs.sample(handle, qs.QaoaParams((), ()), 100_000, seed=77)
        counts = np.bincount(
            [b for b, _ in samples.records], minlength=64
        )
        tv = 0.5 * np.sum(np.abs(counts / 100_000 - 1.0 / 64))
        assert tv < 0.02

    def test_costs_match_objective(self, backend):
        poly = qs.Polynomial(1, [(1.0, 0b1)])
        handle = qs.create_handle(poly, backend_name=backend)
        params = qs.QaoaParams(betas=[math.pi / 4], gammas=[math.pi])
        samples = qs.sample(handle, params, 200, seed=3)
        for bitstring, cost in samples.records:
            assert cost in (0.0, 1.0)
            assert cost == qs.evaluate(poly, bitstring)

    def test_cost_consistency_exact(self, backend):
        poly = random_instance(21, 7)
        handle = qs.create_handle(poly, backend_name=backend)
        samples = qs.sample(handle, random_params(4, 2), 500, seed=11)
        for bitstring, cost in samples.records:
            assert cost == qs.evaluate(poly, bitstring)

    def test_same_seed_identical(self, backend):
        poly = random_instance(9, 5)
        handle = qs.create_handle(poly, backend_name=backend)
        params = random_params(10, 2)
        a = qs.sample(handle, params, 300, seed=123)
        b = qs.sample(handle, params, 300, seed=123)
        assert a == b

    def test_distinct_seeds_differ(self, backend):
        poly = random_instance(9, 5)
        handle = qs.create_handle(poly, backend_name=backend)
        params = random_params(10, 2)
        a = qs.sample(handle, params, 300, seed=1)
        b = qs.sample(handle, params, 300, seed=2)
        assert a.records != b.records

    def test_distribution_fidelity(self, backend):
        # n=8 is the worst case for TV at fixed shots; 2e5 shots keeps
        # the expected distance (~0.014) clear of the 0.02 bound
        shots = 200_000
        poly = random_instance(33, 8)
        handle = qs.create_handle(poly, backend_name=backend)
        params = random_params(34, 1)
        samples = qs.sample(handle, params, shots, seed=2024)
        probs = np.abs(qs.statevector(handle, params)) ** 2
        counts = np.bincount(
            [b for b, _ in samples.records], minlength=probs.shape[0]
        )
        tv = 0.5 * np.sum(np.abs(counts / shots - probs))
        assert tv < 0.02

    def test_zero_shots_rejected(self, backend, k3_poly):
        handle = qs.create_handle(k3_poly, backend_name=backend)
        with pytest.raises(ContractViolation):
            qs.sample(handle, qs.QaoaParams((), ()), 0, seed=1)


class TestBestOf:
    def test_picks_minimum_cost(self):
        samples = qs.SampleSet(2, 0, ((3, -2.0), (0, 0.0)))
        assert qs.best_of(samples) == (3, -2.0)

    def test_tie_breaks_to_smaller_bitstring(self):
        samples = qs.SampleSet(2, 0, ((5, -2.0), (1, -2.0)))
        assert qs.best_of(samples) == (1, -2.0)

    def test_single_record(self):
        samples = qs.SampleSet(1, 0, ((4, 1.5),))
        assert qs.best_of(samples) == (4, 1.5)

    def test_empty_rejected(self):
        with pytest.raises(ContractViolation):
            qs.best_of(qs.SampleSet(0, 0, ()))


class TestHistogram:
    def test_counts(self):
        samples = qs.SampleSet(4, 0, ((1, 0.0), (3, -1.0), (1, 0.0), (0, 0.0)))
        assert qs.histogram(samples) == {0: 1, 1: 2, 3: 1}
