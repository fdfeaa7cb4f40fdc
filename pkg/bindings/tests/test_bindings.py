import math

import pytest

import qaoasim as core
import qaoasim_bindings as qb
from qaoasim.errors import ContractViolation


def ramp(p):
    params = core.linear_ramp_params(p)
    return list(params.betas), list(params.gammas)


class TestCreate:
    def test_k3_edges_expectation(self):
        handle = qb.create(3, edges=[(0, 1), (1, 2), (0, 2)])
        value = handle.expectation([0.0], [0.0])
        assert value == pytest.approx(-1.5, abs=1e-12)

    def test_terms_table(self):
        handle = qb.create(1, terms=[(1.0, [0])])
        assert list(handle._handle.table.values.data) == [0.0, 1.0]

    def test_index_out_of_range(self):
        with pytest.raises(IndexError, match="5"):
            qb.create(2, terms=[(1.0, [5])])

    def test_edge_index_out_of_range(self):
        with pytest.raises(IndexError, match="7"):
            qb.create(3, edges=[(0, 7)])

    def test_unordered_edges_accepted(self):
        a = qb.create(3, edges=[(2, 0), (1, 0), (2, 1)])
        b = qb.create(3, edges=[(0, 2), (0, 1), (1, 2)])
        assert a.expectation([0.3], [0.7]) == b.expectation([0.3], [0.7])

    def test_exactly_one_input(self):
        with pytest.raises(ValueError):
            qb.create(2)
        with pytest.raises(ValueError):
            qb.create(2, terms=[(1.0, [0])], edges=[(0, 1)])


class TestBoundOperations:
    def test_gradient_zero_params_is_zero(self):
        handle = qb.create(3, edges=[(0, 1), (1, 2), (0, 2)])
        grad = handle.gradient([0.0, 0.0], [0.0, 0.0])
        assert grad["d_betas"] == [0.0, 0.0]
        assert grad["d_gammas"] == [0.0, 0.0]

    def test_sample_seed_fixed(self):
        handle = qb.create(3, edges=[(0, 1), (1, 2)])
        betas, gammas = ramp(2)
        first = handle.sample(betas, gammas, shots=100, seed=5)
        second = handle.sample(betas, gammas, shots=100, seed=5)
        assert first == second
        assert all(isinstance(b, int) and isinstance(c, float) for b, c in first)

    def test_statevector_p0(self):
        handle = qb.create(4, terms=[(1.0, [0, 1])])
        amps = handle.statevector([], [])
        assert amps == [complex(1.0 / math.sqrt(16), 0.0)] * 16

    def test_errors_propagate_with_message(self):
        handle = qb.create(2, edges=[(0, 1)])
        with pytest.raises(ContractViolation, match="shots"):
            handle.sample([0.0], [0.0], shots=0, seed=1)

    def test_optimize_record(self):
        handle = qb.create(3, edges=[(0, 1), (1, 2), (0, 2)])
        betas, gammas = ramp(2)
        record = handle.optimize(betas, gammas)
        assert record["converged"]
        assert record["value"] == pytest.approx(-2.0, abs=1e-6)
        assert len(record["betas"]) == 2


class TestParityWithCore:
    """Acceptance gate: bound results bit-equal to the core API."""

    def _instances(self):
        out = []
        for seed in range(10):
            n = 2 + seed % 6
            g = core.erdos_renyi(n, 0.5, seed=seed * 11 + 1)
            if g.num_edges == 0:
                g = core.complete_graph(n)
            edges = [(u, v, w) for u, v, w in g.edges]
            p = 1 + seed % 3
            params = core.linear_ramp_params(p)
            out.append((n, g, edges, params))
        return out

    def test_all_operations_bit_equal(self):
        for n, g, edges, params in self._instances():
            poly = core.maxcut_polynomial(g)
            core_handle = core.create_handle(poly)
            bound = qb.create(n, edges=edges)
            betas, gammas = list(params.betas), list(params.gammas)

            assert bound.expectation(betas, gammas) == core.expectation(
                core_handle, params
            )

            assert bound.statevector(betas, gammas) == [
                complex(a) for a in core.statevector(core_handle, params)
            ]

            core_grad = core.gradient(core_handle, params)
            bound_grad = bound.gradient(betas, gammas)
            assert bound_grad["d_betas"] == list(core_grad.d_betas)
            assert bound_grad["d_gammas"] == list(core_grad.d_gammas)

            core_samples = core.sample(core_handle, params, 200, seed=42)
            assert bound.sample(betas, gammas, 200, seed=42) == [
                (int(b), float(c)) for b, c in core_samples.records
            ]

            core_opt = core.minimize(core_handle, params)
            bound_opt = bound.optimize(betas, gammas)
            assert bound_opt["value"] == core_opt.value
            assert bound_opt["betas"] == list(core_opt.params.betas)
            assert bound_opt["gammas"] == list(core_opt.params.gammas)
            assert bound_opt["iterations"] == core_opt.iterations
