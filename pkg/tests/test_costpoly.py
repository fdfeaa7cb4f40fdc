import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import qaoasim as qs
from qaoasim import backend, costpoly
from qaoasim.errors import ContractViolation, ParseError

from conftest import brute_force_cut_table, random_polynomial


def table_of(poly, backend_name="reference"):
    ctx = backend.create_context(backend_name)
    return costpoly.precompute(poly, ctx)


class TestEvaluate:
    def test_single_variable_monomial(self):
        poly = qs.Polynomial(2, [(1.0, 0b01)])
        assert qs.evaluate(poly, 3) == 1.0

    def test_pair_monomial_needs_both_bits(self):
        poly = qs.Polynomial(2, [(2.0, 0b11)])
        assert qs.evaluate(poly, 1) == 0.0
        assert qs.evaluate(poly, 3) == 2.0

    def test_constant_term(self):
        poly = qs.Polynomial(2, [(5.0, 0)])
        for x in range(4):
            assert qs.evaluate(poly, x) == 5.0

    def test_out_of_range_assignment(self):
        poly = qs.Polynomial(2, [(1.0, 0b01)])
        with pytest.raises(ContractViolation):
            qs.evaluate(poly, 4)

    def test_mask_out_of_range_rejected(self):
        with pytest.raises(ContractViolation):
            qs.Polynomial(2, [(1.0, 0b100)])

    def test_duplicate_user_masks_are_kept(self):
        poly = qs.Polynomial(2, [(1.0, 0b01), (2.5, 0b01)])
        assert poly.num_terms == 2
        assert qs.evaluate(poly, 1) == 3.5


class TestPrecompute:
    def test_single_variable_table(self, backend):
        poly = qs.Polynomial(2, [(1.0, 0b01)])
        table = table_of(poly, backend)
        assert list(table.values.data) == [0.0, 1.0, 0.0, 1.0]

    def test_pair_table(self, backend):
        poly = qs.Polynomial(2, [(2.0, 0b11)])
        table = table_of(poly, backend)
        assert list(table.values.data) == [0.0, 0.0, 0.0, 2.0]

    def test_triangle_maxcut_table(self, backend, k3_poly):
        expected = brute_force_cut_table(qs.Graph(3, [(0, 1), (1, 2), (0, 2)]))
        assert list(expected) == [0, -2, -2, -2, -2, -2, -2, 0]
        table = table_of(k3_poly, backend)
        assert np.array_equal(table.values.data, expected)
        assert table.min_value == -2.0
        assert table.max_value == 0.0

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_per_entry_evaluate_exactly(self, backend, seed):
        n = 2 + seed % 11  # up to n=12
        poly = random_polynomial(seed * 77 + 5, n, max_terms=50)
        table = table_of(poly, backend)
        for x in range(1 << n):
            assert table.values.data[x] == qs.evaluate(poly, x)

    def test_linearity_of_term_concatenation(self):
        a = random_polynomial(3, 6, max_terms=20)
        b = random_polynomial(4, 6, max_terms=20)
        combined = qs.Polynomial(6, a.terms + b.terms)
        ta = table_of(a).values.data
        tb = table_of(b).values.data
        tc = table_of(combined).values.data
        assert np.allclose(tc, ta + tb, rtol=0, atol=1e-12)

    def test_constant_shift_is_exact(self):
        poly = random_polynomial(9, 5, max_terms=15)
        shifted = qs.Polynomial(5, poly.terms + [(3.25, 0)])
        base = table_of(poly).values.data
        new = table_of(shifted).values.data
        assert np.array_equal(new, base + 3.25)

    def test_empty_polynomial_is_zero(self):
        table = table_of(qs.Polynomial(2))
        assert list(table.values.data) == [0.0, 0.0, 0.0, 0.0]


def spin_evaluate(sp: qs.SpinPolynomial, x: int) -> float:
    """Oracle: evaluate the spin form directly at s = 1 - 2x."""
    total = 0.0
    for w, mask in sp.terms:
        prod = 1.0
        for i in range(sp.n):
            if mask >> i & 1:
                prod *= 1.0 - 2.0 * (x >> i & 1)
        total += w * prod
    return total


class TestSpinToBoolean:
    def test_single_spin(self):
        sp = qs.SpinPolynomial(1, [(1.0, 0b1)])
        assert qs.spin_to_boolean(sp).terms == [(1.0, 0), (-2.0, 1)]

    def test_spin_pair_expansion(self):
        sp = qs.SpinPolynomial(2, [(1.0, 0b11)])
        assert qs.spin_to_boolean(sp).terms == [
            (1.0, 0b00),
            (-2.0, 0b01),
            (-2.0, 0b10),
            (4.0, 0b11),
        ]

    def test_empty(self):
        sp = qs.SpinPolynomial(3)
        assert qs.spin_to_boolean(sp).terms == []

    def test_oversized_term_rejected(self):
        sp = qs.SpinPolynomial(25, [(1.0, (1 << 21) - 1)])
        with pytest.raises(ContractViolation, match="21 variables"):
            qs.spin_to_boolean(sp)

    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_semantic_equality(self, data):
        n = data.draw(st.integers(1, 10))
        terms = data.draw(
            st.lists(
                st.tuples(
                    st.floats(-4, 4, allow_nan=False),
                    st.integers(0, (1 << n) - 1),
                ),
                max_size=12,
            )
        )
        sp = qs.SpinPolynomial(n, terms)
        poly = qs.spin_to_boolean(sp)
        for x in range(min(1 << n, 64)):
            assert qs.evaluate(poly, x) == pytest.approx(
                spin_evaluate(sp, x), abs=1e-12
            )

    def test_duplicate_spin_masks_merge(self):
        sp = qs.SpinPolynomial(1, [(1.0, 0b1), (2.0, 0b1)])
        assert qs.spin_to_boolean(sp).terms == [(3.0, 0), (-6.0, 1)]


class TestTermFile:
    def test_round_trip_bit_exact(self, tmp_path):
        poly = random_polynomial(12, 7, max_terms=25)
        path = tmp_path / "poly.txt"
        qs.write_terms(path, poly)
        back = qs.read_terms(path)
        assert back.n == poly.n
        assert np.array_equal(back.weights, poly.weights)
        assert np.array_equal(back.masks, poly.masks)

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text("# objective\nvars 2\n\n1.5 0 1  # pair term\n-2 1\n")
        poly = qs.read_terms(path)
        assert poly.terms == [(1.5, 0b11), (-2.0, 0b10)]

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0 0\n")
        with pytest.raises(ParseError):
            qs.read_terms(path)

    def test_bad_index_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("vars 2\n1.0 5\n")
        with pytest.raises(ParseError, match="line 2"):
            qs.read_terms(path)
