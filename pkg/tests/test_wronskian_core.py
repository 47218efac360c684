import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exceptions import CharacteristicError, PrecisionError, SeriesValueError
from numeric_field import FieldSpec
from series_ring import Monomial, MSeries, Series
from strategies import Q, laurent_polynomials, multi_indices, nonzero_ints
from wronskian_core import (
    GenWronskianSpec,
    count_gen_wronskian_specs,
    enumerate_gen_wronskian_specs,
    falling_factorial_matrix_det,
    generalized_vandermonde,
    generalized_wronskian,
    iter_gen_wronskian_specs,
    leading_tail_decomposition,
    monomial_gen_wronskian,
    monomial_gen_wronskian_matrix,
    monomial_wronskian_closed_form,
    monomial_wronskian_factors,
    phi_vandermonde_of_linear_forms,
    row_operators,
    series_matrix_det,
    vandermonde,
    wronskian,
    wronskian_matrix,
)


def monomial(coefficient, *exponent):
    return Monomial(Q.element(coefficient), tuple(exponent))


class TestWronskian:
    def test_examples(self, poly):
        assert wronskian([poly({0: 1}), poly({1: 1}), poly({2: 1})]) == poly({0: 2})
        assert wronskian([poly({1: 1}), poly({2: 1})]) == poly({2: 1})
        assert wronskian([poly({0: 1, 1: 1}), poly({0: 1, 1: 1})]).is_zero()

    def test_singleton_is_the_member(self, poly):
        f = poly({0: 3, 4: 1})
        assert wronskian([f]) == f

    def test_matrix_rows_are_derivatives(self, poly):
        matrix = wronskian_matrix([poly({3: 1}), poly({1: 1})])
        assert matrix.n == 2
        assert matrix.entries[1] == (poly({2: 3}), poly({0: 1}))
        assert matrix.result_precision is None

    def test_truncated_precision(self, poly):
        family = [poly({0: 1, 1: 1}, precision=6), poly({1: 1, 3: 1}, precision=6)]
        assert wronskian_matrix(family).result_precision == 5
        w = wronskian(family)
        assert not w.exact
        assert w.order() == 0

    def test_precision_exhausted(self, poly):
        with pytest.raises(PrecisionError):
            wronskian([poly({0: 1}, precision=1), poly({1: 1}, precision=2)])

    def test_empty_family(self):
        with pytest.raises(SeriesValueError):
            wronskian([])

    def test_char_p_counterexample(self, prime_field):
        p = prime_field.modulus
        family = [Series.constant(prime_field, 1), Series.from_terms(prime_field, {p: 1})]
        assert wronskian(family).is_zero()

    @given(st.lists(laurent_polynomials(low=-3, high=3), min_size=2, max_size=3), st.data())
    def test_antisymmetric_under_swap(self, family, data):
        i, j = data.draw(st.permutations(range(len(family))).map(lambda p: p[:2]))
        swapped = list(family)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert wronskian(swapped) == -wronskian(family)

    @given(st.lists(laurent_polynomials(low=-2, high=3), min_size=3, max_size=3), nonzero_ints)
    def test_multilinear_in_each_column(self, family, weight):
        scaled = [family[0] * weight] + family[1:]
        assert wronskian(scaled) == wronskian(family) * weight

    def test_bareiss_matches_cofactor(self, poly):
        family = [poly({e: 1, e + 2: e + 1}) for e in range(5)]
        rows = [list(row) for row in wronskian_matrix(family).entries]
        bareiss = series_matrix_det(rows)
        # five columns go through the lifted Bareiss path; expand the first row by hand
        total = Series.zero(Q)
        for j in range(5):
            minor = [row[:j] + row[j + 1:] for row in rows[1:]]
            term = rows[0][j] * series_matrix_det(minor)
            total = total + (term if j % 2 == 0 else -term)
        assert bareiss == total

    def test_bareiss_truncated_window(self, poly):
        family = [poly({e: 1, e + 1: 1}, precision=12) for e in range(5)]
        w = wronskian(family)
        assert not w.exact
        assert w.precision == 8
        # V(0, 1, 2, 3, 4) = 1! 2! 3! 4!
        assert w.order() == 0
        assert w.coefficient(0) == 288


class TestClosedForm:
    def test_examples(self):
        assert monomial_wronskian_closed_form([monomial(1, 0), monomial(1, 1), monomial(1, 2)]) == monomial(2, 0)
        assert monomial_wronskian_closed_form([monomial(3, 2), monomial(5, 5)]) == monomial(45, 6)
        assert monomial_wronskian_closed_form([monomial(1, 3), monomial(1, 3)]) is None

    def test_factors(self):
        factors = monomial_wronskian_factors([monomial(3, 2), monomial(5, 5)])
        assert factors.vandermonde == 3
        assert factors.exponent == 6
        assert factors.coefficient_product == 15

    def test_laurent_exponents(self):
        assert monomial_wronskian_closed_form([monomial(1, -1), monomial(1, -2)]) == monomial(-1, -4)

    def test_vanishes_mod_p(self):
        f5 = FieldSpec.prime_field(5)
        family = [Monomial(f5.one(), (0,)), Monomial(f5.one(), (5,))]
        assert monomial_wronskian_closed_form(family) is None

    @given(st.lists(st.tuples(nonzero_ints, st.integers(min_value=-20, max_value=20)),
                    min_size=1, max_size=4))
    def test_matches_direct_determinant(self, terms):
        family = [Series.from_terms(Q, {d: a}) for a, d in terms]
        closed = monomial_wronskian_closed_form([monomial(a, d) for a, d in terms])
        direct = wronskian(family)
        if closed is None:
            assert direct.is_zero()
        else:
            assert direct == Series.from_terms(Q, {closed.exponent[0]: closed.coefficient})

    @given(st.lists(st.integers(min_value=-10, max_value=10), min_size=1, max_size=6))
    def test_falling_factorial_matrix_is_vandermonde(self, exponents):
        assert falling_factorial_matrix_det(exponents, Q) == vandermonde(exponents, Q).value

    def test_vandermonde_examples(self):
        assert vandermonde([0, 1, 2], Q).value == 2
        assert vandermonde([2, 5], Q).value == 3
        assert vandermonde([1, 1, 4], Q).value == 0


class TestEnumeration:
    def test_counts(self):
        assert count_gen_wronskian_specs(3, 2) == 18
        assert len(enumerate_gen_wronskian_specs(3, 2)) == 18
        assert count_gen_wronskian_specs(2, 2) == 3
        assert count_gen_wronskian_specs(1, 5) == 1

    @pytest.mark.parametrize("n,m", [(2, 1), (3, 2), (4, 2), (3, 3)])
    def test_enumeration_matches_count(self, n, m):
        specs = list(iter_gen_wronskian_specs(n, m))
        assert len(specs) == count_gen_wronskian_specs(n, m)
        assert len(set(specs)) == len(specs)
        for spec in specs:
            assert spec.ops[0].is_identity
            assert all(sum(op.multi_index) <= s for s, op in enumerate(spec.ops))

    def test_row_order(self):
        assert row_operators(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))

    def test_first_and_last(self):
        specs = enumerate_gen_wronskian_specs(3, 2)
        assert specs[0].label() == "(id, id, id)"
        assert specs[-1].label() == "(id, d2, d2^2)"

    def test_invalid_spec(self):
        with pytest.raises(SeriesValueError):
            GenWronskianSpec.from_multi_indices([(1, 0)])
        with pytest.raises(SeriesValueError):
            GenWronskianSpec.from_multi_indices([(0, 0), (1, 1)])


class TestGeneralized:
    def test_witness_for_one_x1_x2(self, mpoly):
        family = [mpoly({(0, 0): 1}), mpoly({(1, 0): 1}), mpoly({(0, 1): 1})]
        spec = GenWronskianSpec.from_multi_indices([(0, 0), (1, 0), (0, 1)])
        assert generalized_wronskian(family, spec) == mpoly({(0, 0): 1})

    def test_reduces_to_univariate_with_one_variable(self, poly):
        family = [MSeries.from_terms(Q, 1, {(2,): 1}), MSeries.from_terms(Q, 1, {(5,): 1})]
        spec = GenWronskianSpec.from_multi_indices([(0,), (1,)])
        assert generalized_wronskian(family, spec) == MSeries.from_terms(Q, 1, {(6,): 3})

    def test_monomial_closed_form(self):
        monomials = [monomial(1, 0, 0), monomial(1, 1, 0), monomial(1, 0, 1)]
        spec = GenWronskianSpec.from_multi_indices([(0, 0), (1, 0), (0, 1)])
        assert monomial_gen_wronskian_matrix([m.exponent for m in monomials], spec) == 1
        assert monomial_gen_wronskian(monomials, spec) == monomial(1, 0, 0)

    @given(st.lists(st.tuples(nonzero_ints, multi_indices(max_entry=3)), min_size=2, max_size=3),
           st.data())
    def test_closed_form_matches_expansion(self, terms, data):
        n = len(terms)
        spec = data.draw(st.sampled_from(enumerate_gen_wronskian_specs(n, 2)))
        family = [MSeries.from_terms(Q, 2, {alpha: c}) for c, alpha in terms]
        closed = monomial_gen_wronskian([monomial(c, *alpha) for c, alpha in terms], spec)
        expanded = generalized_wronskian(family, spec)
        if closed is None:
            assert expanded.is_zero()
        else:
            assert expanded == MSeries.from_terms(Q, 2, {closed.exponent: closed.coefficient})

    def test_leading_tail_decomposition_sums_up(self, mpoly):
        family = [mpoly({(0, 0): 1, (1, 1): 2}), mpoly({(1, 0): 1, (0, 2): -1})]
        spec = GenWronskianSpec.from_multi_indices([(0, 0), (1, 0)])
        summands = leading_tail_decomposition(family, spec)
        assert len(summands) == 4
        total = MSeries.zero(Q, 2)
        for _, value in summands:
            total = total + value
        assert total == generalized_wronskian(family, spec)


class TestPhi:
    def test_repeated_exponent_gives_zero(self):
        assert not phi_vandermonde_of_linear_forms([(1, 0), (0, 1), (1, 0)])

    def test_distinct_exponents(self):
        phi = phi_vandermonde_of_linear_forms([(0, 0), (1, 0), (0, 1)])
        assert phi
        assert phi.ring.ngens == 2

    def test_rejects_char_p(self):
        with pytest.raises(CharacteristicError):
            phi_vandermonde_of_linear_forms([(0, 0)], FieldSpec.prime_field(3))

    def test_exhaustive_zero_iff_collision(self):
        points = list(itertools.product(range(3), repeat=2))
        for n in range(1, 5):
            for exponents in itertools.combinations_with_replacement(points, n):
                phi = phi_vandermonde_of_linear_forms(list(exponents))
                assert (not phi) == (len(set(exponents)) < n)

    def test_phi_zero_iff_all_witnesses_vanish(self):
        points = list(itertools.product(range(2), repeat=2))
        for exponents in itertools.combinations_with_replacement(points, 3):
            phi_zero = not phi_vandermonde_of_linear_forms(list(exponents))
            specs = enumerate_gen_wronskian_specs(3, 2)
            deltas_zero = all(monomial_gen_wronskian_matrix(exponents, s).is_zero() for s in specs)
            powers_zero = all(generalized_vandermonde(exponents, s.multi_indices).is_zero()
                              for s in specs)
            assert phi_zero == deltas_zero == powers_zero
