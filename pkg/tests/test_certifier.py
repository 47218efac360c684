from dataclasses import replace
from fractions import Fraction

import pytest

from certifier import (
    CaveatWitness,
    Certificate,
    DependenceWitness,
    InconclusiveReason,
    Strategy,
    Verdict,
    WitnessMethod,
    certificate_from_json,
    certify_multivariate,
    certify_rational,
    certify_univariate,
    cleared_numerators,
    find_translation_point,
    rank_oracle,
    rational_precision,
    translation_candidates,
    verify_certificate,
)
from exceptions import CertificateError, CharacteristicError, SeriesValueError
from numeric_field import FieldSpec
from series_ring import Monomial, MSeries, RationalFunction, Series
from strategies import Q


@pytest.fixture
def rational(poly):
    def make(numerator, denominator):
        return RationalFunction(poly(numerator), poly(denominator))
    return make


class TestUnivariate:
    def test_monomials_are_independent(self, poly):
        family = [poly({0: 1}), poly({1: 1}), poly({2: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.wronskian_lm == Monomial(Q.element(2), (0,))
        assert cert.witness.method is WitnessMethod.CLOSED_FORM
        assert verify_certificate(family, cert, full=True)

    def test_transform_is_recorded(self, poly):
        family = [poly({0: 1, 1: 1}), poly({0: 1, 1: 2})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.orders == (0, 1)
        assert cert.witness.det_A == 1
        # W = (1 + x) * 2 - (1 + 2x) = 1
        assert cert.witness.wronskian_lm == Monomial(Q.one(), (0,))
        assert verify_certificate(family, cert, full=True)

    def test_dependent(self, poly):
        family = [poly({0: 1}), poly({1: 1}), poly({0: 1, 1: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.DEPENDENT
        assert cert.witness.vector == (1, 1, -1)
        assert cert.witness.exact
        assert verify_certificate(family, cert)

    def test_dependent_up_to_precision(self, poly):
        family = [poly({0: 1, 1: 1}, precision=3), poly({0: 2, 1: 2, 5: 1}, precision=3)]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.DEPENDENT_UP_TO_PRECISION
        assert cert.witness.precision == 3
        assert cert.witness.vector == (1, Fraction(-1, 2))
        assert verify_certificate(family, cert)

    def test_precision_exhausted(self, poly):
        family = [poly({0: 1}), poly({0: 1, 5: 1}, precision=3)]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.witness.reason is InconclusiveReason.PRECISION_EXHAUSTED
        assert verify_certificate(family, cert)

    def test_laurent_members(self, poly):
        family = [poly({-1: 1}), poly({-2: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.wronskian_lm == Monomial(Q.element(-1), (-4,))
        assert verify_certificate(family, cert, full=True)


class TestPositiveCharacteristic:
    def test_pth_power_is_a_caveat(self, prime_field):
        p = prime_field.modulus
        family = [Series.constant(prime_field, 1), Series.from_terms(prime_field, {p: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.witness.reason is InconclusiveReason.CHAR_P_CAVEAT
        assert "rank 2" in cert.witness.detail
        assert verify_certificate(family, cert)

    def test_full_expansion_rescues_vanishing_closed_form(self):
        f3 = FieldSpec.prime_field(3)
        family = [Series.constant(f3, 1), Series.from_terms(f3, {3: 1, 4: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.method is WitnessMethod.FULL_EXPANSION
        # 3x^2 + 4x^3 = x^3 over F_3
        assert cert.witness.wronskian_lm == Monomial(f3.one(), (3,))
        assert verify_certificate(family, cert)

    def test_full_wronskian_out_of_reach(self):
        f3 = FieldSpec.prime_field(3)
        family = [Series.from_terms(f3, {0: 1}, precision=1), Series.from_terms(f3, {3: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.witness.reason is InconclusiveReason.PRECISION_EXHAUSTED
        assert verify_certificate(family, cert)

    def test_dependence_is_still_found(self):
        f5 = FieldSpec.prime_field(5)
        family = [Series.from_terms(f5, {0: 1, 1: 1}), Series.from_terms(f5, {0: 2, 1: 2})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.DEPENDENT
        assert cert.witness.vector == (1, 2)

    def test_multivariate_rejected(self):
        f3 = FieldSpec.prime_field(3)
        family = [MSeries.from_terms(f3, 2, {(0, 0): 1}), MSeries.from_terms(f3, 2, {(1, 0): 1})]
        with pytest.raises(CharacteristicError):
            certify_multivariate(family)


class TestRational:
    def test_dependent_after_exact_check(self, rational):
        family = [rational({0: 1}, {0: 1, 1: -1}),
                  rational({1: 1}, {0: 1, 1: -1}),
                  rational({0: 1, 1: 1}, {0: 1, 1: -1})]
        cert = certify_rational(family)
        assert cert.verdict is Verdict.DEPENDENT
        assert cert.witness.vector == (1, 1, -1)
        assert cert.witness.exact
        assert cert.expansion.strategy is Strategy.LAURENT_EXPANSION
        assert verify_certificate(family, cert)

    def test_independent(self, rational):
        family = [rational({0: 1}, {0: 1, 1: -1}), rational({0: 1}, {0: 1, 1: 1})]
        cert = certify_rational(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.wronskian_lm == Monomial(Q.element(-2), (0,))
        assert verify_certificate(family, cert, full=True)

    def test_translation_moves_off_poles(self, rational):
        family = [rational({0: 1}, {1: 1}), rational({0: 1}, {0: -1, 1: 1})]
        assert find_translation_point(family) == -1
        cert = certify_rational(family, Strategy.TRANSLATION)
        assert cert.expansion.shift == -1
        assert cert.verdict is Verdict.INDEPENDENT
        assert verify_certificate(family, cert)

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_strategies_agree(self, rational, strategy):
        family = [rational({0: 1}, {1: 1, 2: 1}),
                  rational({0: 2}, {1: 1, 2: 1}),
                  rational({1: 1}, {0: 1, 1: 3})]
        cert = certify_rational(family, strategy)
        assert cert.verdict is Verdict.DEPENDENT
        assert cert.witness.vector == (1, Fraction(-1, 2), 0)

    def test_precision_covers_cleared_degrees(self, rational):
        family = [rational({0: 1}, {0: 1, 3: 1}), rational({4: 1}, {0: 1, 1: 1})]
        assert rational_precision(family) >= 4 + 3 + 1 + 1

    def test_cleared_numerators(self, rational, poly):
        family = [rational({0: 1}, {1: 1}), rational({0: 1}, {0: 1, 1: 1})]
        assert cleared_numerators(family) == [poly({0: 1, 1: 1}), poly({1: 1})]

    def test_translation_candidates_skip_repeats(self):
        f3 = FieldSpec.prime_field(3)
        assert [str(c) for c in translation_candidates(f3)] == ["0", "1", "2"]
        first = [c for _, c in zip(range(5), translation_candidates(Q))]
        assert first == [0, 1, -1, 2, -2]

    def test_every_point_is_a_pole(self):
        f2 = FieldSpec.prime_field(2)
        # x^2 + x vanishes on all of F_2
        family = [RationalFunction(Series.constant(f2, 1), Series.from_terms(f2, {1: 1, 2: 1}))]
        with pytest.raises(SeriesValueError):
            find_translation_point(family)


class TestMultivariate:
    def test_first_witness(self, mpoly):
        family = [mpoly({(0, 0): 1}), mpoly({(1, 0): 1}), mpoly({(0, 1): 1})]
        cert = certify_multivariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.gen_spec.label() == "(id, d1, d2)"
        assert cert.witness.gen_value == 1
        assert verify_certificate(family, cert, full=True)

    def test_dependent(self, mpoly):
        family = [mpoly({(1, 0): 1}), mpoly({(1, 0): 2, (0, 1): 1}), mpoly({(0, 1): 1})]
        cert = certify_multivariate(family)
        assert cert.verdict is Verdict.DEPENDENT
        assert cert.witness.vector == (1, Fraction(-1, 2), Fraction(1, 2))
        assert verify_certificate(family, cert)

    def test_truncated_member_leaves_leading_monomial_open(self, mpoly):
        family = [mpoly({(1, 0): 1, (0, 7): 1}), mpoly({(0, 0): 1}, precision=1)]
        cert = certify_multivariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert cert.witness.wronskian_lm is None
        assert verify_certificate(family, cert)
        assert verify_certificate(family, cert, full=True)
        assert certificate_from_json(cert.to_json()) == cert

    def test_open_leading_monomial_needs_truncation(self, mpoly):
        family = [mpoly({(0, 0): 1}), mpoly({(1, 0): 1}), mpoly({(0, 1): 1})]
        cert = certify_multivariate(family)
        witness = replace(cert.witness, wronskian_lm=None)
        assert not verify_certificate(family, replace(cert, witness=witness))

    def test_threaded_search_agrees(self, mpoly):
        family = [mpoly({(0, 0): 1, (2, 1): 1}), mpoly({(2, 0): 1}), mpoly({(1, 1): 3}),
                  mpoly({(0, 2): 1, (3, 0): 2})]
        sequential = certify_multivariate(family, workers=1)
        threaded = certify_multivariate(family, workers=4)
        assert sequential == threaded
        assert verify_certificate(family, threaded, full=True)


class TestRankOracle:
    def test_kernel(self, poly):
        report = rank_oracle([poly({0: 1}), poly({1: 1}), poly({0: 1, 1: 1})])
        assert report.rank == 2
        assert report.kernel_vector == (1, 1, -1)

    def test_full_rank(self, poly):
        report = rank_oracle([poly({0: 1}), poly({1: 1}), poly({2: 1})])
        assert report.rank == 3
        assert report.kernel_vector is None

    def test_multivariate(self, mpoly):
        report = rank_oracle([mpoly({(1, 0): 1}), mpoly({(0, 1): 1}), mpoly({(1, 0): 1, (0, 1): 1})])
        assert report.rank == 2

    def test_rational(self, rational):
        report = rank_oracle([rational({0: 1}, {0: 1, 1: -1}), rational({0: 3}, {0: 1, 1: -1})])
        assert report.kernel_vector == (1, Fraction(-1, 3))

    def test_empty(self):
        with pytest.raises(SeriesValueError):
            rank_oracle([])


class TestVerification:
    def test_tampered_vector(self, poly):
        family = [poly({0: 1}), poly({1: 1}), poly({0: 1, 1: 1})]
        cert = certify_univariate(family)
        forged = replace(cert, witness=DependenceWitness((Q.one(), Q.one(), Q.one()), True))
        assert not verify_certificate(family, forged)

    def test_tampered_leading_monomial(self, poly):
        family = [poly({0: 1}), poly({1: 1}), poly({2: 1})]
        cert = certify_univariate(family)
        witness = replace(cert.witness, wronskian_lm=Monomial(Q.element(3), (0,)))
        assert not verify_certificate(family, replace(cert, witness=witness))

    def test_tampered_transform(self, poly):
        family = [poly({0: 1, 1: 1}), poly({0: 1, 1: 2})]
        cert = certify_univariate(family)
        identity = ((Q.one(), Q.zero()), (Q.zero(), Q.one()))
        witness = replace(cert.witness, transform=identity)
        assert not verify_certificate(family, replace(cert, witness=witness))

    def test_full_check_with_truncated_derivative(self, poly):
        # d/dx of 1 @prec=1 has no known coefficient
        family = [poly({0: 1}, precision=1), poly({1: 1})]
        cert = certify_univariate(family)
        assert cert.verdict is Verdict.INDEPENDENT
        assert verify_certificate(family, cert, full=True)

    def test_mismatched_witness(self, poly):
        family = [poly({0: 1}), poly({1: 1})]
        cert = Certificate(Verdict.INDEPENDENT, CaveatWitness(InconclusiveReason.CHAR_P_CAVEAT), Q)
        with pytest.raises(CertificateError):
            verify_certificate(family, cert)

    def test_mismatched_field(self, poly):
        family = [poly({0: 1}), poly({1: 1})]
        cert = certify_univariate(family)
        with pytest.raises(CertificateError):
            verify_certificate(family, replace(cert, field=FieldSpec.prime_field(5)))

    def test_caveat_over_q_is_rejected(self, poly):
        family = [poly({0: 1}), poly({1: 1})]
        cert = Certificate(Verdict.INCONCLUSIVE, CaveatWitness(InconclusiveReason.CHAR_P_CAVEAT), Q)
        assert not verify_certificate(family, cert)


class TestJson:
    def test_round_trip_univariate(self, poly):
        cert = certify_univariate([poly({0: 1, 1: 1}), poly({0: 1, 1: 2}), poly({3: 1})])
        data = cert.to_json()
        assert data["verdict"] == "Independent"
        assert data["witness"]["kind"] == "independence"
        assert certificate_from_json(data) == cert

    def test_round_trip_multivariate(self, mpoly):
        cert = certify_multivariate([mpoly({(0, 0): 1}), mpoly({(1, 0): 1}), mpoly({(0, 1): 1})])
        data = cert.to_json()
        assert data["witness"]["spec"] == [[0, 0], [1, 0], [0, 1]]
        assert certificate_from_json(data) == cert

    def test_round_trip_rational(self, rational):
        cert = certify_rational([rational({0: 1}, {0: 1, 1: -1}), rational({0: 2}, {0: 1, 1: -1})])
        data = cert.to_json()
        assert data["expansion"]["strategy"] == "laurent"
        assert certificate_from_json(data) == cert

    def test_round_trip_caveat(self):
        f2 = FieldSpec.prime_field(2)
        cert = certify_univariate([Series.constant(f2, 1), Series.from_terms(f2, {2: 1})])
        data = cert.to_json()
        assert data["field"] == "Fp:2"
        assert certificate_from_json(data) == cert

    def test_malformed(self):
        with pytest.raises(CertificateError):
            certificate_from_json({"verdict": "Maybe", "field": "Q", "witness": {}})
