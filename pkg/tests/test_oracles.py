"""Reference evaluators: direct series, Euler-Maclaurin, rational-lam
decomposition."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from lerchzeta import (ConfigError, DomainError, EulerMaclaurinConfig,
                       LerchParams, PoleError, hurwitz_euler_maclaurin,
                       lerch_direct, lerch_via_hurwitz, riemann_reference)

PI2_OVER_6 = math.pi ** 2 / 6.0

# the literature value of the first zero ordinate, used as a landmark only
FIRST_ZERO_T = 14.134725


class TestLerchDirect:
    def test_zeta_two(self):
        res = lerch_direct(2.0, LerchParams(1.0, 1.0), 10 ** 6)
        assert res.reliable
        assert abs(res.value - PI2_OVER_6) <= res.error_estimate

    def test_zeta_two_alpha_half(self):
        # zetaH(2, 1/2) = 4 sum 1/(2n+1)^2 = pi^2/2
        res = lerch_direct(2.0, LerchParams(0.5, 1.0), 10 ** 6)
        assert abs(res.value - math.pi ** 2 / 2.0) <= res.error_estimate

    def test_single_term(self):
        alpha = 0.37
        res = lerch_direct(complex(2.5, 3.0), LerchParams(alpha, 0.25), 1)
        assert res.value == cmath.exp(-complex(2.5, 3.0) * math.log(alpha))
        assert res.main_terms == 1

    def test_hurwitz_in_strip_rejected(self):
        with pytest.raises(DomainError):
            lerch_direct(complex(0.8, 5.0), LerchParams(1.0, 1.0), 100)

    def test_strip_with_oscillation_unreliable(self):
        res = lerch_direct(complex(0.8, 5.0), LerchParams(1.0, 0.5), 20000)
        assert not res.reliable
        # the partial-summation bound still holds against a long-sum proxy
        ref = lerch_direct(complex(0.8, 5.0), LerchParams(1.0, 0.5), 4_000_000)
        assert abs(res.value - ref.value) <= res.error_estimate


class TestHurwitzEulerMaclaurin:
    def test_zeta_two(self):
        res = hurwitz_euler_maclaurin(2.0, 1.0)
        assert res.value.real == pytest.approx(PI2_OVER_6, abs=1e-12)
        assert res.reliable

    def test_alpha_one_is_riemann_reference(self):
        s = complex(0.3, 42.0)
        assert hurwitz_euler_maclaurin(s, 1.0).value == riemann_reference(s).value

    def test_zeta_zero_continuation(self):
        assert riemann_reference(0.0).value.real == pytest.approx(-0.5, abs=1e-13)
        assert abs(riemann_reference(0.0).value.imag) < 1e-13

    def test_first_zero_landmark(self):
        res = riemann_reference(complex(0.5, FIRST_ZERO_T))
        assert abs(res.value) <= 5e-4
        # unreliable flag fires near zeros: the estimate dwarfs the value
        assert not res.reliable

    def test_pole(self):
        with pytest.raises(PoleError):
            hurwitz_euler_maclaurin(1.0, 0.5)

    def test_cutoff_stability_precondition(self):
        with pytest.raises(ConfigError):
            hurwitz_euler_maclaurin(complex(0.5, 300.0), 0.5,
                                    EulerMaclaurinConfig(cutoff=100))

    def test_alpha_range(self):
        with pytest.raises(DomainError):
            hurwitz_euler_maclaurin(2.0, 1.5)
        with pytest.raises(DomainError):
            hurwitz_euler_maclaurin(2.0, 0.0)

    def test_step_halving_bound_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            s = complex(rng.uniform(0, 1), rng.uniform(7, 500))
            alpha = rng.uniform(0.05, 1.0)
            base = hurwitz_euler_maclaurin(s, alpha)
            cfg = EulerMaclaurinConfig(
                cutoff=2 * max(2 * math.ceil(abs(s.imag)), 50))
            refined = hurwitz_euler_maclaurin(s, alpha, cfg)
            assert abs(base.value - refined.value) <= base.error_estimate


class TestLerchViaHurwitz:
    def test_q_one_is_hurwitz_bit_for_bit(self):
        s = complex(0.4, 33.0)
        a = lerch_via_hurwitz(s, 0.7, Fraction(1))
        b = hurwitz_euler_maclaurin(s, 0.7)
        assert a.value == b.value and a.error_estimate == b.error_estimate

    def test_half_lambda_regrouping_identity(self):
        # zl(s, a, 1/2) = 2^-s (zetaH(s, a/2) - zetaH(s, (1+a)/2)), exact algebra
        s = complex(0.6, 21.0)
        for alpha in (0.25, 1.0):
            lhs = lerch_via_hurwitz(s, alpha, Fraction(1, 2))
            rhs = (cmath.exp(-s * math.log(2.0))
                   * (hurwitz_euler_maclaurin(s, alpha / 2.0).value
                      - hurwitz_euler_maclaurin(s, (1.0 + alpha) / 2.0).value))
            assert lhs.value == pytest.approx(rhs, rel=1e-13)

    def test_matches_direct_series_at_sigma_two(self):
        s = complex(2.0, 9.0)
        for q in (2, 3, 5, 7, 8):
            for p in range(1, q + 1):
                if math.gcd(p, q) != 1:
                    continue
                for alpha in (0.25, 0.75, 1.0):
                    dec = lerch_via_hurwitz(s, alpha, Fraction(p, q))
                    direct = lerch_direct(s, LerchParams(alpha, p / q), 200000)
                    assert (abs(dec.value - direct.value)
                            <= dec.error_estimate + direct.error_estimate)

    def test_denominator_cap(self):
        with pytest.raises(DomainError):
            lerch_via_hurwitz(2.0, 0.5, Fraction(1, 65))

    def test_conjugation_symmetry(self):
        grid = [(complex(0.25, 13.0), 0.3, Fraction(1, 3)),
                (complex(0.5, 77.0), 1.0, Fraction(2, 5)),
                (complex(0.9, 250.0), 0.6, Fraction(5, 8))]
        for s, alpha, lam in grid:
            a = lerch_via_hurwitz(s, alpha, lam).value
            b = lerch_via_hurwitz(s.conjugate(), alpha, 1 - lam).value
            assert a.conjugate() == pytest.approx(b, rel=1e-10)
        # Hurwitz case: lam stays 1
        s = complex(0.5, 60.0)
        a = hurwitz_euler_maclaurin(s, 0.45).value
        b = hurwitz_euler_maclaurin(s.conjugate(), 0.45).value
        assert a.conjugate() == pytest.approx(b, rel=1e-12)
