"""Gamma, chi and the combined Gamma-phase factors."""

import cmath
import math

import numpy as np
import pytest

from lerchzeta import (LogComplex, PoleError, chi, gamma, gamma_phase_product,
                       log_gamma, riemann_reference)
from lerchzeta.errors import DomainError

TWO_PI = 2.0 * math.pi

# Gamma(0.5 + 10i) to 20 digits, computed once with mpmath at 30 digits.
GAMMA_HALF_PLUS_10I = complex(3.378724376234235797e-7, 1.6893698390389189112e-7)


class TestLogGamma:
    def test_at_one(self):
        lg = log_gamma(1.0)
        assert abs(lg.log_modulus) < 1e-14
        assert abs(lg.argument) < 1e-14

    def test_at_half(self):
        lg = log_gamma(0.5)
        assert lg.log_modulus == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-14)
        assert lg.argument == pytest.approx(0.0, abs=1e-14)

    def test_at_five(self):
        assert log_gamma(5.0).to_complex() == pytest.approx(24.0, rel=1e-13)

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0, complex(-3.0, 0.0)])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            log_gamma(z)

    def test_pole_tolerance(self):
        with pytest.raises(PoleError):
            log_gamma(-2.0 + 5e-15)
        log_gamma(-2.0 + 1e-12)  # off the pole: fine

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            log_gamma(complex(float("nan"), 1.0))

    def test_reflection_identity(self):
        # exp(logG(s) + logG(1-s)) sin(pi s)/pi = 1; |t| kept <= 50 so the
        # naive sin does not overflow.
        rng = np.random.default_rng(1)
        for _ in range(200):
            s = complex(rng.uniform(-4, 4), rng.uniform(-50, 50))
            if abs(s.imag) < 1e-3 and abs(s.real - round(s.real)) < 1e-3:
                continue
            prod = (log_gamma(s).to_complex() * log_gamma(1.0 - s).to_complex()
                    * cmath.sin(math.pi * s) / math.pi)
            assert prod == pytest.approx(1.0, rel=1e-10)

    def test_conjugation_exact(self):
        for s in [complex(0.3, 7.0), complex(-1.2, 33.3), complex(0.9, 400.0)]:
            assert gamma(s.conjugate()) == gamma(s).conjugate()

    def test_gamma_trivia(self):
        assert gamma(2.0) == pytest.approx(1.0, rel=1e-13)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)

    def test_gamma_against_frozen_reference(self):
        assert gamma(complex(0.5, 10.0)) == pytest.approx(GAMMA_HALF_PLUS_10I,
                                                          rel=1e-12)

    def test_gamma_overflow(self):
        with pytest.raises(OverflowError):
            gamma(200.0)


class TestChi:
    def test_fixed_point(self):
        assert chi(complex(0.5, 0.0)).to_complex() == pytest.approx(1.0, rel=1e-12)

    def test_critical_line_modulus(self):
        for t in (20.0, 100.0, 1000.0):
            assert abs(chi(complex(0.5, t)).to_complex()) == pytest.approx(
                1.0, abs=1e-10)

    def test_chi_pair_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            s = complex(rng.uniform(0, 1), rng.uniform(-1000, 1000))
            prod = chi(s).to_complex() * chi(1.0 - s).to_complex()
            assert prod == pytest.approx(1.0, rel=1e-10)

    def test_ratio_oracle(self):
        # chi(s) = zeta(s)/zeta(1-s), both sides from the reference evaluator
        s = complex(0.3, 30.0)
        ratio = riemann_reference(s).value / riemann_reference(1.0 - s).value
        assert chi(s).to_complex() == pytest.approx(ratio, rel=1e-10)

    def test_even_integer_limit(self):
        # chi(2) = -2 pi^2, consistent with zeta(2)/zeta(-1)
        assert chi(2.0).to_complex() == pytest.approx(-2.0 * math.pi ** 2,
                                                      rel=1e-12)
        ratio = riemann_reference(2.0).value / riemann_reference(-1.0).value
        assert chi(2.0).to_complex() == pytest.approx(ratio, rel=1e-10)

    @pytest.mark.parametrize("s", [1.0, 3.0, 5.0])
    def test_odd_integer_poles(self, s):
        with pytest.raises(PoleError):
            chi(s)

    def test_negative_t_conjugation(self):
        s = complex(0.3, 25.0)
        assert chi(s.conjugate()).to_complex() == chi(s).to_complex().conjugate()


class TestGammaPhaseProduct:
    def test_half_no_phase(self):
        v = gamma_phase_product(complex(0.5, 0.0), 0.0, 0.0).to_complex()
        assert v == pytest.approx(math.sqrt(math.pi) / math.sqrt(TWO_PI), rel=1e-13)

    def test_cancellation_keeps_modulus_tame(self):
        # first Lerch dual factor at t = 50: log|Gamma(1-s)| ~ -pi t/2 and the
        # phase contributes +pi t/2; combined log-modulus stays small
        v = gamma_phase_product(complex(0.5, 50.0), -0.5, 0.5)
        assert abs(v.log_modulus) < 100.0

    def test_against_naive_product(self):
        # at small |t| the naive factor product is representable
        rng = np.random.default_rng(3)
        for _ in range(50):
            s = complex(rng.uniform(0, 1), rng.uniform(-30, 30))
            coeff = rng.choice([-0.5, 0.0, 0.5])
            const = rng.uniform(-2, 2)
            naive = (gamma(1.0 - s) * TWO_PI ** (s - 1.0)
                     * cmath.exp(1j * math.pi * (coeff * s + const)))
            v = gamma_phase_product(s, coeff, const).to_complex()
            assert v == pytest.approx(naive, rel=1e-10)

    def test_specific_naive_point(self):
        s = complex(0.5, 14.0)
        naive = gamma(1.0 - s) * TWO_PI ** (s - 1.0) * cmath.exp(1j * math.pi * s / 2.0)
        v = gamma_phase_product(s, 0.5, 0.0).to_complex()
        assert v == pytest.approx(naive, rel=1e-10)

    def test_pole_propagates(self):
        with pytest.raises(PoleError):
            gamma_phase_product(2.0, 0.5, 0.0)


class TestLogComplex:
    def test_multiplication_adds(self):
        a = LogComplex(1.0, 0.3)
        b = LogComplex(-2.0, 7.0)
        c = a * b
        assert c.log_modulus == pytest.approx(-1.0)
        assert c.argument == pytest.approx(7.3)

    def test_arguments_stay_unreduced(self):
        w = LogComplex(0.0, 5.0 * TWO_PI + 0.25)
        assert w.argument > TWO_PI
        assert w.to_complex() == pytest.approx(cmath.exp(0.25j), rel=1e-12)

    def test_underflow_is_silent_zero(self):
        assert LogComplex(-800.0, 1.0).to_complex() == 0.0

    def test_overflow_raises(self):
        with pytest.raises(OverflowError):
            LogComplex(800.0, 0.0).to_complex()
