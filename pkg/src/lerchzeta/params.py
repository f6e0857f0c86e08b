"""Shared parameter and result types.

The complex variable s is an ordinary Python ``complex`` (sigma = s.real,
t = s.imag); both zeta-function parameters live in (0, 1].  Rational
parameters are ``fractions.Fraction`` values, which is what the
Hurwitz-decomposition oracle needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, DomainError

__all__ = ["LerchParams", "EulerMaclaurinConfig", "EvalResult",
           "as_unit_fraction", "default_em_config"]

MAX_DENOMINATOR = 64


def as_unit_fraction(value, name: str = "parameter") -> Fraction:
    """Coerce to a Fraction in (0, 1] with denominator <= 64.

    Accepts Fractions, ints, strings like "1/3" or "0.25", and floats that
    are exactly representable with a small denominator.
    """
    try:
        f = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not rational: {value!r}") from exc
    if not 0 < f <= 1:
        raise DomainError(f"{name} must lie in (0, 1], got {f}")
    if f.denominator > MAX_DENOMINATOR:
        raise DomainError(
            f"{name} denominator {f.denominator} exceeds {MAX_DENOMINATOR}")
    return f


@dataclass(frozen=True)
class LerchParams:
    """The parameter pair (alpha, lam), both constrained to (0, 1]."""

    alpha: float
    lam: float

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("lam", self.lam)):
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
            if not 0.0 < v <= 1.0:
                raise DomainError(f"{name} must lie in (0, 1], got {v}")

    @property
    def is_hurwitz(self) -> bool:
        return self.lam == 1.0

    def conjugate_pair(self) -> "LerchParams":
        """The parameters of the conjugated function: conj(zl(s, a, lam)) =
        zl(conj(s), a, 1 - lam), with lam = 1 fixed."""
        return LerchParams(self.alpha, 1.0 if self.lam == 1.0 else 1.0 - self.lam)


@dataclass(frozen=True)
class EulerMaclaurinConfig:
    """Truncation parameters for the Euler-Maclaurin evaluator.

    ``cutoff`` is the direct-sum length N0; ``bernoulli_terms`` the number of
    B_{2k} corrections.  The stability region requires
    cutoff >= ceil(|t|) + 10 at height t, checked at call time.
    """

    cutoff: int
    bernoulli_terms: int = 15

    def __post_init__(self):
        if self.cutoff < 1:
            raise ConfigError(f"cutoff must be positive, got {self.cutoff}")
        if not 1 <= self.bernoulli_terms <= 30:
            raise ConfigError(
                f"bernoulli_terms must be in 1..30, got {self.bernoulli_terms}")

    def check_height(self, t: float) -> None:
        need = math.ceil(abs(t)) + 10
        if self.cutoff < need:
            raise ConfigError(
                f"cutoff {self.cutoff} below stability threshold {need} "
                f"for |t| = {abs(t):.6g}")


def default_em_config(t: float) -> EulerMaclaurinConfig:
    """Default truncation at height t: cutoff = max(2*ceil(|t|), 50), 15
    Bernoulli terms.  Keeps the asymptotic correction series decaying for
    |t| <= 1e3."""
    return EulerMaclaurinConfig(cutoff=max(2 * math.ceil(abs(t)), 50),
                                bernoulli_terms=15)


@dataclass(frozen=True)
class EvalResult:
    """A computed value with its a-posteriori error estimate and cost.

    ``main_terms`` counts the direct-sum terms (floor(x) + 1 for sums indexed
    from n = 0), ``dual_terms`` the lattice points of one dual sum (the two
    dual sums share their range).  ``reliable`` is False when the estimate is
    not trustworthy for the requested point.
    """

    value: complex
    error_estimate: float
    main_terms: int
    dual_terms: int
    reliable: bool
