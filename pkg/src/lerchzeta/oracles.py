"""Reference evaluators for the Hurwitz and Lerch zeta-functions.

These are the slow, trustworthy routes used as ground truth for the split-sum
evaluators and the functional-equation checks:

* ``lerch_direct``      -- the defining series, summed term by term.  Only a
                           ground truth where it converges absolutely.
* ``hurwitz_euler_maclaurin`` -- Euler-Maclaurin continuation of the Hurwitz
                           series, valid for all s != 1, with a computable
                           a-posteriori error estimate.
* ``lerch_via_hurwitz`` -- for rational lam = p/q, regrouping the Lerch series
                           over residue classes mod q turns it into q Hurwitz
                           values:
                           zl(s, a, p/q) = q^(-s) sum_r e^(2 pi i r p/q)
                                           zetaH(s, (r+a)/q).
                           This is exact algebra, so the Hurwitz continuation
                           carries over to the full strip.

The reported error estimate combines the magnitude of the last correction
term of the asymptotic series with a rounding-noise floor.  The floor matters:
at |t| ~ 1e3 the truncation term is ~1e-34 while the accumulated phase
rounding of the direct sum is ~1e-12, and the estimate must bound what a
refined computation would actually change.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import DomainError, PoleError
from .params import (EulerMaclaurinConfig, EvalResult, LerchParams,
                     as_unit_fraction, default_em_config)

__all__ = ["lerch_direct", "hurwitz_euler_maclaurin", "lerch_via_hurwitz",
           "riemann_reference"]

_EPS = 2.220446049250313e-16
_POLE_TOL = 1e-14


def _bernoulli_over_factorial(kmax: int) -> tuple[float, ...]:
    """B_{2k}/(2k)! for k = 0..kmax, from the exact rational recurrence
    sum_{j<=m} C(m+1, j) B_j = 0, rendered to floats once at import."""
    B = [Fraction(1)]
    for m in range(1, 2 * kmax + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * B[j]
        B.append(-acc / (m + 1))
    return tuple(float(B[2 * k]) / factorial(2 * k) for k in range(kmax + 1))


_B2K_OVER_FACT = _bernoulli_over_factorial(30)


def _check_s(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite s: {s!r}")
    return s


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (math.isfinite(alpha) and 0.0 < alpha <= 1.0):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return alpha


def _direct_sum(s: complex, alpha: float, lam: float, terms: int) -> tuple[complex, float]:
    """Partial sum of e^(2 pi i n lam)/(n+alpha)^s over n < terms, plus the
    sum of term magnitudes (for the rounding floor).  Chunked to bound
    memory for very long sums."""
    total = 0.0 + 0.0j
    abs_total = 0.0
    chunk = 1 << 20
    for start in range(0, terms, chunk):
        n = np.arange(start, min(start + chunk, terms), dtype=float)
        logs = np.log(n + alpha)
        mags = np.exp(-s.real * logs)
        vals = mags * np.exp(1j * (2.0 * math.pi * lam * n - s.imag * logs))
        total += complex(vals.sum())
        abs_total += float(mags.sum())
    return total, abs_total


def lerch_direct(s: complex, params: LerchParams, terms: int) -> EvalResult:
    """Truncated defining series of the Lerch zeta-function.

    A reliable ground truth only for sigma > 1 (absolute convergence), where
    the tail is bounded by terms^(1-sigma)/(sigma-1).  For 0 < sigma <= 1 and
    0 < lam < 1 the series still converges, and the partial-summation bound
    (1/sin(pi lam)) (1 + |s|/sigma) (terms+alpha)^(-sigma) is reported, but
    the result is flagged unreliable: convergence is slow and this regime is
    not used as an oracle.
    """
    s = _check_s(s)
    if terms < 1:
        raise DomainError(f"terms must be positive, got {terms}")
    sigma = s.real
    if sigma <= 1.0 and params.is_hurwitz:
        raise DomainError(
            "direct Hurwitz series needs sigma > 1 (no tail bound otherwise)")
    if sigma <= 0.0:
        raise DomainError(f"direct series diverges for sigma = {sigma}")
    value, _ = _direct_sum(s, params.alpha, params.lam, terms)
    if sigma > 1.0:
        tail = terms ** (1.0 - sigma) / (sigma - 1.0)
        return EvalResult(value, tail, terms, 0, True)
    tail = (1.0 / math.sin(math.pi * params.lam)
            * (1.0 + abs(s) / sigma) * (terms + params.alpha) ** (-sigma))
    return EvalResult(value, tail, terms, 0, False)


def hurwitz_euler_maclaurin(s: complex, alpha: float,
                            cfg: EulerMaclaurinConfig | None = None) -> EvalResult:
    """Euler-Maclaurin value of the Hurwitz zeta-function, any s != 1.

    With N = cfg.cutoff and K = cfg.bernoulli_terms:

        sum_{n<N} (n+a)^(-s)  +  (N+a)^(1-s)/(s-1)  +  (N+a)^(-s)/2
        + sum_{k<=K} B_{2k}/(2k)! (s)_{2k-1} (N+a)^(-s-2k+1)

    where (s)_{2k-1} is the rising factorial.  The error estimate is the
    magnitude of the last correction term plus a rounding-noise floor; the
    result is flagged unreliable when the estimate exceeds 1e-10 |value|.
    """
    s = _check_s(s)
    alpha = _check_alpha(alpha)
    if abs(s - 1.0) <= _POLE_TOL:
        raise PoleError("Hurwitz zeta has its pole at s = 1")
    if cfg is None:
        cfg = default_em_config(s.imag)
    cfg.check_height(s.imag)

    N = cfg.cutoff
    value, abs_sum = _direct_sum(s, alpha, 0.0, N)

    na = N + alpha
    log_na = math.log(na)
    cont = cmath.exp((1.0 - s) * log_na) / (s - 1.0)
    half = 0.5 * cmath.exp(-s * log_na)
    value += cont + half
    abs_sum += abs(cont) + abs(half)

    rising = s
    pow_na = cmath.exp((-s - 1.0) * log_na)
    last = 0.0
    for k in range(1, cfg.bernoulli_terms + 1):
        if k > 1:
            rising *= (s + (2 * k - 3)) * (s + (2 * k - 2))
            pow_na /= na * na
        term = _B2K_OVER_FACT[k] * rising * pow_na
        value += term
        last = abs(term)
        abs_sum += last

    # Rounding floor: pairwise-summation noise plus the phase error of
    # computing t*log(n+a) for each term, decorrelated across n.
    t = abs(s.imag)
    floor = _EPS * abs_sum * (8.0 + math.log2(N + 1)
                              + t * math.log(N + 2.0) / math.sqrt(N))
    estimate = max(last, floor)
    reliable = bool(estimate <= 1e-10 * abs(value))
    return EvalResult(value, estimate, N, cfg.bernoulli_terms, reliable)


def lerch_via_hurwitz(s: complex, alpha: float, lam,
                      cfg: EulerMaclaurinConfig | None = None) -> EvalResult:
    """Lerch zeta for rational lam = p/q via the residue-class regrouping.

    Exact algebra maps the problem to q Hurwitz evaluations, so this shares
    the Euler-Maclaurin continuation and error accounting.  q = 1 IS the
    Hurwitz call (identical code path).  Requires q <= 64 and s != 1.
    """
    s = _check_s(s)
    alpha = _check_alpha(alpha)
    lam = as_unit_fraction(lam, "lam")
    p, q = lam.numerator, lam.denominator
    if q == 1:
        return hurwitz_euler_maclaurin(s, alpha, cfg)
    if abs(s - 1.0) <= _POLE_TOL:
        raise PoleError("decomposition hits the Hurwitz pole at s = 1")
    if cfg is None:
        cfg = default_em_config(s.imag)

    scale = cmath.exp(-s * math.log(q))
    value = 0.0 + 0.0j
    estimate = 0.0
    main_terms = dual_terms = 0
    reliable = True
    for r in range(q):
        comp = hurwitz_euler_maclaurin(s, (r + alpha) / q, cfg)
        value += cmath.exp(2j * math.pi * r * p / q) * comp.value
        estimate += comp.error_estimate
        main_terms += comp.main_terms
        dual_terms += comp.dual_terms
        reliable = reliable and comp.reliable
    value *= scale
    estimate *= abs(scale)
    return EvalResult(value, estimate, main_terms, dual_terms, reliable)


def riemann_reference(s: complex,
                      cfg: EulerMaclaurinConfig | None = None) -> EvalResult:
    """zeta(s) as the alpha = 1 Hurwitz value."""
    return hurwitz_euler_maclaurin(s, 1.0, cfg)
