"""Split-sum evaluation of zeta functions in the critical strip.

The evaluators here replace the defining series by two short sums of lengths
x and y tied together by 2*pi*x*y = |t|, plus a Gamma-type factor in front of
the dual sums.  For the Lerch function with 0 < lam < 1:

    zl(s, a, lam) ~ sum_{0<=n<=x} e^(2 pi i n lam) (n+a)^(-s)
      + G1(s) sum_{0<=n<=y} e^(2 pi i n (1-a)) (n+lam)^(s-1)
      + G2(s) sum_{0<=n<=y} e^(2 pi i n a) (n+1-lam)^(s-1)

with G1, G2 the gamma_phase_product factors carrying phases
e^{{(1-s)/2 - 2 a lam} pi i} and e^{{-(1-s)/2 + 2 a (1-lam)} pi i}.  The
Hurwitz variant (lam = 1) has its own equation whose dual sums start at n = 1
and whose phases drop the parameter terms; the Riemann variant is its a = 1
reduction with both dual factors merged into the chi factor.

The truncation error is modelled by the two-term envelope

    x^(-sigma) + |t|^e * y^(sigma-1),   e = 1/2 - sigma  (lerch, riemann)
                                        e = 1 - sigma    (hurwitz)

whose implied constant is not specified analytically; ``envelope_fit``
measures it as the max ratio |split-sum - oracle| / envelope over a dense
calibration grid, and the fitted constant multiplies the envelope to give
each result's error estimate.

Negative t is evaluated through the exact conjugation mirror
conj(zl(s, a, lam)) = zl(conj(s), a, 1-lam), so only t > 0 is computed
directly.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .gammafns import chi, gamma_phase_product
from .oracles import lerch_via_hurwitz
from .params import EvalResult, LerchParams

__all__ = ["AfeSplit", "ErrorEnvelope", "CalibrationPoint", "choose_split",
           "afe_lerch", "afe_hurwitz", "afe_riemann", "error_envelope",
           "envelope_fit", "default_calibration_grid", "calibrate_all",
           "read_calibration", "write_calibration", "get_cfit",
           "reload_calibration", "KINDS"]

TWO_PI = 2.0 * math.pi
KINDS = ("lerch", "hurwitz", "riemann")

# Envelope constants measured by ``calibrate_all()`` on the default grids
# (see default_calibration_grid); regenerate with the `calibrate` command.
DEFAULT_CFIT = {
    "lerch": 2.2309988976348705,
    "hurwitz": 0.49472446361980826,
    "riemann": 1.2749107644931741,
}

_SPLIT_RTOL = 1e-12


@dataclass(frozen=True)
class AfeSplit:
    """The sum-length pair (x, y), both >= 1, constrained by 2 pi x y = |t|.

    The constraint is against the s each evaluation is called with, so it is
    re-checked at use time rather than at construction.
    """

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite split ({self.x}, {self.y})")
        if self.x < 1.0 or self.y < 1.0:
            raise DomainError(
                f"split lengths must both be >= 1, got ({self.x:.6g}, {self.y:.6g})")

    def check_for(self, s: complex) -> None:
        t = abs(s.imag)
        if abs(TWO_PI * self.x * self.y - t) > _SPLIT_RTOL * t:
            raise DomainError(
                f"split ({self.x:.6g}, {self.y:.6g}) violates 2*pi*x*y = |t| "
                f"for |t| = {t:.6g}")


def choose_split(t: float, mode: str = "balanced") -> AfeSplit:
    """Standard splits at height t.

    balanced:   x = y = sqrt(|t| / 2 pi)
    meanSquare: x = t / (2 pi sqrt(log t)), y = sqrt(log t); the choice that
                makes the dual sums O(sqrt(log t)) long, used by the
                mean-square experiment.  Needs t >= ~9.91 so that x >= 1.
    """
    if not math.isfinite(t):
        raise DomainError(f"non-finite t: {t!r}")
    if abs(t) < TWO_PI:
        raise DomainError(f"splits need |t| >= 2*pi, got |t| = {abs(t):.6g}")
    if mode == "balanced":
        x = math.sqrt(abs(t) / TWO_PI)
        return AfeSplit(x, x)
    if mode in ("meanSquare", "meansquare"):
        if t < math.e:
            raise DomainError(f"meanSquare split needs t >= e, got {t:.6g}")
        y = math.sqrt(math.log(t))
        x = t / (TWO_PI * y)
        if x < 1.0:
            raise DomainError(
                f"meanSquare split needs t >= ~9.91 so that x >= 1, got t = {t:.6g}")
        return AfeSplit(x, y)
    raise DomainError(f"unknown split mode {mode!r}")


class ErrorEnvelope(NamedTuple):
    """The two-term truncation-error shape; ``total`` is their sum."""

    kind: str
    term1: float
    term2: float

    @property
    def total(self) -> float:
        return self.term1 + self.term2


def error_envelope(kind: str, s: complex, split: AfeSplit) -> ErrorEnvelope:
    if kind not in KINDS:
        raise DomainError(f"unknown envelope kind {kind!r}")
    split.check_for(s)
    sigma = s.real
    t = abs(s.imag)
    e = 1.0 - sigma if kind == "hurwitz" else 0.5 - sigma
    return ErrorEnvelope(kind, split.x ** (-sigma), t ** e * split.y ** (sigma - 1.0))


def _check_strip(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite s: {s!r}")
    if not 0.0 <= s.real <= 1.0:
        raise DomainError(
            f"split-sum evaluation requires 0 <= sigma <= 1, got sigma = {s.real}")
    return s


def _power_sum(s_exp: complex, shift: float, weight_freq: float,
               first: int, last: int) -> complex:
    """sum_{n=first..last} e^(2 pi i n weight_freq) (n + shift)^(s_exp)."""
    n = np.arange(first, last + 1, dtype=float)
    logs = np.log(n + shift)
    re = s_exp.real * logs
    im = s_exp.imag * logs + TWO_PI * weight_freq * n
    return complex((np.exp(re) * np.exp(1j * im)).sum())


def afe_lerch(s: complex, params: LerchParams, split: AfeSplit,
              c_fit: float | None = None) -> EvalResult:
    """Split-sum value of the Lerch zeta-function, 0 < lam < 1, in the strip."""
    s = _check_strip(s)
    if params.is_hurwitz:
        raise DomainError("lam = 1 requires the Hurwitz split-sum (afe_hurwitz)")
    split.check_for(s)
    if s.imag < 0.0:
        mirror = afe_lerch(s.conjugate(), params.conjugate_pair(), split, c_fit)
        return EvalResult(mirror.value.conjugate(), mirror.error_estimate,
                          mirror.main_terms, mirror.dual_terms, mirror.reliable)
    alpha, lam = params.alpha, params.lam
    M = math.floor(split.x)
    N = math.floor(split.y)
    main = _power_sum(-s, alpha, lam, 0, M)
    d1 = _power_sum(s - 1.0, lam, 1.0 - alpha, 0, N)
    d2 = _power_sum(s - 1.0, 1.0 - lam, alpha, 0, N)
    f1 = gamma_phase_product(s, -0.5, 0.5 - 2.0 * alpha * lam)
    f2 = gamma_phase_product(s, 0.5, -0.5 + 2.0 * alpha * (1.0 - lam))
    value = main + f1.to_complex() * d1 + f2.to_complex() * d2
    if c_fit is None:
        c_fit = get_cfit("lerch")
    est = c_fit * error_envelope("lerch", s, split).total
    return EvalResult(value, est, M + 1, N + 1, True)


def afe_hurwitz(s: complex, alpha: float, split: AfeSplit,
                c_fit: float | None = None) -> EvalResult:
    """Split-sum value of the Hurwitz zeta-function in the strip.

    Dual sums run over 1 <= n <= y (as the lam = 1 equation is stated), with
    phase factors e^{+-(1-s) pi i/2}.
    """
    s = _check_strip(s)
    params = LerchParams(alpha, 1.0)
    split.check_for(s)
    if s.imag < 0.0:
        mirror = afe_hurwitz(s.conjugate(), alpha, split, c_fit)
        return EvalResult(mirror.value.conjugate(), mirror.error_estimate,
                          mirror.main_terms, mirror.dual_terms, mirror.reliable)
    alpha = params.alpha
    M = math.floor(split.x)
    N = math.floor(split.y)
    main = _power_sum(-s, alpha, 0.0, 0, M)
    d1 = _power_sum(s - 1.0, 0.0, 1.0 - alpha, 1, N)
    d2 = _power_sum(s - 1.0, 0.0, alpha, 1, N)
    f1 = gamma_phase_product(s, -0.5, 0.5)
    f2 = gamma_phase_product(s, 0.5, -0.5)
    value = main + f1.to_complex() * d1 + f2.to_complex() * d2
    if c_fit is None:
        c_fit = get_cfit("hurwitz")
    est = c_fit * error_envelope("hurwitz", s, split).total
    return EvalResult(value, est, M + 1, N, True)


def afe_riemann(s: complex, split: AfeSplit,
                c_fit: float | None = None) -> EvalResult:
    """Split-sum value of zeta(s): the alpha = 1 reduction, with the two dual
    factors combined into chi(s).

    The main sum uses the alpha = 1 Hurwitz boundary (n = 0..floor(x) over
    (n+1)^(-s)) so that afe_riemann and afe_hurwitz(s, 1, split) agree to
    rounding; the one-term difference from the classical n <= x convention is
    absorbed by the x^(-sigma) envelope term.
    """
    s = _check_strip(s)
    split.check_for(s)
    if s.imag < 0.0:
        mirror = afe_riemann(s.conjugate(), split, c_fit)
        return EvalResult(mirror.value.conjugate(), mirror.error_estimate,
                          mirror.main_terms, mirror.dual_terms, mirror.reliable)
    M = math.floor(split.x)
    N = math.floor(split.y)
    main = _power_sum(-s, 1.0, 0.0, 0, M)
    dual = _power_sum(s - 1.0, 0.0, 0.0, 1, N)
    value = main + chi(s).to_complex() * dual
    if c_fit is None:
        c_fit = get_cfit("riemann")
    est = c_fit * error_envelope("riemann", s, split).total
    return EvalResult(value, est, M + 1, N, True)


# ---------------------------------------------------------------------------
# Envelope-constant calibration
# ---------------------------------------------------------------------------

class CalibrationPoint(NamedTuple):
    s: complex
    alpha: float
    lam: Fraction
    split: AfeSplit


def envelope_fit(kind: str, grid: Sequence[CalibrationPoint]) -> float:
    """Measured envelope constant: max over the grid of
    |split-sum - oracle| / envelope.

    The oracle is the rational-lam decomposition, so every grid point needs a
    rational lam.  Oracle values are cached across splits sharing (s, alpha,
    lam).  Returns 0.0 for an empty grid.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown envelope kind {kind!r}")
    cache: dict = {}
    worst = 0.0
    for pt in grid:
        key = (pt.s, pt.alpha, pt.lam)
        if key not in cache:
            cache[key] = lerch_via_hurwitz(pt.s, pt.alpha, pt.lam).value
        ref = cache[key]
        if kind == "lerch":
            v = afe_lerch(pt.s, LerchParams(pt.alpha, float(pt.lam)), pt.split,
                          c_fit=0.0).value
        elif kind == "hurwitz":
            v = afe_hurwitz(pt.s, pt.alpha, pt.split, c_fit=0.0).value
        else:
            v = afe_riemann(pt.s, pt.split, c_fit=0.0).value
        worst = max(worst, abs(v - ref) / error_envelope(kind, pt.s, pt.split).total)
    return worst


_CAL_SIGMAS = (0.0, 0.25, 0.5, 0.75, 1.0)
_CAL_ALPHAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
_CAL_LAMBDAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
_CAL_SKEWS = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
_CAL_SKEWS_DENSE = (0.125, 0.1875, 0.25, 0.375, 0.5, 0.75, 1.0,
                    1.5, 2.0, 3.0, 4.0, 6.0, 8.0)


def _calibration_heights(n: int) -> list[float]:
    return [round(v, 1) for v in np.geomspace(40.0, 1100.0, n)]


def _shapes_at(t: float, skews: Iterable[float]) -> list[AfeSplit]:
    xb = math.sqrt(t / TWO_PI)
    shapes = [choose_split(t, "meanSquare")]
    for f in skews:
        x, y = xb / f, xb * f
        if x >= 1.0 and y >= 1.0:
            shapes.append(AfeSplit(x, y))
    return shapes


def default_calibration_grid(kind: str) -> list[CalibrationPoint]:
    """Dense grid spanning the module's operating envelope.

    Heights are geometric in [40, 1100] (48 points; 192 for the riemann kind,
    whose single parameter pair gives fewer samples per height), split shapes
    cover the mean-square split and y/x skew factors 1/8..8, sigma runs over
    {0, 1/4, 1/2, 3/4, 1}, and the parameter grid is
    alpha in {1/4, 1/2, 3/4, 1} x lam in {1/4, 1/2, 3/4} (lerch),
    the same alphas at lam = 1 (hurwitz), alpha = lam = 1 (riemann).
    The measured ratio drifts slowly upward with t and with split skew, so
    the grid has to cover heights and skews beyond any point the constant
    will be trusted at.
    """
    if kind == "riemann":
        heights = _calibration_heights(192)
        skews = _CAL_SKEWS_DENSE
        pairs = [(1.0, Fraction(1))]
    elif kind == "hurwitz":
        heights = _calibration_heights(48)
        skews = _CAL_SKEWS
        pairs = [(float(a), Fraction(1)) for a in _CAL_ALPHAS]
    elif kind == "lerch":
        heights = _calibration_heights(48)
        skews = _CAL_SKEWS
        pairs = [(float(a), l) for a in _CAL_ALPHAS for l in _CAL_LAMBDAS]
    else:
        raise DomainError(f"unknown envelope kind {kind!r}")
    grid = []
    for t in heights:
        shapes = _shapes_at(t, skews)
        for sigma in _CAL_SIGMAS:
            s = complex(sigma, t)
            for split in shapes:
                for alpha, lam in pairs:
                    grid.append(CalibrationPoint(s, alpha, lam, split))
    return grid


def calibrate_all() -> dict[str, float]:
    return {kind: envelope_fit(kind, default_calibration_grid(kind))
            for kind in KINDS}


# ---------------------------------------------------------------------------
# Calibration persistence: one "kind = value" line per kind, 17 significant
# digits (round-trip exact for doubles).
# ---------------------------------------------------------------------------

ENV_CALIBRATION = "LERCH_AFE_CALIBRATION"

_active_cfit: dict[str, float] | None = None


def write_calibration(path: str, values: dict[str, float]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for kind in KINDS:
            if kind in values:
                fh.write(f"{kind} = {values[kind]:.17g}\n")


def read_calibration(path: str) -> dict[str, float]:
    values: dict[str, float] = {}
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            kind = key.strip()
            if kind not in KINDS:
                raise DomainError(f"unknown calibration kind {kind!r} in {path}")
            values[kind] = float(raw.strip())
    return values


def get_cfit(kind: str) -> float:
    """Active envelope constant for a kind: the file named by the
    LERCH_AFE_CALIBRATION environment variable if set, else the packaged
    defaults."""
    global _active_cfit
    if _active_cfit is None:
        path = os.environ.get(ENV_CALIBRATION)
        table = dict(DEFAULT_CFIT)
        if path:
            table.update(read_calibration(path))
        _active_cfit = table
    try:
        return _active_cfit[kind]
    except KeyError:
        raise DomainError(f"unknown envelope kind {kind!r}") from None


def reload_calibration() -> None:
    """Drop the cached constants (picks up environment changes)."""
    global _active_cfit
    _active_cfit = None
