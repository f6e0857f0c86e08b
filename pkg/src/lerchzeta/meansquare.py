"""Critical-line mean-square experiments.

Computes I(T) = integral_1^T |zl(1/2 + it, a, lam)|^2 dt and compares it with
the main term T log(T/2 pi).  The integrand can come from three routes:

* afe        -- the split-sum evaluator with the meanSquare split
                x = t/(2 pi sqrt(log t)), y = sqrt(log t); cost per point
                O(t / sqrt(log t)).  This is the performance payoff of the
                split representation and the default.
* oracle     -- the Euler-Maclaurin decomposition route (rational lam);
                slower, cost O(t) per point, free of split-truncation bias.
* partialSum -- the bare truncation sum
                Sigma(a, lam) = sum_{0<=n<=x} e^(2 pi i n lam)(n+a)^(-1/2-it)
                with the same x.  Its dropped remainder is O(1) for a < 1 and
                O((log t)^(1/4)) for a = 1.

The meanSquare split needs x >= 1, which forces t >= t0 = 10; the stub
[1, t0] is always integrated with the oracle route (contribution is O(10)
absolute).  Quadrature is composite Simpson on a grid of spacing step/2; the
reported integral uses the fine grid and the error estimate comes from
step-halving against the coarse subsample.  The halving divisor depends on
the integrand route: the oracle integrand is smooth in t (fixed cutoff), its
measured refinement ratios are 16.0, and |I(step) - I(step/2)| / 15 is the
sharp Richardson value.  The split-sum integrands carry O(x^(-1/2)) jumps
wherever floor(x(t)) or floor(y(t)) steps, which caps Simpson at first-order
convergence with noisy constants (measured refinement ratios 0.7..5), so for
them the estimate is the guarded value 2 |I(step) - I(step/2)|.

Integrand values are filled into one array indexed by grid position (panels
may be evaluated by a thread pool) and reduced in fixed order, so results are
identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ConfigError, DomainError
from .gammafns import gamma_phase_product
from .oracles import lerch_via_hurwitz
from .params import EulerMaclaurinConfig, LerchParams, as_unit_fraction

__all__ = ["T0", "METHODS", "MeanSquareRecord", "ExponentFit",
           "critical_line_value", "mean_square_integral", "mean_square_ladder",
           "residual_exponent_fit", "fit_residual_exponent",
           "dropped_remainder_class", "write_meansquare_csv"]

TWO_PI = 2.0 * math.pi

# Below t0 the meanSquare split has x < 1; the [1, t0] stub always goes
# through the oracle route.
T0 = 10.0

METHODS = ("afe", "oracle", "partialSum")


@dataclass(frozen=True)
class MeanSquareRecord:
    """One checkpoint of the mean-square experiment."""

    T: float
    integral_value: float
    main_term: float
    residual: float
    quadrature_error_estimate: float
    alpha: float
    lam: float
    method: str
    step: float
    reliable: bool


@dataclass(frozen=True)
class ExponentFit:
    """Result of fitting residual ~ constant * T (log T)^exponent."""

    exponent: float
    constant: float
    degenerate: bool


def dropped_remainder_class(alpha: float) -> str:
    """Size class of what the bare partial sum drops relative to the full
    critical-line value."""
    return "O(1)" if alpha < 1.0 else "O((log t)^(1/4))"


# ---------------------------------------------------------------------------
# Fast per-(alpha, lam) evaluators with cached term tables.  At sigma = 1/2
# the term magnitudes and log tables do not depend on t, so each point costs
# one complex-exponential pass over the active slice.
# ---------------------------------------------------------------------------

class _SplitSumEvaluator:
    """AFE / partial-sum integrand at s = 1/2 + it with the meanSquare split."""

    def __init__(self, alpha: float, lam: float, max_t: float):
        params = LerchParams(alpha, lam)
        self.alpha = alpha
        self.lam = lam
        self.hurwitz = params.is_hurwitz
        max_main = int(max_t / (TWO_PI * math.sqrt(math.log(max(max_t, T0))))) + 4
        n = np.arange(max_main, dtype=float)
        self._mlogs = np.log(n + alpha)
        self._mw = np.exp(2j * math.pi * lam * n) * np.exp(-0.5 * self._mlogs)
        max_dual = int(math.sqrt(math.log(max(max_t, T0)))) + 3
        if self.hurwitz:
            m = np.arange(1, max_dual + 1, dtype=float)
            self._dlogs1 = self._dlogs2 = np.log(m)
            self._dw1 = np.exp(2j * math.pi * (1.0 - alpha) * m) * np.exp(-0.5 * self._dlogs1)
            self._dw2 = np.exp(2j * math.pi * alpha * m) * np.exp(-0.5 * self._dlogs2)
            self._ph1, self._ph2 = 0.5, -0.5
        else:
            m = np.arange(max_dual + 1, dtype=float)
            self._dlogs1 = np.log(m + lam)
            self._dlogs2 = np.log(m + 1.0 - lam)
            self._dw1 = np.exp(2j * math.pi * (1.0 - alpha) * m) * np.exp(-0.5 * self._dlogs1)
            self._dw2 = np.exp(2j * math.pi * alpha * m) * np.exp(-0.5 * self._dlogs2)
            self._ph1 = 0.5 - 2.0 * alpha * lam
            self._ph2 = -0.5 + 2.0 * alpha * (1.0 - lam)

    def partial_sum(self, t: float) -> complex:
        y = math.sqrt(math.log(t))
        x = t / (TWO_PI * y)
        M = math.floor(x)
        return complex((self._mw[:M + 1] * np.exp(-1j * t * self._mlogs[:M + 1])).sum())

    def value(self, t: float) -> complex:
        s = complex(0.5, t)
        y = math.sqrt(math.log(t))
        x = t / (TWO_PI * y)
        M = math.floor(x)
        N = math.floor(y)
        main = (self._mw[:M + 1] * np.exp(-1j * t * self._mlogs[:M + 1])).sum()
        k = N if self.hurwitz else N + 1
        d1 = (self._dw1[:k] * np.exp(1j * t * self._dlogs1[:k])).sum()
        d2 = (self._dw2[:k] * np.exp(1j * t * self._dlogs2[:k])).sum()
        f1 = gamma_phase_product(s, -0.5, self._ph1).to_complex()
        f2 = gamma_phase_product(s, 0.5, self._ph2).to_complex()
        return complex(main + f1 * d1 + f2 * d2)


class _OracleEvaluator:
    """Euler-Maclaurin integrand at s = 1/2 + it via the rational-lam
    decomposition, with cached per-component log tables.  A single cutoff
    (sized for the largest t of the run) serves all points."""

    def __init__(self, alpha: float, lam: Fraction, max_t: float,
                 bernoulli_terms: int = 15):
        from .oracles import _B2K_OVER_FACT
        self._b2k = _B2K_OVER_FACT
        self.kterms = bernoulli_terms
        p, q = lam.numerator, lam.denominator
        self.q = q
        self.cutoff = max(2 * math.ceil(max_t), 50)
        n = np.arange(self.cutoff, dtype=float)
        self._comp = []
        for r in range(q):
            ac = (r + alpha) / q
            logs = np.log(n + ac)
            mags = np.exp(-0.5 * logs)
            phase = complex(math.cos(TWO_PI * r * p / q), math.sin(TWO_PI * r * p / q))
            self._comp.append((ac, logs, mags, phase))
        self._logq = math.log(q)

    def value(self, t: float) -> complex:
        s = complex(0.5, t)
        total = 0.0 + 0.0j
        N = self.cutoff
        for ac, logs, mags, phase in self._comp:
            comp = (mags * np.exp(-1j * t * logs)).sum()
            na = N + ac
            log_na = math.log(na)
            comp += (np.exp((1.0 - s) * log_na) / (s - 1.0)
                     + 0.5 * np.exp(-s * log_na))
            rising = s
            pow_na = np.exp((-s - 1.0) * log_na)
            for k in range(1, self.kterms + 1):
                if k > 1:
                    rising *= (s + (2 * k - 3)) * (s + (2 * k - 2))
                    pow_na /= na * na
                comp += self._b2k[k] * rising * pow_na
            total += phase * comp
        if self.q > 1:
            total *= complex(np.exp(-s * self._logq))
        return complex(total)


def _coerce_pair(alpha, lam, need_rational_lam: bool):
    """(alpha_float, lam_float, lam_fraction_or_None) from flexible inputs."""
    a = float(alpha)
    l = float(lam)
    LerchParams(a, l)  # range/finiteness validation
    if not need_rational_lam:
        return a, l, None
    lf = as_unit_fraction(lam, "lam")
    return a, l, lf


def critical_line_value(t: float, alpha, lam, method: str = "afe") -> complex:
    """zl(1/2 + it, alpha, lam) by the chosen route (see module docstring).

    afe and partialSum need t >= t0 (the meanSquare split); oracle needs
    rational lam and works for any t > 0.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise DomainError(f"non-finite t: {t!r}")
    if method == "oracle":
        a, _, lf = _coerce_pair(alpha, lam, True)
        return lerch_via_hurwitz(complex(0.5, t), a, lf).value
    a, l, _ = _coerce_pair(alpha, lam, False)
    if t < T0:
        raise DomainError(
            f"method {method!r} needs t >= {T0} (meanSquare split), got {t:.6g}")
    ev = _SplitSumEvaluator(a, l, t)
    return ev.partial_sum(t) if method == "partialSum" else ev.value(t)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def _fill_values(func, ts: np.ndarray, threads: int) -> np.ndarray:
    out = np.empty(len(ts))
    if threads <= 1:
        for i, t in enumerate(ts):
            out[i] = abs(func(t)) ** 2
        return out

    def run(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            out[i] = abs(func(ts[i])) ** 2

    chunk = max(1024, len(ts) // (8 * threads) + 1)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(run, lo, min(lo + chunk, len(ts)))
                   for lo in range(0, len(ts), chunk)]
        for f in futures:
            f.result()
    return out


def _simpson_prefix(vals: np.ndarray, h: float) -> np.ndarray:
    """Composite-Simpson integrals over [0, k] for every even k, as an array
    indexed by k//2."""
    odd = np.zeros(len(vals))
    odd[1::2] = vals[1::2]
    even = np.zeros(len(vals))
    even[2::2] = vals[2::2]
    codd = np.cumsum(odd)
    ceven = np.cumsum(even)
    ks = np.arange(0, len(vals), 2)
    return h / 3.0 * (vals[0] + 4.0 * codd[ks] + 2.0 * (ceven[ks] - vals[ks])
                      + vals[ks])


def _integrate_with_halving(vals: np.ndarray, h: float, idxs: Sequence[int],
                            smooth: bool) -> list[tuple[float, float]]:
    """(fine integral, step-halving estimate) at each index 0 mod 4.

    smooth selects the Richardson divisor: /15 for fourth-order integrands,
    x2 guard for the jump-limited split-sum routes (see module docstring).
    """
    fine = _simpson_prefix(vals, h)
    coarse = _simpson_prefix(vals[::2], 2.0 * h)
    out = []
    for k in idxs:
        f = fine[k // 2]
        diff = abs(f - coarse[k // 4])
        out.append((f, diff / 15.0 if smooth else 2.0 * diff))
    return out


def _stub_integral(alpha: float, lam_fraction: Fraction, step: float,
                   threads: int) -> tuple[float, float]:
    """Oracle-route integral over [1, t0] with its own halving estimate."""
    n = 4 * max(1, math.ceil((T0 - 1.0) / (4.0 * step)))
    nf = 2 * n
    ts = np.linspace(1.0, T0, nf + 1)
    cfg = EulerMaclaurinConfig(cutoff=50, bernoulli_terms=15)
    s_half = 0.5

    def f(t: float) -> complex:
        return lerch_via_hurwitz(complex(s_half, t), alpha, lam_fraction, cfg).value

    vals = _fill_values(f, ts, threads)
    ((integral, est),) = _integrate_with_halving(vals, (T0 - 1.0) / nf, [nf],
                                                 smooth=True)
    return integral, est


def _make_evaluator(alpha, lam, method: str, max_t: float):
    if method == "oracle":
        a, _, lf = _coerce_pair(alpha, lam, True)
        return _OracleEvaluator(a, lf, max_t).value
    a, l, _ = _coerce_pair(alpha, lam, False)
    ev = _SplitSumEvaluator(a, l, max_t)
    return ev.partial_sum if method == "partialSum" else ev.value


def mean_square_ladder(T: float, alpha, lam, step: float = 0.02,
                       method: str = "afe",
                       checkpoints: Sequence[float] | None = None,
                       threads: int = 1) -> list[MeanSquareRecord]:
    """Mean-square records at several checkpoints from one evaluation pass.

    Default checkpoints form the geometric ladder {T/8, T/4, T/2, T} clipped
    below at 20.  Checkpoints snap to the quadrature grid (within 2*step), and
    the snapped T is what each record reports.  The integrand is evaluated
    once on the fine grid of spacing <= step/2 and shared by all checkpoints.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if not (0.0 < step <= 0.05):
        raise ConfigError(f"step must lie in (0, 0.05], got {step}")
    if T < max(T0, 20.0):
        raise DomainError(f"T must be >= {max(T0, 20.0)}, got {T}")
    # the stub's oracle route makes rational lam a requirement for every method
    a_float, lam_float, lam_fraction = _coerce_pair(alpha, lam, True)

    if checkpoints is None:
        checkpoints = sorted({max(20.0, T / 8.0), max(20.0, T / 4.0),
                              max(20.0, T / 2.0), T})
    else:
        checkpoints = sorted(set(float(c) for c in checkpoints))
        if any(c < 20.0 or c > T for c in checkpoints):
            raise DomainError(f"checkpoints must lie in [20, T], got {checkpoints}")

    # fine grid: spacing <= step/2, total interval count divisible by 4
    nf = 4 * math.ceil((T - T0) / (2.0 * step))
    h = (T - T0) / nf
    ts = T0 + h * np.arange(nf + 1)
    idxs = [min(nf, 4 * round((c - T0) / (4.0 * h))) for c in checkpoints]

    func = _make_evaluator(alpha, lam, method, T)
    vals = _fill_values(func, ts, threads)
    stub, stub_est = _stub_integral(a_float, lam_fraction, step, threads)

    records = []
    results = _integrate_with_halving(vals, h, idxs, smooth=(method == "oracle"))
    for k, (integral, est) in zip(idxs, results):
        t_snap = T0 + k * h
        total = stub + integral
        quad_est = est + stub_est
        main = t_snap * math.log(t_snap / TWO_PI)
        records.append(MeanSquareRecord(
            T=t_snap, integral_value=float(total), main_term=main,
            residual=float(total - main),
            quadrature_error_estimate=float(quad_est),
            alpha=a_float, lam=lam_float, method=method, step=step,
            reliable=bool(quad_est <= 1e-3 * main)))
    return records


def mean_square_integral(T: float, alpha, lam, step: float = 0.02,
                         method: str = "afe",
                         threads: int = 1) -> MeanSquareRecord:
    """Single-checkpoint mean square; see mean_square_ladder."""
    return mean_square_ladder(T, alpha, lam, step=step, method=method,
                              checkpoints=[T], threads=threads)[0]


# ---------------------------------------------------------------------------
# Residual exponent
# ---------------------------------------------------------------------------

def fit_residual_exponent(Ts: Sequence[float], residuals: Sequence[float],
                          noise: Sequence[float] | None = None) -> ExponentFit:
    """Least-squares fit of log(|residual|/T) against log log T.

    The slope is the measured exponent e in residual ~ C T (log T)^e, the
    intercept gives C.  Points whose |residual| does not clear the quadrature
    noise are dropped; if fewer than two remain, the fit is degenerate.
    """
    if len(Ts) != len(residuals):
        raise DomainError("Ts and residuals must have equal length")
    if noise is None:
        noise = [0.0] * len(Ts)
    xs, ys = [], []
    for T, r, nz in zip(Ts, residuals, noise):
        if abs(r) > nz and abs(r) > 0.0:
            xs.append(math.log(math.log(T)))
            ys.append(math.log(abs(r) / T))
    if len(xs) < 2:
        return ExponentFit(math.nan, math.nan, True)
    slope, intercept = np.polyfit(np.array(xs), np.array(ys), 1)
    return ExponentFit(float(slope), float(math.exp(intercept)), False)


def residual_exponent_fit(alpha, lam, t_grid: Sequence[float],
                          step: float = 0.02, method: str = "afe",
                          threads: int = 1) -> ExponentFit:
    """Measure the residual exponent on a ladder of at least four T values."""
    if len(t_grid) < 4:
        raise DomainError("exponent fit needs at least 4 T values")
    records = mean_square_ladder(max(t_grid), alpha, lam, step=step,
                                 method=method, checkpoints=list(t_grid),
                                 threads=threads)
    return fit_residual_exponent(
        [r.T for r in records], [r.residual for r in records],
        [r.quadrature_error_estimate for r in records])


def write_meansquare_csv(records: Iterable[MeanSquareRecord], fh: TextIO,
                         meta: str | None = None) -> None:
    if meta:
        fh.write(f"# {meta}\n")
    fh.write("T,alpha,lambda,integral,main_term,residual,quad_err,method,step\n")
    for r in records:
        fh.write(f"{r.T:.17g},{r.alpha:.17g},{r.lam:.17g},"
                 f"{r.integral_value:.17g},{r.main_term:.17g},"
                 f"{r.residual:.17g},{r.quadrature_error_estimate:.17g},"
                 f"{r.method},{r.step:.17g}\n")
