"""Numerical verification of the exact functional equations.

Both zeta families satisfy reflection identities connecting s with 1 - s:

* Lerch (0 < lam < 1):
    zl(s, a, lam) = G1(s) zl(1-s, lam, 1-a) + G2(s) zl(1-s, 1-lam, a)
  with G1, G2 the gamma_phase_product factors with phases
  e^{{(1-s)/2 - 2 a lam} pi i} and e^{{-(1-s)/2 + 2 a (1-lam)} pi i}.
  Argument order is fixed project-wide as (value, alpha-slot, lambda-slot).

* Hurwitz: the lam = 1 case is NOT the lam -> 1 limit of the above (the
  second alpha-slot would hit 0).  Its dual side is built from the n >= 1
  periodic sums F(b) = sum_{n>=1} e^(2 pi i n b) n^(s-1):

    zetaH(s, a) = Gamma(1-s)(2 pi)^(s-1) { e^{(1-s) pi i/2} F(1-a)
                                         + e^{-(1-s) pi i/2} F(a) }.
  In alpha/lambda-slot notation F(b) = e^{2 pi i b} zl(1-s, 1, b), which puts
  phases e^{{(1-s)/2 - 2a} pi i} and e^{{-(1-s)/2 + 2a} pi i} on the two
  zl values.  (Writing the duals as bare zl(1-s, 1, .) without the
  e^{+-2 pi i a} correction leaves an O(1) structured residual -- that
  variant fails the checks here by unit-modulus factors and is not used.)
  At a = 1 both duals collapse onto zeta(1-s) and the factor pair sums to
  chi(s).

Everything is validated numerically: both sides come from independent
routes (decomposition oracle vs Gamma-factor assembly), so a residual at the
1e-7 level or above would indicate a convention error, not noise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, TextIO

from .errors import DomainError
from .gammafns import chi
from .gammafns import gamma_phase_product as _gpp
from .oracles import lerch_via_hurwitz, riemann_reference
from .params import EulerMaclaurinConfig, EvalResult, as_unit_fraction

__all__ = ["fe_lerch_rhs", "fe_hurwitz_rhs", "fe_residual_scan",
           "default_fe_grid", "write_scan_csv", "ScanPoint", "ScanRecord",
           "FE_KINDS"]

FE_KINDS = ("lerch", "hurwitz", "riemann")

_ABS_FLOOR = 1e-300


def _complement(f: Fraction) -> Fraction:
    """1 - f as a lambda-slot value, with 0 standing for the full period 1."""
    c = 1 - f
    return Fraction(1) if c == 0 else c


def fe_lerch_rhs(s: complex, alpha, lam,
                 cfg: EulerMaclaurinConfig | None = None) -> EvalResult:
    """Right-hand side of the Lerch reflection identity at rational (alpha,
    lam), 0 < lam < 1.  Both dual values are rational-lam oracle calls at
    1 - s, so the result is fully independent of the left-hand side."""
    alpha = as_unit_fraction(alpha, "alpha")
    lam = as_unit_fraction(lam, "lam")
    if lam == 1:
        raise DomainError("lam = 1 reflects through fe_hurwitz_rhs")
    a, l = float(alpha), float(lam)
    d1 = lerch_via_hurwitz(1.0 - s, l, _complement(alpha), cfg)
    d2 = lerch_via_hurwitz(1.0 - s, 1.0 - l, alpha, cfg)
    f1 = _gpp(s, -0.5, 0.5 - 2.0 * a * l).to_complex()
    f2 = _gpp(s, 0.5, -0.5 + 2.0 * a * (1.0 - l)).to_complex()
    value = f1 * d1.value + f2 * d2.value
    est = (abs(f1) * d1.error_estimate + abs(f2) * d2.error_estimate
           + 64.0 * 2.22e-16 * abs(value))
    return EvalResult(value, est,
                      d1.main_terms + d2.main_terms,
                      d1.dual_terms + d2.dual_terms,
                      d1.reliable and d2.reliable)


def fe_hurwitz_rhs(s: complex, alpha,
                   cfg: EulerMaclaurinConfig | None = None) -> EvalResult:
    """Right-hand side of the Hurwitz reflection identity at rational alpha,
    in the periodic-sum form described in the module docstring."""
    alpha = as_unit_fraction(alpha, "alpha")
    a = float(alpha)
    d1 = lerch_via_hurwitz(1.0 - s, 1.0, _complement(alpha), cfg)
    d2 = lerch_via_hurwitz(1.0 - s, 1.0, alpha, cfg)
    f1 = _gpp(s, -0.5, 0.5 - 2.0 * a).to_complex()
    f2 = _gpp(s, 0.5, -0.5 + 2.0 * a).to_complex()
    value = f1 * d1.value + f2 * d2.value
    est = (abs(f1) * d1.error_estimate + abs(f2) * d2.error_estimate
           + 64.0 * 2.22e-16 * abs(value))
    return EvalResult(value, est,
                      d1.main_terms + d2.main_terms,
                      d1.dual_terms + d2.dual_terms,
                      d1.reliable and d2.reliable)


class ScanPoint(NamedTuple):
    s: complex
    alpha: Fraction
    lam: Fraction


class ScanRecord(NamedTuple):
    s: complex
    alpha: Fraction
    lam: Fraction
    residual: float
    reliable: bool


def fe_residual_scan(kind: str, grid: Sequence[ScanPoint],
                     cfg: EulerMaclaurinConfig | None = None) -> list[ScanRecord]:
    """Relative residual |LHS - RHS| / (|LHS| + 1e-300) per grid point,
    reported worst-first.  Unreliable oracle points are flagged, not dropped.

    kind selects the identity: "lerch" and "hurwitz" as above; "riemann"
    checks zeta(s) = chi(s) zeta(1-s) with both zeta values from the oracle.
    """
    if kind not in FE_KINDS:
        raise DomainError(f"unknown functional-equation kind {kind!r}")
    records = []
    for pt in grid:
        if kind == "riemann":
            lhs = riemann_reference(pt.s, cfg)
            z1 = riemann_reference(1.0 - pt.s, cfg)
            rhs_value = chi(pt.s).to_complex() * z1.value
            reliable = lhs.reliable and z1.reliable
        elif kind == "hurwitz":
            lhs = lerch_via_hurwitz(pt.s, float(pt.alpha), Fraction(1), cfg)
            rhs = fe_hurwitz_rhs(pt.s, pt.alpha, cfg)
            rhs_value, reliable = rhs.value, lhs.reliable and rhs.reliable
        else:
            lhs = lerch_via_hurwitz(pt.s, float(pt.alpha), pt.lam, cfg)
            rhs = fe_lerch_rhs(pt.s, pt.alpha, pt.lam, cfg)
            rhs_value, reliable = rhs.value, lhs.reliable and rhs.reliable
        residual = abs(lhs.value - rhs_value) / (abs(lhs.value) + _ABS_FLOOR)
        records.append(ScanRecord(pt.s, pt.alpha, pt.lam, residual, reliable))
    records.sort(key=lambda r: r.residual, reverse=True)
    return records


_GRID_T = (10.0, 25.0, 50.0)
_GRID_SIGMA = (0.25, 0.5, 0.75)
_GRID_FRACTIONS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def default_fe_grid(kind: str) -> list[ScanPoint]:
    """The standard verification grid: t in {10, 25, 50}, sigma in
    {1/4, 1/2, 3/4}, parameters over {1/4, 1/2, 3/4} where the kind has
    them."""
    points = []
    for t in _GRID_T:
        for sigma in _GRID_SIGMA:
            s = complex(sigma, t)
            if kind == "riemann":
                points.append(ScanPoint(s, Fraction(1), Fraction(1)))
            elif kind == "hurwitz":
                for a in _GRID_FRACTIONS:
                    points.append(ScanPoint(s, a, Fraction(1)))
            elif kind == "lerch":
                for a in _GRID_FRACTIONS:
                    for l in _GRID_FRACTIONS:
                        points.append(ScanPoint(s, a, l))
            else:
                raise DomainError(f"unknown functional-equation kind {kind!r}")
    return points


def write_scan_csv(records: Iterable[ScanRecord], fh: TextIO,
                   meta: str | None = None) -> None:
    """Scan report as CSV: (sigma, t, alpha_num, alpha_den, lambda_num,
    lambda_den, residual), ASCII, '.' decimals, newline-terminated rows."""
    if meta:
        fh.write(f"# {meta}\n")
    fh.write("sigma,t,alpha_num,alpha_den,lambda_num,lambda_den,residual\n")
    for r in records:
        fh.write(f"{r.s.real:.17g},{r.s.imag:.17g},"
                 f"{r.alpha.numerator},{r.alpha.denominator},"
                 f"{r.lam.numerator},{r.lam.denominator},"
                 f"{r.residual:.17g}\n")
