"""Four-pass extraction of the 1/S expansion coefficients from eigenvalue tables.

The model is lam(S)/lam_circle = 1 + sum_mu C_mu / S^mu. Each pass rescales
the residual by a power of S so the leading unknown coefficient becomes the
intercept, then fits the remaining orders as monomials in X = 1/S:

  pass 1:  Y = S   * (lam/lam0 - 1)                      fits mu = 1..N
  pass 2:  Y = S^3 * (lam/lam0 - 1)                      fits {3} + 5..N
  pass 3:  Y = S^7 * (lam/lam0 - 1 - known 3,5,6)        fits mu = 7..N
  pass 4:  Y = S^9 * (lam/lam0 - 1 - known 3,5,6,7,8)    fits mu = 9..N

Pass 1 exposes the vanishing of C_1, C_2, C_4; later passes subtract the
closed forms promoted to exact and re-fit at a higher zoom. Upper and lower
eigenvalue bounds are fit separately; the spread between the two fits gives
the per-coefficient agreement diagnostic d_mu = -log10 |eps_mu|.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field

import gmpy2
from mpmath import mp, mpf

from . import kernel
from .errors import SingularSystemError
from .kernel import bits_for, to_mpf, to_mpfr, work_ctx
from .specfun import known_coefficient, lambda_circle
from .tablefile import EigenTable, _mpf_fraction

#: d_mu reported for a spread of exactly zero (source-data precision ceiling)
DIGIT_CAP = 50.0


@dataclass(frozen=True)
class PassSpec:
    """One zoom level of the protocol."""

    pass_id: int
    exponent: int
    subtract: tuple[int, ...]
    fitted: tuple[int, ...]

    def __post_init__(self):
        if self.exponent != {1: 1, 2: 3, 3: 7, 4: 9}.get(self.pass_id):
            raise ValueError(f"pass {self.pass_id} must rescale by S^{{1,3,7,9}}")
        if not self.fitted:
            raise ValueError("empty fitted index set")


def standard_passes(max_order: int) -> list[PassSpec]:
    """The four pass specifications up to C_max_order."""
    if max_order < 9:
        raise ValueError("max_order must be at least 9")
    return [
        PassSpec(1, 1, (), tuple(range(1, max_order + 1))),
        PassSpec(2, 3, (), (3,) + tuple(range(5, max_order + 1))),
        PassSpec(3, 7, (3, 5, 6), tuple(range(7, max_order + 1))),
        PassSpec(4, 9, (3, 5, 6, 7, 8), tuple(range(9, max_order + 1))),
    ]


@dataclass
class FitConfig:
    """Window, order cap, and working precision of the regression."""

    s_min: int = 13
    s_max: int = 60
    max_order: int = 24
    prec: int | None = None
    known: dict[int, mpf] | None = None

    def working_prec(self, data_digits: int) -> int:
        if self.prec is not None:
            if self.prec < 2 * data_digits:
                raise ValueError("prec must be at least twice the data digits")
            return self.prec
        return max(2 * data_digits + 40, 100)

    def known_value(self, mu: int, prec: int) -> mpf:
        if self.known and mu in self.known:
            return self.known[mu]
        return known_coefficient(mu, prec).value


def _bit_width(x) -> int:
    """Mantissa width in bits, read without re-rounding the value."""
    if isinstance(x, mpf):
        return x._mpf_[3]
    if isinstance(x, int):
        return max(x.bit_length(), 1)
    return 53


@dataclass
class CoefficientEstimate:
    """Estimate of one C_mu from separate fits of the two bounds."""

    order: int
    value_up: mpf
    value_dn: mpf

    def _width(self) -> int:
        return max(_bit_width(self.value_up), _bit_width(self.value_dn), 53) + 8

    @property
    def mean(self) -> mpf:
        with mp.workprec(self._width()):
            return (self.value_up + self.value_dn) / 2

    @property
    def eps(self) -> mpf:
        """Signed relative spread (value_up - value_dn)/mean."""
        with mp.workprec(self._width()):
            m = self.mean
            if m == 0:
                return mpf(0) if self.value_up == self.value_dn else mpf("inf")
            return (self.value_up - self.value_dn) / m

    @property
    def digits(self) -> float:
        """d_mu = -log10 |eps|, the agreement between the two fits."""
        e = abs(self.eps)
        if e == 0:
            return DIGIT_CAP
        d = float(-mp.log10(e))
        return min(d, DIGIT_CAP)

    @property
    def reliable(self) -> bool:
        return self.digits > 1


def build_system(table: EigenTable, spec: PassSpec, cfg: FitConfig, which: str):
    """Design matrix rows and response vector (gmpy2, current context)."""
    if which not in ("up", "dn"):
        raise ValueError(f"which must be 'up' or 'dn', got {which!r}")
    sides = [s for s in table.sides() if cfg.s_min <= s <= cfg.s_max]
    if len(sides) < len(spec.fitted):
        raise ValueError(
            f"{len(sides)} rows in [{cfg.s_min}, {cfg.s_max}] cannot determine "
            f"{len(spec.fitted)} coefficients"
        )
    prec = cfg.working_prec(table.digits)
    lam0 = to_mpfr(lambda_circle(prec))
    subtract = [(mu, to_mpfr(cfg.known_value(mu, prec))) for mu in spec.subtract]
    shift = spec.fitted[0]
    rows, rhs = [], []
    for s in sides:
        lo, up = table.bounds(s)
        lam = to_mpfr(up if which == "up" else lo)
        x = 1 / gmpy2.mpfr(s)
        y = lam / lam0 - 1
        for mu, c in subtract:
            y -= c * x**mu
        y *= gmpy2.mpfr(s) ** spec.exponent
        rows.append([x ** (mu - shift) for mu in spec.fitted])
        rhs.append(y)
    return rows, rhs


def solve_ls(rows, rhs):
    """Least-squares coefficients via orthogonal factorization (exact setup)."""
    coeffs, _, _ = kernel.lstsq([list(r) for r in rows], list(rhs))
    return coeffs


def run_pass(table: EigenTable, spec: PassSpec, cfg: FitConfig) -> list[CoefficientEstimate]:
    """Fit upper and lower bound data separately; pair the results."""
    prec = cfg.working_prec(table.digits)
    bits = bits_for(prec)
    out = {}
    with work_ctx(bits):
        for which in ("up", "dn"):
            rows, rhs = build_system(table, spec, cfg, which)
            try:
                coeffs = solve_ls(rows, rhs)
            except SingularSystemError as exc:
                raise SingularSystemError(
                    exc.column,
                    f"pass {spec.pass_id} ({which}) design matrix is rank "
                    f"deficient at column {exc.column}",
                ) from exc
            with mp.workdps(prec):
                out[which] = [to_mpf(c) for c in coeffs]
    return [
        CoefficientEstimate(order=mu, value_up=u, value_dn=d)
        for mu, u, d in zip(spec.fitted, out["up"], out["dn"])
    ]


def run_protocol(table: EigenTable, cfg: FitConfig | None = None):
    """All four passes in sequence; returns {pass_id: [estimates]}."""
    cfg = cfg or FitConfig()
    return {spec.pass_id: run_pass(table, spec, cfg) for spec in standard_passes(cfg.max_order)}


# ---------------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------------

def _round_sig(x: mpf, sig: int) -> decimal.Decimal:
    # keep the full mantissa: mpf(x) on an existing mpf would re-round it
    # to the ambient working precision
    f = _mpf_fraction(x if isinstance(x, mpf) else mpf(x))
    with decimal.localcontext() as ctx:
        ctx.prec = max(sig, 1)
        ctx.rounding = decimal.ROUND_HALF_EVEN
        return decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)


def render_value(x: mpf, sig: int) -> str:
    """Significant-digit rendering; plain decimal while it shows more digits
    than the integer part alone, otherwise m.mmm x 10^k."""
    if x == 0:
        return "0"
    d = _round_sig(x, sig)
    exp10 = d.adjusted()  # floor(log10 |d|)
    int_digits = exp10 + 1
    if sig > int_digits and exp10 > -5:
        body = format(d, "f")
        if "." not in body and int_digits < sig:
            body += ".0"
        return body
    mant = d.scaleb(-exp10)
    return f"{format(mant, 'f')}x10^{exp10}"


def report(est: CoefficientEstimate, cap: float = DIGIT_CAP) -> str:
    """One "C_mu = value {d_mu}" row in the survey convention: the value is
    rounded one digit beyond the rounded d_mu, d_mu printed to one decimal."""
    d = min(est.digits, cap)
    if d <= 0:
        raise ValueError(f"C_{est.order} has no agreed digits (d = {d:.1f})")
    sig = max(int(round(d)) + 1, 1)
    return f"C_{est.order} = {render_value(est.mean, sig)} {{{d:.1f}}}"


def verify_candidate(est: CoefficientEstimate, analytic) -> int:
    """Count of leading decimal digits shared with an analytic candidate."""
    if isinstance(analytic, str):
        with mp.workdps(len(analytic) + 10):
            analytic = mpf(analytic)
    with mp.workprec(max(est._width(), _bit_width(analytic) + 8)):
        a = mpf(analytic)
        if a == 0:
            raise ValueError("analytic candidate must be nonzero")
        rel = abs(est.mean - a) / abs(a)
        if rel == 0:
            return int(DIGIT_CAP)
        return min(int(mp.floor(-mp.log10(rel))), int(DIGIT_CAP))
