"""Special values and functions for the polygon eigenvalue expansion.

Everything is arbitrary precision: `prec` is the number of decimal digits
requested for the result, computation happens with guard digits on top,
and results come back as mpmath.mpf rounded to `prec` digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .errors import BracketError, ConvergenceError, PrecisionUnachievableError

MIN_PREC = 10
#: hard cap on cancellation guard digits in bessel_j
GUARD_DIGIT_CAP = 600


def _check_prec(prec: int) -> int:
    if not isinstance(prec, int) or prec < MIN_PREC:
        raise ValueError(f"prec must be an int >= {MIN_PREC}, got {prec!r}")
    return prec


def _guard(prec: int) -> int:
    return prec + max(20, prec // 10)


def _round_to(x, prec: int):
    with mp.workdps(prec):
        return +x


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------

def bessel_j(order, x, prec: int = 30):
    """J_order(x) by the ascending power series, accurate to `prec` digits.

    `order` may be a nonnegative integer, Fraction, or real; fractional
    orders arise from corner expansions with non-integer angle exponents.
    Working precision is raised adaptively until the series' internal
    cancellation leaves `prec` correct digits; if that would need more
    than GUARD_DIGIT_CAP guard digits the call fails rather than return
    garbage.
    """
    _check_prec(prec)
    if isinstance(order, (int, Fraction)):
        nu_exact: Fraction | None = Fraction(order)
    else:
        nu_exact = None
    guard = max(20, prec // 10)
    while True:
        dps = prec + guard
        with mp.workdps(dps):
            nu = mpf(nu_exact.numerator) / nu_exact.denominator if nu_exact is not None else mpf(order)
            if nu < 0:
                raise ValueError("order must be nonnegative")
            xv = mpf(x)
            if xv < 0:
                raise ValueError("x must be nonnegative")
            if xv == 0:
                return mpf(1) if nu == 0 else mpf(0)
            u = xv * xv / 4
            term = 1 / mp.gamma(nu + 1)
            total = term
            max_term = abs(term)
            cutoff = mpf(10) ** (-(dps + 5))
            m = 1
            while True:
                term = -term * u / (m * (nu + m))
                total += term
                at = abs(term)
                if at > max_term:
                    max_term = at
                if at < cutoff * max_term and m > u:
                    break
                m += 1
                if m > 100000:
                    raise ConvergenceError("bessel_j series did not terminate")
            if total == 0:
                lost = dps
            else:
                lost = max(0, int(mp.log10(max_term / abs(total))) + 1)
        if dps - lost >= prec + 3:
            with mp.workdps(dps):
                return _round_to((xv / 2) ** nu * total, prec)
        needed = lost + max(20, prec // 10) + 10
        if needed > GUARD_DIGIT_CAP:
            raise PrecisionUnachievableError(
                f"bessel_j(order={order}, x={x}) needs ~{lost} guard digits; cap is {GUARD_DIGIT_CAP}"
            )
        guard = needed


# ---------------------------------------------------------------------------
# Riemann zeta at integer argument
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(m):
        total += math.comb(m + 1, k) * _bernoulli(k)
    return -total / (m + 1)


@lru_cache(maxsize=None)
def zeta(n: int, prec: int = 30):
    """zeta(n) for integer n >= 2 via Euler-Maclaurin (direct sum when huge)."""
    _check_prec(prec)
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"zeta argument must be an integer >= 2, got {n!r}")
    dps = _guard(prec)
    with mp.workdps(dps):
        cutoff = mpf(10) ** (-(dps + 5))
        if n > 3.4 * dps:
            # 2^-n already below the guard floor; a couple of terms suffice
            total = mpf(1)
            k = 2
            while True:
                t = mpf(k) ** (-n)
                if t < cutoff:
                    break
                total += t
                k += 1
            return _round_to(total, prec)
        big_n = int(1.2 * dps) + 8
        total = mpf(0)
        for k in range(1, big_n):
            total += mpf(k) ** (-n)
        total += mpf(big_n) ** (1 - n) / (n - 1)
        total += mpf(big_n) ** (-n) / 2
        # correction terms B_2j/(2j)! * n(n+1)...(n+2j-2) * N^(1-n-2j)
        rising = mpf(1)
        power = mpf(big_n) ** (1 - n)  # N^(1-n-2j+2) tracked incrementally
        inv_n2 = 1 / (mpf(big_n) * big_n)
        j = 1
        while True:
            rising *= n + 2 * j - 2
            if j > 1:
                rising *= n + 2 * j - 3
            power *= inv_n2  # now N^(1-n-2j) = N^(-n-2j+1)
            b = _bernoulli(2 * j)
            term = mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * rising * power
            total += term
            if abs(term) < cutoff * abs(total):
                break
            j += 1
            if j > 2 * dps:
                raise ConvergenceError("zeta Euler-Maclaurin tail did not converge")
        return _round_to(total, prec)


# ---------------------------------------------------------------------------
# Circle constant (squared Bessel root)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleConstant:
    """k-th positive root of J_0 together with its square.

    The square of the first root is the fundamental Dirichlet eigenvalue
    of the unit-area-pi disk, the S -> infinity limit of the polygon
    eigenvalues.
    """

    index: int
    root: mpf
    value: mpf


@lru_cache(maxsize=None)
def circle_constant(k: int = 1, prec: int = 30) -> CircleConstant:
    """k-th root of J_0, bracketed then polished by Newton; value = root^2."""
    _check_prec(prec)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"root index must be a positive integer, got {k!r}")
    dps = _guard(prec) + 10
    with mp.workdps(dps):
        if k == 1:
            lo, hi = mp.sqrt(mpf("5.7")), mp.sqrt(mpf("5.8"))
        else:
            lo = (k - mpf(1) / 4) * mp.pi
            hi = lo + mpf("0.15")
        eprec = dps + 5
        flo = bessel_j(0, lo, eprec)
        fhi = bessel_j(0, hi, eprec)
        if mp.sign(flo) == mp.sign(fhi):
            raise BracketError(f"no sign change of J_0 on [{lo}, {hi}] for root {k}")
        for _ in range(12):
            mid = (lo + hi) / 2
            fmid = bessel_j(0, mid, eprec)
            if mp.sign(fmid) == mp.sign(flo):
                lo, flo = mid, fmid
            else:
                hi, fhi = mid, fmid
        x = (lo + hi) / 2
        tol = mpf(10) ** (-(dps - 3))
        small_steps = 0
        for _ in range(200):
            step = bessel_j(0, x, eprec) / bessel_j(1, x, eprec)
            x += step
            if abs(step) < tol * abs(x):
                small_steps += 1
                if small_steps >= 2:
                    break
            else:
                small_steps = 0
        else:
            raise ConvergenceError(f"Newton on J_0 root {k} did not converge")
        return CircleConstant(index=k, root=_round_to(x, prec), value=_round_to(x * x, prec))


def lambda_circle(prec: int = 30):
    """Disk limit eigenvalue: square of the first J_0 root."""
    return circle_constant(1, prec).value


# ---------------------------------------------------------------------------
# Closed-form expansion coefficients
# ---------------------------------------------------------------------------

#: (a, b, c, d, zeta_args): coefficient = (b + c*L + d*L^2)/a * prod zeta(z),
#: with L the squared first J_0 root.
_CLOSED_FORMS: dict[int, tuple[int, int, int, int, tuple[int, ...]]] = {
    1: (1, 0, 0, 0, ()),
    2: (1, 0, 0, 0, ()),
    3: (1, 4, 0, 0, (3,)),
    4: (1, 0, 0, 0, ()),
    5: (1, 12, -2, 0, (5,)),
    6: (1, 8, 4, 0, (3, 3)),
    7: (2, 72, -24, -1, (7,)),
    8: (1, 48, 8, 2, (3, 5)),
}


@dataclass(frozen=True)
class KnownCoefficient:
    """Closed-form coefficient of 1/S^order in the polygon eigenvalue series.

    closed_form = (a, b, c, d) encodes (b + c*L + d*L^2) / a times the
    product of zeta(z) over zeta_args, where L is the disk eigenvalue.
    """

    order: int
    value: mpf
    closed_form: tuple[int, int, int, int]
    zeta_args: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        a, b, c, d = self.closed_form
        return b == 0 and c == 0 and d == 0


@lru_cache(maxsize=None)
def known_coefficient(mu: int, prec: int = 30) -> KnownCoefficient:
    """Closed-form series coefficient for 1 <= mu <= 8."""
    _check_prec(prec)
    form = _CLOSED_FORMS.get(mu)
    if form is None:
        raise ValueError(f"no closed form is known for order {mu}")
    a, b, c, d, zargs = form
    dps = _guard(prec)
    with mp.workdps(dps):
        if b == 0 and c == 0 and d == 0:
            value = mpf(0)
        else:
            lam = lambda_circle(dps)
            value = mpf(b) + c * lam + d * lam * lam
            value /= a
            for z in zargs:
                value *= zeta(z, dps)
        return KnownCoefficient(order=mu, value=_round_to(value, prec),
                                closed_form=(a, b, c, d), zeta_args=zargs)


# ---------------------------------------------------------------------------
# Truncated series prediction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesTruncation:
    """Truncation order N plus optional numeric coefficients beyond order 8.

    extra[i] is the coefficient of 1/S^(9+i); entries may be strings (parsed
    at working precision) or mpf values. Orders up to 8 always come from the
    closed forms.
    """

    order: int
    extra: tuple = ()

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 0:
            raise ValueError(f"truncation order must be an int >= 0, got {self.order!r}")
        if self.order > 8 and len(self.extra) < self.order - 8:
            raise ValueError(
                f"truncation to order {self.order} needs {self.order - 8} extra "
                f"coefficients, got {len(self.extra)}"
            )


def predict(S, trunc: SeriesTruncation | int = 8, prec: int = 30):
    """Series prediction of the fundamental eigenvalue of the regular S-gon
    of area pi, truncated at order N: L * (1 + sum_mu C_mu / S^mu).

    S may be math.inf / mp.inf, giving the disk limit exactly.
    """
    _check_prec(prec)
    if isinstance(trunc, int):
        trunc = SeriesTruncation(order=trunc)
    dps = _guard(prec)
    with mp.workdps(dps):
        lam = lambda_circle(dps)
        if S == mp.inf:
            return _round_to(lam, prec)
        if not isinstance(S, int) or S < 3:
            raise ValueError(f"S must be an integer >= 3 or infinity, got {S!r}")
        inv = 1 / mpf(S)
        total = mpf(1)
        for mu in range(1, min(trunc.order, 8) + 1):
            coeff = known_coefficient(mu, dps)
            if not coeff.is_zero:
                total += coeff.value * inv ** mu
        for i in range(max(0, trunc.order - 8)):
            c = trunc.extra[i]
            total += mpf(c) * inv ** (9 + i)
        return _round_to(lam * total, prec)
