"""Polygon normalizations and the inscribed-convention expansion.

Two conventions for the regular S-gon appear in the literature:

* transcribed: area fixed at pi (the disk limit has radius 1);
* inscribed: vertices on the unit circle, area A'(S) = S cos(pi/S) sin(pi/S).

Eigenvalues scale inversely with area, so values move between conventions
by the ratio of areas. The inscribed expansion differs from the transcribed
one by the factor (2x/sin 2x), x = pi/S, which drags even zeta values into
the coefficients; it is produced here by formal series multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .specfun import MIN_PREC, _bernoulli, _check_prec, _guard, _round_to, known_coefficient, lambda_circle

TRANSCRIBED = "transcribed"
INSCRIBED = "inscribed"
_CONVENTIONS = (TRANSCRIBED, INSCRIBED)


@dataclass(frozen=True)
class PolygonSpec:
    """Regular polygon with a normalization convention."""

    sides: int
    convention: str = TRANSCRIBED

    def __post_init__(self):
        if not isinstance(self.sides, int) or self.sides < 3:
            raise ValueError(f"sides must be an integer >= 3, got {self.sides!r}")
        if self.convention not in _CONVENTIONS:
            raise ValueError(f"convention must be one of {_CONVENTIONS}, got {self.convention!r}")


def area(spec: PolygonSpec | int, convention: str | None = None, prec: int = 30):
    """Polygon area: pi for transcribed, S cos(pi/S) sin(pi/S) for inscribed."""
    spec = _as_spec(spec, convention)
    _check_prec(prec)
    with mp.workdps(_guard(prec)):
        if spec.convention == TRANSCRIBED:
            return _round_to(+mp.pi, prec)
        x = mp.pi / spec.sides
        return _round_to(spec.sides * mp.cos(x) * mp.sin(x), prec)


def rescale_eigenvalue(value, spec: PolygonSpec | int, to_convention: str, prec: int = 30):
    """Move an eigenvalue between conventions: lambda * A_src / A_dst."""
    spec = _as_spec(spec, None)
    if to_convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}, got {to_convention!r}")
    _check_prec(prec)
    if spec.convention == to_convention:
        return _round_to(mpf(value), prec)
    with mp.workdps(_guard(prec)):
        src = area(spec, prec=_guard(prec))
        dst = area(PolygonSpec(spec.sides, to_convention), prec=_guard(prec))
        return _round_to(mpf(value) * src / dst, prec)


def rescale_factor_series(order: int, prec: int = 30) -> list:
    """Coefficients t_0..t_order of 2x/sin(2x) in powers of 1/S, x = pi/S.

    Odd entries vanish; t_{2k} = (-1)^(k-1) * 2 * (2^(2k-1)-1) * B_{2k}
    * (2 pi)^(2k) / (2k)!.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    _check_prec(prec)
    with mp.workdps(_guard(prec)):
        out = [mpf(1)] + [mpf(0)] * order
        for k in range(1, order // 2 + 1):
            b = _bernoulli(2 * k)
            t = mpf(b.numerator) / b.denominator
            t *= (-1) ** (k - 1) * 2 * (2 ** (2 * k - 1) - 1)
            t *= (2 * mp.pi) ** (2 * k) / mp.factorial(2 * k)
            out[2 * k] = t
        return out


def inscribed_expansion(order: int = 6, prec: int = 30) -> list:
    """Coefficients C'_1..C'_order of the inscribed-convention series
    lambda'(S) ~ L * (1 + sum C'_mu / S^mu), by formal multiplication of
    the transcribed series with the area-rescale factor.

    Unlike the transcribed coefficients (odd zeta values only), these pick
    up even zeta values from the rescale factor. Closed transcribed forms
    exist through order 8, so `order` is capped there.
    """
    _check_prec(prec)
    if not isinstance(order, int) or not 0 <= order <= 8:
        raise ValueError(f"order must be an integer in 0..8, got {order!r}")
    dps = _guard(prec)
    with mp.workdps(dps):
        trans = [mpf(1)] + [known_coefficient(mu, dps).value for mu in range(1, order + 1)]
        factor = rescale_factor_series(order, dps)
        prod = [mpf(0)] * (order + 1)
        for i, a in enumerate(trans):
            for j, b in enumerate(factor):
                if i + j <= order:
                    prod[i + j] += a * b
        return [_round_to(c, prec) for c in prod[1:]]


def predict_inscribed(S: int, order: int = 6, prec: int = 30):
    """Truncated inscribed-convention eigenvalue series at integer S."""
    _check_prec(prec)
    if not isinstance(S, int) or S < 3:
        raise ValueError(f"S must be an integer >= 3, got {S!r}")
    dps = _guard(prec)
    with mp.workdps(dps):
        coeffs = inscribed_expansion(order, dps)
        inv = 1 / mpf(S)
        total = mpf(1)
        for mu, c in enumerate(coeffs, start=1):
            total += c * inv ** mu
        return _round_to(lambda_circle(dps) * total, prec)


def _as_spec(spec, convention) -> PolygonSpec:
    if isinstance(spec, PolygonSpec):
        if convention is not None and convention != spec.convention:
            raise ValueError("conflicting conventions")
        return spec
    return PolygonSpec(int(spec), convention or TRANSCRIBED)
