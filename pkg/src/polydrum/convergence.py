"""Growth analysis of the expansion coefficients.

The high-order coefficients settle onto ln|C_mu| ~ a*mu + b*(1 - e^(-c*mu)),
so the series behaves asymptotically like a geometric series with ratio
e^a / S: it converges for S above the critical side count S_cr = e^a and
diverges below. This module fits the three-parameter law, propagates the
one-sigma parameter bands, exponentiates to S_cr, and bounds remainders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError

#: default width multiplier of the reported S_cr band
SIGMA_K = 6


def sign_pattern(coeffs) -> int:
    """Start of the longest suffix on which sign(C_mu) = (-1)^mu.

    `coeffs` is a list of (mu, value) with contiguous mu. Returns the first
    mu of the alternating suffix; mu_hi + 1 when even the last entry fails.
    """
    items = sorted(coeffs)
    if not items:
        raise ValueError("empty coefficient list")
    mus = [m for m, _ in items]
    if mus != list(range(mus[0], mus[-1] + 1)):
        raise ValueError("coefficient orders must be contiguous")
    start = mus[-1] + 1
    for mu, val in reversed(items):
        good = (val > 0) if mu % 2 == 0 else (val < 0)
        if not good:
            break
        start = mu
    return start


@dataclass(frozen=True)
class GrowthFit:
    a: float
    b: float
    c: float
    sigma_a: float
    sigma_b: float
    sigma_c: float
    fit_range: tuple[int, int]
    residuals: tuple[float, ...]
    iterations: int

    def model(self, mu: float) -> float:
        return self.a * mu + self.b * (1 - math.exp(-self.c * mu))


@dataclass(frozen=True)
class CriticalS:
    point: float
    interval: tuple[float, float]
    k: float

    def __post_init__(self):
        if not self.interval[0] <= self.point <= self.interval[1]:
            raise ValueError("S_cr interval must contain the point estimate")


def _solve3(m, v):
    """3x3 linear solve by Gaussian elimination with partial pivoting."""
    a = [row[:] + [v[i]] for i, row in enumerate(m)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) < 1e-300:
            raise ConvergenceError("singular normal matrix in growth fit")
        a[col], a[piv] = a[piv], a[col]
        for r in range(col + 1, 3):
            f = a[r][col] / a[col][col]
            for cc in range(col, 4):
                a[r][cc] -= f * a[col][cc]
    x = [0.0] * 3
    for r in (2, 1, 0):
        x[r] = (a[r][3] - sum(a[r][cc] * x[cc] for cc in range(r + 1, 3))) / a[r][r]
    return x


def _invert3(m):
    cols = []
    for k in range(3):
        e = [1.0 if i == k else 0.0 for i in range(3)]
        cols.append(_solve3(m, e))
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def growth_fit(coeffs, mu_lo: int, mu_hi: int, max_iter: int = 200) -> GrowthFit:
    """Damped Gauss-Newton fit of ln|C_mu| = a mu + b (1 - e^(-c mu)).

    Deterministic: initialized from the endpoint slope (a0), b0 = -a0*mu_lo,
    c0 = 0.1; forward-difference Jacobian; step halving on the residual norm.
    Parameter standard deviations come from the linearized covariance
    s^2 (J^T J)^(-1) at the optimum.
    """
    data = [(mu, val) for mu, val in sorted(coeffs) if mu_lo <= mu <= mu_hi]
    if len(data) < 6:
        raise ValueError(f"need at least 6 points in [{mu_lo}, {mu_hi}], got {len(data)}")
    for mu, val in data:
        if val == 0:
            raise ValueError(f"C_{mu} is zero; cannot take ln|C|")
    xs = [float(mu) for mu, _ in data]
    ys = [math.log(abs(float(val))) for _, val in data]
    n = len(xs)

    a = (ys[-1] - ys[0]) / (xs[-1] - xs[0])
    b = -a * xs[0]
    c = 0.1
    params = [a, b, c]

    def model(p, x):
        return p[0] * x + p[1] * (1 - math.exp(-p[2] * x))

    def ssr(p):
        return sum((y - model(p, x)) ** 2 for x, y in zip(xs, ys))

    cur = ssr(params)
    it = 0
    for it in range(1, max_iter + 1):
        jac = []
        for i in range(n):
            base = model(params, xs[i])
            row = []
            for k in range(3):
                hp = params[:]
                h = 1e-7 * max(abs(params[k]), 1e-3)
                hp[k] += h
                row.append((model(hp, xs[i]) - base) / h)
            jac.append(row)
        resid = [ys[i] - model(params, xs[i]) for i in range(n)]
        jtj = [[sum(jac[i][r] * jac[i][cc] for i in range(n)) for cc in range(3)] for r in range(3)]
        jtr = [sum(jac[i][r] * resid[i] for i in range(n)) for r in range(3)]
        step = _solve3(jtj, jtr)
        t = 1.0
        improved = False
        for _ in range(25):
            trial = [params[k] + t * step[k] for k in range(3)]
            val = ssr(trial)
            if val < cur:
                params, cur = trial, val
                improved = True
                break
            t /= 2
        rel = max(abs(t * step[k]) / max(abs(params[k]), 1e-12) for k in range(3))
        if not improved or rel < 1e-12:
            break
    else:
        raise ConvergenceError(f"growth fit did not converge in {max_iter} iterations")

    # linearized covariance at the optimum
    jac = []
    for i in range(n):
        base = model(params, xs[i])
        row = []
        for k in range(3):
            hp = params[:]
            h = 1e-7 * max(abs(params[k]), 1e-3)
            hp[k] += h
            row.append((model(hp, xs[i]) - base) / h)
        jac.append(row)
    jtj = [[sum(jac[i][r] * jac[i][cc] for i in range(n)) for cc in range(3)] for r in range(3)]
    cov = _invert3(jtj)
    dof = max(n - 3, 1)
    s2 = cur / dof
    sig = [math.sqrt(max(s2 * cov[k][k], 0.0)) for k in range(3)]
    residuals = tuple(ys[i] - model(params, xs[i]) for i in range(n))
    return GrowthFit(
        a=params[0], b=params[1], c=params[2],
        sigma_a=sig[0], sigma_b=sig[1], sigma_c=sig[2],
        fit_range=(mu_lo, mu_hi), residuals=residuals, iterations=it,
    )


def critical_s(fit: GrowthFit, k: float = SIGMA_K) -> CriticalS:
    """S_cr = e^a with the k-sigma band of a exponentiated alongside."""
    return CriticalS(
        point=math.exp(fit.a),
        interval=(math.exp(fit.a - k * fit.sigma_a), math.exp(fit.a + k * fit.sigma_a)),
        k=k,
    )


def remainder_estimate(order: int, fit: GrowthFit, S) -> float:
    """Geometric bound on |sum_{mu >= order} C_mu S^-mu| from the growth law.

    Terms are bounded by e^(a mu + b), so the tail from `order` is at most
    e^b q^order / (1 - q) with q = e^a / S; only defined for S > e^a.
    """
    q = math.exp(fit.a) / float(S)
    if q >= 1:
        raise ConvergenceError(
            f"series diverges at S={S}: geometric ratio e^a/S = {q:.3f} >= 1"
        )
    return math.exp(fit.b) * q**order / (1 - q)


def plot_data(coeffs, fit: GrowthFit) -> str:
    """Whitespace table: mu, ln|C_mu|, fitted value, residual on a 50x scale."""
    lines = ["# mu ln_abs_c fit residual_x50"]
    for mu, val in sorted(coeffs):
        y = math.log(abs(float(val)))
        f = fit.model(float(mu))
        lines.append(f"{mu} {y:.12g} {f:.12g} {50 * (y - f):.12g}")
    return "\n".join(lines) + "\n"
