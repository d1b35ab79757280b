"""Fast correctly-rounded real arithmetic on top of gmpy2 (MPFR).

The eigenvalue solver and the high-order regressions spend nearly all of
their time in tight scalar loops (Bessel series, Householder reflections).
Raw gmpy2.mpfr operations run several times faster than mpmath's wrapped
arithmetic, so the hot paths live here and the public modules convert at
their boundaries with :func:`to_mpfr` / :func:`to_mpf`.

All routines assume the caller has installed a working context, e.g.::

    with work_ctx(bits_for(50)):
        ...

MPFR arithmetic is correctly rounded, hence bit-for-bit deterministic.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction

import gmpy2
import mpmath

from .errors import SingularSystemError

_LOG2_10 = math.log2(10.0)


def bits_for(digits: int | float) -> int:
    """Binary precision comfortably holding `digits` decimal digits."""
    return int(math.ceil(digits * _LOG2_10)) + 12


def dps_for(bits: int) -> int:
    return int(bits / _LOG2_10)


@contextmanager
def work_ctx(bits: int):
    """Install a gmpy2 context with the given precision for the block."""
    old = gmpy2.get_context()
    ctx = gmpy2.context(precision=bits)
    gmpy2.set_context(ctx)
    try:
        yield ctx
    finally:
        gmpy2.set_context(old)


def to_mpfr(x) -> gmpy2.mpfr:
    """Convert to mpfr, exactly for mpmath.mpf inputs, under a raised context."""
    if isinstance(x, gmpy2.mpfr):
        return x
    if isinstance(x, (int, float)):
        return gmpy2.mpfr(x)
    if isinstance(x, str):
        return gmpy2.mpfr(x)
    if isinstance(x, Fraction):
        return gmpy2.mpfr(x.numerator) / gmpy2.mpfr(x.denominator)
    raw = getattr(x, "_mpf_", None)
    if raw is None:
        return gmpy2.mpfr(str(x))
    sign, man, exp, bc = raw
    if man == 0:
        if exp == 0:
            return gmpy2.mpfr(0)
        return gmpy2.mpfr(str(x))  # inf / nan encodings
    saved = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=max(int(bc), 2) + 4))
    try:
        g = gmpy2.mpfr(-man if sign else man)
        g = gmpy2.mul_2exp(g, exp) if exp >= 0 else gmpy2.div_2exp(g, -exp)
    finally:
        gmpy2.set_context(saved)
    return g


def to_mpf(g) -> mpmath.mpf:
    """Convert mpfr to mpmath.mpf exactly (at the mantissa's own width)."""
    if gmpy2.is_zero(g):
        return mpmath.mpf(0)
    m, e = g.as_mantissa_exp()
    m = int(m)
    with mpmath.mp.workprec(max(m.bit_length(), 2) + 4):
        return mpmath.mpf((m, int(e)))


def const_pi() -> gmpy2.mpfr:
    return gmpy2.const_pi()


# ---------------------------------------------------------------------------
# Bessel functions
# ---------------------------------------------------------------------------

def j_int(n: int, x: gmpy2.mpfr) -> gmpy2.mpfr:
    """J_n for integer n >= 0 (MPFR built-in, correctly rounded)."""
    return gmpy2.jn(n, x)


class JFamily:
    """Power-series evaluator for J_nu over the arithmetic family
    nu_j = nu0 + j*dnu, j = 0..count-1, at a fixed binary precision.

    Reciprocal-Gamma ladders R[m] = 1/(m! * Gamma(nu+m+1)) are cached per
    order, so each evaluation is one Horner recurrence per order plus a
    single exp/log pair for the chained prefactors (x/2)^{nu_j}.
    """

    def __init__(self, nu0: Fraction, dnu: Fraction, count: int, bits: int):
        self.nu0 = Fraction(nu0)
        self.dnu = Fraction(dnu)
        self.count = count
        self.bits = bits
        self._ladders: list[list[gmpy2.mpfr]] = []
        self._nu_f: list[float] = []
        self._nu_m: list[gmpy2.mpfr] = []
        with work_ctx(bits + 30):
            for j in range(count):
                nu = self.nu0 + j * self.dnu
                nu_m = gmpy2.mpfr(nu.numerator) / gmpy2.mpfr(nu.denominator)
                r0 = 1 / gmpy2.gamma(nu_m + 1)
                self._ladders.append([r0])
                self._nu_f.append(float(nu))
                self._nu_m.append(nu_m)

    def _ensure_terms(self, j: int, m_max: int) -> list[gmpy2.mpfr]:
        ladder = self._ladders[j]
        if len(ladder) <= m_max:
            with work_ctx(self.bits + 30):
                nu_m = self._nu_m[j]
                for m in range(len(ladder), m_max + 1):
                    ladder.append(ladder[-1] / (m * (nu_m + m)))
        return ladder

    def _n_terms(self, j: int, u_f: float, log2_tail: float) -> int:
        """Smallest M with R[M]*u^M below 2^log2_tail (float estimate)."""
        nu = self._nu_f[j]
        if u_f <= 0.0:
            return 0
        lu = math.log2(u_f)
        m = 0
        while True:
            t = m * lu - (math.lgamma(m + 1) + math.lgamma(nu + m + 1)) / math.log(2.0)
            t += math.lgamma(nu + 1) / math.log(2.0)  # relative to leading term
            if t < log2_tail or m > 4000:
                return m
            m += 1

    def eval_all(self, x: gmpy2.mpfr, count: int | None = None) -> list[gmpy2.mpfr]:
        """[J_{nu_j}(x) for j in range(count)] under the caller's context."""
        n = self.count if count is None else count
        if gmpy2.is_zero(x):
            zero = gmpy2.mpfr(0)
            return [gmpy2.mpfr(1) if self._nu_f[j] == 0.0 else zero for j in range(n)]
        u = x * x / 4
        u_f = float(u)
        half_f = float(x) / 2.0
        log2_tail = -(self.bits + 8)
        # chained prefactors (x/2)^{nu_j}
        lh = gmpy2.log(x / 2)
        pref = gmpy2.exp(self._to_ctx_frac(self.nu0) * lh)
        ratio = gmpy2.exp(self._to_ctx_frac(self.dnu) * lh) if n > 1 else None
        out = []
        for j in range(n):
            # skip orders whose leading term already underflows the target
            lead_log2 = self._nu_f[j] * math.log2(half_f) - math.lgamma(self._nu_f[j] + 1) / math.log(2.0) if half_f > 0 else -1e9
            if lead_log2 < log2_tail - 4:
                out.append(gmpy2.mpfr(0))
                if ratio is not None:
                    pref = pref * ratio
                continue
            m_max = self._n_terms(j, u_f, log2_tail)
            ladder = self._ensure_terms(j, m_max)
            s = ladder[m_max]
            for m in range(m_max - 1, -1, -1):
                s = ladder[m] - u * s
            out.append(pref * s)
            if ratio is not None:
                pref = pref * ratio
        return out

    @staticmethod
    def _to_ctx_frac(q: Fraction) -> gmpy2.mpfr:
        return gmpy2.mpfr(q.numerator) / gmpy2.mpfr(q.denominator)


# ---------------------------------------------------------------------------
# Dense least squares (Householder QR)
# ---------------------------------------------------------------------------

def lstsq(rows: list[list[gmpy2.mpfr]], rhs: list[gmpy2.mpfr]):
    """Least-squares solve min ||A x - b||_2 by Householder QR.

    Returns (x, residual_norm, rdiag). Raises SingularSystemError when a
    pivot collapses relative to the largest column norm.
    """
    m = len(rows)
    k = len(rows[0])
    if m < k:
        raise ValueError(f"need at least as many rows as columns ({m} < {k})")
    a = [list(r) for r in rows]
    b = list(rhs)
    rdiag: list[gmpy2.mpfr] = []
    max_pivot = gmpy2.mpfr(0)
    tiny = gmpy2.exp2(-(gmpy2.get_context().precision - 8))
    for col in range(k):
        # norm of the active column segment
        s = gmpy2.mpfr(0)
        for i in range(col, m):
            aic = a[i][col]
            s = gmpy2.fma(aic, aic, s)
        norm = gmpy2.sqrt(s)
        if norm > max_pivot:
            max_pivot = norm
        if norm <= tiny * max_pivot or gmpy2.is_zero(norm):
            raise SingularSystemError(col)
        akk = a[col][col]
        alpha = -norm if akk >= 0 else norm
        # v = column segment with v0 shifted; beta = 1/(alpha*v0)
        v0 = akk - alpha
        a[col][col] = alpha
        rdiag.append(alpha)
        inv = 1 / (alpha * v0)  # note: alpha*v0 = -(norm*|v0|) < 0
        for jcol in range(col + 1, k):
            s = v0 * a[col][jcol]
            for i in range(col + 1, m):
                s = gmpy2.fma(a[i][col], a[i][jcol], s)
            s = s * inv
            a[col][jcol] = gmpy2.fma(s, v0, a[col][jcol])
            for i in range(col + 1, m):
                a[i][jcol] = gmpy2.fma(s, a[i][col], a[i][jcol])
        s = v0 * b[col]
        for i in range(col + 1, m):
            s = gmpy2.fma(a[i][col], b[i], s)
        s = s * inv
        b[col] = gmpy2.fma(s, v0, b[col])
        for i in range(col + 1, m):
            b[i] = gmpy2.fma(s, a[i][col], b[i])
    # back substitution
    x = [gmpy2.mpfr(0)] * k
    for row in range(k - 1, -1, -1):
        s = b[row]
        arow = a[row]
        for jcol in range(row + 1, k):
            s = gmpy2.fma(-arow[jcol], x[jcol], s)
        x[row] = s / rdiag[row]
    res = gmpy2.mpfr(0)
    for i in range(k, m):
        res = gmpy2.fma(b[i], b[i], res)
    return x, gmpy2.sqrt(res), rdiag


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature
# ---------------------------------------------------------------------------

_GL_CACHE: dict[tuple[int, int], tuple[list[gmpy2.mpfr], list[gmpy2.mpfr]]] = {}


def gauss_legendre(n: int) -> tuple[list[gmpy2.mpfr], list[gmpy2.mpfr]]:
    """Nodes and weights on [-1, 1] at the current context precision."""
    bits = gmpy2.get_context().precision
    key = (n, bits)
    hit = _GL_CACHE.get(key)
    if hit is not None:
        return hit
    nodes: list[gmpy2.mpfr] = []
    weights: list[gmpy2.mpfr] = []
    iters = max(4, int(math.log2(bits / 50.0 + 1)) + 4)
    for i in range(n):
        x = gmpy2.mpfr(math.cos(math.pi * (4 * i + 3) / (4 * n + 2)))
        for _ in range(iters):
            p, dp = _legendre_pair(n, x)
            x = x - p / dp
        p, dp = _legendre_pair(n, x)
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    _GL_CACHE[key] = (nodes, weights)
    return nodes, weights


def _legendre_pair(n: int, x: gmpy2.mpfr):
    """(P_n(x), P_n'(x)) by the three-term recurrence."""
    p0 = gmpy2.mpfr(1)
    p1 = x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    return p1, dp
