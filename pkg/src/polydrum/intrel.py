"""Integer-relation mining for expansion coefficients.

A numeric coefficient C is tested against an ansatz of terms
zeta-product x lambda_circle^k by LLL reduction of the lattice whose
columns are identity vectors carrying round(u_j 10^p) in the last row,
u = [C, term_1, term_2, ...]. A short vector in the reduced basis encodes
an integer relation a C + sum_j n_j term_j ~ 0, i.e. a closed form
C = -(sum n_j term_j)/a. All lattice arithmetic is exact (arbitrary-size
integers, Gram-Schmidt over Fraction), so the output is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import SingularSystemError
from .specfun import KnownCoefficient, _round_to, lambda_circle, zeta

#: LLL quality parameter
DELTA = Fraction(3, 4)
#: largest acceptable |v_j| in an accepted relation
HEIGHT_CAP = 10**4
#: default rounding power and its cap
P_DEFAULT_CAP = 30


@dataclass(frozen=True)
class AnsatzTerm:
    """One candidate constituent: prod zeta(args) * lambda_circle^power."""

    zeta_args: tuple[int, ...]
    lambda_power: int

    def __post_init__(self):
        if any(a < 3 or a % 2 == 0 for a in self.zeta_args):
            raise ValueError("zeta arguments must be odd integers >= 3")
        if self.lambda_power < 0:
            raise ValueError("lambda power must be non-negative")

    def value(self, prec: int) -> mpf:
        with mp.workdps(prec + 8):
            v = mpf(1)
            for a in self.zeta_args:
                v *= zeta(a, prec + 8)
            return v * lambda_circle(prec + 8) ** self.lambda_power

    def describe(self) -> str:
        parts = [f"zeta({a})" for a in self.zeta_args]
        if self.lambda_power == 1:
            parts.append("lam0")
        elif self.lambda_power > 1:
            parts.append(f"lam0^{self.lambda_power}")
        return "*".join(parts) if parts else "1"


def _odd_partitions(total: int, smallest: int = 3):
    """Multisets of odd integers >= 3 with the given sum, ascending lex."""
    if total == 0:
        yield ()
        return
    part = smallest if smallest % 2 else smallest + 1
    while part <= total:
        for rest in _odd_partitions(total - part, part):
            yield (part,) + rest
        part += 2


def ansatz_for_order(mu: int, max_lambda_power: int | None = None) -> list[AnsatzTerm]:
    """Candidate terms at order mu: odd-zeta products of total weight mu,
    each multiplied by powers of lambda_circle up to floor((mu-3)/2),
    capped at 3 (two lambda powers per extra zeta weight step)."""
    if mu < 3:
        return []
    if max_lambda_power is None:
        max_lambda_power = min((mu - 3) // 2, 3)
    out = []
    for zargs in sorted(_odd_partitions(mu)):
        for k in range(max_lambda_power + 1):
            out.append(AnsatzTerm(zeta_args=zargs, lambda_power=k))
    return out


@dataclass(frozen=True)
class RelationProblem:
    """Target coefficient, its ansatz, and the lattice rounding power."""

    target: mpf
    terms: tuple[AnsatzTerm, ...]
    p: int
    digits: float

    def __post_init__(self):
        if not self.terms:
            raise ValueError("ansatz must contain at least one term")
        if self.digits <= self.p + 6:
            raise ValueError(
                f"target carries {self.digits:.1f} digits; need more than p+6 = {self.p + 6}"
            )


def make_problem(target, digits: float | None = None, terms=None, mu: int | None = None,
                 p: int | None = None) -> RelationProblem:
    """Convenience constructor; digits defaults to the decimal string length."""
    if digits is None:
        s = str(target).replace("-", "").replace(".", "").lstrip("0")
        digits = float(len(s))
    if terms is None:
        if mu is None:
            raise ValueError("need either explicit terms or an order mu")
        terms = ansatz_for_order(mu)
    if p is None:
        p = min(P_DEFAULT_CAP, int(digits) - 8)
    with mp.workdps(max(int(digits) + 10, 30)):
        target = mpf(target)
    return RelationProblem(target=target, terms=tuple(terms), p=p, digits=float(digits))


@dataclass(frozen=True)
class IntegerRelation:
    v: tuple[int, ...]
    residual: mpf
    relerr: mpf
    accepted: bool

    def __post_init__(self):
        if not any(self.v):
            raise ValueError("relation vector must be nonzero")


# ---------------------------------------------------------------------------
# Exact LLL
# ---------------------------------------------------------------------------

def _gso(cols):
    n = len(cols)
    mu = [[Fraction(0)] * n for _ in range(n)]
    ortho = []
    norms = []
    for i in range(n):
        v = [Fraction(x) for x in cols[i]]
        for j in range(i):
            if norms[j] == 0:
                raise SingularSystemError(j, f"lattice column {j} is dependent")
            m = sum(Fraction(a) * b for a, b in zip(cols[i], ortho[j])) / norms[j]
            mu[i][j] = m
            v = [vv - m * oo for vv, oo in zip(v, ortho[j])]
        ortho.append(v)
        norms.append(sum(x * x for x in v))
    if norms and norms[-1] == 0:
        raise SingularSystemError(n - 1, f"lattice column {n - 1} is dependent")
    return mu, norms


def _nearest(m: Fraction) -> int:
    return (2 * m.numerator + m.denominator) // (2 * m.denominator)


def lll_reduce(basis, delta: Fraction = DELTA):
    """LLL reduction over exact integers.

    `basis` is a list of integer columns. Returns (reduced columns,
    transform columns U) with reduced = basis . U column-wise.
    """
    cols = [list(map(int, c)) for c in basis]
    n = len(cols)
    u = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    if n <= 1:
        return cols, u
    k = 1
    while k < n:
        mu, norms = _gso(cols)
        for j in range(k - 1, -1, -1):
            r = _nearest(mu[k][j])
            if r:
                cols[k] = [a - r * b for a, b in zip(cols[k], cols[j])]
                u[k] = [a - r * b for a, b in zip(u[k], u[j])]
                mu, norms = _gso(cols)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            cols[k], cols[k - 1] = cols[k - 1], cols[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            k = max(k - 1, 1)
    return cols, u


# ---------------------------------------------------------------------------
# Relation search
# ---------------------------------------------------------------------------

def _round_half_away(x: mpf) -> int:
    from mpmath import floor
    if x < 0:
        return -int(floor(-x + mpf("0.5")))
    return int(floor(x + mpf("0.5")))


def find_relation(problem: RelationProblem, prec: int = 100) -> IntegerRelation:
    """Appendix-style search: identity lattice, scaled u in the last row,
    first transform column, sign-normalized; accepted iff the relative
    residual beats 10^-(digits-6) and the vector height stays below 10^4."""
    if prec < problem.p + 20:
        raise ValueError(f"prec = {prec} too small for p = {problem.p}")
    with mp.workdps(prec):
        u_vec = [mpf(problem.target)] + [t.value(prec) for t in problem.terms]
        n = len(u_vec)
        scale = mpf(10) ** problem.p
        last = [_round_half_away(x * scale) for x in u_vec]
        cols = []
        for j in range(n):
            col = [1 if i == j else 0 for i in range(n - 1)]
            col.append(last[j])
            cols.append(col)
        _, transform = lll_reduce(cols)
        v = list(transform[0])
        lead = next((x for x in v if x != 0), 0)
        if lead < 0:
            v = [-x for x in v]
        residual = mp.fsum(uj * vj for uj, vj in zip(u_vec, v))
        relerr = abs(residual / problem.target)
        accepted = (
            v[0] > 0
            and max(abs(x) for x in v) <= HEIGHT_CAP
            and relerr < mpf(10) ** -(problem.digits - 6)
        )
        return IntegerRelation(v=tuple(v), residual=+residual, relerr=+relerr, accepted=bool(accepted))


def relation_to_coefficient(rel: IntegerRelation, problem: RelationProblem,
                            order: int, prec: int = 50) -> KnownCoefficient:
    """Resolve an accepted relation into the closed-form quadruple
    (a, b, c, d): C = (b + c lam0 + d lam0^2) prod zeta(args) / a."""
    if not rel.accepted:
        raise ValueError("cannot build a closed form from a rejected relation")
    a = rel.v[0]
    ints = [-x for x in rel.v[1:]]
    if all(x == 0 for x in ints):
        return KnownCoefficient(order=order, value=mpf(0), closed_form=(1, 0, 0, 0), zeta_args=())
    products = {t.zeta_args for t in problem.terms}
    if len(products) != 1:
        raise ValueError("mixed zeta products do not reduce to a single quadruple")
    zargs = next(iter(products))
    bcd = [0, 0, 0]
    for t, coef in zip(problem.terms, ints):
        if t.lambda_power > 2 and coef != 0:
            raise ValueError("lambda powers above 2 do not fit the quadruple form")
        if coef != 0:
            bcd[t.lambda_power] = coef
    with mp.workdps(prec + 8):
        lam0 = lambda_circle(prec + 8)
        z = mpf(1)
        for arg in zargs:
            z *= zeta(arg, prec + 8)
        value = (bcd[0] + bcd[1] * lam0 + bcd[2] * lam0**2) * z / a
        # round inside the working context; a bare unary plus at ambient
        # precision would throw away everything past ~16 digits
        value = _round_to(value, prec)
    return KnownCoefficient(order=order, value=value,
                            closed_form=(a, bcd[0], bcd[1], bcd[2]), zeta_args=zargs)


def report_line(order: int, problem: RelationProblem, rel: IntegerRelation) -> str:
    """One output line in the survey's layout:
    C_6=44.985 relerr=1.70 e-29 v=[1,-8,-4]"""
    target = float(problem.target)
    if rel.relerr > 0:
        expo = -int(mp.floor(mp.log10(rel.relerr)))
        mant = float(rel.relerr * mpf(10) ** expo)
        if mant >= 9.995:
            mant, expo = mant / 10, expo - 1
        err = f"{mant:4.2f} e-{expo:02d}"
    else:
        err = "0.00 e-99"
    vtxt = ",".join(str(x) for x in rel.v)
    return f"C_{order}={target:6.3f} relerr={err} v=[{vtxt}]"
