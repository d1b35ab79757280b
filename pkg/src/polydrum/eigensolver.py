"""Certified fundamental Dirichlet eigenvalues of regular polygons.

Method of particular solutions on the regular S-gon of area pi, exploiting
the full dihedral symmetry of the ground state:

* center expansion  J_{kS}(sqrt(lam) r) cos(kS theta)  (entire part);
* corner bundles    sum_v J_{nu_j}(sqrt(lam) rho_v) sin(nu_j phi_v)
  with nu_j = (2j-1) S/(S-2) = (2j-1) pi/alpha, summed over all S vertices.

The bundles reproduce the ground state's corner behavior (the interior
angle alpha = pi(S-2)/S is not a submultiple of pi for S >= 5, so the mode
has an algebraic singularity rho^(pi/alpha) at each vertex that the center
expansion alone cannot resolve; with the bundles the boundary defect decays
geometrically in the number of terms). Both families are invariant under
the dihedral group, hence collocating the Dirichlet condition on a single
half-edge enforces it on the whole boundary.

Certification is a Moler-Payne style a posteriori enclosure: for a trial
pair (lam, Psi), some Dirichlet eigenvalue lies within relative distance
eta = sqrt(area) * sup_boundary|Psi| / ||Psi||_L2. The fundamental mode is
identified because the enclosure lands inside (lam_disk, 4 pi/sqrt 3] while
the second polygon eigenvalue exceeds 2 j_01^2 (two half-area disks bound).
The boundary sup is a dense-sample bound with a derivative-based fill-in
term and a safety factor; the L2 norm is a Gauss-Legendre lower bound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from mpmath import mp, mpf

from . import kernel
from .errors import CertificationError, ConvergenceError
from .kernel import JFamily, bits_for, to_mpf, to_mpfr, work_ctx
from .specfun import _check_prec, lambda_circle, predict

#: safety factor applied to the derivative fill-in of the boundary sup bound
SUP_SAFETY = 2
#: relative margin taken off the quadrature L2 norm (lower bound)
NORM_MARGIN = "1e-4"


@dataclass
class MpsConfig:
    """Solver knobs.

    basis_size: total Bessel terms K to start from (0 = automatic sizing);
    collocation_count: boundary points M (None = 2K + 8, kept >= 2K);
    target_digits: certified relative gap 10^-target_digits;
    prec: working decimal digits (None = target_digits + 28);
    max_refinements: basis growth rounds before giving up.
    """

    basis_size: int = 0
    collocation_count: int | None = None
    target_digits: int = 30
    prec: int | None = None
    max_refinements: int = 8

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.prec is not None and self.prec < self.target_digits + 20:
            raise ValueError("prec must be at least target_digits + 20")

    @property
    def working_digits(self) -> int:
        return self.prec if self.prec is not None else self.target_digits + 28


@dataclass(frozen=True)
class EigenInterval:
    """Certified enclosure [lower, upper] of the fundamental eigenvalue."""

    sides: int
    lower: mpf
    upper: mpf
    target_digits: int
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError("lower bound exceeds upper bound")

    def _own_bits(self) -> int:
        # width of the stored mantissas, independent of the ambient mpmath
        # precision, so derived quantities never silently lose digits
        bits = 53
        for x in (self.lower, self.upper):
            if isinstance(x, mpf) and x:
                bits = max(bits, x._mpf_[3])
        return bits + 8

    @property
    def mean(self) -> mpf:
        with mp.workprec(self._own_bits()):
            return (self.lower + self.upper) / 2

    @property
    def gap(self) -> mpf:
        """Relative width (upper - lower)/mean."""
        with mp.workprec(self._own_bits()):
            return (self.upper - self.lower) / ((self.lower + self.upper) / 2)

    def __contains__(self, value) -> bool:
        probe = value if isinstance(value, mpf) else mpf(value)
        return bool(self.lower <= probe <= self.upper)


class _Engine:
    """All-mpfr MPS engine for one polygon at one binary precision."""

    def __init__(self, sides: int, bits: int, k_center: int, k_corner: int):
        self.sides = sides
        self.bits = bits
        self.k_center = k_center
        self.k_corner = k_corner
        s = sides
        with work_ctx(bits + 20):
            pi = gmpy2.const_pi()
            self.pi = pi
            self.circum = gmpy2.sqrt(2 * pi / (s * gmpy2.sin(2 * pi / s)))
            self.apothem = self.circum * gmpy2.cos(pi / s)
            self.half_edge = self.apothem * gmpy2.tan(pi / s)
            self.vertices = []
            self.edge_dirs = []  # unit vector from vertex v toward vertex v+1
            for v in range(s):
                a = (2 * v + 1) * pi / s
                self.vertices.append((self.circum * gmpy2.cos(a), self.circum * gmpy2.sin(a)))
            for v in range(s):
                vx, vy = self.vertices[v]
                wx, wy = self.vertices[(v + 1) % s]
                ex, ey = wx - vx, wy - vy
                n = gmpy2.sqrt(ex * ex + ey * ey)
                self.edge_dirs.append((ex / n, ey / n))
        if k_corner:
            nu0 = Fraction(s, s - 2)
            dnu = Fraction(2 * s, s - 2)
            # integer orders nu_j give entire bundles already spanned by the
            # center expansion (Graf re-expansion); keeping them makes the
            # collocation matrix singular, so only fractional orders are used
            keep = []
            j = 0
            while len(keep) < k_corner and j < 500:
                if (nu0 + j * dnu).denominator != 1:
                    keep.append(j)
                j += 1
            self.keep = keep
            self.fam = JFamily(nu0, dnu, j, bits)
            self.fam_m1 = JFamily(nu0 - 1, dnu, j, bits)
            self.nus = [nu0 + i * dnu for i in keep]
        else:
            self.fam = self.fam_m1 = None
            self.keep = []
            self.nus = []

    # -- geometry ---------------------------------------------------------

    def edge_points(self, m: int):
        """Chebyshev-clustered points on the half-edge (0, h]."""
        out = []
        with work_ctx(self.bits):
            for i in range(m):
                t = (1 - gmpy2.cos(self.pi * (2 * i + 1) / (2 * m))) / 2
                out.append((self.apothem, self.half_edge * t))
        return out

    # -- basis evaluation -------------------------------------------------

    def row(self, rt_lam, x, y, derivative: bool = False):
        """Basis values at (x, y); optionally also d/dy values.

        Returns vals (list of K entries) or (vals, dvals) when derivative.
        """
        s = self.sides
        vals = []
        dvals = [] if derivative else None
        r2 = x * x + y * y
        r = gmpy2.sqrt(r2)
        theta = gmpy2.atan2(y, x)
        xr = rt_lam * r
        for k in range(self.k_center):
            n = k * s
            jn = gmpy2.jn(n, xr)
            c = gmpy2.cos(n * theta)
            vals.append(jn * c)
            if derivative:
                if gmpy2.is_zero(r):
                    dvals.append(gmpy2.mpfr(0))
                    continue
                jprime = -gmpy2.jn(1, xr) if n == 0 else gmpy2.jn(n - 1, xr) - n / xr * jn
                # d/dy of J_n(rt r) cos(n th)
                dv = rt_lam * jprime * (y / r) * c - jn * n * gmpy2.sin(n * theta) * (x / r2)
                dvals.append(dv)
        if self.k_corner:
            nkeep = len(self.keep)
            acc = [gmpy2.mpfr(0)] * nkeep
            dacc = [gmpy2.mpfr(0)] * nkeep if derivative else None
            for v in range(s):
                vx, vy = self.vertices[v]
                ex, ey = self.edge_dirs[v]
                ux, uy = x - vx, y - vy
                rho2 = ux * ux + uy * uy
                rho = gmpy2.sqrt(rho2)
                dot = ux * ex + uy * ey
                cross = ux * -ey + uy * ex
                phi = gmpy2.atan2(abs(cross), dot)  # fold onto the interior side
                sign = -1 if cross < 0 else 1
                xv = rt_lam * rho
                js = self.fam.eval_all(xv)
                jm = self.fam_m1.eval_all(xv) if derivative else None
                for idx, j in enumerate(self.keep):
                    nu_m = self.fam._nu_m[j]
                    sphi = gmpy2.sin(nu_m * phi)
                    acc[idx] += js[j] * sphi
                    if derivative:
                        if gmpy2.is_zero(rho):
                            continue
                        jp = jm[j] - nu_m / xv * js[j]
                        drho_dy = uy / rho
                        # phi = atan2(|cross|, dot); d phi/dy in the folded frame
                        dphi_dy = sign * (dot * ex - cross * ey) / rho2
                        cphi = gmpy2.cos(nu_m * phi)
                        dacc[idx] += rt_lam * jp * drho_dy * sphi + js[j] * nu_m * cphi * dphi_dy
            vals.extend(acc)
            if derivative:
                dvals.extend(dacc)
        return (vals, dvals) if derivative else vals

    # -- least squares ----------------------------------------------------

    def system(self, lam, m: int):
        """Scaled collocation system and its column scaling."""
        rt = gmpy2.sqrt(lam)
        pts = self.edge_points(m)
        rows = [self.row(rt, x, y) for (x, y) in pts]
        center = self.row(rt, gmpy2.mpfr(0), gmpy2.mpfr(0))
        k = len(center)
        scales = []
        for jcol in range(k):
            mx = abs(center[jcol])
            for r_ in rows:
                a = abs(r_[jcol])
                if a > mx:
                    mx = a
            e = gmpy2.get_exp(mx) if not gmpy2.is_zero(mx) else 0
            scales.append(e - 1)
        for r_ in rows + [center]:
            for jcol in range(k):
                r_[jcol] = gmpy2.div_2exp(r_[jcol], scales[jcol]) if scales[jcol] >= 0 else gmpy2.mul_2exp(r_[jcol], -scales[jcol])
        return rows, center, scales, pts

    def defect(self, lam, m: int):
        """(rms boundary residual, scaled coefficients) at trial lam."""
        rows, center, scales, _ = self.system(lam, m)
        full = rows + [center]
        rhs = [gmpy2.mpfr(0)] * len(rows) + [gmpy2.mpfr(1)]
        coeffs, rnorm, _ = kernel.lstsq(full, rhs)
        resid2 = gmpy2.mpfr(0)
        for r_ in rows:
            s = gmpy2.mpfr(0)
            for j, c in enumerate(coeffs):
                s = gmpy2.fma(r_[j], c, s)
            resid2 = gmpy2.fma(s, s, resid2)
        rms = gmpy2.sqrt(resid2 / len(rows))
        return rms, coeffs, scales

    # -- lambda search ----------------------------------------------------

    def search(self, lam0, h0, m: int, tol_rel, max_rounds: int = 60):
        """Successive parabolic interpolation on the squared defect."""
        lam = gmpy2.mpfr(lam0)
        h = gmpy2.mpfr(h0)
        evals = 0

        def d2(l):
            nonlocal evals
            evals += 1
            d, _, _ = self.defect(l, m)
            return d * d

        y0 = d2(lam)
        for _ in range(max_rounds):
            ym = d2(lam - h)
            yp = d2(lam + h)
            # walk the window until the minimum is interior
            walks = 0
            while not (y0 <= ym and y0 <= yp) and walks < 40:
                if ym < yp:
                    lam, y0 = lam - h, ym
                else:
                    lam, y0 = lam + h, yp
                ym = d2(lam - h)
                yp = d2(lam + h)
                walks += 1
            denom = ym - 2 * y0 + yp
            if denom <= 0:
                h = h / 4
                continue
            shift = (ym - yp) / denom * h / 2
            lam_new = lam + shift
            y_new = d2(lam_new)
            if y_new < y0:
                lam, y0 = lam_new, y_new
            if abs(shift) < tol_rel * lam:
                break
            # the parabola vertex is exact for a quadratic; shrink fast
            h = max(abs(shift) / 2, h * gmpy2.mpfr("1e-4"))
            if h < tol_rel * lam / 4:
                break
        else:
            raise ConvergenceError(f"eigenvalue search for S={self.sides} did not converge")
        return lam, gmpy2.sqrt(y0), evals

    # -- certification ----------------------------------------------------

    def boundary_sup(self, lam, coeffs, scales, n_dense: int):
        """Safety-padded bound on sup |Psi| over the boundary."""
        rt = gmpy2.sqrt(lam)
        pts = self.edge_points(n_dense)
        sup_v = gmpy2.mpfr(0)
        sup_d = gmpy2.mpfr(0)
        for (x, y) in pts:
            vals, dvals = self.row(rt, x, y, derivative=True)
            g = gmpy2.mpfr(0)
            dg = gmpy2.mpfr(0)
            for j, c in enumerate(coeffs):
                vj = gmpy2.div_2exp(vals[j], scales[j]) if scales[j] >= 0 else gmpy2.mul_2exp(vals[j], -scales[j])
                dj = gmpy2.div_2exp(dvals[j], scales[j]) if scales[j] >= 0 else gmpy2.mul_2exp(dvals[j], -scales[j])
                g = gmpy2.fma(vj, c, g)
                dg = gmpy2.fma(dj, c, dg)
            if abs(g) > sup_v:
                sup_v = abs(g)
            if abs(dg) > sup_d:
                sup_d = abs(dg)
        # max Chebyshev spacing ~ pi*h/n_dense; fill-in = spacing/2 * sup|g'|
        spacing = self.pi * self.half_edge / n_dense
        return sup_v + SUP_SAFETY * spacing / 2 * sup_d

    def norm_lower(self, lam, coeffs, scales, n_gl: int = 24):
        """Lower bound on ||Psi||_L2(polygon) via sector quadrature.

        Integrates over the triangle (center, edge midpoint, vertex) = 1/(2S)
        of the polygon, at reduced precision (the integrand is O(1) smooth).
        """
        lo_bits = max(100, self.bits // 3)
        eng = _Engine(self.sides, lo_bits, self.k_center, self.k_corner)
        with work_ctx(lo_bits):
            rt = gmpy2.sqrt(to_mpfr(to_mpf(lam)))
            cl = [to_mpfr(to_mpf(c)) for c in coeffs]
            sc = list(scales)
            nodes, weights = kernel.gauss_legendre(n_gl)
            # triangle O-(M=(d,0))-(V=(d,h)): x = d*u, y = h*u*t after the
            # substitution; Jacobian d*h*u
            d, h = eng.apothem, eng.half_edge
            total = gmpy2.mpfr(0)
            for iu in range(n_gl):
                u = (nodes[iu] + 1) / 2
                wu = weights[iu] / 2
                for it in range(n_gl):
                    t = (nodes[it] + 1) / 2
                    wt = weights[it] / 2
                    x = d * u
                    y = h * u * t
                    vals = eng.row(rt, x, y)
                    g = gmpy2.mpfr(0)
                    for j, c in enumerate(cl):
                        vj = gmpy2.div_2exp(vals[j], sc[j]) if sc[j] >= 0 else gmpy2.mul_2exp(vals[j], -sc[j])
                        g = gmpy2.fma(vj, c, g)
                    total += wu * wt * g * g * d * h * u
            total *= 2 * self.sides  # all mirror sectors
            margin = 1 - gmpy2.mpfr(NORM_MARGIN)
            return gmpy2.sqrt(total) * margin

    def certify(self, lam, m: int):
        """Moler-Payne enclosure at trial lam; returns (eta, meta)."""
        _, coeffs, scales = self.defect(lam, m)
        n_dense = max(4 * (self.k_center + self.k_corner), 96)
        sup_b = self.boundary_sup(lam, coeffs, scales, n_dense)
        nrm = self.norm_lower(lam, coeffs, scales)
        eta = gmpy2.sqrt(self.pi) * sup_b / nrm
        return eta, coeffs, scales, sup_b, nrm


def _auto_k_center(sides: int, digits: int, lam_f: float) -> int:
    """Center orders kS with a non-negligible J_{kS}(sqrt(lam) R) at `digits`."""
    r_circ = math.sqrt(2 * math.pi / (sides * math.sin(2 * math.pi / sides)))
    xmax = math.sqrt(lam_f) * r_circ
    k = 1
    while True:
        n = k * sides
        lead = n * math.log10(xmax / 2) - math.lgamma(n + 1) / math.log(10)
        if lead < -(digits + 12) or k > 80:
            return max(k, 2)
        k += 1


def _corner_cap(sides: int, digits: int, lam_f: float) -> int:
    """Largest useful count of fractional corner orders at `digits`.

    An order nu only reduces the boundary defect through its near-vertex
    values J_nu(sqrt(lam) rho), rho <= half-edge; once the leading term
    (sqrt(lam) h/2)^nu / Gamma(nu+1) drops below the working resolution the
    column carries no signal (and far-vertex junk makes it degenerate).
    """
    r_circ = math.sqrt(2 * math.pi / (sides * math.sin(2 * math.pi / sides)))
    h = r_circ * math.cos(math.pi / sides) * math.tan(math.pi / sides)
    t = math.sqrt(lam_f) * h / 2
    nu0 = Fraction(sides, sides - 2)
    dnu = 2 * nu0
    kept = 0
    for j in range(500):
        nu = nu0 + j * dnu
        lead = float(nu) * math.log10(t) - math.lgamma(float(nu) + 1) / math.log(10)
        if lead < -(digits + 5) and float(nu) > 3 * t:
            break
        if nu.denominator != 1:
            kept += 1
    return max(kept, 1)


def solve(S: int, config: MpsConfig | int | None = None) -> EigenInterval:
    """Certified fundamental Dirichlet eigenvalue of the area-pi regular S-gon.

    An int argument is shorthand for MpsConfig(target_digits=S_digits).
    """
    if not isinstance(S, int) or S < 3:
        raise ValueError(f"S must be an integer >= 3, got {S!r}")
    if config is None:
        config = MpsConfig()
    elif isinstance(config, int):
        config = MpsConfig(target_digits=config)
    t0 = time.monotonic()
    target = config.target_digits
    digits = config.working_digits

    lam_guess = predict(S, 8, min(digits, target + 10))
    lam_f = float(lam_guess)
    k_center = _auto_k_center(S, target, lam_f)
    entire = S in (3, 4)  # pi/alpha integral: no corner singularity
    if config.basis_size:
        k_corner = 0 if entire else max(config.basis_size - k_center, 0)
        if entire:
            k_center = config.basis_size
    else:
        k_corner = 0 if entire else min(10 + target // 3, 40)

    history: list[tuple[int, float]] = []
    law = 18.38 / S ** 7.86  # empirical truncation scale of the order-8 guess
    lam0_mp = lam_guess
    h0_rel = max(4 * law, 1e-9)
    result = None
    for refinement in range(config.max_refinements + 1):
        bits = bits_for(digits)
        if not entire:
            k_corner = min(k_corner, _corner_cap(S, digits, lam_f))
        k_total = k_center + k_corner
        m = config.collocation_count or (2 * k_total + 8)
        m = max(m, 2 * k_total)
        eng = _Engine(S, bits, k_center, k_corner)
        with work_ctx(bits):
            lam0 = to_mpfr(lam0_mp)
            h0 = gmpy2.mpfr(h0_rel) * lam0
            tol = gmpy2.exp10(-(target + 6))
            lam_star, dstar, n_evals = eng.search(lam0, h0, m, tol)
            history.append((k_total, float(dstar)))
            eta, coeffs, scales, sup_b, nrm = eng.certify(lam_star, m)
            if eta >= 1:
                raise CertificationError(
                    f"eta = {float(eta):.3g} >= 1 at S={S}; basis too small to certify"
                )
            lower = lam_star / (1 + eta)
            upper = lam_star / (1 - eta)
            gap = float((upper - lower) / lam_star)
            # a-priori bounds: lam_disk < lam(S) <= lam(3) = 4 pi / sqrt 3
            lam_disk = to_mpfr(lambda_circle(digits))
            tri = 4 * eng.pi / gmpy2.sqrt(gmpy2.mpfr(3))
            if lower < lam_disk:
                lower = lam_disk
            if upper > tri * (1 + gmpy2.exp10(-digits + 2)):
                upper = tri * (1 + gmpy2.exp10(-digits + 2))
            result = (to_mpf(lower), to_mpf(upper))
            lam0_mp = to_mpf(lam_star)
            meta = {
                "k_center": k_center,
                "k_corner": k_corner,
                "collocation": m,
                "working_digits": digits,
                "defect": float(dstar),
                "eta": float(eta),
                "boundary_sup": float(sup_b),
                "norm_lower": float(nrm),
                "search_evals": n_evals,
                "defect_history": list(history),
                "refinements": refinement,
                "coefficients": [to_mpf(c) for c in coeffs],
                "column_scales": list(scales),
            }
        if gap < 10.0 ** (-target):
            break
        if refinement == config.max_refinements:
            raise ConvergenceError(
                f"S={S}: certified gap {gap:.2e} above 10^-{target} after "
                f"{refinement} refinements"
            )
        # size the growth from the measured defect decay per added column
        if len(history) >= 2 and history[-2][1] > history[-1][1] > 0 and history[-1][0] > history[-2][0]:
            dk = history[-1][0] - history[-2][0]
            rate = (math.log10(history[-2][1]) - math.log10(history[-1][1])) / dk
            rate = max(rate, 0.2)
        else:
            rate = 1.0
        missing = math.log10(max(float(eta), 1e-300)) + target + 2
        grow = max(int(math.ceil(missing / rate)) + 2, 4)
        if entire:
            k_center += grow
        elif k_corner + grow > _corner_cap(S, digits, lam_f):
            digits += max(15, 5 * grow // 2)
            k_corner += grow
        else:
            k_corner += grow
        h0_rel = 10.0 ** (-(target // 2))

    meta["wall_time"] = time.monotonic() - t0
    with mp.workdps(digits):
        return EigenInterval(
            sides=S,
            lower=result[0],
            upper=result[1],
            target_digits=target,
            meta=meta,
        )


# ---------------------------------------------------------------------------
# Public helpers on the center expansion (mpmath API)
# ---------------------------------------------------------------------------

def trial_function(S: int, lam, coeffs, point, prec: int = 30):
    """Evaluate sum_k c_k J_{kS}(sqrt(lam) r) cos(kS theta) at (x, y)."""
    _check_prec(prec)
    bits = bits_for(prec + 10)
    with work_ctx(bits):
        # to_mpfr reads mpf payloads directly; wrapping in mpf() would
        # re-round high-precision inputs to the ambient mpmath precision.
        rt = gmpy2.sqrt(to_mpfr(lam))
        x, y = (to_mpfr(point[0]), to_mpfr(point[1]))
        r = gmpy2.sqrt(x * x + y * y)
        th = gmpy2.atan2(y, x)
        total = gmpy2.mpfr(0)
        for k, c in enumerate(coeffs):
            n = k * S
            total = gmpy2.fma(gmpy2.jn(n, rt * r) * gmpy2.cos(n * th), to_mpfr(c), total)
    with mp.workdps(prec):
        return +to_mpf(total)


def boundary_defect(S: int, lam, coeffs, samples: int = 128, prec: int = 30):
    """Safety-padded sup bound of the center-expansion trace on the boundary."""
    _check_prec(prec)
    if samples < 8:
        raise ValueError("need at least 8 boundary samples")
    bits = bits_for(prec + 10)
    eng = _Engine(S, bits, len(coeffs), 0)
    with work_ctx(bits):
        lam_g = to_mpfr(lam)
        cl = [to_mpfr(c) for c in coeffs]
        sup = eng.boundary_sup(lam_g, cl, [0] * len(cl), samples)
    with mp.workdps(prec):
        return +to_mpf(sup)


def certify(S: int, lam, coeffs, prec: int = 30) -> EigenInterval:
    """Moler-Payne enclosure from an explicit center-expansion trial pair."""
    _check_prec(prec)
    bits = bits_for(prec + 10)
    eng = _Engine(S, bits, len(coeffs), 0)
    with work_ctx(bits):
        lam_g = to_mpfr(lam)
        cl = [to_mpfr(c) for c in coeffs]
        zero_scales = [0] * len(cl)
        n_dense = max(4 * len(cl), 96)
        sup_b = eng.boundary_sup(lam_g, cl, zero_scales, n_dense)
        nrm = eng.norm_lower(lam_g, cl, zero_scales)
        eta = gmpy2.sqrt(eng.pi) * sup_b / nrm
        if eta >= 1:
            raise CertificationError(f"eta = {float(eta):.3g} >= 1; trial pair too rough")
        lower, upper = lam_g / (1 + eta), lam_g / (1 - eta)
    with mp.workdps(prec):
        return EigenInterval(
            sides=S, lower=to_mpf(lower), upper=to_mpf(upper),
            target_digits=max(1, int(-mp.log10(to_mpf(upper - lower) / to_mpf(lower)))),
            meta={"eta": float(to_mpf(eta)), "sup_boundary": float(to_mpf(sup_b))},
        )
