"""Behavioral tests for the certified polygon eigensolver.

Covers the public surface: `solve` with its config object, the certified
interval type, and the explicit trial-pair helpers (`trial_function`,
`boundary_defect`, `certify`).  External anchors:

* S = 3 and S = 4 admit closed-form fundamental eigenvalues for the
  area-pi polygon (4*pi/sqrt(3) and 2*pi), frozen below at 80 digits.
* S = 5 and S = 6 are checked against Richardson-extrapolated
  finite-difference values computed with an unrelated discretization.
"""

import mpmath as mp
import pytest
from mpmath import mpf

from polydrum.eigensolver import (
    EigenInterval,
    MpsConfig,
    boundary_defect,
    certify,
    solve,
    trial_function,
)
from polydrum.errors import CertificationError, ConvergenceError

# 80-digit closed forms for the two solvable polygons (area pi).
REF_TRIANGLE_80 = (
    "7.2551974569368714023763130305686229291362649923709623022795397415524927245"
)
REF_SQUARE_80 = (
    "6.2831853071795864769252867665590057683943387987502116419498891846156328125"
)
# Fundamental disk eigenvalue (area pi), the infimum over all S.
LAMBDA_DISK_40 = "5.783185962946784521175995758455807035071"

# Independent finite-difference oracle (5-point Laplacian on three grids,
# Richardson extrapolation; observed spreads below 3e-7).
FD_PENTAGON = 6.0221379390
FD_HEXAGON = 5.9174177884

META_KEYS = {
    "k_center",
    "k_corner",
    "collocation",
    "working_digits",
    "defect",
    "eta",
    "boundary_sup",
    "norm_lower",
    "search_evals",
    "defect_history",
    "refinements",
    "coefficients",
    "column_scales",
    "wall_time",
}


@pytest.fixture(scope="module")
def anchor3():
    return solve(3, 30)


@pytest.fixture(scope="module")
def anchor4():
    return solve(4, 30)


@pytest.fixture(scope="module")
def pent12():
    return solve(5, 12)


@pytest.fixture(scope="module")
def hex12():
    return solve(6, 12)


class TestAnchors:
    def test_triangle_contains_closed_form(self, anchor3):
        with mp.workdps(90):
            ref = mpf(REF_TRIANGLE_80)
        assert ref in anchor3
        assert anchor3.gap < mpf("1e-30")

    def test_square_contains_closed_form(self, anchor4):
        with mp.workdps(90):
            ref = mpf(REF_SQUARE_80)
        assert ref in anchor4
        assert anchor4.gap < mpf("1e-30")

    def test_interval_metadata(self, anchor3, anchor4):
        for iv, sides in ((anchor3, 3), (anchor4, 4)):
            assert iv.sides == sides
            assert iv.target_digits == 30
            assert META_KEYS <= set(iv.meta)
            # the closed-form polygons are solved with the center family only
            assert iv.meta["k_corner"] == 0
            assert iv.meta["k_center"] > 0
            assert iv.meta["working_digits"] == 58
            assert iv.meta["wall_time"] > 0
            assert 0 < float(iv.meta["eta"]) < 1e-30
            assert len(iv.meta["coefficients"]) == len(iv.meta["column_scales"])

    def test_int_shorthand_matches_config(self):
        a = solve(4, 15)
        b = solve(4, MpsConfig(target_digits=15))
        assert a.lower == b.lower and a.upper == b.upper


class TestDihedralPolygons:
    def test_pentagon_matches_fd_oracle(self, pent12):
        assert abs(float(pent12.mean) - FD_PENTAGON) < 1e-5
        assert pent12.gap < mpf("1e-12")
        # pentagon vertex exponents are not integers, so the corner family
        # participates alongside the center expansion
        assert pent12.meta["k_corner"] >= 1

    def test_hexagon_matches_fd_oracle(self, hex12):
        assert abs(float(hex12.mean) - FD_HEXAGON) < 1e-5
        assert hex12.gap < mpf("1e-12")

    def test_eigenvalue_decreases_with_sides(self, anchor4, pent12, hex12):
        # lambda(4) > lambda(5) > lambda(6) > lambda(disk), all at area pi
        with mp.workdps(50):
            disk = mpf(LAMBDA_DISK_40)
        assert pent12.upper < anchor4.lower
        assert hex12.upper < pent12.lower
        assert disk < hex12.lower

    def test_a_priori_window(self, pent12, hex12):
        with mp.workdps(90):
            disk = mpf(LAMBDA_DISK_40)
            tri = mpf(REF_TRIANGLE_80)
        for iv in (pent12, hex12):
            assert disk < iv.lower
            assert iv.upper < tri


class TestRefinement:
    def test_basis_growth_reduces_defect(self):
        iv = solve(4, MpsConfig(target_digits=12, basis_size=3, max_refinements=8))
        assert iv.meta["refinements"] >= 1
        history = iv.meta["defect_history"]
        assert len(history) == iv.meta["refinements"] + 1
        sizes = [k for k, _ in history]
        defects = [d for _, d in history]
        assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes)
        assert all(b < a for a, b in zip(defects, defects[1:]))
        with mp.workdps(80):
            assert 2 * mp.pi in iv

    def test_unmet_gap_raises(self):
        with pytest.raises(ConvergenceError):
            solve(6, MpsConfig(target_digits=12, basis_size=4, max_refinements=0))


class TestConfigValidation:
    def test_target_digits_positive(self):
        with pytest.raises(ValueError):
            MpsConfig(target_digits=0)

    def test_prec_must_cover_target(self):
        with pytest.raises(ValueError):
            MpsConfig(target_digits=30, prec=40)

    def test_working_digits_default_and_override(self):
        assert MpsConfig(target_digits=30).working_digits == 58
        assert MpsConfig(target_digits=12).working_digits == 40
        assert MpsConfig(target_digits=30, prec=60).working_digits == 60

    @pytest.mark.parametrize("bad", [2, 0, -1, 3.5, "seven"])
    def test_invalid_sides_rejected(self, bad):
        with pytest.raises(ValueError):
            solve(bad, 10)


class TestEigenInterval:
    def test_inverted_bounds_rejected(self):
        with pytest.raises(ValueError):
            EigenInterval(sides=4, lower=mpf(2), upper=mpf(1), target_digits=5)

    def test_mean_and_gap_keep_full_precision(self):
        # regression: mean/gap must be computed at the width of the stored
        # mantissas, not at the ambient mpmath precision
        with mp.workdps(50):
            lo = mpf("6.0000000000000000000000000000000000000001")
            up = mpf("6.0000000000000000000000000000000000000003")
        iv = EigenInterval(sides=4, lower=lo, upper=up, target_digits=39)
        mean = iv.mean
        gap = iv.gap
        with mp.workdps(60):
            want_mean = mpf("6.0000000000000000000000000000000000000002")
            assert abs(mean - want_mean) < mpf("1e-45")
            want_gap = (up - lo) / want_mean
            assert abs(gap / want_gap - 1) < mpf("1e-6")

    def test_contains_respects_high_precision_probe(self):
        # regression: an mpf probe must not be re-rounded to ambient
        # precision (which would push a boundary value past the bound)
        with mp.workdps(45):
            lo = mpf("5.99999999999999999999999999999999999990")
            up = mpf("5.99999999999999999999999999999999999999")
            just_above = up + mpf("1e-40")
        iv = EigenInterval(sides=4, lower=lo, upper=up, target_digits=38)
        assert iv.upper in iv
        assert iv.lower in iv
        assert just_above not in iv

    def test_contains_basic_probes(self, anchor4):
        wide = EigenInterval(sides=4, lower=mpf(6), upper=mpf("6.5"), target_digits=1)
        assert 6.2831853 in wide
        assert 5.9 not in wide
        assert 7 not in wide
        # a double-precision approximation of 2*pi misses the true value by
        # ~1e-16, far wider than the certified interval itself
        assert float(anchor4.mean) not in anchor4


class TestTrialHelpers:
    def test_trial_function_single_term(self):
        # one-term expansion is J_0(sqrt(lam) r) regardless of S
        with mp.workdps(40):
            lam = mpf(LAMBDA_DISK_40)
            pt = (mpf("0.3"), mpf(0))
            got = trial_function(4, lam, [mpf(1)], pt, prec=30)
            want = mp.besselj(0, mp.sqrt(lam) * mpf("0.3"))
            assert abs(got - want) < mpf("1e-28")

    def test_trial_function_angular_null(self):
        # second basis function carries cos(S theta); at theta = pi/(2S)
        # the factor vanishes identically
        with mp.workdps(40):
            lam = mpf(LAMBDA_DISK_40)
            th = mp.pi / 8
            pt = (mpf("0.3") * mp.cos(th), mpf("0.3") * mp.sin(th))
            got = trial_function(4, lam, [mpf(0), mpf(1)], pt, prec=30)
            assert abs(got) < mpf("1e-38")

    def test_trial_function_precision_scales(self):
        with mp.workdps(60):
            lam = mpf(REF_SQUARE_80)
            pt = (mpf("0.25"), mpf("0.125"))
            got = trial_function(3, lam, [mpf(1), mpf("-0.5")], pt, prec=50)
            rt = mp.sqrt(lam)
            r = mp.sqrt(pt[0] ** 2 + pt[1] ** 2)
            th = mp.atan2(pt[1], pt[0])
            want = mp.besselj(0, rt * r) - mpf("0.5") * mp.besselj(3, rt * r) * mp.cos(3 * th)
            assert abs(got - want) < mpf("1e-45")

    def test_boundary_defect_disk_mode_on_square(self):
        # J_0(sqrt(lambda_disk) r) vanishes on the inscribed circle, not on
        # the square boundary; the padded sup bound sits near 0.29
        with mp.workdps(40):
            lam = mpf(LAMBDA_DISK_40)
        d64 = boundary_defect(4, lam, [mpf(1)], samples=64, prec=20)
        d512 = boundary_defect(4, lam, [mpf(1)], samples=512, prec=20)
        assert 0.25 < float(d64) < 0.35
        # finer sampling shrinks the fill-in padding
        assert d512 <= d64

    def test_boundary_defect_needs_samples(self):
        with pytest.raises(ValueError):
            boundary_defect(4, mpf(6), [mpf(1)], samples=4)

    def test_certify_rough_trial_still_encloses(self):
        # a deliberately rough trial pair (disk mode on the square) must
        # produce a wide but honest enclosure around an actual eigenvalue
        with mp.workdps(40):
            lam = mpf(LAMBDA_DISK_40)
        iv = certify(4, lam, [mpf(1)], prec=20)
        assert 0.5 < iv.meta["eta"] < 0.6
        with mp.workdps(40):
            assert 2 * mp.pi in iv
        # Rayleigh-style envelope: bounds are lam/(1 +- eta)
        eta = iv.meta["eta"]
        assert abs(float(iv.lower) * (1 + eta) / float(lam) - 1) < 1e-12

    @pytest.mark.parametrize("lam", [11.5, 12.5])
    def test_certify_too_rough_raises(self, lam):
        with pytest.raises(CertificationError):
            certify(4, mpf(lam), [mpf(1)], prec=20)

    def test_certify_round_trip_from_solver(self):
        # regression: feeding a solver trial pair back through the public
        # certify path must keep full precision (mean, lam, and the
        # coefficients were all once re-rounded to ambient precision)
        iv = solve(4, MpsConfig(target_digits=20))
        coeffs = iv.meta["coefficients"]
        scales = iv.meta["column_scales"]
        eff = [mp.ldexp(c, -s) for c, s in zip(coeffs, scales)]
        again = certify(4, iv.mean, eff, prec=20)
        with mp.workdps(80):
            assert 2 * mp.pi in again
            assert (again.upper - again.lower) / again.lower < mpf("1e-25")
