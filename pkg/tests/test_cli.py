"""End-to-end tests of the command-line interface.

Each subcommand is driven through ``main(argv, stdout=...)`` exactly as the
console script would run it; return codes, stdout layout, and the key=value
RunConfig plumbing are all part of the contract under test.
"""

import io
import re
from argparse import Namespace
from pathlib import Path

import mpmath as mp
import pytest
from mpmath import mpf

from polydrum import tablefile
from polydrum.cli import (
    CONFIG_KEYS,
    HARD_DIGIT_LIMIT,
    HARD_SIDE_LIMIT,
    load_run_config,
    main,
    resolve_config,
)

REPO = Path(__file__).resolve().parent.parent
REAL_TABLE = REPO / "data" / "eigentable.txt"

REF_TRIANGLE_75 = (
    "7.2551974569368714023763130305686229291362649923709623022795397415524927245"
)
REF_SQUARE_75 = (
    "6.2831853071795864769252867665590057683943387987502116419498891846156328125"
)

# survey pass-4 outputs whose closed forms the lattice search must recover
COEFF_STRINGS = {
    3: "4.80822761263837714159895264604579996267",
    5: "0.44964098545032430901630041683027",
    6: "44.98497175863112456004906966023",
    7: "-50.53932438813516438303806289079",
    8: "200.87223780187035158705886400",
}

GOLDEN_LINES = [
    "C_3= 4.808 relerr=8.11 e-38 v=[1,-4]",
    "C_5= 0.450 relerr=1.48 e-30 v=[1,-12,2]",
    "C_6=44.985 relerr=1.70 e-29 v=[1,-8,-4]",
    "C_7=-50.539 relerr=4.53 e-30 v=[2,-72,24,1]",
    "C_8=200.872 relerr=9.46 e-28 v=[1,-48,-8,-2]",
]

# continuation coefficients (orders 9..38) as printed by the full-scale run
CONTINUATION = {
    9: "-317.77048507393880222654502267", 10: "+1816.7620988762759616659826",
    11: "-6016.33571769034682922143", 12: "+25200.97379293246467587",
    13: "-93352.057545638041207", 14: "+395412.696177504392",
    15: "-1718008.2767654300", 16: "+7970543.96349877",
    17: "-38310267.955146", 18: "+192454613.5202",
    19: "-1004632656.0", 20: "+5.447327793e9",
    21: "-3.05943716e10", 22: "+1.7770589e11",
    23: "-1.065749e12", 24: "+6.590391e12",
    25: "-4.19643e13", 26: "+2.7470e14", 27: "-1.8436e15",
    28: "+1.262e16", 29: "-8.702e16", 30: "+5.934e17",
    31: "-3.89e18", 32: "+2.36e19", 33: "-1.27e20", 34: "+5.80e20",
    35: "-2.12e21", 36: "+5.77e21", 37: "-1.03e22", 38: "+8.96e21",
}


def run_cli(*argv):
    buf = io.StringIO()
    rc = main(list(argv), stdout=buf)
    return rc, buf.getvalue()


@pytest.fixture(scope="module")
def coeff_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("converge") / "coef.txt"
    lines = ["# mu value"]
    lines += [f"{mu} {CONTINUATION[mu]}" for mu in sorted(CONTINUATION)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def synth_table(tmp_path_factory):
    """Model-complete 40-digit table: exact order-8 series values."""
    from polydrum.specfun import predict

    path = tmp_path_factory.mktemp("fit") / "synth40.txt"
    tab = tablefile.EigenTable(digits=40)
    with mp.workdps(60):
        for s in range(13, 61):
            v = predict(s, 8, prec=55)
            eps = v * mpf("1e-41")
            tab.add(s, v - eps, v + eps)
    tab.save(str(path))
    return path


class TestRunConfig:
    def test_defaults_cover_every_key(self):
        cfg = resolve_config(Namespace())
        assert set(cfg) == set(CONFIG_KEYS)
        for key, (_, default) in CONFIG_KEYS.items():
            assert cfg[key] == default

    def test_file_then_flags_precedence(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("digits = 15\ns_max = 6  # trailing comment\nforce = yes\n")
        file_only = resolve_config(Namespace(config=str(path)))
        assert file_only["digits"] == 15
        assert file_only["s_max"] == 6
        assert file_only["force"] is True
        flag_wins = resolve_config(Namespace(config=str(path), digits=22))
        assert flag_wins["digits"] == 22
        assert flag_wins["s_max"] == 6

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("digits = 15\nshape = hexagon\n")
        with pytest.raises(ValueError, match=r"run\.cfg:2.*'shape'"):
            load_run_config(path)

    def test_missing_equals_rejected(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("digits 15\n")
        with pytest.raises(ValueError, match="expected key=value"):
            load_run_config(path)

    def test_bool_words(self, tmp_path):
        path = tmp_path / "run.cfg"
        for word, want in (("true", True), ("YES", True), ("1", True),
                           ("false", False), ("No", False), ("0", False)):
            path.write_text(f"force = {word}\n")
            assert load_run_config(path)["force"] is want
        path.write_text("force = maybe\n")
        with pytest.raises(ValueError, match="boolean"):
            load_run_config(path)

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# a comment\n\n   \nmu = 7\n")
        assert load_run_config(path) == {"mu": 7}

    def test_bad_int_rejected_via_main(self, tmp_path, capsys):
        path = tmp_path / "run.cfg"
        path.write_text("digits = twelve\n")
        rc, _ = run_cli("predict", "128", "--config", str(path))
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestPredict:
    def test_default_truncation(self):
        rc, out = run_cli("predict", "128")
        lines = out.splitlines()
        assert rc == 0
        assert "lambda_hat[8](S=128)" in lines[0]
        assert "truncated (not rounded) at 18 significant digits" in lines[0]
        assert lines[1] == "5.78319922243209914..."

    def test_more_digits(self):
        # truncated, not rounded: the next digit of the true value is a 9
        rc, out = run_cli("predict", "128", "--display-digits", "25", "--prec", "40")
        assert rc == 0
        assert out.splitlines()[1] == "5.783199222432099147555292..."

    def test_circle_limit(self):
        rc, out = run_cli("predict", "inf")
        assert rc == 0
        assert "S=inf" in out.splitlines()[0]
        assert out.splitlines()[1] == "5.78318596294678452..."

    def test_config_file_feeds_predict(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("display_digits = 12\nprec = 40\n")
        rc, out = run_cli("predict", "128", "--config", str(path))
        assert rc == 0
        assert out.splitlines()[1] == "5.78319922243..."
        rc, out = run_cli("predict", "128", "--config", str(path),
                          "--display-digits", "20")
        assert out.splitlines()[1] == "5.7831992224320991475..."

    def test_bad_side_count(self, capsys):
        rc, _ = run_cli("predict", "twelve")
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestRelation:
    def test_survey_file_reproduces_golden_lines(self, tmp_path):
        path = tmp_path / "coeffs.txt"
        path.write_text("".join(f"{mu} {v}\n" for mu, v in sorted(COEFF_STRINGS.items())))
        rc, out = run_cli("relation", "--input", str(path))
        assert rc == 0
        printed = out.splitlines()
        for golden in GOLDEN_LINES:
            assert golden in printed
        # each accepted relation is resolved into a closed form
        assert sum(1 for ln in printed if ln.startswith("# C_")) == 5
        assert "# C_3 closed form: (a,b,c,d)=(1, 4, 0, 0) zeta=(3,)" in printed

    def test_single_value_flags(self):
        rc, out = run_cli("relation", "--mu", "3", "--value", COEFF_STRINGS[3])
        assert rc == 0
        assert out.splitlines()[0] == GOLDEN_LINES[0]

    def test_unrelated_value_rejected(self):
        rc, out = run_cli("relation", "--mu", "8",
                          "--value", "200.58715918239860533164265233")
        assert rc == 0
        assert out.splitlines()[0].endswith("rejected")
        assert "closed form" not in out

    def test_order_without_products(self):
        rc, out = run_cli("relation", "--mu", "2", "--value", "0.5")
        assert rc == 0
        assert "empty ansatz" in out

    def test_needs_input_or_value(self, capsys):
        rc, _ = run_cli("relation")
        assert rc == 2
        assert "--input FILE or --mu N --value C" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        rc, _ = run_cli("relation", "--input", "/no/such/file.txt")
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestConverge:
    def test_growth_fit_report(self, coeff_file, tmp_path):
        plot = tmp_path / "plot.txt"
        rc, out = run_cli("converge", "--input", str(coeff_file),
                          "--mu-lo", "10", "--mu-hi", "29", "--plot", str(plot))
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == ("# growth fit ln|C_mu| = a mu + b (1 - exp(-c mu)), "
                            "window mu=10..29")
        assert lines[1] == "a = 2.205096 +/- 0.015251"
        assert lines[2] == "b = -28.622197 +/- 0.662482"
        assert lines[3] == "c = 0.070822 +/- 0.001379"
        assert lines[4] == "S_cr = 9.0711"
        assert lines[5] == "S_cr 6-sigma interval = [8.2779, 9.9403]"
        assert lines[6] == "signs alternate as (-1)^mu from mu = 9"
        plot_lines = plot.read_text().splitlines()
        assert plot_lines[0] == "# mu ln_abs_c fit residual_x50"
        assert len(plot_lines) == 1 + len(CONTINUATION)

    def test_window_guard(self, coeff_file, capsys):
        # the top ten orders of a truncated run are distorted; the window
        # must stop at least 8 indices below the highest fitted order
        rc, _ = run_cli("converge", "--input", str(coeff_file), "--mu-hi", "31")
        assert rc == 2
        err = capsys.readouterr().err
        assert "must end at mu=30 or earlier" in err

    def test_max_order_sets_default_window(self, coeff_file):
        rc, out = run_cli("converge", "--input", str(coeff_file), "--max-order", "28")
        assert rc == 0
        assert "window mu=10..20" in out.splitlines()[0]

    def test_needs_input(self, capsys):
        rc, _ = run_cli("converge")
        assert rc == 2
        assert "needs --input" in capsys.readouterr().err


class TestCheckError:
    def test_power_law_on_certified_table(self):
        rc, out = run_cli("check-error", "--table", str(REAL_TABLE))
        assert rc == 0
        lines = out.splitlines()
        assert lines[0].startswith("# relative truncation error of the order-8")
        assert "S=5..40" in lines[0]
        data = [ln for ln in lines if re.match(r"^\d+ ", ln)]
        assert len(data) == 36
        assert data[0] == "5 3.61825e-5"
        assert "amplitude = 53.16" in lines
        assert "exponent = 8.522" in lines
        assert "negative fraction = 0/36" in lines

    def test_window_needs_three_rows(self, capsys):
        rc, _ = run_cli("check-error", "--table", str(REAL_TABLE),
                        "--err-s-min", "60", "--err-s-max", "61")
        assert rc == 2
        assert "at least 3 table rows" in capsys.readouterr().err


class TestSolveGuardrails:
    def test_default_digit_cap(self, tmp_path, capsys):
        rc, _ = run_cli("solve", "--table", str(tmp_path / "t.txt"), "--digits", "45")
        assert rc == 2
        assert "desk cap 30" in capsys.readouterr().err

    def test_hard_digit_limit(self, tmp_path, capsys):
        # a generous user cap is still clamped to the hard limit
        rc, _ = run_cli("solve", "--table", str(tmp_path / "t.txt"),
                        "--digits", "45", "--digit-cap", "60")
        assert rc == 2
        assert f"desk cap {HARD_DIGIT_LIMIT}" in capsys.readouterr().err

    def test_tighter_user_cap(self, tmp_path, capsys):
        rc, _ = run_cli("solve", "--table", str(tmp_path / "t.txt"),
                        "--digits", "25", "--digit-cap", "20")
        assert rc == 2
        assert "desk cap 20" in capsys.readouterr().err

    def test_side_cap(self, tmp_path, capsys):
        rc, _ = run_cli("solve", "--table", str(tmp_path / "t.txt"),
                        "--s-min", "3", "--s-max", "70", "--digits", "10")
        assert rc == 2
        assert f"desk cap {HARD_SIDE_LIMIT}" in capsys.readouterr().err

    def test_bad_range(self, tmp_path, capsys):
        rc, _ = run_cli("solve", "--table", str(tmp_path / "t.txt"),
                        "--s-min", "5", "--s-max", "4")
        assert rc == 2
        assert "bad S range" in capsys.readouterr().err


@pytest.fixture(scope="module")
def table_path(tmp_path_factory):
    return tmp_path_factory.mktemp("solve") / "smoke.txt"


class TestSolveSmoke:
    def test_builds_table(self, table_path):
        rc, out = run_cli("solve", "--table", str(table_path),
                          "--s-min", "3", "--s-max", "4", "--digits", "15")
        assert rc == 0
        assert re.search(r"^S=3 gap=", out, re.M)
        assert re.search(r"^S=4 gap=", out, re.M)
        assert f"table {table_path}: 2 rows at 15 digits" in out
        tab = tablefile.load(str(table_path))
        assert tab.digits == 15 and tab.sides() == [3, 4]
        with mp.workdps(80):
            lo, hi = tab.bounds(3)
            assert lo <= mpf(REF_TRIANGLE_75) <= hi
            lo, hi = tab.bounds(4)
            assert lo <= mpf(REF_SQUARE_75) <= hi

    def test_rerun_is_cached_and_idempotent(self, table_path):
        before = table_path.read_bytes()
        rc, out = run_cli("solve", "--table", str(table_path),
                          "--s-min", "3", "--s-max", "4", "--digits", "15")
        assert rc == 0
        assert "S=3 cached" in out and "S=4 cached" in out
        assert table_path.read_bytes() == before

    def test_extend_adds_only_new_rows(self, table_path):
        rc, out = run_cli("solve", "--table", str(table_path),
                          "--s-min", "3", "--s-max", "5", "--digits", "15")
        assert rc == 0
        assert "S=3 cached" in out and "S=4 cached" in out
        assert re.search(r"^S=5 gap=", out, re.M)
        assert tablefile.load(str(table_path)).sides() == [3, 4, 5]

    def test_digit_mismatch_refused(self, table_path, capsys):
        rc, _ = run_cli("solve", "--table", str(table_path), "--digits", "20",
                        "--s-min", "3", "--s-max", "4")
        assert rc == 2
        assert "holds 15-digit rows" in capsys.readouterr().err

    def test_force_lifts_digit_cap(self, tmp_path):
        path = tmp_path / "deep.txt"
        rc, out = run_cli("solve", "--table", str(path), "--s-min", "3",
                          "--s-max", "3", "--digits", "45", "--force")
        assert rc == 0
        tab = tablefile.load(str(path))
        with mp.workdps(80):
            lo, hi = tab.bounds(3)
            ref = mpf(REF_TRIANGLE_75)
            assert lo <= ref <= hi
            assert (hi - lo) / ref < mpf("1e-45")

    def test_parallel_jobs(self, tmp_path):
        path = tmp_path / "par.txt"
        rc, _ = run_cli("solve", "--table", str(path), "--s-min", "5",
                        "--s-max", "6", "--digits", "10", "--jobs", "2")
        assert rc == 0
        assert tablefile.load(str(path)).sides() == [5, 6]


class TestFit:
    def test_passes_on_model_complete_table(self, synth_table, tmp_path):
        out_file = tmp_path / "pass4.txt"
        rc, out = run_cli("fit", "--table", str(synth_table),
                          "--max-order", "12", "--out", str(out_file))
        assert rc == 0
        lines = out.splitlines()
        assert "48 rows at 40 digits" in lines[0]
        assert "max order 12" in lines[0]
        assert "# pass 1: scale S^1, known orders subtracted: none" in lines
        assert "# pass 3: scale S^7, known orders subtracted: 3,5,6" in lines
        # the model table is an exact order-8 series: C_3 resolves sharply,
        # the vanishing orders report as near zero, and pass 4 finds nothing
        assert any(ln.startswith("C_3 = 4.80822761263837714") for ln in lines)
        near_zero = [ln for ln in lines if "(near zero)" in ln]
        assert len(near_zero) == 3
        assert all(f"|C_{mu}|" in ln for mu, ln in zip((1, 2, 4), near_zero))
        for mu in (9, 10, 11, 12):
            assert any(ln.startswith(f"C_{mu} unresolved") for ln in lines)
        agreements = {}
        for ln in lines:
            m = re.match(r"# C_(\d+) agrees with closed form .* to (\d+) digits", ln)
            if m:
                agreements[int(m.group(1))] = int(m.group(2))
        assert set(agreements) == {3, 5, 6, 7, 8}
        assert agreements[3] >= 30
        assert all(d >= 25 for d in agreements.values())
        assert out_file.read_text() == "# mu value digits\n"

    def test_missing_table(self, capsys):
        rc, _ = run_cli("fit", "--table", "/no/such/table.txt")
        assert rc == 1
        assert "error:" in capsys.readouterr().err
