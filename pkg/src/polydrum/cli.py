"""Command-line front end and batch persistence.

Subcommands: solve (build/extend an eigenvalue table file), fit (four-pass
coefficient regression), relation (integer-relation mining), converge
(coefficient growth fit and convergence radius), predict (series
evaluation), check-error (empirical truncation-error power law).

Every flag maps 1:1 to a RunConfig key; a flat key=value file supplies the
same settings via --config. Unknown keys are rejected, every key has a
default, and explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys

from mpmath import mp, mpf

from . import convergence, eigensolver, intrel, seriesfit, tablefile
from .errors import PolydrumError
from .specfun import known_coefficient, lambda_circle, predict

# ---------------------------------------------------------------------------
# RunConfig
# ---------------------------------------------------------------------------

#: key -> (type, default).  0 / -1 / "" mean "derive from context" where noted.
CONFIG_KEYS = {
    "table": (str, "eigentable.txt"),   # eigenvalue table file path
    "s_min": (int, 3),                  # solve: first polygon
    "s_max": (int, 20),                 # solve: last polygon
    "digits": (int, 30),                # solve: certified digits per row
    "digit_cap": (int, 30),             # solve: refuse digits above this cap
    "jobs": (int, 1),                   # solve: worker processes
    "force": (bool, False),             # lift desk guardrails
    "fit_s_min": (int, 13),             # fit: smallest S used in regression
    "fit_s_max": (int, 60),             # fit: largest S used in regression
    "max_order": (int, 24),             # fit: highest coefficient index
    "prec": (int, 0),                   # fit/predict: working digits (0 = auto)
    "out": (str, ""),                   # fit: write "mu value" lines here
    "input": (str, ""),                 # relation/converge: coefficient file
    "mu": (int, 0),                     # relation: single order
    "value": (str, ""),                 # relation: single coefficient string
    "p": (int, 0),                      # relation: lattice rounding power (0 = auto)
    "max_lambda_power": (int, -1),      # relation: ansatz cap (-1 = auto)
    "mu_lo": (int, 0),                  # converge: fit window start (0 = auto)
    "mu_hi": (int, 0),                  # converge: fit window end (0 = auto)
    "sigma_k": (int, 6),                # converge: half-width multiplier
    "plot": (str, ""),                  # converge: plot-data output path
    "order": (int, 8),                  # predict/check-error: truncation order
    "display_digits": (int, 18),        # predict: significant digits printed
    "err_s_min": (int, 5),              # check-error: window start
    "err_s_max": (int, 40),             # check-error: window end
}

#: desk guardrails (DESIGN: refuse bigger jobs without force)
HARD_DIGIT_LIMIT = 40
HARD_SIDE_LIMIT = 64

_BOOL_WORDS = {"true": True, "yes": True, "1": True,
               "false": False, "no": False, "0": False}


def _cast(key: str, raw: str):
    typ, _ = CONFIG_KEYS[key]
    raw = raw.strip()
    if typ is bool:
        low = raw.lower()
        if low not in _BOOL_WORDS:
            raise ValueError(f"config key {key!r}: cannot read boolean from {raw!r}")
        return _BOOL_WORDS[low]
    return typ(raw)


def load_run_config(path) -> dict:
    """Parse a flat key=value file.  Unknown keys are an error."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key=value, got {line!r}")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(
                    f"{path}:{ln}: unknown config key {key!r} "
                    f"(valid: {', '.join(sorted(CONFIG_KEYS))})")
            out[key] = _cast(key, raw)
    return out


def resolve_config(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    cfg = {k: d for k, (_, d) in CONFIG_KEYS.items()}
    if getattr(args, "config", None):
        cfg.update(load_run_config(args.config))
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _read_coeff_file(path):
    """Lines "mu value [digits]"; '#' starts a comment.  Returns
    [(mu, value_string, digits_or_None), ...] in file order."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{ln}: expected 'mu value [digits]'")
            digits = float(parts[2]) if len(parts) == 3 else None
            rows.append((int(parts[0]), parts[1], digits))
    return rows


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _solve_one(sides: int, digits: int) -> str:
    """Worker: certify one polygon, return a rendered one-row table."""
    interval = eigensolver.solve(sides, eigensolver.MpsConfig(target_digits=digits))
    mini = tablefile.EigenTable(digits=digits)
    mini.add_interval(interval)
    return mini.render()


def cmd_solve(cfg, stdout) -> int:
    digits, s_lo, s_hi = cfg["digits"], cfg["s_min"], cfg["s_max"]
    if s_lo < 3 or s_hi < s_lo:
        print(f"error: bad S range {s_lo}..{s_hi}", file=sys.stderr)
        return 2
    if not cfg["force"]:
        cap = min(cfg["digit_cap"], HARD_DIGIT_LIMIT)
        if digits > cap:
            print(f"error: digits={digits} above desk cap {cap}; pass --force to override",
                  file=sys.stderr)
            return 2
        if s_hi > HARD_SIDE_LIMIT:
            print(f"error: s_max={s_hi} above desk cap {HARD_SIDE_LIMIT}; "
                  "pass --force to override", file=sys.stderr)
            return 2
    path = cfg["table"]
    if os.path.exists(path):
        table = tablefile.load(path)
        if table.digits != digits:
            print(f"error: {path} holds {table.digits}-digit rows, requested {digits}",
                  file=sys.stderr)
            return 2
    else:
        table = tablefile.EigenTable(digits=digits)

    todo = [s for s in range(s_lo, s_hi + 1) if s not in table.sides()]
    for s in sorted(set(range(s_lo, s_hi + 1)) - set(todo)):
        print(f"S={s} cached", file=stdout)

    failures = 0

    def record(rendered: str):
        nonlocal table
        table = tablefile.merge(table, tablefile.parse(rendered))
        table.save(path)

    jobs = max(1, cfg["jobs"])
    if jobs == 1 or len(todo) <= 1:
        for s in todo:
            try:
                record(_solve_one(s, digits))
                print(f"S={s} gap={mp.nstr(table.gap(s), 3)}", file=stdout)
            except PolydrumError as exc:
                failures += 1
                print(f"S={s} failed: {exc}", file=sys.stderr)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_solve_one, s, digits): s for s in todo}
            for fut in concurrent.futures.as_completed(futures):
                s = futures[fut]
                try:
                    record(fut.result())
                    print(f"S={s} gap={mp.nstr(table.gap(s), 3)}", file=stdout)
                except PolydrumError as exc:
                    failures += 1
                    print(f"S={s} failed: {exc}", file=sys.stderr)
    print(f"table {path}: {len(table.sides())} rows at {table.digits} digits",
          file=stdout)
    return 3 if failures else 0


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

#: orders whose closed forms are confirmed between passes, keyed by pass id
_PROMOTIONS = {1: (3,), 2: (5, 6), 3: (7, 8)}
#: Pass-1 orders expected to vanish
_NEAR_ZERO = (1, 2, 4)


def cmd_fit(cfg, stdout) -> int:
    table = tablefile.load(cfg["table"])
    fit_cfg = seriesfit.FitConfig(
        s_min=cfg["fit_s_min"], s_max=cfg["fit_s_max"],
        max_order=cfg["max_order"], prec=cfg["prec"] or None)
    usable = [s for s in table.sides() if fit_cfg.s_min <= s <= fit_cfg.s_max]
    print(f"# table {cfg['table']}: {len(table.sides())} rows at {table.digits} digits; "
          f"fit window S={fit_cfg.s_min}..{fit_cfg.s_max} uses {len(usable)} rows; "
          f"max order {fit_cfg.max_order}; working digits "
          f"{fit_cfg.working_prec(table.digits)}", file=stdout)

    results = {}
    for spec in seriesfit.standard_passes(fit_cfg.max_order):
        estimates = seriesfit.run_pass(table, spec, fit_cfg)
        results[spec.pass_id] = estimates
        subtracted = ",".join(str(m) for m in spec.subtract) or "none"
        print(f"# pass {spec.pass_id}: scale S^{spec.exponent}, "
              f"known orders subtracted: {subtracted}", file=stdout)
        for est in estimates:
            if est.digits > 0:
                print(seriesfit.report(est), file=stdout)
            else:
                print(f"C_{est.order} unresolved {{{est.digits:.1f}}}", file=stdout)
        if spec.pass_id == 1:
            for est in estimates:
                if est.order in _NEAR_ZERO:
                    print(f"# |C_{est.order}| = {mp.nstr(abs(est.mean), 3)} (near zero)",
                          file=stdout)
        for order in _PROMOTIONS.get(spec.pass_id, ()):
            est = next((e for e in estimates if e.order == order), None)
            if est is None:
                continue
            ref = known_coefficient(order, fit_cfg.working_prec(table.digits))
            agree = seriesfit.verify_candidate(est, ref.value)
            a, b, c, d = ref.closed_form
            print(f"# C_{order} agrees with closed form "
                  f"(a,b,c,d)={ref.closed_form} zeta={ref.zeta_args} "
                  f"to {agree} digits", file=stdout)

    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            fh.write("# mu value digits\n")
            for est in results[4]:
                if est.digits <= 0:
                    continue
                sig = max(3, min(int(round(est.digits)) + 1, 40))
                fh.write(f"{est.order} {mp.nstr(est.mean, sig)} {est.digits:.1f}\n")
        print(f"# pass-4 coefficients written to {cfg['out']}", file=stdout)
    return 0


# ---------------------------------------------------------------------------
# relation
# ---------------------------------------------------------------------------

def cmd_relation(cfg, stdout) -> int:
    if cfg["input"]:
        entries = _read_coeff_file(cfg["input"])
    elif cfg["mu"] and cfg["value"]:
        entries = [(cfg["mu"], cfg["value"], None)]
    else:
        print("error: relation needs --input FILE or --mu N --value C", file=sys.stderr)
        return 2
    cap = cfg["max_lambda_power"]
    for mu, value, digits in entries:
        terms = intrel.ansatz_for_order(mu, None if cap < 0 else cap)
        if not terms:
            print(f"C_{mu}: empty ansatz (no odd-zeta products of weight {mu})",
                  file=stdout)
            continue
        problem = intrel.make_problem(value, digits=digits, terms=terms,
                                      p=cfg["p"] or None)
        relation = intrel.find_relation(problem)
        line = intrel.report_line(mu, problem, relation)
        if relation.accepted:
            print(line, file=stdout)
            kc = intrel.relation_to_coefficient(relation, problem, mu)
            print(f"# C_{mu} closed form: (a,b,c,d)={kc.closed_form} "
                  f"zeta={kc.zeta_args}", file=stdout)
        else:
            print(f"{line} rejected", file=stdout)
    return 0


# ---------------------------------------------------------------------------
# converge
# ---------------------------------------------------------------------------

def cmd_converge(cfg, stdout) -> int:
    if not cfg["input"]:
        print("error: converge needs --input FILE with 'mu value' lines", file=sys.stderr)
        return 2
    with mp.workdps(40):
        coeffs = [(mu, mpf(value)) for mu, value, _ in _read_coeff_file(cfg["input"])]
    top = max(mu for mu, _ in coeffs)
    max_order = cfg["max_order"] if cfg["max_order"] != CONFIG_KEYS["max_order"][1] else top
    guard_hi = max_order - 8
    mu_hi = cfg["mu_hi"] or guard_hi
    if mu_hi > guard_hi:
        print(f"error: fit window must end at mu={guard_hi} or earlier "
              f"(8 below max order {max_order}); requested {mu_hi}", file=sys.stderr)
        return 2
    mu_lo = cfg["mu_lo"] or min(10, mu_hi - 6)
    fit = convergence.growth_fit(coeffs, mu_lo, mu_hi)
    crit = convergence.critical_s(fit, k=cfg["sigma_k"])
    start = convergence.sign_pattern([(m, v) for m, v in coeffs if m <= mu_hi])
    print(f"# growth fit ln|C_mu| = a mu + b (1 - exp(-c mu)), "
          f"window mu={mu_lo}..{mu_hi}", file=stdout)
    print(f"a = {fit.a:.6f} +/- {fit.sigma_a:.6f}", file=stdout)
    print(f"b = {fit.b:.6f} +/- {fit.sigma_b:.6f}", file=stdout)
    print(f"c = {fit.c:.6f} +/- {fit.sigma_c:.6f}", file=stdout)
    print(f"S_cr = {crit.point:.4f}", file=stdout)
    print(f"S_cr {cfg['sigma_k']}-sigma interval = "
          f"[{crit.interval[0]:.4f}, {crit.interval[1]:.4f}]", file=stdout)
    print(f"signs alternate as (-1)^mu from mu = {start}", file=stdout)
    if cfg["plot"]:
        with open(cfg["plot"], "w", encoding="utf-8") as fh:
            fh.write(convergence.plot_data(coeffs, fit))
        print(f"# plot data written to {cfg['plot']}", file=stdout)
    return 0


# ---------------------------------------------------------------------------
# predict
# ---------------------------------------------------------------------------

def cmd_predict(cfg, args, stdout) -> int:
    sides_txt = args.S
    order = cfg["order"]
    prec = cfg["prec"] or 30
    show = cfg["display_digits"]
    if sides_txt.lower() in ("inf", "infinity"):
        value = lambda_circle(prec)
        label = "S=inf"
    else:
        sides = int(sides_txt)
        value = predict(sides, order, prec=prec)
        label = f"S={sides}"
    print(f"# lambda_hat[{order}]({label}), truncated (not rounded) "
          f"at {show} significant digits", file=stdout)
    print(tablefile.truncate_decimal(value, show) + "...", file=stdout)
    return 0


# ---------------------------------------------------------------------------
# check-error
# ---------------------------------------------------------------------------

def cmd_check_error(cfg, stdout) -> int:
    table = tablefile.load(cfg["table"])
    order = cfg["order"]
    lo, hi = cfg["err_s_min"], cfg["err_s_max"]
    rows = [s for s in table.sides() if lo <= s <= hi]
    if len(rows) < 3:
        print(f"error: need at least 3 table rows in S={lo}..{hi}", file=sys.stderr)
        return 2
    work = table.digits + 10
    print(f"# relative truncation error of the order-{order} series vs "
          f"certified eigenvalues, S={rows[0]}..{rows[-1]}", file=stdout)
    print("# S delta", file=stdout)
    deltas = []
    with mp.workdps(work):
        for s in rows:
            lam = table.value(s)
            delta = (predict(s, order, prec=work) - lam) / lam
            deltas.append((s, delta))
            print(f"{s} {mp.nstr(delta, 6)}", file=stdout)
        # log-log straight-line fit: ln|delta| = ln|A| - beta ln S
        pts = [(mp.log(s), mp.log(abs(d))) for s, d in deltas if d != 0]
        n = len(pts)
        sx = mp.fsum(x for x, _ in pts)
        sy = mp.fsum(y for _, y in pts)
        sxx = mp.fsum(x * x for x, _ in pts)
        sxy = mp.fsum(x * y for x, y in pts)
        det = n * sxx - sx * sx
        slope = (n * sxy - sx * sy) / det
        inter = (sy * sxx - sx * sxy) / det
        negative = sum(1 for _, d in deltas if d < 0)
        sign = -1 if negative * 2 > len(deltas) else 1
        amplitude = sign * mp.e**inter
        exponent = -slope
    print(f"# fit: delta ~ amplitude / S^exponent", file=stdout)
    print(f"amplitude = {float(amplitude):.4g}", file=stdout)
    print(f"exponent = {float(exponent):.4g}", file=stdout)
    print(f"negative fraction = {negative}/{len(deltas)}", file=stdout)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_keys(sub: argparse.ArgumentParser, keys):
    sub.add_argument("--config", metavar="FILE", help="key=value RunConfig file")
    for key in keys:
        typ, default = CONFIG_KEYS[key]
        flag = "--" + key.replace("_", "-")
        if typ is bool:
            sub.add_argument(flag, dest=key, action="store_true", default=None,
                             help=f"(default {default})")
        else:
            sub.add_argument(flag, dest=key, type=typ, default=None,
                             metavar=key.upper(), help=f"(default {default!r})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polydrum",
        description="Certified polygon Laplacian eigenvalues and their 1/S expansion")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("solve", help="certify eigenvalues into a table file")
    _add_keys(sub, ["table", "s_min", "s_max", "digits", "digit_cap", "jobs", "force"])

    sub = subs.add_parser("fit", help="four-pass coefficient regression")
    _add_keys(sub, ["table", "fit_s_min", "fit_s_max", "max_order", "prec", "out"])

    sub = subs.add_parser("relation", help="integer-relation search for closed forms")
    _add_keys(sub, ["input", "mu", "value", "p", "max_lambda_power"])

    sub = subs.add_parser("converge", help="growth fit and convergence radius")
    _add_keys(sub, ["input", "mu_lo", "mu_hi", "max_order", "sigma_k", "plot"])

    sub = subs.add_parser("predict", help="evaluate the truncated expansion")
    sub.add_argument("S", help="side count, or 'inf' for the circle limit")
    _add_keys(sub, ["order", "prec", "display_digits"])

    sub = subs.add_parser("check-error", help="fit the truncation-error power law")
    _add_keys(sub, ["table", "order", "err_s_min", "err_s_max"])

    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "solve":
            return cmd_solve(cfg, stdout)
        if args.command == "fit":
            return cmd_fit(cfg, stdout)
        if args.command == "relation":
            return cmd_relation(cfg, stdout)
        if args.command == "converge":
            return cmd_converge(cfg, stdout)
        if args.command == "predict":
            return cmd_predict(cfg, args, stdout)
        if args.command == "check-error":
            return cmd_check_error(cfg, stdout)
        raise AssertionError(args.command)
    except (PolydrumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
