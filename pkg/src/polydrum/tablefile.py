"""Flat-file archive of certified eigenvalue intervals.

Format: comment headers then one row per polygon, both whitespace separated::

    # digits=30
    # convention=transcribed
    5 6.0221379320426338782980087100538 6.0221379320426338782980087100547

Rows are sorted by S and parse(render(t)) reproduces the file byte for byte
(values are kept as the original decimal strings). Bounds are rendered with
directed rounding (lower down, upper up) so the enclosure survives the
binary-to-decimal trip.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf

from .geometry import TRANSCRIBED

#: guard digits added to the header precision when rendering interval bounds
RENDER_GUARD = 5


def _mpf_fraction(x: mpf) -> Fraction:
    # x._mpf_ is the exact (sign, mantissa, exponent) payload; converting
    # through mpf(x) would re-round to the ambient working precision.
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _directed_str(x, sig: int, rounding: str) -> str:
    """Plain decimal string of x with `sig` significant digits, directed."""
    if not isinstance(x, mpf):
        with mp.workdps(sig + 10):
            x = mpf(x)
    f = _mpf_fraction(x)
    with decimal.localcontext() as ctx:
        ctx.prec = sig
        ctx.rounding = rounding
        d = decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)
    return format(d, "f")


def lower_str(x, sig: int) -> str:
    return _directed_str(x, sig, decimal.ROUND_FLOOR)


def upper_str(x, sig: int) -> str:
    return _directed_str(x, sig, decimal.ROUND_CEILING)


def truncate_decimal(x, sig: int) -> str:
    """Decimal string truncated (not rounded) to `sig` significant digits."""
    return _directed_str(x, sig, decimal.ROUND_DOWN)


@dataclass
class EigenTable:
    """In-memory view of the archive; bound strings are kept verbatim."""

    digits: int
    convention: str = TRANSCRIBED
    rows: dict[int, tuple[str, str]] = field(default_factory=dict)

    def sides(self) -> list[int]:
        return sorted(self.rows)

    def bounds(self, S: int) -> tuple[mpf, mpf]:
        lo, up = self.rows[S]
        with mp.workdps(self.digits + 3 * RENDER_GUARD):
            return mpf(lo), mpf(up)

    def value(self, S: int) -> mpf:
        lo, up = self.bounds(S)
        with mp.workdps(self.digits + 3 * RENDER_GUARD):
            return (lo + up) / 2

    def gap(self, S: int) -> float:
        lo, up = self.bounds(S)
        return float((up - lo) / up)

    def add(self, S: int, lower, upper) -> None:
        """Insert bounds (any mpf-convertible), directed-rounded to strings."""
        if not isinstance(S, int) or S < 3:
            raise ValueError(f"S must be an integer >= 3, got {S!r}")
        sig = self.digits + RENDER_GUARD
        lo = lower_str(lower, sig)
        up = upper_str(upper, sig)
        self.rows[S] = (lo, up)

    def add_interval(self, interval) -> None:
        self.add(interval.sides, interval.lower, interval.upper)

    def render(self) -> str:
        lines = [f"# digits={self.digits}", f"# convention={self.convention}"]
        for s in self.sides():
            lo, up = self.rows[s]
            lines.append(f"{s} {lo} {up}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.render())


def parse(text: str) -> EigenTable:
    digits = None
    convention = TRANSCRIBED
    rows: dict[int, tuple[str, str]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, val = body.partition("=")
                key, val = key.strip(), val.strip()
                if key == "digits":
                    digits = int(val)
                elif key == "convention":
                    convention = val
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"malformed table row: {raw!r}")
        s = int(parts[0])
        if s in rows:
            raise ValueError(f"duplicate row for S={s}")
        rows[s] = (parts[1], parts[2])
    if digits is None:
        raise ValueError("table is missing the '# digits=' header")
    return EigenTable(digits=digits, convention=convention, rows=rows)


def load(path) -> EigenTable:
    with open(path) as fh:
        return parse(fh.read())


def merge(base: EigenTable, extra: EigenTable) -> EigenTable:
    """Union of two tables; on collision the tighter enclosure wins.

    merge(t, t) == t, so re-running a producer is idempotent.
    """
    if base.digits != extra.digits:
        raise ValueError(f"digit mismatch: {base.digits} vs {extra.digits}")
    if base.convention != extra.convention:
        raise ValueError(f"convention mismatch: {base.convention} vs {extra.convention}")
    rows = dict(base.rows)
    for s, (lo, up) in extra.rows.items():
        if s not in rows:
            rows[s] = (lo, up)
            continue
        with mp.workdps(base.digits + 3 * RENDER_GUARD):
            cur_w = mpf(rows[s][1]) - mpf(rows[s][0])
            new_w = mpf(up) - mpf(lo)
            if new_w < cur_w:
                rows[s] = (lo, up)
    return EigenTable(digits=base.digits, convention=base.convention, rows=rows)
