"""Command-line front end: ``idemldpc {construct,search,verify-table,simulate,export}``.

Exit codes: 0 success, 1 usage error, 2 mathematical rejection
(inadmissible coefficient, degenerate code, m not dividing m', failed
table verification).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Sequence, TextIO

import numpy as np

from . import __version__
from .alist import write_alist, write_dense_csv
from .construct import (
    CodeBlueprint,
    ConstructionError,
    binary_distance,
    blueprint_from_poly,
    build_code,
    classify,
    degeneracy_check,
    is_idempotent,
)
from .field import FieldError, poly_to_str, splitting_field
from .ring import RingError, parse_poly
from .search import CANONICAL, FULL, SearchConstraints, SearchError, enumerate_codes, write_csv
from .decode import DecoderConfig, fer_sweep, write_fer_csv, write_fer_dat
from .spectrum import SpectrumError, analyze

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        raise UsageError(f"{self.prog}: {message}")


# config files


def read_config(path: str | Path) -> dict[str, str]:
    """``key = value`` per line; ``#`` starts a comment; keys use flag names."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    actions = {a.dest: a for a in parser._actions}
    defaults: dict[str, object] = {}
    for key, value in values.items():
        action = actions.get(key)
        if action is None or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise UsageError(f"config key {key!r} needs a boolean, got {value!r}")
            defaults[key] = value.lower() in ("true", "1", "yes")
        else:
            defaults[key] = value
    parser.set_defaults(**defaults)


# argument helpers


def parse_leaders(text: str) -> list[tuple[int, int]]:
    """``"5:23,7:0,9"`` -> [(5, 23), (7, 0), (9, 0)]; a bare leader gets coefficient 1."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        s, _, e = item.partition(":")
        try:
            out.append((int(s), int(e) if e else 0))
        except ValueError:
            raise UsageError(f"bad leader term {item!r}; expected LEADER or LEADER:EXPONENT") from None
    if not out:
        raise UsageError("empty leader list")
    return out


def parse_grid(text: str) -> list[float]:
    """``"2.5,3,3.5"`` or inclusive ``"start:stop:step"``."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 10) for i in range(count)]
        grid = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"invalid Eb/N0 grid {text!r}") from None
    if not grid:
        raise UsageError("empty Eb/N0 grid")
    return grid


@contextlib.contextmanager
def _output(path: str | None, stdout: TextIO) -> Iterator[TextIO]:
    if path in (None, "-"):
        yield stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required option(s): {', '.join('--' + m for m in missing)}")


def blueprint_from_args(args: argparse.Namespace) -> CodeBlueprint:
    _require(args, "n", "m")
    if (args.leaders is None) == (args.u is None):
        raise UsageError(f"{args.command}: give exactly one of --leaders/-M and --u")
    if args.leaders is not None:
        return build_code(args.n, args.m, parse_leaders(args.leaders))
    sf = splitting_field(args.n, args.m)
    try:
        u, notes = parse_poly(args.u, args.n, sf.small, lenient=args.lenient)
    except RingError as exc:
        raise UsageError(str(exc)) from None
    bp = blueprint_from_poly(u, sf)
    return CodeBlueprint(bp.sf, bp.u, bp.analysis, bp.girth, bp.spec, tuple(notes))


# subcommands


def construct_report(bp: CodeBlueprint, with_binary: bool = False) -> list[tuple[str, str]]:
    rows = [
        ("code", f"GF({bp.field.size})({bp.n},{bp.k})"),
        ("m'", str(bp.m_prime)),
        ("r", str(bp.r)),
        ("l", str(bp.l)),
        ("p(x)", poly_to_str(bp.sf.p)),
        ("u(x)", bp.u.to_text()),
        ("weight", str(bp.u.weight())),
        ("k", str(bp.k)),
        ("d_min lower", str(bp.d_lower)),
        ("d_min upper", str(bp.d_upper)),
        ("girth", bp.girth.label),
    ]
    if with_binary:
        db = binary_distance(bp)
        rows.append(("d_b", "not computed (m*k > 22)" if db is None else str(db)))
    rows.extend(("note", n) for n in bp.notes)
    return rows


def cmd_construct(args: argparse.Namespace, out: TextIO) -> int:
    bp = blueprint_from_args(args)
    width = 12
    for key, value in construct_report(bp, args.binary_distance):
        out.write(f"{key:<{width}}{value}\n")
    return EXIT_OK


def cmd_search(args: argparse.Namespace, out: TextIO) -> int:
    _require(args, "n", "m", "wmax")
    try:
        constraints = SearchConstraints(args.wmax, args.kmin, args.d, args.allow_4cycles, args.mode)
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out, out) as fh:
        count = write_csv(enumerate_codes(args.n, args.m, constraints, args.workers), fh)
    if args.out not in (None, "-"):
        out.write(f"{count} codes written to {args.out}\n")
    return EXIT_OK


@dataclass
class RowReport:
    code: str
    ok: bool
    flags: list[str]
    computed: dict[str, object]
    problems: list[str] = field(default_factory=list)

    def line(self) -> str:
        c = self.computed
        status = "PASS" if self.ok else "FAIL"
        text = (
            f"{status} {self.code}: k={c.get('k')} bound={c.get('lower')}..{c.get('upper')} "
            f"m'={c.get('m_prime')} r={c.get('r')} l={c.get('l')} girth={c.get('girth')}"
        )
        if self.flags:
            text += f" flags={','.join(self.flags)}"
        if self.problems:
            text += " problems: " + "; ".join(self.problems)
        return text


def _parse_bound(text: str) -> tuple[str, int]:
    text = str(text).replace(" ", "")
    if text.startswith(">="):
        return ">=", int(text[2:])
    return "=", int(text)


def verify_row(row: dict) -> RowReport:
    """Recompute one published example and compare against its printed parameters."""
    problems: list[str] = []
    n, m = int(row["n"]), int(row["m"])
    sf = splitting_field(n, m)
    u, flags = parse_poly(row["u"], n, sf.small, lenient=True)
    flags = list(flags)
    computed: dict[str, object] = {"m_prime": sf.m_prime, "r": sf.r, "l": sf.l}
    for key in ("m_prime", "r", "l"):
        printed = row.get(key)
        if printed is None:
            continue
        if not isinstance(printed, int):
            flags.append(f"{key.replace('_', '-')}-not-numeric")
        elif printed != computed[key]:
            problems.append(f"{key}: printed {printed}, computed {computed[key]}")
    if not is_idempotent(u):
        problems.append("u(x) is not idempotent")
    if u.is_zero() or degeneracy_check(u):
        problems.append("degenerate support")
    if not problems:
        an = analyze(u, sf)
        girth = classify(u)
        computed.update(k=an.k, lower=an.lower, upper=an.upper, girth=girth.label, weight=u.weight())
        if an.k != row["k"]:
            problems.append(f"k: printed {row['k']}, computed {an.k}")
        kind, value = _parse_bound(row["d_min"])
        if kind == "=" and not an.lower == value <= an.upper:
            problems.append(f"d_min {value} outside computed bounds [{an.lower}, {an.upper}]")
        if kind == ">=" and an.lower < value:
            problems.append(f"lower bound {an.lower} below printed {value}")
        claim = row.get("girth")
        if claim == "4-cycle-free" and not girth.four_cycle_free:
            problems.append(f"expected 4-cycle-free, got {girth.label}")
        if claim == "has-4-cycles" and girth.four_cycle_free:
            problems.append(f"expected 4-cycles, got {girth.label}")
    expected = sorted(row.get("expected_flags", []))
    if sorted(flags) != expected:
        problems.append(f"flags {sorted(flags)} differ from expected {expected}")
    return RowReport(row["code"], not problems, flags, computed, problems)


def load_fixture(path: str | None) -> dict:
    try:
        if path is None:
            text = resources.files("idemldpc").joinpath("data/table1.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
        rows = data["rows"]
        for row in rows + data.get("extra", []):
            for key in ("code", "n", "m", "k", "d_min", "u"):
                if key not in row:
                    raise KeyError(key)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read fixture: {exc!r}") from None
    return data


def cmd_verify_table(args: argparse.Namespace, out: TextIO) -> int:
    data = load_fixture(args.fixture)
    reports = [verify_row(r) for r in data["rows"] + data.get("extra", [])]
    for rep in reports:
        out.write(rep.line() + "\n")
    failed = sum(not r.ok for r in reports)
    out.write(f"{len(reports) - failed}/{len(reports)} rows verified\n")
    return EXIT_OK if not failed else EXIT_MATH


def cmd_simulate(args: argparse.Namespace, out: TextIO) -> int:
    grid = parse_grid(args.ebno)
    bp = blueprint_from_args(args)
    if args.frames < 1 or args.errors < 1 or args.max_iter < 1:
        raise UsageError("--frames, --errors and --max-iter must be positive")
    points = fer_sweep(
        bp, grid, args.frames, args.errors, seed=args.seed,
        config=DecoderConfig(max_iter=args.max_iter), workers=args.workers,
    )
    with _output(args.out, out) as fh:
        write_fer_csv(points, fh)
    if args.dat:
        with open(args.dat, "w") as fh:
            write_fer_dat(points, fh)
    return EXIT_OK


def cmd_export(args: argparse.Namespace, out: TextIO) -> int:
    bp = blueprint_from_args(args)
    writer = {"alist": write_alist, "csv": write_dense_csv}[args.format]
    with _output(args.out, out) as fh:
        writer(bp.H, fh)
    return EXIT_OK


# parser


def _code_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, help="code length (odd)")
    p.add_argument("-m", type=int, help="symbol field GF(2^m)")
    p.add_argument("-M", "--leaders", help="coset leaders with beta-exponents, e.g. 5:23,7:0,9:0")
    p.add_argument("--u", help="u(x) in text form instead of leaders, e.g. 'b23*x^5+x^7'")
    p.add_argument("--lenient", action="store_true", help="accept ',' as a term separator in --u (flagged)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="idemldpc", description="Non-binary cyclic LDPC codes from idempotents.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("--config", help="key=value file supplying defaults for any option")
        p.set_defaults(func=func)
        return p

    p = add("construct", cmd_construct, "build a code and print its parameters")
    _code_options(p)
    p.add_argument("--binary-distance", action="store_true", help="also compute d_b when m*k <= 22")

    p = add("search", cmd_search, "enumerate codes meeting constraints (CSV)")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--wmax", type=int, help="maximum weight of u(x)")
    p.add_argument("--kmin", type=int, default=0, help="minimum dimension")
    p.add_argument("-d", type=int, default=2, help="minimum BCH lower bound")
    p.add_argument("--allow-4cycles", action="store_true")
    p.add_argument("--mode", choices=(FULL, CANONICAL), default=FULL)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")

    p = add("verify-table", cmd_verify_table, "recheck the published code examples")
    p.add_argument("fixture", nargs="?", help="JSON fixture (default: bundled table)")

    p = add("simulate", cmd_simulate, "FER/BER sweep over BPSK-AWGN (CSV)")
    _code_options(p)
    p.add_argument("--ebno", default="2.5,3,3.5", help="grid: a,b,c or start:stop:step (dB)")
    p.add_argument("--frames", type=int, default=100000, help="frame cap per point")
    p.add_argument("--errors", type=int, default=100, help="frame-error target per point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    p.add_argument("--dat", help="also write a whitespace-separated data file")

    p = add("export", cmd_export, "write the parity-check matrix")
    _code_options(p)
    p.add_argument("--format", choices=("alist", "csv"), default="alist")
    p.add_argument("--out", default="-")
    return parser


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            values = read_config(known.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        args = parser.parse_args(argv)  # resolves the subcommand
        if args.command is None:
            raise UsageError("--config needs a subcommand")
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        _apply_config(subparser, values)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parse(list(sys.argv[1:] if argv is None else argv))
        if args.command is None:
            build_parser().print_help(stdout)
            return EXIT_USAGE
        return args.func(args, stdout)
    except (UsageError, RingError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConstructionError, FieldError, SpectrumError) as exc:
        stderr.write(f"rejected: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
