"""Command-line front end: ``flagpush {pushforward,audit,table,certify}``.

Exit codes: 0 success, 1 usage error, 2 input or I/O error, 3 the two
push-forward oracles disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .approx import DegenerateConfigurationError, approx_table, rows_to_certificate
from .audit import run_audit
from .certify import (CertificateError, FiltrationCertificate, check_limit_hypothesis,
                      example_surface_invariants, format_rational, frobenius_scale,
                      gap_check, parse_rational)
from .gysin import (VARIANTS, ConsistencyError, DegreeError, RootContext, UnsupportedInput,
                    coefficient_formula, dd_pushforward, tower_pushforward)
from .parse import PolyParseError, parse_polynomial

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int_list(text: str) -> List[int]:
    """``"3"``, ``"2..5"`` or ``"1,2,5..7"`` to a sorted list without repeats."""
    out = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                if lo > hi:
                    raise UsageError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise UsageError(f"cannot read integer list {text!r}") from None
    if not out:
        raise UsageError(f"empty list {text!r}")
    return sorted(out)


def _single(values: List[int], name: str) -> int:
    if len(values) != 1:
        raise UsageError(f"--{name} needs a single value here")
    return values[0]


def _fmt(x) -> str:
    return format_rational(x)


# -- pushforward ----------------------------------------------------------------

def cmd_pushforward(args) -> Tuple[Dict, int]:
    r = _single(parse_int_list(args.r), "r")
    if r < 2:
        raise UsageError("r must be at least 2")
    if args.poly is None:
        raise UsageError("--poly is required")
    ctx = RootContext(r)
    try:
        ring, f = parse_polynomial(args.poly, r)
    except PolyParseError as exc:
        raise InputError(str(exc)) from None
    if ring == "xi":
        tower_in, roots_in = ctx.xi_to_tower(f), ctx.xi_to_roots(f)
        names = ctx.xi_names()
    elif ring == "tower":
        tower_in, roots_in = f, ctx.tower_to_roots(f)
        names = ctx.tower_names()
    else:
        tower_in, roots_in = ctx.roots_to_tower(f), f
        names = ctx.root_names()
    try:
        tower = tower_pushforward(tower_in, ctx)
        dd = dd_pushforward(roots_in, ctx)
    except UnsupportedInput as exc:
        raise InputError(str(exc)) from None

    def show(cls):
        v = cls.at_zero_c1() if args.zero_c1 else cls.value
        return v.to_text(ctx.base_names())

    report = {
        "command": "pushforward", "seed": args.seed, "r": r,
        "input": f.to_text(names), "alphabet": ring, "zero_c1": args.zero_c1,
        "fiber_codrop": tower.fiber_codrop,
        "tower": show(tower), "dd": show(dd), "oracles_agree": tower == dd,
        "formula": _formula_report(ctx, ring, f),
    }
    if args.dump_poly:
        report["tower_input"] = tower_in.to_text(ctx.tower_names())
        report["roots_input"] = roots_in.to_text(ctx.root_names())
    return report, EXIT_OK if tower == dd else EXIT_CONSISTENCY


def _formula_report(ctx: RootContext, ring: str, f) -> Dict:
    r = ctx.r
    if ring != "xi" or any(any(e[r - 1:]) for e in f.terms):
        return {v: {"rejected": "the coefficient formula takes a polynomial in t1..t%d only" % (r - 1)}
                for v in VARIANTS}
    t_poly = f.map_exponents(r - 1, lambda e: e[:r - 1])
    out = {}
    for v in VARIANTS:
        try:
            res = coefficient_formula(t_poly, r, v)
        except DegreeError as exc:
            out[v] = {"rejected": str(exc)}
            continue
        out[v] = {"value": _fmt(res.value), "shape": res.verdict}
    return out


def _pushforward_text(rep: Dict) -> str:
    lines = [f"r        {rep['r']}",
             f"input    {rep['input']}",
             f"codrop   {rep['fiber_codrop']}"]
    if "tower_input" in rep:
        lines += [f"as h     {rep['tower_input']}", f"as y     {rep['roots_input']}"]
    suffix = "  (e1 = 0)" if rep["zero_c1"] else ""
    lines += [f"tower    {rep['tower']}{suffix}",
              f"dd       {rep['dd']}{suffix}",
              f"oracles  {'agree' if rep['oracles_agree'] else 'DISAGREE'}"]
    for v, res in rep["formula"].items():
        if "rejected" in res:
            lines.append(f"{v}: rejected ({res['rejected']})")
        elif res["shape"] == "constant":
            lines.append(f"{v}: {res['value']}")
        else:
            lines.append(f"{v}: multiple of e1, {res['value']} at e1 = 0")
    lines.append(f"seed     {rep['seed']}")
    return "\n".join(lines) + "\n"


# -- audit ------------------------------------------------------------------------

def cmd_audit(args) -> Tuple[Dict, int]:
    r_values = parse_int_list(args.r)
    if r_values[0] < 2:
        raise UsageError("r must be at least 2")
    report = run_audit(r_values, seed=args.seed, samples=args.samples)
    report = {"command": "audit", **report}
    return report, EXIT_OK if report["oracles_agree"] else EXIT_CONSISTENCY


def _audit_text(rep: Dict) -> str:
    lines = [f"seed {rep['seed']}  r {rep['r_values']}  oracles agree: {rep['oracles_agree']}",
             "summary " + " ".join(f"{k}={v}" for k, v in sorted(rep["summary"].items()))]
    for rec in rep["records"]:
        lines.append(f"r={rec['r']} {rec['verdict']:8} {rec['claim_id']} [{rec['variant']}] "
                     f"computed={json.dumps(rec['computed'], sort_keys=True)}")
    return "\n".join(lines) + "\n"


# -- table --------------------------------------------------------------------------

def cmd_table(args) -> Tuple[Dict, int]:
    r = _single(parse_int_list(args.r), "r")
    if r < 2:
        raise UsageError("r must be at least 2")
    m_values = parse_int_list(args.m)
    n_values = parse_int_list(args.n)
    if m_values[0] < 1 or n_values[0] < 1:
        raise UsageError("m and n must be positive")
    rows = approx_table(r, args.weights, m_values, n_values)
    return {"command": "table", "seed": args.seed, "r": r, "weights": args.weights,
            "rows": rows}, EXIT_OK


def table_columns(r: int) -> List[str]:
    return (["r", "weights", "m", "n", "degree_coefficient"]
            + [f"kappa_{i}" for i in range(1, r + 1)]
            + [f"ratio_{i}" for i in range(1, r + 1)] + ["cover_degree", "degenerate", "seed"])


def _row_values(row, seed: int) -> List[str]:
    w = row.weights
    ratio = [_fmt(q) for q in row.ratio] if row.ratio is not None else [""] * w.r
    return ([str(w.r), w.label, str(w.m_scale), str(w.n), _fmt(row.degree_coefficient)]
            + [_fmt(k) for k in row.kappa] + ratio
            + [_fmt(row.cover_degree), "true" if row.degenerate else "false", str(seed)])


def _table_csv(rep: Dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table_columns(rep["r"]))
    for row in rep["rows"]:
        writer.writerow(_row_values(row, rep["seed"]))
    return buf.getvalue()


def _table_json(rep: Dict) -> Dict:
    cols = table_columns(rep["r"])
    return {"command": "table", "seed": rep["seed"], "r": rep["r"], "weights": rep["weights"],
            "columns": cols, "rows": [dict(zip(cols, _row_values(row, rep["seed"]))) for row in rep["rows"]]}


def _table_cert(rep: Dict) -> str:
    if len({row.weights.n for row in rep["rows"]}) != 1:
        raise UsageError("--format cert needs a single --n value")
    try:
        cert = rows_to_certificate(rep["rows"])
    except DegenerateConfigurationError as exc:
        raise InputError(f"cannot build a certificate: {exc}") from None
    return cert.to_json() + "\n"


# -- certify ------------------------------------------------------------------------

def _read_certificate(path: str) -> FiltrationCertificate:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read certificate: {exc}") from None
    try:
        return FiltrationCertificate.from_json(text)
    except CertificateError as exc:
        raise InputError(f"invalid certificate: {exc}") from None


def cmd_certify(args) -> Tuple[Dict, int]:
    if args.certificate is None and args.epsilon is None and args.surface is None:
        raise UsageError("give a certificate, --epsilon with --r, or --surface")
    report: Dict = {"command": "certify", "seed": args.seed}
    r = None
    if args.certificate is not None:
        cert = _read_certificate(args.certificate)
        if args.frobenius is not None:
            p, n = args.frobenius
            try:
                cert = frobenius_scale(cert, p, n)
            except (ValueError, CertificateError) as exc:
                raise InputError(str(exc)) from None
            report["frobenius"] = {"p": p, "n": n}
        r = cert.r
        verdict = check_limit_hypothesis(cert)
        report["limit"] = {
            "verdict": "HOLDS" if verdict.holds else "FAILS",
            "gaps": [_fmt(g) for g in verdict.gaps],
            "constant": None if verdict.constant is None else _fmt(verdict.constant),
            "violating_index": verdict.violating_index, "reason": verdict.reason,
        }
    elif args.frobenius is not None:
        raise UsageError("--frobenius needs a certificate")
    if args.epsilon is not None:
        if args.r is not None:
            r = _single(parse_int_list(args.r), "r")
        if r is None:
            raise UsageError("--epsilon needs --r or a certificate")
        try:
            gv = gap_check(args.epsilon, r)
        except (ValueError, CertificateError) as exc:
            raise InputError(str(exc)) from None
        report["gap"] = {"r": r, "epsilon": _fmt(gv.epsilon), "threshold": _fmt(gv.threshold),
                         "verdict": "ACCEPTED" if gv.accepted else "REJECTED"}
    if args.surface is not None:
        try:
            inv = example_surface_invariants(*args.surface)
        except CertificateError as exc:
            raise InputError(str(exc)) from None
        report["surface"] = {"c1": _fmt(inv.c1), "c2": _fmt(inv.c2),
                             "discriminant": _fmt(inv.discriminant),
                             "numerically_flat": inv.numerically_flat,
                             "violations": list(inv.violations)}
    return report, EXIT_OK


def _certify_text(rep: Dict) -> str:
    lines = []
    if "limit" in rep:
        lim = rep["limit"]
        lines.append(f"limit hypothesis: {lim['verdict']}  C = {lim['constant']}")
        lines.append("gaps: " + ", ".join(lim["gaps"]))
        if lim["reason"]:
            lines.append(f"reason: {lim['reason']} (entry {lim['violating_index']})")
    if "gap" in rep:
        g = rep["gap"]
        lines.append(f"gap check r={g['r']}: epsilon {g['epsilon']} vs threshold "
                     f"{g['threshold']}: {g['verdict']}")
    if "surface" in rep:
        s = rep["surface"]
        lines.append(f"surface: c1 {s['c1']}  c2 {s['c2']}  discriminant {s['discriminant']}  "
                     f"numerically flat {s['numerically_flat']}")
        for v in s["violations"]:
            lines.append(f"violation: {v}")
    return "\n".join(lines) + "\n"


# -- plumbing -------------------------------------------------------------------------

def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="RNG seed recorded in every report")
    p.add_argument("--format", choices=("json", "csv", "text", "cert"), default=d(None),
                   help="output format (default depends on the command)")
    p.add_argument("--out", default=d(None), help="write the report here instead of stdout")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except CertificateError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagpush", description="Exact push-forwards along flag bundles.")
    parser.add_argument("--version", action="version", version=f"flagpush {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pushforward", help="push a polynomial with both oracles and the formulas")
    _add_globals(p, suppress=True)
    p.add_argument("--r", required=True)
    p.add_argument("--poly", required=True,
                   help="polynomial in t1.. (or h1.., y1..), e1..er and a; ^ or ** for powers")
    p.add_argument("--zero-c1", action="store_true", help="report values with e1 = 0")
    p.add_argument("--dump-poly", action="store_true", help="also print the input in h and y")

    p = sub.add_parser("audit", help="check printed claims against the oracles")
    _add_globals(p, suppress=True)
    p.add_argument("--r", default="2..5", help="rank or range, e.g. 2..5")
    p.add_argument("--samples", type=int, default=12, help="random inputs per check")

    p = sub.add_parser("table", help="degree and slope tables of the covers")
    _add_globals(p, suppress=True)
    p.add_argument("--r", required=True)
    p.add_argument("--weights", choices=("ones", "literal"), default="ones")
    p.add_argument("--m", default="1..20")
    p.add_argument("--n", default="1")

    p = sub.add_parser("certify", help="check a filtration certificate")
    _add_globals(p, suppress=True)
    p.add_argument("certificate", nargs="?", help="certificate JSON file, or - for stdin")
    p.add_argument("--epsilon", type=_rational_arg)
    p.add_argument("--r")
    p.add_argument("--frobenius", nargs=2, type=int, metavar=("P", "N"))
    p.add_argument("--surface", nargs=2, type=_rational_arg, metavar=("L_SQ", "L_DOT_H"),
                   help="invariants of L + L^-1 on a surface")
    return parser


_DEFAULT_FORMAT = {"pushforward": "text", "audit": "json", "table": "csv", "certify": "text"}
_ALLOWED = {"pushforward": {"text", "json"}, "audit": {"text", "json"},
            "table": {"csv", "json", "text", "cert"}, "certify": {"text", "json"}}


def _render(command: str, fmt: str, report: Dict) -> str:
    if command == "table":
        if fmt in ("csv", "text"):
            return _table_csv(report)
        if fmt == "cert":
            return _table_cert(report)
        report = _table_json(report)
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return {"pushforward": _pushforward_text, "audit": _audit_text,
            "certify": _certify_text}[command](report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or _DEFAULT_FORMAT[args.command]
    handler = {"pushforward": cmd_pushforward, "audit": cmd_audit,
               "table": cmd_table, "certify": cmd_certify}[args.command]
    try:
        if fmt not in _ALLOWED[args.command]:
            raise UsageError(f"--format {fmt} is not available for {args.command}")
        report, code = handler(args)
        text = _render(args.command, fmt, report)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"flagpush: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"flagpush: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"flagpush: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"flagpush: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    if code == EXIT_CONSISTENCY:
        print("flagpush: the two push-forward oracles disagree", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
