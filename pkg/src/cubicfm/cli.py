"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 inadmissible d, 4 invalid kappa.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import fmcount, hassett, oracle
from .lattice import (
    FORMS_AGREE_MAX_ORDER,
    LATTICE_NAMES,
    discriminant_group,
    is_even,
    signature,
    standard,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INADMISSIBLE, EXIT_KAPPA = 0, 1, 2, 3, 4

FIELDS = ("d", "d_mod_6", "cd_nonempty", "has_k3", "has_twisted_k3", "m", "p_cubic",
          "kappa", "c", "m_prime", "lower_bound_cubic", "branch")

TABLE_MAX = 10**6


def output_record(adm: hassett.AdmissibilityReport, rep: fmcount.CountReport | None = None) -> dict:
    rec = {
        "d": adm.d,
        "d_mod_6": adm.d_mod_6,
        "cd_nonempty": adm.cd_nonempty,
        "has_k3": adm.has_k3,
        "has_twisted_k3": adm.has_twisted_k3,
    }
    for key in FIELDS[5:]:
        rec[key] = getattr(rep, key) if rep is not None else None
    return rec


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_cell(r[k]) for k in FIELDS])
    return buf.getvalue()


def render_json(records) -> str:
    return json.dumps(list(records), indent=2) + "\n"


def render_text(rec: dict, extra: dict | None = None) -> str:
    lines = [f"{k}: {_cell(rec[k]) or '-'}" for k in FIELDS]
    for k, v in (extra or {}).items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def table_records(d_min: int, d_max: int) -> list[dict]:
    out = []
    for d in range(d_min, d_max + 1):
        if not hassett.cd_nonempty(d):
            continue
        adm = hassett.admissibility(d)
        rows = []
        if adm.has_k3:
            rows.append(output_record(adm, fmcount.cubic_fm_count(d)))
        if adm.has_twisted_k3 and d % 9:
            for k in fmcount.valid_kappas(d):
                rows.append(output_record(adm, fmcount.twisted_fm_count(d, k)))
        out.extend(rows or [output_record(adm)])
    return out


def _positive_int(s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {s!r}")
    return n


def _emit(records, fmt: str, out) -> None:
    if fmt == "json":
        out.write(render_json(records))
    elif fmt == "csv":
        out.write(render_csv(records))
    else:
        out.write("\n".join(render_text(r) for r in records))


def cmd_check(args, out) -> int:
    adm = hassett.admissibility(args.d)
    if args.format == "text":
        out.write(render_text(output_record(adm), {"reasons": "; ".join(adm.reasons) or "-"}))
    else:
        rec = output_record(adm)
        rec["reasons"] = list(adm.reasons)
        out.write(json.dumps(rec, indent=2) + "\n")
    return EXIT_OK


def cmd_count(args, out) -> int:
    adm = hassett.admissibility(args.d)
    try:
        rep = fmcount.cubic_fm_count(args.d)
    except hassett.InadmissibleError as e:
        _emit([output_record(adm)], args.format, out)
        print(f"inadmissible: {'; '.join(e.reasons)}: no associated K3", file=sys.stderr)
        return EXIT_INADMISSIBLE
    _emit([output_record(adm, rep)], args.format, out)
    return EXIT_OK


def cmd_count_twisted(args, out) -> int:
    d = args.d
    adm = hassett.admissibility(d)
    try:
        if args.kappa is not None:
            reps = [fmcount.twisted_fm_count(d, args.kappa)]
        else:
            fmcount.require_twisted_regime(d)
            kappas = fmcount.valid_kappas(d)
            if not kappas:
                print(f"inadmissible: no kappa >= 2 with kappa^2 | {d} and even quotient",
                      file=sys.stderr)
                return EXIT_INADMISSIBLE
            reps = [fmcount.twisted_fm_count(d, k) for k in kappas]
    except hassett.InadmissibleError as e:
        print(f"inadmissible: {'; '.join(e.reasons)}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except fmcount.InvalidKappaError as e:
        print(f"invalid kappa: {e}", file=sys.stderr)
        return EXIT_KAPPA
    _emit([output_record(adm, r) for r in reps], args.format, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    _emit(table_records(args.dmin, args.dmax), args.format, out)
    return EXIT_OK


def lattice_summary(name: str) -> dict:
    L = standard(name)
    D = discriminant_group(L)
    info = {
        "name": name,
        "rank": L.rank,
        "signature": list(signature(L)),
        "parity": "even" if is_even(L) else "odd",
        "det": L.det,
        "unimodular": abs(L.det) == 1,
        "elementary_divisors": list(D.elementary_divisors),
    }
    if is_even(L) and abs(L.det) <= FORMS_AGREE_MAX_ORDER:
        info["q_generators"] = [fmt_rational(q) for q in D.q_gens]
    return info


def cmd_lattice_info(args, out) -> int:
    info = lattice_summary(args.name)
    if args.format == "json":
        out.write(json.dumps(info, indent=2) + "\n")
        return EXIT_OK
    for k, v in info.items():
        if isinstance(v, list):
            v = "(" + ", ".join(map(str, v)) + ")"
        elif isinstance(v, bool):
            v = "true" if v else "false"
        out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = oracle.run_suite(args.dmax, args.kappamax)
    failures = [r for r in results if not r.passed]
    for r in results:
        if not args.failures_only or not r.passed:
            out.write(r.line() + "\n")
    by_check: dict[str, list[int]] = {}
    for r in results:
        tally = by_check.setdefault(r.check_name, [0, 0])
        tally[0] += 1
        tally[1] += not r.passed
    for name, (n, f) in sorted(by_check.items()):
        out.write(f"summary {name}: {n - f}/{n} passed\n")
    out.write(f"total: {len(results)} checks, {len(failures)} failures\n")
    return EXIT_FAIL if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cubicfm",
        description="Fourier-Mukai partner counts for special cubic fourfolds of discriminant d.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    fmt_kw = dict(choices=("text", "json"), default="text")

    s = sub.add_parser("check", help="admissibility flags for d")
    s.add_argument("d", type=_positive_int)
    s.add_argument("--format", **fmt_kw)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("count", help="exact untwisted counts m and p_cubic")
    s.add_argument("d", type=_positive_int)
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("count-twisted", help="twisted counts m' and the cubic lower bound")
    s.add_argument("d", type=_positive_int)
    s.add_argument("kappa", type=_positive_int, nargs="?")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_count_twisted)

    s = sub.add_parser("table", help="one record per (d, kappa) over a range")
    s.add_argument("dmin", type=_positive_int)
    s.add_argument("dmax", type=_positive_int)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("lattice-info", help="invariants of a named lattice")
    s.add_argument("name", choices=LATTICE_NAMES)
    s.add_argument("--format", **fmt_kw)
    s.set_defaults(func=cmd_lattice_info)

    s = sub.add_parser("verify", help="run the brute-force verification suite")
    s.add_argument("--dmax", type=_positive_int, default=1000)
    s.add_argument("--kappamax", type=_positive_int, default=13)
    s.add_argument("--failures-only", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "table" and not (args.dmin <= args.dmax <= TABLE_MAX):
        parser.error(f"need 1 <= dmin <= dmax <= {TABLE_MAX}")
    if args.command == "verify" and args.dmax < 8:
        parser.error("--dmax must be at least 8")
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
