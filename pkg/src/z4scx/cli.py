"""Command-line front end: ``python -m z4scx <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from z4scx.analysis import analyze
from z4scx.codegen import ENUMERATION_CAP, Family, PreconditionError, build_defining_set, generate_code
from z4scx.registry import (
    CONSTRAINTS,
    SearchConfig,
    TableError,
    classify,
    export_report,
    load_best_known,
    load_reference_rows,
    make_record,
    parse_best_known,
    records_from_json,
    search,
    write_reference_reports,
)
from z4scx.simplicial import SubsetMask, parse_subset
from z4scx.spectra import (
    ClosedFormError,
    evaluate_closed_form,
    lee_enumerator_string,
    lee_spectrum_bruteforce,
    min_lee_distance,
)
from z4scx.verify import verify_family

EXIT_OK, EXIT_PRECONDITION, EXIT_MISMATCH, EXIT_IO = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def subset_arg(tokens: Sequence[str], m: int) -> SubsetMask:
    """Accept ``{1,3}`` as well as the ``1 3`` left behind by shell brace expansion."""
    if len(tokens) == 1 and tokens[0].strip().startswith("{"):
        return parse_subset(tokens[0], m)
    elements = [int(t) for tok in tokens for t in tok.strip("{}").split(",") if t.strip()]
    return parse_subset("{" + ",".join(map(str, elements)) + "}", m)


def _params(args) -> tuple[Family, int, SubsetMask, SubsetMask, SubsetMask]:
    try:
        A, B, C = (subset_arg(getattr(args, x), args.m) for x in "ABC")
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    return Family(args.family), args.m, A, B, C


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _code_summary(family, m, A, B, C, code, spectrum) -> dict:
    return {
        "family": family.value, "m": m, "A": str(A), "B": str(B), "C": str(C),
        "n": code.n, "k1": code.k1, "k2": code.k2, "type": f"4^{code.k1} 2^{code.k2}",
        "size": code.size, "dL": min_lee_distance(spectrum),
        "spectrum": {str(w): f for w, f in spectrum.pairs},
        "enumerator": lee_enumerator_string(spectrum, code.n),
    }


def cmd_build(args) -> int:
    family, m, A, B, C = _params(args)
    D = build_defining_set(family, m, A, B, C)
    code = generate_code(D)
    spectrum = lee_spectrum_bruteforce(code)
    summary = _code_summary(family, m, A, B, C, code, spectrum)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        rows = ["".join(str(x) for x in row) for row in code.generator]
        (out / "defining_set.json").write_text(json.dumps(D.digit_strings()) + "\n", encoding="utf-8")
        (out / "generator.json").write_text(json.dumps(rows) + "\n", encoding="utf-8")
        (out / "generator.txt").write_text(
            "\n".join(" ".join(r) for r in rows) + "\n", encoding="utf-8")
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    family, m, A, B, C = _params(args)
    brute = closed = None
    if args.method in ("brute", "both"):
        brute = lee_spectrum_bruteforce(generate_code(build_defining_set(family, m, A, B, C)))
    if args.method in ("closed", "both"):
        cf = evaluate_closed_form(family, m, A, B, C)
        closed = cf.distribution
        if not cf.oracle_checkable or args.method == "closed":
            print("note: closed form, unverified by enumeration", file=sys.stderr)
    dist = brute or closed
    n = build_defining_set(family, m, A, B, C).n
    if args.format == "json":
        text = dist.to_json() + "\n"
    elif args.format == "csv":
        text = "weight,frequency\n" + "".join(f"{w},{f}\n" for w, f in dist.csv_rows())
    else:
        text = lee_enumerator_string(dist, n) + "\n"
    _emit(text, args.out)
    if brute is not None and closed is not None and brute != closed:
        print(f"mismatch: closed form {closed.as_dict()} vs enumeration {brute.as_dict()}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_analyze(args) -> int:
    family, m, A, B, C = _params(args)
    code = generate_code(build_defining_set(family, m, A, B, C))
    _emit(json.dumps(analyze(code).to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.m_max > ENUMERATION_CAP:
        raise CliError(f"--m-max must be <= {ENUMERATION_CAP}", EXIT_PRECONDITION)
    families = [Family(args.family)] if args.family else list(Family)
    status = EXIT_OK
    for fam in families:
        res = verify_family(fam, args.m_max, m_min=args.m_min, a_max=args.a_max, stop_first=True)
        if res.ok:
            print(f"{fam.value}: pass ({res.checked} parameter sets, {res.degenerate} degenerate)")
        else:
            print(f"{fam.value}: FAIL after {res.checked} parameter sets")
            print(f"  {res.mismatches[0].describe()}")
            status = EXIT_MISMATCH
    return status


def _table(path: Optional[str]):
    return load_best_known(path) if path else None


def cmd_search(args) -> int:
    table = _table(args.classify or args.db)
    config = SearchConfig(
        family=Family(args.family),
        m_values=range(args.m_min, args.m_max + 1),
        constraint=args.constraint,
        projective_only=args.projective_only,
    )
    records = search(config, table)
    _emit(export_report(records, args.format), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    table = load_best_known(args.db) if args.db else parse_best_known("n,k1,k2,dL,source\n")
    if args.records:
        records = records_from_json(Path(args.records).read_text(encoding="utf-8"))
    else:
        records = [make_record(r.family, r.m, r.A, r.B, r.C, note=r.note) for r in load_reference_rows()]
    records = [replace(r, verdict=classify(r, table)) for r in records]
    _emit(export_report(records, args.format), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    table = load_best_known(args.db)
    if args.paper_tables:
        rep = write_reference_reports(args.out or "reports", table)
        for name, recs in rep.tables.items():
            print(f"{name}: {len(recs)} rows")
        for problem in rep.mismatches:
            print(f"mismatch: {problem}", file=sys.stderr)
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    if not args.records:
        raise CliError("report needs --paper-tables or --records FILE", EXIT_PRECONDITION)
    records = records_from_json(Path(args.records).read_text(encoding="utf-8"))
    _emit(export_report(records, args.format), args.out)
    return EXIT_OK


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--m", type=int, required=True)
    for name in "ABC":
        p.add_argument(f"--{name}", nargs="+", required=True, metavar="SUBSET",
                       help="subset such as '{1,3}' or '{}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="z4scx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a code and write its artefacts")
    _add_params(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("spectrum", help="Lee weight distribution")
    _add_params(p)
    p.add_argument("--method", choices=["brute", "closed", "both"], default="both")
    p.add_argument("--format", choices=["json", "csv", "enumerator"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("analyze", help="projectivity, Plotkin, Gray image, minimality")
    _add_params(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="closed form vs. enumeration over a full parameter sweep")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--a-max", type=int, help="restrict the sweep to |A| <= A_MAX")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="sweep orbit representatives and collect records")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--constraint", choices=sorted(CONSTRAINTS))
    p.add_argument("--projective-only", action="store_true")
    p.add_argument("--classify", metavar="CSV", help="best-known table used for verdicts")
    p.add_argument("--db", metavar="CSV", help="same as --classify")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", help="attach verdicts to records")
    p.add_argument("--db", metavar="CSV")
    p.add_argument("--records", help="JSON records from search; default: the catalogued rows")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("report", help="export records or regenerate the reference tables")
    p.add_argument("--paper-tables", action="store_true",
                   help="rebuild the four catalogued comparison tables as markdown")
    p.add_argument("--db", metavar="CSV")
    p.add_argument("--records")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="markdown")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ClosedFormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
