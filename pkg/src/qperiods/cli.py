"""Command line surface: period computation, operator reconstruction,
singularity analysis, and golden-corpus verification.

Four subcommands. ``period`` evaluates a quantum period from a manifold
description and prints one "degree coefficient" line per degree. ``qde``
reconstructs the minimal annihilating operator of a regularized series.
``analyze`` reports local log-monodromies and the ramification defect of
an operator file. ``verify`` recomputes the embedded reference corpus
from scratch and diffs it exactly.

All arithmetic is exact and every command is deterministic: identical
invocations produce byte-identical output. Exit codes: 0 success, 1
verification mismatch, 2 input error, 3 unsupported case.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exactnum import format_rational
from .series import TruncatedSeries
from .periods import ManifoldSpec, resolve, period_closed_form
from .qde import DiffOperator, reconstruct, AmbiguousOperatorError
from .monodromy import (
    UnsupportedExponentError,
    is_fuchsian,
    ramification,
)
from . import goldendata

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3

RECONSTRUCTION_MARGIN = 50


def _load_spec(source: str) -> ManifoldSpec:
    if source.startswith("builtin:"):
        return ManifoldSpec(kind="builtin", name=source.split(":", 1)[1])
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read manifold spec {source!r}: {exc}") from exc
    return ManifoldSpec.from_text(text)


def _series_table(series: TruncatedSeries) -> str:
    lines = [
        f"{d} {format_rational(c)}" for d, c in enumerate(series.coeffs)
    ]
    return "\n".join(lines) + "\n"


def cmd_period(args) -> int:
    spec = _load_spec(args.spec)
    series = resolve(spec, args.terms)
    if args.regularized:
        series = series.regularize()
    sys.stdout.write(_series_table(series))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(series.to_text())
    return EXIT_OK


def _load_series(source: str, terms: int) -> TruncatedSeries:
    if source.startswith("builtin:"):
        spec = ManifoldSpec(kind="builtin", name=source.split(":", 1)[1])
        return resolve(spec, terms).regularize()
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read series file {source!r}: {exc}") from exc
    return TruncatedSeries.from_text(text)


def _default_output(source: str, suffix: str) -> str:
    if source.startswith("builtin:"):
        stem = source.split(":", 1)[1]
    else:
        stem = os.path.splitext(os.path.basename(source))[0]
    return stem + suffix


def cmd_qde(args) -> int:
    series = _load_series(args.source, args.terms)
    try:
        result = reconstruct(
            series,
            max_order=args.max_order,
            max_degree=args.max_degree,
            margin=args.margin,
        )
    except AmbiguousOperatorError as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not result.found:
        print("no annihilator within limits", file=sys.stderr)
        return EXIT_INPUT
    op = result.operator
    out = args.output or _default_output(args.source, ".qdo")
    with open(out, "w") as fh:
        fh.write(op.to_text())
    print(f"order: {op.order}")
    print(f"degree: {op.degree}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        with open(args.operator) as fh:
            op = DiffOperator.from_text(fh.read())
    except OSError as exc:
        raise ValueError(f"cannot read operator file {args.operator!r}: {exc}")
    fuchs = is_fuchsian(op)
    if not fuchs:
        print(f"rank: {op.order}")
        for description in fuchs.failures:
            print(f"irregular singular point: {description}")
        print("verdict: not Fuchsian")
        return EXIT_UNSUPPORTED
    report = ramification(op)
    sys.stdout.write(report.text())
    return EXIT_OK


# ----------------------------------------------------------------- verify

def _expand_subset(subset: str | None) -> list:
    """Resolve a comma-separated subset expression to corpus names.

    Each item is a name or a range "A..B" over the canonical ordering.
    None means the full corpus; an empty expression is the empty subset.
    """
    ordered = list(goldendata.CORPUS_NAMES) + list(goldendata.O4_NAMES)
    if subset is None:
        return ordered
    names = []
    for item in subset.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            lo, hi = item.split("..", 1)
            if lo not in ordered or hi not in ordered:
                raise ValueError(f"unknown subset range {item!r}")
            i, j = ordered.index(lo), ordered.index(hi)
            if i > j:
                raise ValueError(f"empty subset range {item!r}")
            names.extend(ordered[i:j + 1])
        else:
            if item not in ordered:
                raise ValueError(f"unknown corpus name {item!r}")
            names.append(item)
    seen = set()
    out = []
    for name in names:
        if name not in seen:
            seen.add(name)
            out.append(name)
    return out


def _check_period(name: str) -> tuple:
    golden = goldendata.load_period_table()[name]
    top = max(d for d, _ in golden)
    series = period_closed_form(name, top).regularize()
    for d, alpha in golden:
        got = series[d]
        if got != alpha:
            return ("fail", f"alpha_{d} = {format_rational(got)}, expected {alpha}")
    return ("pass", "")


def _check_operator(name: str) -> tuple:
    golden = goldendata.load_operator(name)
    unknowns = (golden.order + 1) * (golden.degree + 1)
    terms = unknowns + RECONSTRUCTION_MARGIN + 5
    series = period_closed_form(name, terms).regularize()
    result = reconstruct(
        series,
        max_order=golden.order,
        max_degree=golden.degree,
        margin=RECONSTRUCTION_MARGIN,
    )
    if not result.found:
        return ("fail", "no annihilator within the reference bounds")
    if result.operator.coeffs != golden.coeffs:
        return ("fail", "reconstructed operator differs from reference")
    return ("pass", "")


def _check_monodromy(name: str) -> tuple:
    op = goldendata.load_operator(name)
    golden_blocks = goldendata.load_jordan_tables()[name]
    golden_defect = goldendata.load_defects()[name]
    report = ramification(op)
    if report.defect != golden_defect:
        return ("fail", f"defect {report.defect}, expected {golden_defect}")
    computed = {}
    for entry in report.entries:
        if entry.contribution == 0:
            continue
        computed[entry.point.describe()] = tuple(
            (Fraction(ev), size) for ev, size in entry.local.blocks
        )
    if computed != dict(golden_blocks):
        return ("fail", "Jordan block tables differ from reference")
    return ("pass", "")


def _check_o4(name: str, specs: dict | None) -> tuple:
    if specs is None or name not in specs:
        return ("skipped", "missing external weight data")
    spec = ManifoldSpec.from_json_dict(specs[name])
    golden = goldendata.load_o4_values()[name]
    top = max(golden)
    series = resolve(spec, top).regularize()
    for d in sorted(golden):
        got = series[d]
        if got != golden[d]:
            return ("fail", f"alpha_{d} = {format_rational(got)}, expected {golden[d]}")
    return ("pass", "")


def _worker_count() -> int:
    env = os.environ.get("QPERIODS_WORKERS", "")
    if env.strip():
        count = int(env)
        if count < 1:
            raise ValueError("QPERIODS_WORKERS must be a positive integer")
        return count
    return os.cpu_count() or 1


def cmd_verify(args) -> int:
    names = _expand_subset(args.subset)
    corpus = [n for n in names if n in goldendata.CORPUS_NAMES]
    o4_names = [n for n in names if n in goldendata.O4_NAMES]

    o4_specs = None
    if args.o4_data:
        try:
            with open(args.o4_data) as fh:
                o4_specs = json.load(fh)
        except OSError as exc:
            raise ValueError(f"cannot read weight data {args.o4_data!r}: {exc}")
        except json.JSONDecodeError as exc:
            raise ValueError(f"weight data is not valid JSON: {exc}")

    suites = ("periods", "operators", "monodromy", "o4")
    wanted = suites if args.suite == "all" else (args.suite,)
    jobs = []
    if "periods" in wanted:
        jobs.extend(("periods", n, _check_period, (n,)) for n in corpus)
    if "operators" in wanted:
        jobs.extend(("operators", n, _check_operator, (n,)) for n in corpus)
    if "monodromy" in wanted:
        jobs.extend(("monodromy", n, _check_monodromy, (n,)) for n in corpus)
    if "o4" in wanted:
        jobs.extend(("o4", n, _check_o4, (n, o4_specs)) for n in o4_names)

    def run(job):
        suite, name, fn, fnargs = job
        try:
            status, detail = fn(*fnargs)
        except Exception as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        return (suite, name, status, detail)

    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        results = list(pool.map(run, jobs))

    tally = {"pass": 0, "fail": 0, "skipped": 0}
    for suite, name, status, detail in results:
        tally[status] += 1
        line = f"{suite} {name}: {status}"
        if detail:
            line += f" ({detail})"
        print(line)
    print(
        "tally: pass={pass} fail={fail} skipped={skipped}".format(**tally)
    )
    return EXIT_MISMATCH if tally["fail"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qperiods",
        description="exact quantum periods, differential operators, and "
        "ramification analysis for Fano fourfolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "period", help="evaluate a quantum period from a manifold description"
    )
    p.add_argument(
        "spec",
        help="manifold spec file, or builtin:NAME for a catalog entry",
    )
    p.add_argument(
        "--terms", type=int, default=20, metavar="M",
        help="truncation order, coefficients for degrees 0..M (default 20)",
    )
    p.add_argument(
        "--regularized", action="store_true",
        help="scale the degree-d coefficient by d!",
    )
    p.add_argument(
        "--output", metavar="FILE", help="also write the series to FILE"
    )
    p.set_defaults(fn=cmd_period)

    p = sub.add_parser(
        "qde", help="reconstruct the minimal annihilating operator of a series"
    )
    p.add_argument(
        "source",
        help="regularized series file, or builtin:NAME to compute one",
    )
    p.add_argument(
        "--terms", type=int, default=120, metavar="M",
        help="truncation order used with builtin sources (default 120)",
    )
    p.add_argument("--max-order", type=int, default=10, metavar="N",
                   help="largest operator order to try (default 10)")
    p.add_argument("--max-degree", type=int, default=40, metavar="L",
                   help="largest coefficient degree to try (default 40)")
    p.add_argument("--margin", type=int, default=RECONSTRUCTION_MARGIN,
                   metavar="G",
                   help="required equation surplus (default 50)")
    p.add_argument("--output", metavar="FILE",
                   help="operator file to write (default derived from source)")
    p.set_defaults(fn=cmd_qde)

    p = sub.add_parser(
        "analyze",
        help="report local log-monodromies and the ramification defect",
    )
    p.add_argument("operator", help="operator file to analyze")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser(
        "verify", help="recompute the reference corpus and diff it exactly"
    )
    p.add_argument(
        "--suite",
        choices=("periods", "operators", "monodromy", "o4", "all"),
        default="all",
        help="which record family to verify (default all)",
    )
    p.add_argument(
        "--subset", metavar="NAMES",
        help="comma-separated names, ranges A..B allowed (default: all)",
    )
    p.add_argument(
        "--o4-data", metavar="FILE",
        help="JSON file of toric weight data for the optional suite",
    )
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UnsupportedExponentError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
