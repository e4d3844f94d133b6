"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 expression not normalised.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import corpus as cio
from . import evaluation as ev
from .errors import MalformedDct, MalformedValue, SizeExceeded, TimexError
from .model import Dct, parse_dct
from .rules import resolve_catalog

EXIT_OK, EXIT_INPUT, EXIT_MISS = 0, 1, 2

_ISO_DCT = re.compile(r"(\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2}):(\d{2}))?")


def coerce_dct(raw: str) -> Dct:
    """Accept corpus-style DCTs plus ISO ``YYYY-MM-DD[THH:MM:SS]``."""
    m = _ISO_DCT.fullmatch(raw)
    if m:
        corpus_form = "".join(m.groups()[:3])
        if m.group(4):
            corpus_form += ":" + "".join(m.groups()[3:])
        return parse_dct(corpus_form)
    return parse_dct(raw)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _load_corpus(path):
    try:
        records, errors = cio.read_corpus(path)
    except OSError as exc:
        return None, [str(exc)]
    return records, [str(e) for e in errors]


def cmd_normalise(args) -> int:
    try:
        dct = coerce_dct(args.dct)
    except MalformedDct as exc:
        return _fail(str(exc))
    catalog = resolve_catalog(args.catalog)
    if args.trace:
        explanation = catalog.explain(args.expression, dct)
        print(explanation.format(), file=sys.stderr)
        result = explanation.outcome
    else:
        result = catalog.normalise(args.expression, dct)
    if not result.fired:
        print(f"NONE\t{ev.NOT_AVAILABLE}")
        return EXIT_MISS
    print(f"{result.timex_type.value}\t{result.value_str}")
    return EXIT_OK


def cmd_annotate(args) -> int:
    try:
        dct = coerce_dct(args.dct)
    except MalformedDct as exc:
        return _fail(str(exc))
    catalog = resolve_catalog(args.catalog)
    spans = args.span or [args.text]
    try:
        body = cio.annotate(args.text, spans, dct, catalog)
    except ValueError as exc:
        return _fail(str(exc))
    print(cio.emit_timeml(body, dct, args.docid) if args.document else body, end="" if args.document else "\n")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    records, errors = _load_corpus(args.corpus)
    if records is None or errors:
        for e in errors:
            print(f"{args.corpus}: {e}", file=sys.stderr)
        return EXIT_INPUT
    if not records:
        return _fail("empty corpus")
    catalog = resolve_catalog(args.catalog)
    outputs = ev.run_system(catalog, records)
    try:
        report = ev.score(records, outputs, strict=args.strict)
    except MalformedValue as exc:
        return _fail(f"strict mode: {exc}")
    print(f"n\t{report.n_records}")
    print(f"type_accuracy\t{report.type_accuracy:.4f}")
    print(f"value_accuracy\t{report.value_accuracy:.4f}")
    table = ev.error_report(report, args.errors)
    if table:
        print()
        print(table)
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_compare(args) -> int:
    records, errors = _load_corpus(args.corpus)
    if records is None or errors:
        for e in errors:
            print(f"{args.corpus}: {e}", file=sys.stderr)
        return EXIT_INPUT
    if not records:
        return _fail("empty corpus")
    try:
        a = resolve_catalog(args.catalog_a)
        b = resolve_catalog(args.catalog_b)
        results = ev.compare_systems(records, a, b, args.size, args.count, args.seed)
    except (SizeExceeded, TimexError, OSError) as exc:
        return _fail(str(exc))
    print(f"samples\t{args.count} x {args.size}\tseed {args.seed}")
    for attr, res in results.items():
        mean_a = sum(res.accuracies_a) / len(res.accuracies_a) if res.accuracies_a else 0.0
        mean_b = sum(res.accuracies_b) / len(res.accuracies_b) if res.accuracies_b else 0.0
        print(f"{attr}\tmean_a={mean_a:.4f}\tmean_b={mean_b:.4f}\t"
              f"W={res.statistic:g}\tp={res.p_value:.6g}")
    if args.report:
        payload = {k: v.to_dict() for k, v in results.items()}
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_dedupe(args) -> int:
    records, errors = _load_corpus(args.corpus)
    if records is None or errors:
        for e in errors:
            print(f"{args.corpus}: {e}", file=sys.stderr)
        return EXIT_INPUT
    unique = cio.dedupe(records)
    if args.output:
        cio.write_corpus(unique, args.output)
    else:
        sys.stdout.write(cio.format_corpus(unique))
    print(f"{len(records)} -> {len(unique)} records", file=sys.stderr)
    return EXIT_OK


def cmd_distribution(args) -> int:
    records, errors = _load_corpus(args.corpus)
    if records is None:
        for e in errors:
            print(f"{args.corpus}: {e}", file=sys.stderr)
        return EXIT_INPUT
    for e in errors:
        print(f"{args.corpus}: {e}", file=sys.stderr)
    print(cio.distribution(records).format())
    return EXIT_OK


def cmd_extract(args) -> int:
    out = []
    for path in args.files:
        try:
            out.extend(cio.extract_timex3(Path(path).read_text(encoding="utf-8")))
        except (OSError, TimexError) as exc:
            return _fail(f"{path}: {exc}")
    sys.stdout.write(cio.format_corpus(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="timexnorm", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def catalog_arg(sp):
        sp.add_argument("--catalog", help="rule file, or 'default' / 'base-only'")

    sp = sub.add_parser("normalise", aliases=["normalize"], help="normalise one expression")
    sp.add_argument("expression")
    sp.add_argument("--dct", required=True, help="YYYYMMDD, YYYYMMDD:HHMMSS or YYYY-MM-DD")
    sp.add_argument("--trace", action="store_true", help="print the rule trace to stderr")
    catalog_arg(sp)
    sp.set_defaults(func=cmd_normalise)

    sp = sub.add_parser("annotate", help="wrap expression spans of a text in TIMEX3 tags")
    sp.add_argument("text")
    sp.add_argument("--dct", required=True)
    sp.add_argument("--span", action="append", help="expression span (repeatable, in text order)")
    sp.add_argument("--document", action="store_true", help="emit a full TimeML document")
    sp.add_argument("--docid", default="document")
    catalog_arg(sp)
    sp.set_defaults(func=cmd_annotate)

    sp = sub.add_parser("evaluate", help="score the normaliser against a gold corpus")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--report", help="write a JSON report here")
    sp.add_argument("--errors", type=int, default=20, help="value errors to list")
    sp.add_argument("--strict", action="store_true", help="reject gold values outside the grammar")
    catalog_arg(sp)
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("compare", help="subsampled Wilcoxon comparison of two catalogs")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--catalog-a", default="base-only")
    sp.add_argument("--catalog-b", default="default")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=400)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("dedupe", help="remove identical corpus records")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_dedupe)

    sp = sub.add_parser("distribution", help="count records per TIMEX3 type")
    sp.add_argument("--corpus", required=True)
    sp.set_defaults(func=cmd_distribution)

    sp = sub.add_parser("extract", help="dump TIMEX3 elements of TimeML files as corpus rows")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=cmd_extract)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
