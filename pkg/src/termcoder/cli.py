"""Command line front end: build a dictionary, annotate a corpus, evaluate.

Results go to stdout, diagnostics to stderr. Exit code 0 on success,
nonzero on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .annotator import annotate_line
from .coder import MODE_CORPUS_ONLY, MODES, DictionarySpec, assemble_dictionary
from .corpus import (
    AnnotatedLine,
    CorpusFormat,
    TermListFormat,
    evaluate,
    gold_code_tuples,
    parse_aligned_causes,
    predicted_code_tuples,
    read_annotation_rows,
    write_annotations,
)
from .matcher import (
    DEFAULT_FUZZY_MIN_LENGTH,
    DEFAULT_MAX_DISTANCE,
    default_abbreviations,
    load_abbreviations,
)
from .normalize import NormalizationConfig, load_stopwords


def _add_format_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("CSV format")
    group.add_argument("--delimiter", default=";", help="CSV delimiter (default: ';')")
    group.add_argument("--col-doc", default="DocID", help="document id column")
    group.add_argument("--col-line", default="LineID", help="line id column")
    group.add_argument("--col-raw", default="RawText", help="raw text column")
    group.add_argument("--col-standard", default="StandardText", help="standard text column")
    group.add_argument("--col-code", default="ICD10", help="code column")


def _add_dictionary_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("dictionary sources")
    group.add_argument(
        "--corpus",
        action="append",
        default=[],
        type=Path,
        metavar="CSV",
        help="annotated corpus file (repeatable)",
    )
    group.add_argument(
        "--terms",
        action="append",
        default=[],
        type=Path,
        metavar="CSV",
        help="external label/code term list (repeatable)",
    )
    group.add_argument(
        "--mode",
        choices=MODES,
        default=MODE_CORPUS_ONLY,
        help="corpus_only uses training terms; corpus_plus_external merges --terms files",
    )
    group.add_argument(
        "--col-label", default="label", help="term list label column (name or 0-based index)"
    )
    group.add_argument(
        "--col-term-code", default="code", help="term list code column (name or 0-based index)"
    )


def _add_matching_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("matching")
    group.add_argument("--stopwords", type=Path, help="stopword file (default: built-in list)")
    group.add_argument(
        "--abbreviations", type=Path, help="abbreviation file (default: built-in list)"
    )
    group.add_argument(
        "--max-dist",
        type=int,
        default=DEFAULT_MAX_DISTANCE,
        help="edit distance budget per token (0 disables fuzzy matching)",
    )
    group.add_argument(
        "--fuzzy-min-len",
        type=int,
        default=DEFAULT_FUZZY_MIN_LENGTH,
        help="minimum input token length for edit-distance matching",
    )


def _corpus_format(args: argparse.Namespace) -> CorpusFormat:
    return CorpusFormat(
        delimiter=args.delimiter,
        col_doc=args.col_doc,
        col_line=args.col_line,
        col_raw=args.col_raw,
        col_standard=args.col_standard,
        col_code=args.col_code,
    )


def _dictionary_spec(args: argparse.Namespace) -> DictionarySpec:
    return DictionarySpec(
        corpus_sources=tuple(args.corpus),
        external_term_lists=tuple(args.terms),
        mode=args.mode,
        corpus_format=_corpus_format(args),
        term_list_format=TermListFormat(
            delimiter=args.delimiter,
            label_column=args.col_label,
            code_column=args.col_term_code,
        ),
    )


def _matching_config(args: argparse.Namespace):
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    cfg = NormalizationConfig(stopwords=stopwords) if stopwords is not None else NormalizationConfig()
    if args.abbreviations:
        abbrevs = load_abbreviations(args.abbreviations, cfg)
    else:
        abbrevs = default_abbreviations(cfg)
    return cfg, abbrevs


def cmd_build(args: argparse.Namespace) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    cfg = NormalizationConfig(stopwords=stopwords) if stopwords is not None else NormalizationConfig()
    _, report = assemble_dictionary(_dictionary_spec(args), cfg)
    print(report.summary())
    return 0


def cmd_annotate(args: argparse.Namespace) -> int:
    cfg, abbrevs = _matching_config(args)
    trie, report = assemble_dictionary(_dictionary_spec(args), cfg)
    logging.getLogger(__name__).info("dictionary ready: %s", report.summary())

    fmt = _corpus_format(args)
    records = parse_aligned_causes(args.input, fmt)
    lines: dict[tuple[str, str], str] = {}
    for record in records:  # raw text repeats once per assigned code
        lines.setdefault((record.doc_id, record.line_id), record.raw_text)

    def annotate(item: tuple[tuple[str, str], str]) -> AnnotatedLine:
        (doc_id, line_id), raw = item
        anns = annotate_line(raw, trie, cfg, abbrevs, args.max_dist, args.fuzzy_min_len)
        return AnnotatedLine(doc_id, line_id, raw, tuple(anns))

    workers = args.workers or os.cpu_count() or 1
    items = list(lines.items())
    if workers <= 1:
        results = [annotate(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(annotate, items))

    count = write_annotations(results, args.output, fmt)
    print(f"lines={len(items)} annotations={count}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    fmt = _corpus_format(args)
    gold = gold_code_tuples(parse_aligned_causes(args.gold, fmt))
    predicted = predicted_code_tuples(read_annotation_rows(args.pred, fmt))
    report = evaluate(gold, predicted)
    print(report.summary())
    if args.output:
        Path(args.output).write_text(json.dumps(report.to_dict(), indent=2) + "\n", "utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termcoder",
        description="Dictionary-based concept annotation: build, annotate, evaluate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build a dictionary and print its report")
    _add_format_options(build)
    _add_dictionary_options(build)
    build.add_argument("--stopwords", type=Path, help="stopword file (default: built-in list)")
    build.set_defaults(func=cmd_build)

    annotate = sub.add_parser("annotate", help="annotate a corpus against a dictionary")
    _add_format_options(annotate)
    _add_dictionary_options(annotate)
    _add_matching_options(annotate)
    annotate.add_argument("--input", type=Path, required=True, help="corpus CSV to annotate")
    annotate.add_argument("--output", type=Path, required=True, help="annotation CSV to write")
    annotate.add_argument(
        "--workers",
        type=int,
        default=0,
        help="annotation workers (default: number of processors); output order is fixed",
    )
    annotate.set_defaults(func=cmd_annotate)

    evaluate_ = sub.add_parser("eval", help="score predictions against gold codes")
    _add_format_options(evaluate_)
    evaluate_.add_argument("--gold", type=Path, required=True, help="gold corpus CSV")
    evaluate_.add_argument("--pred", type=Path, required=True, help="predicted annotation CSV")
    evaluate_.add_argument("--output", type=Path, help="write the report as JSON here")
    evaluate_.set_defaults(func=cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
