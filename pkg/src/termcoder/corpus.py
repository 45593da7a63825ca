"""Corpus ingestion, annotation output and micro-averaged evaluation.

The corpus layout pairs a physician's raw text line with the human coder's
standard text and its code; the same raw line repeats once per assigned
code. Evaluation compares (document, line, code) tuples pooled over the
whole corpus.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from os import PathLike
from typing import Iterable

from .annotator import Annotation

logger = logging.getLogger(__name__)

PathArg = str | PathLike[str]


class CorpusFormatError(ValueError):
    """A source file does not match the configured CSV layout."""


@dataclass(frozen=True)
class CorpusFormat:
    """CSV dialect and column names for corpus files."""

    delimiter: str = ";"
    col_doc: str = "DocID"
    col_line: str = "LineID"
    col_raw: str = "RawText"
    col_standard: str = "StandardText"
    col_code: str = "ICD10"


@dataclass(frozen=True)
class TermListFormat:
    """Column selection for external label/code term lists.

    Columns are named, or 0-based indexes when both values are digits (the
    file is then read without a header row).
    """

    delimiter: str = ";"
    label_column: str = "label"
    code_column: str = "code"


@dataclass(frozen=True)
class CorpusRecord:
    doc_id: str
    line_id: str
    raw_text: str
    standard_text: str | None = None
    code: str | None = None


def parse_aligned_causes(path: PathArg, fmt: CorpusFormat = CorpusFormat()) -> list[CorpusRecord]:
    """Read an aligned-causes style corpus CSV into records.

    Rows with empty standard text or code are kept (zero-code lines are
    legal); rows missing document/line identity are skipped and counted in
    a warning. A configured column absent from the header is a hard error.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter=fmt.delimiter)
        if reader.fieldnames is None:
            return []
        for col in (fmt.col_doc, fmt.col_line, fmt.col_raw, fmt.col_standard, fmt.col_code):
            if col not in reader.fieldnames:
                raise CorpusFormatError(
                    f"column {col!r} not found in {path} (header: {reader.fieldnames})"
                )
        records: list[CorpusRecord] = []
        skipped = 0
        for row in reader:
            doc = (row.get(fmt.col_doc) or "").strip()
            line = (row.get(fmt.col_line) or "").strip()
            raw = row.get(fmt.col_raw)
            if not doc or not line or raw is None:
                skipped += 1
                continue
            standard = (row.get(fmt.col_standard) or "").strip() or None
            code = (row.get(fmt.col_code) or "").strip() or None
            records.append(CorpusRecord(doc, line, raw, standard, code))
    if skipped:
        logger.warning("skipped %d malformed rows in %s", skipped, path)
    return records


def read_term_list(path: PathArg, fmt: TermListFormat = TermListFormat()) -> list[tuple[str, str]]:
    """Read (label, code) pairs from an external term list CSV."""
    by_index = fmt.label_column.isdigit() and fmt.code_column.isdigit()
    pairs: list[tuple[str, str]] = []
    skipped = 0
    with open(path, newline="", encoding="utf-8") as fh:
        if by_index:
            label_at, code_at = int(fmt.label_column), int(fmt.code_column)
            for row in csv.reader(fh, delimiter=fmt.delimiter):
                if max(label_at, code_at) >= len(row):
                    skipped += 1
                    continue
                pairs.append((row[label_at], row[code_at]))
        else:
            reader = csv.DictReader(fh, delimiter=fmt.delimiter)
            if reader.fieldnames is None:
                return []
            for col in (fmt.label_column, fmt.code_column):
                if col not in reader.fieldnames:
                    raise CorpusFormatError(
                        f"column {col!r} not found in {path} (header: {reader.fieldnames})"
                    )
            for row in reader:
                pairs.append((row.get(fmt.label_column) or "", row.get(fmt.code_column) or ""))
    if skipped:
        logger.warning("skipped %d short rows in %s", skipped, path)
    return pairs


@dataclass(frozen=True)
class EvalReport:
    """Micro-averaged counts and metrics over (doc, line, code) tuples."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_measure: float

    def to_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
        }

    def summary(self) -> str:
        return (
            f"precision {self.precision:.3f} recall {self.recall:.3f} "
            f"f {self.f_measure:.3f}"
        )


def evaluate(gold: Iterable[tuple], predicted: Iterable[tuple]) -> EvalReport:
    """Set comparison of gold vs. predicted tuples, micro-averaged.

    Degenerate denominators: every metric is 1.0 when both sides are empty
    and 0.0 when exactly one side is empty.
    """
    gold_set, pred_set = set(gold), set(predicted)
    tp = len(gold_set & pred_set)
    fp = len(pred_set - gold_set)
    fn = len(gold_set - pred_set)
    if not gold_set and not pred_set:
        precision = recall = 1.0
    elif not gold_set or not pred_set:
        precision = recall = 0.0
    else:
        precision = tp / (tp + fp)
        recall = tp / (tp + fn)
    f_measure = (
        2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    )
    return EvalReport(tp, fp, fn, precision, recall, f_measure)


ANNOTATION_COLUMNS = (
    "doc_id",
    "line_id",
    "start_char",
    "end_char",
    "matched_text",
    "term_label",
    "code",
    "techniques",
)


@dataclass(frozen=True)
class AnnotatedLine:
    """One corpus line plus the annotations found in it."""

    doc_id: str
    line_id: str
    raw_text: str
    annotations: tuple[Annotation, ...]


@dataclass(frozen=True)
class AnnotationRow:
    """One row of the annotation output CSV."""

    doc_id: str
    line_id: str
    start_char: int
    end_char: int
    matched_text: str
    term_label: str
    code: str
    techniques: tuple[str, ...]


def write_annotations(
    lines: Iterable[AnnotatedLine], path: PathArg, fmt: CorpusFormat = CorpusFormat()
) -> int:
    """Write annotations as CSV ordered by (doc, line, start); returns row count."""
    rows = []
    for line in lines:
        for ann in line.annotations:
            rows.append(
                (
                    line.doc_id,
                    line.line_id,
                    ann.start_char,
                    ann.end_char,
                    line.raw_text[ann.start_char : ann.end_char],
                    ann.term_label,
                    ann.code,
                    ",".join(t.label for t in ann.techniques),
                )
            )
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=fmt.delimiter)
        writer.writerow(ANNOTATION_COLUMNS)
        writer.writerows(rows)
    return len(rows)


def read_annotation_rows(
    path: PathArg, fmt: CorpusFormat = CorpusFormat()
) -> list[AnnotationRow]:
    """Read back an annotation CSV written by :func:`write_annotations`."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter=fmt.delimiter)
        if reader.fieldnames is None:
            return []
        for col in ANNOTATION_COLUMNS:
            if col not in reader.fieldnames:
                raise CorpusFormatError(
                    f"column {col!r} not found in {path} (header: {reader.fieldnames})"
                )
        rows = []
        for row in reader:
            techniques = row["techniques"] or ""
            rows.append(
                AnnotationRow(
                    doc_id=row["doc_id"],
                    line_id=row["line_id"],
                    start_char=int(row["start_char"]),
                    end_char=int(row["end_char"]),
                    matched_text=row["matched_text"],
                    term_label=row["term_label"],
                    code=row["code"],
                    techniques=tuple(techniques.split(",")) if techniques else (),
                )
            )
    return rows


def gold_code_tuples(records: Iterable[CorpusRecord]) -> set[tuple[str, str, str]]:
    """Deduplicated (doc, line, code) gold tuples; zero-code rows contribute none."""
    return {(r.doc_id, r.line_id, r.code) for r in records if r.code}


def predicted_code_tuples(rows: Iterable[AnnotationRow]) -> set[tuple[str, str, str]]:
    """Deduplicated (doc, line, code) tuples from an annotation CSV."""
    return {(row.doc_id, row.line_id, row.code) for row in rows if row.code}
