"""Corpus file formats and reporting.

A corpus is line-delimited JSON, one document per line:

    {"doc_id": ..., "subcorpus": ..., "graphs": ["(p / ...)", ...],
     "seeds": [...]?, "date": "YYYY-MM-DD"?}

Mined elements are also line-delimited JSON:

    {"doc_id": ..., "subcorpus": ..., "kind": ..., "label": ...,
     "role_context": ...}

Graph strings that fail to parse are dropped with a counter rather than
aborting the run; schema violations in a record are fatal.  All files are
UTF-8.
"""
from __future__ import annotations

import csv
import datetime
import io
import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, TextIO

from .graph import AmrGraph, CyclicGraph, MalformedPenman, parse_penman
from .mining import ORDERED_KINDS, ElementKind, NarrativeElement, mine_all
from .stats import ZScoredElement, top_bottom

__all__ = [
    "BadRecord",
    "CorpusReader",
    "CorpusStatsReport",
    "Document",
    "MissingCoordinateWarning",
    "SubcorpusStats",
    "display_label",
    "elements_stats_report",
    "emit_plot_data",
    "load_corpus",
    "read_coordinates",
    "read_elements",
    "stats_report",
    "write_elements",
]


class BadRecord(ValueError):
    """A corpus or elements record violates the schema."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class MissingCoordinateWarning(UserWarning):
    """A plot-data label had no entry in the coordinates file."""


@dataclass
class Document:
    """One source document: an id, its subcorpus label, and one Penman string per sentence."""

    doc_id: str
    subcorpus: str
    graphs: list[str]
    seeds: Optional[list[str]] = None
    date: Optional[str] = None

    def parsed_graphs(self) -> Iterator[AmrGraph]:
        """Parse each sentence graph with its ordinal as sentence_index."""
        for index, text in enumerate(self.graphs):
            yield parse_penman(text, sentence_index=index)


def _parse_record(line_no: int, line: str) -> tuple[Document, list[str]]:
    """Validate one corpus line; returns the document plus its raw graph strings.

    The returned document has an empty ``graphs`` list: the caller decides
    which raw strings survive parse validation.
    """
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise BadRecord(line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise BadRecord(line_no, "record is not a JSON object")
    doc_id = data.get("doc_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise BadRecord(line_no, "doc_id must be a nonempty string")
    subcorpus = data.get("subcorpus")
    if not isinstance(subcorpus, str) or not subcorpus:
        raise BadRecord(line_no, "subcorpus must be a nonempty string")
    graphs = data.get("graphs")
    if not isinstance(graphs, list) or not all(isinstance(g, str) for g in graphs):
        raise BadRecord(line_no, "graphs must be a list of strings")
    seeds = data.get("seeds")
    if seeds is not None and (
        not isinstance(seeds, list) or not all(isinstance(s, str) for s in seeds)
    ):
        raise BadRecord(line_no, "seeds must be a list of strings")
    date = data.get("date")
    if date is not None:
        if not isinstance(date, str):
            raise BadRecord(line_no, "date must be an ISO-8601 string")
        try:
            datetime.date.fromisoformat(date)
        except ValueError:
            raise BadRecord(line_no, f"date {date!r} is not ISO-8601") from None
    return Document(doc_id, subcorpus, [], seeds=seeds, date=date), graphs


class CorpusReader:
    """Streaming reader for corpus JSONL.

    Iterating yields validated :class:`Document` objects whose ``graphs``
    contain only strings the Penman parser accepts; rejected strings bump
    ``graphs_skipped``.  Duplicate ``doc_id`` values and schema violations
    raise :class:`BadRecord`.  Counters accumulate over one pass.
    """

    def __init__(self, path: str):
        self.path = path
        self.documents = 0
        self.graphs_kept = 0
        self.graphs_skipped = 0

    def __iter__(self) -> Iterator[Document]:
        seen: set[str] = set()
        with open(self.path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                document, raw_graphs = _parse_record(line_no, line)
                if document.doc_id in seen:
                    raise BadRecord(line_no, f"duplicate doc_id {document.doc_id!r}")
                seen.add(document.doc_id)
                for text in raw_graphs:
                    try:
                        parse_penman(text)
                    except (MalformedPenman, CyclicGraph):
                        self.graphs_skipped += 1
                        continue
                    document.graphs.append(text)
                    self.graphs_kept += 1
                self.documents += 1
                yield document


def load_corpus(path: str) -> CorpusReader:
    return CorpusReader(path)


# ---------------------------------------------------------------------------
# Elements JSONL


def write_elements(
    records: Iterable[tuple[str, str, NarrativeElement]], out: TextIO
) -> int:
    """Write (doc_id, subcorpus, element) records as JSONL; returns the row count."""
    count = 0
    for doc_id, subcorpus, element in records:
        row = {
            "doc_id": doc_id,
            "subcorpus": subcorpus,
            "kind": element.kind.value,
            "label": element.label,
            "role_context": element.role_context,
        }
        out.write(json.dumps(row, ensure_ascii=False) + "\n")
        count += 1
    return count


def read_elements(path: str) -> Iterator[tuple[str, str, NarrativeElement]]:
    """Yield (doc_id, subcorpus, element) from an elements JSONL file."""
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BadRecord(line_no, f"invalid JSON: {exc.msg}") from exc
            try:
                element = NarrativeElement(
                    ElementKind(data["kind"]), data["label"], data.get("role_context")
                )
                yield data["doc_id"], data["subcorpus"], element
            except (KeyError, ValueError) as exc:
                raise BadRecord(line_no, str(exc)) from exc


# ---------------------------------------------------------------------------
# Corpus statistics


@dataclass
class SubcorpusStats:
    documents: int = 0
    graphs: int = 0
    totals: dict[ElementKind, int] = field(
        default_factory=lambda: {kind: 0 for kind in ORDERED_KINDS}
    )
    unique: dict[ElementKind, set[str]] = field(
        default_factory=lambda: {kind: set() for kind in ORDERED_KINDS}
    )


@dataclass
class CorpusStatsReport:
    """Document, graph, and element tallies per subcorpus label."""

    per_subcorpus: dict[str, SubcorpusStats] = field(default_factory=dict)

    def to_text(self, include_graphs: bool = True) -> str:
        lines = []
        for name, stats in self.per_subcorpus.items():
            lines.append(f"subcorpus {name}")
            lines.append(f"  documents: {stats.documents}")
            if include_graphs:
                lines.append(f"  graphs: {stats.graphs}")
            for kind in ORDERED_KINDS:
                lines.append(
                    f"  {kind.value}: total={stats.totals[kind]}"
                    f" unique={len(stats.unique[kind])}"
                )
        return "\n".join(lines) + "\n"


def stats_report(documents: Iterable[Document]) -> CorpusStatsReport:
    """Tally a loaded corpus; totals equal the sum of mine_all outputs per kind."""
    report = CorpusStatsReport()
    for document in documents:
        stats = report.per_subcorpus.setdefault(document.subcorpus, SubcorpusStats())
        stats.documents += 1
        for graph in document.parsed_graphs():
            stats.graphs += 1
            for element in mine_all(graph):
                stats.totals[element.kind] += 1
                stats.unique[element.kind].add(element.label)
    return report


def elements_stats_report(
    records: Iterable[tuple[str, str, NarrativeElement]],
) -> CorpusStatsReport:
    """Tally pre-mined element records; graph counts are not recoverable here."""
    report = CorpusStatsReport()
    docs_seen: dict[str, set[str]] = {}
    for doc_id, subcorpus, element in records:
        stats = report.per_subcorpus.setdefault(subcorpus, SubcorpusStats())
        seen = docs_seen.setdefault(subcorpus, set())
        if doc_id not in seen:
            seen.add(doc_id)
            stats.documents += 1
        stats.totals[element.kind] += 1
        stats.unique[element.kind].add(element.label)
    return report


# ---------------------------------------------------------------------------
# Display normalization and plot data

_DISPLAY_SENSE_RE = re.compile(r"^(?P<stem>.+)-\d{2,3}$")


def display_label(label: str) -> str:
    """Strip a trailing sense tag, then truncate at the first hyphen.

    Presentation-level only (plot data and report rendering); counting and
    scoring always use full labels.  Idempotent.
    """
    m = _DISPLAY_SENSE_RE.match(label)
    if m:
        label = m.group("stem")
    head, _, _ = label.partition("-")
    return head or label


def read_coordinates(path: str) -> dict[str, tuple[str, str]]:
    """Read a `label,x,y` CSV into a mapping; coordinates stay verbatim strings.

    Lines starting with ``#`` are metadata comments (seed, model identifiers)
    and are skipped, as is a leading ``label,x,y`` header row.
    """
    coords: dict[str, tuple[str, str]] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        rows = csv.reader(
            line for line in handle if line.strip() and not line.startswith("#")
        )
        for index, row in enumerate(rows):
            if index == 0 and [c.strip().lower() for c in row[:3]] == ["label", "x", "y"]:
                continue
            if len(row) >= 3:
                coords[row[0]] = (row[1], row[2])
    return coords


def emit_plot_data(
    ranked: Mapping[ElementKind, list[ZScoredElement]],
    n: int,
    coords: Optional[Mapping[str, tuple[str, str]]] = None,
    subcorpora: tuple[str, str] = ("conspiracy", "mainstream"),
) -> str:
    """CSV of top-N and bottom-N labels per kind for plotting.

    Columns: kind, label, z, subcorpus, x, y.  The subcorpus column is
    sign-derived (z >= 0 attributes to subcorpus i).  Labels pass through
    :func:`display_label` except entities, which are arbitrary values and
    stay verbatim.  Coordinates are joined on the displayed label; a label
    absent from ``coords`` emits blank x,y with a
    :class:`MissingCoordinateWarning`.
    """
    sub_i, sub_j = subcorpora
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "label", "z", "subcorpus", "x", "y"])
    for kind in ORDERED_KINDS:
        if kind not in ranked:
            continue
        top, bottom = top_bottom(ranked[kind], n)
        for entry in list(top) + list(bottom):
            label = entry.label if kind is ElementKind.ENTITY else display_label(entry.label)
            x = y = ""
            if coords is not None:
                if label in coords:
                    x, y = coords[label]
                else:
                    warnings.warn(
                        f"no coordinates for label {label!r}", MissingCoordinateWarning
                    )
            subcorpus = sub_i if entry.z >= 0 else sub_j
            writer.writerow([kind.value.capitalize(), label, f"{entry.z:.2f}", subcorpus, x, y])
    return buf.getvalue()
