"""Command-line surface tying the pipeline together.

Subcommands:

    mine     corpus JSONL -> elements JSONL
    stats    per-subcorpus document/graph/element tallies
    compare  rank one element kind by smoothed log-odds z-score
    triples  score the ARG0/ARG1 arguments of one frame
    report   plot-data CSV (top/bottom per kind, optional 2-D coordinates)
    validate check a corpus file and report problems

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from typing import Iterator, Optional, Sequence, TextIO

from . import corpus as corpus_io
from .graph import CyclicGraph, MalformedPenman, parse_penman
from .mining import ORDERED_KINDS, ElementKind, mine_all
from .stats import (
    EmptyCorpus,
    UnknownLabel,
    aggregate,
    counts_to_json_dict,
    rank,
    top_bottom,
)
from .triples import UnknownFrame, collect_pairs, pairs_csv

USAGE_ERROR = 1
DATA_ERROR = 2

_KIND_CHOICES = [kind.value for kind in ORDERED_KINDS]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="narramine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="extract narrative elements from a corpus")
    p.add_argument("corpus", help="corpus JSONL path")
    p.add_argument("-o", "--output", help="elements JSONL path (default: stdout)")

    p = sub.add_parser("stats", help="tally documents, graphs, and elements")
    p.add_argument("input", help="corpus or elements JSONL path")

    p = sub.add_parser("compare", help="rank one element kind across the two subcorpora")
    p.add_argument("elements", help="elements JSONL path")
    p.add_argument("--kind", required=True, choices=_KIND_CHOICES)
    p.add_argument("--top", type=int, default=15, help="entries per direction (default 15)")
    p.add_argument("--i", dest="sub_i", default="conspiracy", help="positive-sign subcorpus")
    p.add_argument("--j", dest="sub_j", default="mainstream", help="negative-sign subcorpus")
    p.add_argument("-o", "--output", help="write the full ranking as CSV")
    p.add_argument("--counts", help="write the frequency table as JSON")

    p = sub.add_parser("triples", help="score the arguments of one frame")
    p.add_argument("corpus", help="corpus JSONL path")
    p.add_argument("--frame", required=True, help="frame predicate, e.g. prevent-01")
    p.add_argument("--side", choices=["ARG0", "ARG1"], help="one side only (default: both)")
    p.add_argument("--i", dest="sub_i", default="conspiracy")
    p.add_argument("--j", dest="sub_j", default="mainstream")
    p.add_argument("--render", action="store_true", help="print arrow notation instead of CSV")
    p.add_argument("-o", "--output", help="CSV path (default: stdout)")

    p = sub.add_parser("report", help="emit plot-data CSV for the top/bottom elements")
    p.add_argument("elements", help="elements JSONL path")
    p.add_argument("--coords", help="label,x,y CSV of 2-D positions")
    p.add_argument("--top", type=int, default=15)
    p.add_argument("--i", dest="sub_i", default="conspiracy")
    p.add_argument("--j", dest="sub_j", default="mainstream")
    p.add_argument("-o", "--output", help="CSV path (default: stdout)")

    p = sub.add_parser("validate", help="check a corpus file")
    p.add_argument("corpus", help="corpus JSONL path")

    return parser


@contextlib.contextmanager
def _open_out(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def _mine_records(reader: corpus_io.CorpusReader):
    for document in reader:
        for graph in document.parsed_graphs():
            for element in mine_all(graph):
                yield document.doc_id, document.subcorpus, element


def cmd_mine(args) -> int:
    reader = corpus_io.load_corpus(args.corpus)
    with _open_out(args.output) as out:
        corpus_io.write_elements(_mine_records(reader), out)
    if reader.graphs_skipped:
        print(
            f"warning: skipped {reader.graphs_skipped} malformed graph(s)",
            file=sys.stderr,
        )
    return 0


def _sniff_corpus_file(path: str) -> bool:
    """True if the first record looks like a corpus document (has graphs)."""
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                raise corpus_io.BadRecord(1, "invalid JSON") from None
            return isinstance(record, dict) and "graphs" in record
    return False


def cmd_stats(args) -> int:
    if _sniff_corpus_file(args.input):
        report = corpus_io.stats_report(corpus_io.load_corpus(args.input))
        print(report.to_text(include_graphs=True), end="")
    else:
        report = corpus_io.elements_stats_report(corpus_io.read_elements(args.input))
        print(report.to_text(include_graphs=False), end="")
    return 0


def cmd_compare(args) -> int:
    kind = ElementKind(args.kind)
    pairs = (
        (subcorpus, element)
        for _, subcorpus, element in corpus_io.read_elements(args.elements)
    )
    table = aggregate(pairs, subcorpora=(args.sub_i, args.sub_j))
    ranked = rank(table[kind])
    top, bottom = top_bottom(ranked, args.top)

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["kind", "label", "f_i", "f_j", "z"])
            for entry in ranked:
                writer.writerow(
                    [kind.value, entry.label, entry.f_i, entry.f_j, f"{entry.z:.4f}"]
                )
    if args.counts:
        with open(args.counts, "w", encoding="utf-8") as handle:
            json.dump(counts_to_json_dict(table[kind]), handle, ensure_ascii=False, indent=2)
            handle.write("\n")

    print(f"top ({args.sub_i})")
    for entry in top:
        print(f"  {entry.label} ({entry.z:.2f})")
    print(f"bottom ({args.sub_j})")
    for entry in bottom:
        print(f"  {entry.label} ({entry.z:.2f})")
    return 0


def cmd_triples(args) -> int:
    reader = corpus_io.load_corpus(args.corpus)
    labeled_graphs = (
        (document.subcorpus, graph)
        for document in reader
        for graph in document.parsed_graphs()
    )
    pairs = collect_pairs(labeled_graphs, subcorpora=(args.sub_i, args.sub_j))
    if args.render:
        from .triples import ARGUMENT_SIDES, NarrativeTriple, render_triple, score_arguments

        sides = (args.side,) if args.side else ARGUMENT_SIDES
        with _open_out(args.output) as out:
            for side in sides:
                for entry in score_arguments(pairs, args.frame, side):
                    arc = (entry.label, entry.z)
                    triple = NarrativeTriple(
                        args.frame,
                        arg0=arc if side == "ARG0" else None,
                        arg1=arc if side == "ARG1" else None,
                    )
                    out.write(render_triple(triple) + "\n")
    else:
        with _open_out(args.output) as out:
            out.write(pairs_csv(pairs, args.frame, args.side))
    return 0


def cmd_report(args) -> int:
    import warnings

    pairs = (
        (subcorpus, element)
        for _, subcorpus, element in corpus_io.read_elements(args.elements)
    )
    table = aggregate(pairs, subcorpora=(args.sub_i, args.sub_j))
    ranked = {kind: rank(counts) for kind, counts in table.items()}
    coords = corpus_io.read_coordinates(args.coords) if args.coords else None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", corpus_io.MissingCoordinateWarning)
        data = corpus_io.emit_plot_data(
            ranked, args.top, coords=coords, subcorpora=(args.sub_i, args.sub_j)
        )
    missing = [w for w in caught if issubclass(w.category, corpus_io.MissingCoordinateWarning)]
    if missing:
        print(
            f"warning: {len(missing)} label(s) had no coordinates (blank x,y)",
            file=sys.stderr,
        )
    with _open_out(args.output) as out:
        out.write(data)
    return 0


def cmd_validate(args) -> int:
    problems = 0
    documents = 0
    graphs = 0
    seen: set[str] = set()
    with open(args.corpus, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                document, raw_graphs = corpus_io._parse_record(line_no, line)
            except corpus_io.BadRecord as exc:
                print(f"error: {exc}", file=sys.stderr)
                problems += 1
                continue
            if document.doc_id in seen:
                print(f"error: line {line_no}: duplicate doc_id {document.doc_id!r}", file=sys.stderr)
                problems += 1
                continue
            seen.add(document.doc_id)
            documents += 1
            for index, text in enumerate(raw_graphs):
                try:
                    parse_penman(text, sentence_index=index)
                    graphs += 1
                except (MalformedPenman, CyclicGraph) as exc:
                    print(
                        f"error: line {line_no}: doc {document.doc_id!r}"
                        f" graph {index}: {exc}",
                        file=sys.stderr,
                    )
                    problems += 1
    print(f"documents: {documents}")
    print(f"graphs: {graphs}")
    print(f"problems: {problems}")
    return 0 if problems == 0 else DATA_ERROR


_COMMANDS = {
    "mine": cmd_mine,
    "stats": cmd_stats,
    "compare": cmd_compare,
    "triples": cmd_triples,
    "report": cmd_report,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (
        corpus_io.BadRecord,
        MalformedPenman,
        CyclicGraph,
        UnknownLabel,
        UnknownFrame,
        EmptyCorpus,
        OSError,
    ) as exc:
        print(f"narramine {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
