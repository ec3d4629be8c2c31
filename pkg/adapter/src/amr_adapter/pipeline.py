"""Raw-document JSONL to corpus JSONL.

Input records: {"doc_id": ..., "subcorpus": ..., "text": ..., "seeds"?: [...],
"date"?: ...}.  Each document's text is sentence-split and every sentence
runs through the text-to-AMR backend; sentences the backend cannot convert
are dropped and counted.  Output document order matches input order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .backends import TextToAmr
from .sentences import split_sentences


class BadInput(ValueError):
    """A raw-document record violates the schema."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass
class RawDocument:
    doc_id: str
    subcorpus: str
    text: str
    seeds: Optional[list[str]] = None
    date: Optional[str] = None


@dataclass
class ParseStats:
    documents: int = 0
    sentences: int = 0
    graphs: int = 0
    dropped: int = 0


def read_raw_documents(path: str) -> Iterator[RawDocument]:
    with open(path, encoding="utf-8") as handle:
        seen: set[str] = set()
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BadInput(line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(data, dict):
                raise BadInput(line_no, "record is not a JSON object")
            doc_id = data.get("doc_id")
            if not isinstance(doc_id, str) or not doc_id:
                raise BadInput(line_no, "doc_id must be a nonempty string")
            if doc_id in seen:
                raise BadInput(line_no, f"duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            subcorpus = data.get("subcorpus")
            if not isinstance(subcorpus, str) or not subcorpus:
                raise BadInput(line_no, "subcorpus must be a nonempty string")
            text = data.get("text")
            if not isinstance(text, str):
                raise BadInput(line_no, "text must be a string")
            yield RawDocument(
                doc_id, subcorpus, text,
                seeds=data.get("seeds"), date=data.get("date"),
            )


def _well_formed(penman: str) -> bool:
    """Cheap structural screen: one balanced expression with an instance slash."""
    if not penman.startswith("(") or "/" not in penman:
        return False
    depth = 0
    in_string = False
    previous = ""
    for index, ch in enumerate(penman):
        if ch == '"' and previous != "\\":
            in_string = not in_string
        elif not in_string:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    return index == len(penman) - 1
                if depth < 0:
                    return False
        previous = ch
    return False


def parse_documents(
    raw_documents: Iterable[RawDocument],
    backend: TextToAmr,
    stats: Optional[ParseStats] = None,
) -> Iterator[dict]:
    """Yield corpus JSONL records in input order."""
    stats = stats if stats is not None else ParseStats()
    for document in raw_documents:
        sentences = split_sentences(document.text)
        stats.documents += 1
        stats.sentences += len(sentences)
        graphs: list[str] = []
        for penman in backend.parse_batch(sentences):
            if penman is not None and _well_formed(penman):
                graphs.append(penman)
                stats.graphs += 1
            else:
                stats.dropped += 1
        record: dict = {
            "doc_id": document.doc_id,
            "subcorpus": document.subcorpus,
            "graphs": graphs,
        }
        if document.seeds is not None:
            record["seeds"] = document.seeds
        if document.date is not None:
            record["date"] = document.date
        yield record


def run_parse(in_path: str, out: TextIO, backend: TextToAmr) -> ParseStats:
    stats = ParseStats()
    for record in parse_documents(read_raw_documents(in_path), backend, stats):
        out.write(json.dumps(record, ensure_ascii=False) + "\n")
    return stats
