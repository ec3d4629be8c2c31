"""Deterministic sentence splitting for English news text."""
from __future__ import annotations

import re

# Tokens that end with a period without ending a sentence.
_ABBREVIATIONS = {
    "dr", "mr", "mrs", "ms", "prof", "st", "no", "fig", "etc", "vs",
    "inc", "ltd", "co", "e.g", "i.e", "u.s", "u.k", "approx",
}

_BOUNDARY = re.compile(r"([.!?]+[\"']?)\s+")
_LEADING_PUNCT = re.compile(r"^[^\w]+")


def split_sentences(text: str) -> list[str]:
    """Split on sentence-final punctuation followed by a capital, digit, or quote.

    A short abbreviation list guards the usual false boundaries; whitespace
    runs (including newlines) inside a sentence are preserved as-is.
    """
    sentences: list[str] = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        nxt = text[match.end() : match.end() + 1]
        if nxt and not (nxt.isupper() or nxt.isdigit() or nxt in "\"'"):
            continue
        tail = text[start : match.start(1)]
        last = re.search(r"(\S+)$", tail)
        if last and match.group(1) == ".":
            word = _LEADING_PUNCT.sub("", last.group(1).lower())
            if word in _ABBREVIATIONS:
                continue
        sentences.append(text[start : match.end(1)].strip())
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return [s for s in sentences if s]
