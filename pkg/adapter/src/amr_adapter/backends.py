"""Text-to-AMR backends.

``Seq2SeqBackend`` is the production path: a pretrained encoder-decoder
model (BART-style) that emits linearized Penman, loaded from a local model
directory.  Model assets are not bundled; constructing the backend without
them is a fatal error by design.

``RuleBackend`` is a self-contained fallback so the rest of the pipeline is
testable offline: a small PropBank-style frame lexicon plus subject-verb-
object heuristics over surface order.  It is a crude parser, not a lookup
table: any sentence containing a lexicon verb yields a graph derived from
that sentence's tokens.  Sentences without a recognizable frame are dropped
(returned as None) and counted upstream.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Protocol


class TextToAmr(Protocol):
    """One Penman string (or None to drop) per input sentence."""

    name: str

    def parse_batch(self, sentences: list[str]) -> list[Optional[str]]: ...


# ---------------------------------------------------------------------------
# Rule backend

FRAME_LEXICON = {
    "believe": "believe-01",
    "cause": "cause-01",
    "claim": "claim-01",
    "control": "control-01",
    "destroy": "destroy-01",
    "develop": "develop-02",
    "fear": "fear-01",
    "go": "go-02",
    "help": "help-01",
    "infect": "infect-01",
    "kill": "kill-01",
    "lie": "lie-08",
    "oppose": "oppose-01",
    "prevent": "prevent-01",
    "protect": "protect-01",
    "reopen": "reopen-01",
    "say": "say-01",
    "spread": "spread-03",
    "stop": "stop-01",
    "test": "test-01",
    "treat": "treat-03",
    "vaccinate": "vaccinate-01",
    "want": "want-01",
}

_IRREGULAR_VERBS = {
    "said": "say",
    "went": "go",
    "lay": "lie",
    "lied": "lie",
    "spread": "spread",
}

_STOPWORDS = {
    "a", "about", "after", "against", "all", "also", "an", "and", "another",
    "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "but", "by", "can",
    "could", "did", "do", "does", "done", "during", "each", "every", "for",
    "from", "had", "has", "have", "he", "her", "here", "his", "i", "if", "in",
    "into", "is", "it", "its", "may", "might", "more", "most", "must", "no",
    "not", "of", "on", "only", "or", "other", "over", "same", "shall", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "them",
    "then", "there", "these", "they", "this", "those", "to", "under", "us",
    "very", "was", "we", "were", "when", "which", "while", "who", "will",
    "with", "would", "you",
}

_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z'\-]*|\d+(?:\.\d+)?")
_YEAR_RE = re.compile(r"^(?:1[89]\d\d|20\d\d)$")


def _strip_possessive(word: str) -> str:
    return word[:-2] if word.lower().endswith(("'s", "’s")) else word


def frame_for(word: str) -> Optional[str]:
    """Frame for a surface verb form, or None."""
    w = _strip_possessive(word).lower()
    w = _IRREGULAR_VERBS.get(w, w)
    if w in FRAME_LEXICON:
        return FRAME_LEXICON[w]
    for suffix in ("ing", "ed", "es", "s"):
        if w.endswith(suffix) and len(w) > len(suffix) + 2:
            stem = w[: -len(suffix)]
            candidates = [stem, stem + "e"]
            if len(stem) > 2 and stem[-1] == stem[-2]:
                candidates.append(stem[:-1])
            for candidate in candidates:
                if candidate in FRAME_LEXICON:
                    return FRAME_LEXICON[candidate]
    return None


def singularize(word: str) -> str:
    w = word.lower()
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("ses", "xes", "ches", "shes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    return w


@dataclass
class _Token:
    text: str
    start: int

    @property
    def is_word(self) -> bool:
        return self.text[0].isalpha()


class _VarPool:
    def __init__(self):
        self._used: dict[str, int] = {}

    def fresh(self, concept: str) -> str:
        letter = concept[0] if concept[:1].isalpha() else "x"
        count = self._used.get(letter, 0) + 1
        self._used[letter] = count
        return letter if count == 1 else f"{letter}{count}"


@dataclass
class RuleBackend:
    """Frame-lexicon SVO heuristics; deterministic and dependency-free."""

    name: str = "rule-lexicon"

    def parse_batch(self, sentences: list[str]) -> list[Optional[str]]:
        return [self.parse_sentence(s) for s in sentences]

    def parse_sentence(self, sentence: str) -> Optional[str]:
        tokens = [_Token(m.group(), m.start()) for m in _TOKEN_RE.finditer(sentence)]
        frames = [
            (index, frame_for(token.text))
            for index, token in enumerate(tokens)
            if token.is_word and frame_for(token.text)
        ]
        if not frames:
            return None
        main_index, main_frame = frames[0]
        frame_positions = {index for index, _ in frames}

        def noun_at(index: int) -> Optional[str]:
            token = tokens[index]
            if not token.is_word or index in frame_positions:
                return None
            word = _strip_possessive(token.text)
            if word.lower() in _STOPWORDS:
                return None
            if word[0].isupper() and token.start > 0:
                return None  # treated as a named entity below
            return singularize(word)

        subject = next(
            (noun_at(i) for i in range(main_index - 1, -1, -1) if noun_at(i)), None
        )
        the_object = next(
            (noun_at(i) for i in range(main_index + 1, len(tokens)) if noun_at(i)), None
        )

        pool = _VarPool()
        root = pool.fresh(main_frame)
        parts: list[str] = []
        node_vars: dict[str, str] = {}

        if subject:
            node_vars[subject] = pool.fresh(subject)
            parts.append(f":ARG0 ({node_vars[subject]} / {subject})")
        if the_object:
            if the_object in node_vars:
                parts.append(f":ARG1 {node_vars[the_object]}")
            else:
                node_vars[the_object] = pool.fresh(the_object)
                parts.append(f":ARG1 ({node_vars[the_object]} / {the_object})")

        for _, frame in frames[1:]:
            parts.append(f":manner ({pool.fresh(frame)} / {frame})")

        for index, token in enumerate(tokens):
            word = _strip_possessive(token.text)
            if not (
                token.is_word
                and word[0].isupper()
                and token.start > 0
                and word.lower() not in _STOPWORDS
                and index not in frame_positions
            ):
                continue
            escaped = word.replace("\\", "\\\\").replace('"', '\\"')
            name_node = f"({pool.fresh('name')} / name :op1 \"{escaped}\")"
            host = noun_at(index - 1) if index > 0 else None
            if host and host in node_vars:
                # splice into the existing host node
                target = f"({node_vars[host]} / {host}"
                for at, part in enumerate(parts):
                    if part.endswith(target + ")"):
                        parts[at] = part[:-1] + f" :name {name_node})"
                        break
                else:
                    parts.append(f":mod ({pool.fresh(host)} / {host} :name {name_node})")
            elif host:
                parts.append(f":mod ({pool.fresh(host)} / {host} :name {name_node})")
            else:
                parts.append(f":mod ({pool.fresh('thing')} / thing :name {name_node})")

        year = next((t.text for t in tokens if _YEAR_RE.match(t.text)), None)
        if year:
            parts.append(f":time ({pool.fresh('date-entity')} / date-entity :year {year})")

        body = " ".join([f"({root} / {main_frame}"] + parts).rstrip() + ")"
        return body


# ---------------------------------------------------------------------------
# Seq2seq backend (requires local model assets)


class Seq2SeqBackend:
    """Pretrained BART-style text-to-Penman model from a local directory.

    Loading pulls in transformers/torch; a missing or unreadable model
    directory raises immediately (model-load failure is fatal).  Decoded
    strings are trimmed to their outermost parenthesized expression;
    outputs with no such expression are dropped as None.
    """

    def __init__(self, model_dir: str, device: str = "cpu", num_beams: int = 4,
                 max_length: int = 512):
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

        self.model_dir = model_dir
        self.tokenizer = AutoTokenizer.from_pretrained(model_dir)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(model_dir).to(device).eval()
        self.device = device
        self.num_beams = num_beams
        self.max_length = max_length
        self.name = f"seq2seq:{model_dir.rstrip('/').rsplit('/', 1)[-1]}"

    def parse_batch(self, sentences: list[str]) -> list[Optional[str]]:
        import torch

        if not sentences:
            return []
        encoded = self.tokenizer(
            sentences, return_tensors="pt", padding=True, truncation=True,
            max_length=self.max_length,
        ).to(self.device)
        with torch.no_grad():
            generated = self.model.generate(
                **encoded, num_beams=self.num_beams, max_length=self.max_length
            )
        decoded = self.tokenizer.batch_decode(generated, skip_special_tokens=True)
        return [_outermost_expression(text) for text in decoded]


def _outermost_expression(text: str) -> Optional[str]:
    start = text.find("(")
    if start < 0:
        return None
    depth = 0
    in_string = False
    previous = ""
    for index in range(start, len(text)):
        ch = text[index]
        if ch == '"' and previous != "\\":
            in_string = not in_string
        elif not in_string:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    return text[start : index + 1]
        previous = ch
    return None


def make_backend(kind: str, model_dir: Optional[str] = None) -> TextToAmr:
    if kind == "rule":
        return RuleBackend()
    if kind == "seq2seq":
        if not model_dir:
            raise ValueError("seq2seq backend needs --model-dir")
        return Seq2SeqBackend(model_dir)
    raise ValueError(f"unknown backend {kind!r}")
