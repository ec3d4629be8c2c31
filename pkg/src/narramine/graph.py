"""Penman notation parsing and serialization.

The graph model is a rooted, directed, acyclic, labeled graph: variables
name instances of concepts, edges carry role labels, and leaves may be
constant attributes (quoted strings, numbers, bare symbols).  Parsing
rewrites every inverse role (``:ARG0-of`` and friends) into a forward edge
with source and target swapped, so downstream consumers never see a role
ending in ``-of``.  Graphs are immutable once constructed and safe to share
across threads or processes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Union

__all__ = [
    "Attribute",
    "AmrGraph",
    "Concept",
    "CyclicGraph",
    "Edge",
    "InvalidGraph",
    "MalformedPenman",
    "is_predicate",
    "parse_penman",
    "serialize_penman",
]

# PropBank-style sense suffix: hyphen plus 2-3 digits, nonempty stem.
_SENSE_RE = re.compile(r"^(?P<stem>.+)-(?P<sense>\d{2,3})$")
# Numeric literals kept verbatim so they round-trip without loss.
_NUMBER_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")
# Conventional Penman variable shape: one lowercase letter plus digits.
_VARIABLE_LIKE_RE = re.compile(r"^[a-z][0-9]*$")


class MalformedPenman(ValueError):
    """Penman text that cannot be turned into a valid graph.

    Carries the character offset of the offending token and a reason.
    Parsing never returns a partial graph: any structural problem raises.
    """

    def __init__(self, position: int, reason: str):
        super().__init__(f"offset {position}: {reason}")
        self.position = position
        self.reason = reason


class CyclicGraph(ValueError):
    """Instance-to-instance edges form a directed cycle after normalization."""


class InvalidGraph(ValueError):
    """A constructed graph violates a structural invariant."""


@dataclass(frozen=True)
class Attribute:
    """Constant edge target: a quoted string, a number, or a bare symbol.

    ``value`` holds the quotation-stripped content for strings and the
    verbatim lexeme for numbers and symbols.
    """

    value: str
    value_class: str  # "string" | "number" | "symbol"

    _CLASSES = ("string", "number", "symbol")

    def __post_init__(self):
        if self.value_class not in self._CLASSES:
            raise ValueError(f"unknown attribute class {self.value_class!r}")


class Edge(NamedTuple):
    source: str
    role: str
    target: Union[str, Attribute]  # variable id or constant


EdgeTarget = Union[str, Attribute]


@dataclass(frozen=True)
class Concept:
    """A node label, split into the full label and its optional sense suffix."""

    label: str
    sense: str | None = None

    @classmethod
    def from_label(cls, label: str) -> "Concept":
        m = _SENSE_RE.match(label)
        return cls(label, m.group("sense") if m else None)


def is_predicate(concept: Union[str, Concept]) -> bool:
    """True iff the concept carries a 2-3 digit sense suffix (a frame)."""
    label = concept.label if isinstance(concept, Concept) else concept
    return _SENSE_RE.match(label) is not None


@dataclass(frozen=True)
class AmrGraph:
    """One sentence's semantic graph.

    Invariants enforced at construction time:

    * ``root`` is a declared instance;
    * every edge source, and every variable-valued edge target, is a
      declared instance;
    * no role label ends in ``-of``;
    * the instance-to-instance edge relation is acyclic;
    * every instance is reachable from the root ignoring edge direction.
    """

    root: str
    instances: Mapping[str, str]  # variable id -> concept label
    edges: tuple[Edge, ...]
    sentence_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "instances", MappingProxyType(dict(self.instances)))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        self._validate()

    def _validate(self) -> None:
        if self.root not in self.instances:
            raise InvalidGraph(f"root {self.root!r} is not a declared instance")
        for src, role, tgt in self.edges:
            if src not in self.instances:
                raise InvalidGraph(f"edge source {src!r} is not a declared instance")
            if isinstance(tgt, str) and tgt not in self.instances:
                raise InvalidGraph(f"edge target {tgt!r} is not a declared instance")
            if role.endswith("-of"):
                raise InvalidGraph(f"role {role!r} not normalized (ends in -of)")
        self._check_acyclic()
        self._check_connected()

    def _check_acyclic(self) -> None:
        # Iterative three-color DFS over instance-to-instance edges.
        succ: dict[str, list[str]] = {v: [] for v in self.instances}
        for src, _, tgt in self.edges:
            if isinstance(tgt, str):
                succ[src].append(tgt)
        state: dict[str, int] = {}  # 1 = on stack, 2 = done
        for start in self.instances:
            if state.get(start):
                continue
            stack: list[tuple[str, int]] = [(start, 0)]
            while stack:
                node, i = stack.pop()
                if i == 0:
                    state[node] = 1
                if i < len(succ[node]):
                    stack.append((node, i + 1))
                    nxt = succ[node][i]
                    if state.get(nxt) == 1:
                        raise CyclicGraph(f"cycle through {nxt!r}")
                    if not state.get(nxt):
                        stack.append((nxt, 0))
                else:
                    state[node] = 2

    def _check_connected(self) -> None:
        neighbors: dict[str, set[str]] = {v: set() for v in self.instances}
        for src, _, tgt in self.edges:
            if isinstance(tgt, str):
                neighbors[src].add(tgt)
                neighbors[tgt].add(src)
        seen = {self.root}
        frontier = [self.root]
        while frontier:
            for nxt in neighbors[frontier.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        missing = set(self.instances) - seen
        if missing:
            raise InvalidGraph(f"instances unreachable from root: {sorted(missing)}")

    def concept(self, variable: str) -> str:
        return self.instances[variable]

    def instance_edges(self) -> Iterator[Edge]:
        """Edges whose target is another instance, in stored order."""
        return (e for e in self.edges if isinstance(e.target, str))

    def attribute_edges(self) -> Iterator[Edge]:
        """Edges whose target is a constant attribute, in stored order."""
        return (e for e in self.edges if isinstance(e.target, Attribute))


# ---------------------------------------------------------------------------
# Tokenizer


class _Token(NamedTuple):
    kind: str  # "(", ")", "/", "role", "string", "atom"
    value: str
    pos: int


_ATOM_STOP = set(' \t\r\n()/"')


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, ch, i))
            i += 1
        elif ch == "/":
            tokens.append(_Token("/", ch, i))
            i += 1
        elif ch == '"':
            start = i
            i += 1
            chars: list[str] = []
            while i < n and text[i] != '"':
                if text[i] == "\\":
                    i += 1
                    if i >= n:
                        raise MalformedPenman(start, "unterminated string")
                chars.append(text[i])
                i += 1
            if i >= n:
                raise MalformedPenman(start, "unterminated string")
            tokens.append(_Token("string", "".join(chars), start))
            i += 1
        elif ch == ":":
            start = i
            i += 1
            j = i
            while j < n and text[j] not in _ATOM_STOP:
                j += 1
            if j == i:
                raise MalformedPenman(start, "empty role label")
            tokens.append(_Token("role", text[i:j], start))
            i = j
        else:
            start = i
            j = i
            while j < n and text[j] not in _ATOM_STOP and text[j] != ":":
                j += 1
            tokens.append(_Token("atom", text[start:j], start))
            i = j
    return tokens


# ---------------------------------------------------------------------------
# Parser

# Raw edge target before variable/constant resolution.
class _PendingAtom(NamedTuple):
    value: str
    pos: int


class _Parser:
    def __init__(self, tokens: list[_Token], length: int):
        self._tokens = tokens
        self._i = 0
        self._end = length
        self.instances: dict[str, str] = {}
        # (source, role, target, pos) with target: str (child var) | Attribute | _PendingAtom
        self.edges: list[tuple[str, str, object, int]] = []

    def _peek(self) -> _Token | None:
        return self._tokens[self._i] if self._i < len(self._tokens) else None

    def _next(self, expected: str) -> _Token:
        tok = self._peek()
        if tok is None:
            raise MalformedPenman(self._end, f"unexpected end of input, expected {expected}")
        self._i += 1
        return tok

    def parse(self) -> str:
        root = self._parse_node()
        tok = self._peek()
        if tok is not None:
            raise MalformedPenman(tok.pos, f"trailing content {tok.value!r} after graph")
        return root

    def _parse_node(self) -> str:
        opener = self._next("'('")
        if opener.kind != "(":
            raise MalformedPenman(opener.pos, f"expected '(', found {opener.value!r}")
        var_tok = self._next("a variable")
        if var_tok.kind != "atom":
            raise MalformedPenman(var_tok.pos, f"expected a variable, found {var_tok.value!r}")
        variable = var_tok.value
        slash = self._next("'/'")
        if slash.kind != "/":
            raise MalformedPenman(slash.pos, f"expected '/' after variable {variable!r}")
        concept_tok = self._next("a concept")
        if concept_tok.kind != "atom":
            raise MalformedPenman(concept_tok.pos, "empty concept")
        if variable in self.instances:
            raise MalformedPenman(var_tok.pos, f"duplicate declaration of variable {variable!r}")
        self.instances[variable] = concept_tok.value

        while True:
            tok = self._peek()
            if tok is None:
                raise MalformedPenman(self._end, "unbalanced parentheses: missing ')'")
            if tok.kind == ")":
                self._i += 1
                return variable
            if tok.kind != "role":
                raise MalformedPenman(tok.pos, f"expected a role or ')', found {tok.value!r}")
            self._i += 1
            role = tok.value
            target_tok = self._peek()
            if target_tok is None:
                raise MalformedPenman(self._end, f"role :{role} has no argument")
            if target_tok.kind == "(":
                # Reserve the slot first so edges keep textual order even
                # though the child subtree parses before its variable is known.
                slot = len(self.edges)
                self.edges.append((variable, role, "", target_tok.pos))
                child = self._parse_node()
                self.edges[slot] = (variable, role, child, target_tok.pos)
            elif target_tok.kind == "string":
                self._i += 1
                self.edges.append(
                    (variable, role, Attribute(target_tok.value, "string"), target_tok.pos)
                )
            elif target_tok.kind == "atom":
                self._i += 1
                self.edges.append(
                    (variable, role, _PendingAtom(target_tok.value, target_tok.pos), target_tok.pos)
                )
            else:
                raise MalformedPenman(
                    target_tok.pos, f"role :{role} has no argument, found {target_tok.value!r}"
                )


def _resolve_atom(atom: _PendingAtom, instances: Mapping[str, str]) -> EdgeTarget:
    # Declared variables win; then numeric literals; a variable-shaped atom
    # that was never declared is a broken reference, not a symbol.
    if atom.value in instances:
        return atom.value
    if _NUMBER_RE.match(atom.value):
        return Attribute(atom.value, "number")
    if _VARIABLE_LIKE_RE.match(atom.value):
        raise MalformedPenman(atom.pos, f"undeclared variable reference {atom.value!r}")
    return Attribute(atom.value, "symbol")


def parse_penman(text: str, sentence_index: int = 0) -> AmrGraph:
    """Parse a single well-formed Penman expression into an :class:`AmrGraph`.

    Whitespace, newlines and indentation are insignificant.  Inverse roles
    are rewritten as forward edges with source and target swapped, and bare
    variables in argument position become edges to the existing instance.

    Raises :class:`MalformedPenman` on any structural problem in the text
    and :class:`CyclicGraph` if forward-edge normalization yields a cycle.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedPenman(0, "empty input")
    parser = _Parser(tokens, len(text))
    root = parser.parse()

    edges: list[Edge] = []
    for source, role, target, pos in parser.edges:
        if isinstance(target, _PendingAtom):
            target = _resolve_atom(target, parser.instances)
        if role.endswith("-of"):
            base = role[: -len("-of")]
            if not base:
                raise MalformedPenman(pos, "empty role label")
            if isinstance(target, Attribute):
                raise MalformedPenman(pos, f"inverse role :{role} cannot take a constant argument")
            edges.append(Edge(target, base, source))
        else:
            edges.append(Edge(source, role, target))

    return AmrGraph(
        root=root,
        instances=parser.instances,
        edges=tuple(edges),
        sentence_index=sentence_index,
    )


# ---------------------------------------------------------------------------
# Serializer

_ESCAPE_RE = re.compile(r'(["\\])')


def _render_attribute(attr: Attribute) -> str:
    if attr.value_class == "string":
        return '"' + _ESCAPE_RE.sub(r"\\\1", attr.value) + '"'
    return attr.value


def serialize_penman(graph: AmrGraph, indent: int | None = None) -> str:
    """Emit canonical Penman text for ``graph``.

    Traversal is depth-first from the root with children in stored edge
    order.  Instances are declared at their first forward mention where
    possible; an inverse (``-of``) role is written only for subgraphs that
    forward edges cannot reach, and edges to instances already written
    appear as bare variables.  ``parse_penman(serialize_penman(g))`` is
    isomorphic to ``g``.

    ``indent=None`` yields a single line; an integer pretty-prints with that
    many spaces per nesting level.
    """
    incident: dict[str, list[tuple[int, Edge, bool]]] = {v: [] for v in graph.instances}
    for idx, edge in enumerate(graph.edges):
        incident[edge.source].append((idx, edge, False))
        if isinstance(edge.target, str):
            incident[edge.target].append((idx, edge, True))

    # Instances reachable from the root by forward edges alone: these are
    # always declared by a forward edge, so an inverse edge into them can be
    # deferred and written as a plain reentrancy at its source.
    forward_reachable = {graph.root}
    frontier = [graph.root]
    while frontier:
        for _, edge, inverse in incident[frontier.pop()]:
            if not inverse and isinstance(edge.target, str):
                if edge.target not in forward_reachable:
                    forward_reachable.add(edge.target)
                    frontier.append(edge.target)

    emitted: set[int] = set()
    visited: set[str] = set()

    def render(variable: str, depth: int) -> str:
        visited.add(variable)
        sep = " " if indent is None else "\n" + " " * (indent * (depth + 1))
        parts = [f"({variable} / {graph.instances[variable]}"]
        for idx, edge, inverse in incident[variable]:
            if idx in emitted:
                continue
            if inverse:
                source = edge.source
                if source not in visited and source in forward_reachable:
                    continue  # deferred: the source renders this edge forward
                emitted.add(idx)
                role = f"{edge.role}-of"
                rendered = source if source in visited else render(source, depth + 1)
            else:
                emitted.add(idx)
                role = edge.role
                if isinstance(edge.target, Attribute):
                    rendered = _render_attribute(edge.target)
                elif edge.target in visited:
                    rendered = edge.target
                else:
                    rendered = render(edge.target, depth + 1)
            parts.append(f"{sep}:{role} {rendered}")
        return "".join(parts) + ")"

    return render(graph.root, 0)
