"""Frame-argument analysis across two subcorpora.

For a frame predicate, the fillers of its ARG0 and ARG1 slots are counted
per subcorpus and scored with the same smoothed log-odds z as element
rankings, except that the totals are per (frame, side): the vocabulary is
everything observed in that argument slot of that frame.  Unlike character
mining, predicates and attribute values are legitimate arguments here.

Scored arcs can be rendered in an arrow notation that mirrors
subject-verb-object order: ARG0 sits left of the frame with a left arrow,
ARG1 right of it with a right arrow, the z-score riding on the arrow:

    doctor <-1.0-- prevent-01 --1.0-> spread-03
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import AmrGraph, Attribute, is_predicate
from .stats import UnknownLabel, ZScoredElement, rank_table

__all__ = [
    "ARGUMENT_SIDES",
    "FramePair",
    "NarrativeTriple",
    "PairCounts",
    "UnknownFrame",
    "collect_pairs",
    "pairs_csv",
    "parse_triple",
    "render_triple",
    "score_arguments",
]

ARGUMENT_SIDES = ("ARG0", "ARG1")


class UnknownFrame(ValueError):
    """The requested frame has no argument pairs in either subcorpus."""


@dataclass(frozen=True)
class FramePair:
    """One (frame, side, argument) incidence."""

    frame: str
    side: str
    argument: str

    def __post_init__(self):
        if self.side not in ARGUMENT_SIDES:
            raise ValueError(f"side must be one of {ARGUMENT_SIDES}, got {self.side!r}")
        if not is_predicate(self.frame):
            raise ValueError(f"frame {self.frame!r} is not a predicate")


@dataclass
class PairCounts:
    """Argument counts keyed by (frame, side, argument), per subcorpus pair."""

    subcorpus_i: str
    subcorpus_j: str
    counts: dict[tuple[str, str, str], list[int]] = field(default_factory=dict)

    def add(self, subcorpus: str, pair: FramePair, count: int = 1) -> None:
        if subcorpus == self.subcorpus_i:
            slot = 0
        elif subcorpus == self.subcorpus_j:
            slot = 1
        else:
            raise UnknownLabel(
                f"subcorpus {subcorpus!r} is neither "
                f"{self.subcorpus_i!r} nor {self.subcorpus_j!r}"
            )
        key = (pair.frame, pair.side, pair.argument)
        self.counts.setdefault(key, [0, 0])[slot] += count

    def merge(self, other: "PairCounts") -> "PairCounts":
        if (self.subcorpus_i, self.subcorpus_j) != (other.subcorpus_i, other.subcorpus_j):
            raise ValueError("can only merge pair counts of the same subcorpus pair")
        merged = PairCounts(self.subcorpus_i, self.subcorpus_j)
        for counts in (self.counts, other.counts):
            for key, (fi, fj) in counts.items():
                slot = merged.counts.setdefault(key, [0, 0])
                slot[0] += fi
                slot[1] += fj
        return merged

    def frames(self) -> list[str]:
        return sorted({frame for frame, _, _ in self.counts})

    def has_frame(self, frame: str) -> bool:
        return any(key[0] == frame for key in self.counts)

    def arguments(self, frame: str, side: str) -> dict[str, tuple[int, int]]:
        """Argument -> (f_i, f_j) for one frame slot."""
        return {
            arg: (fi, fj)
            for (f, s, arg), (fi, fj) in self.counts.items()
            if f == frame and s == side
        }


def collect_pairs(
    graphs: Iterable[tuple[str, AmrGraph]],
    subcorpora: tuple[str, str] = ("conspiracy", "mainstream"),
) -> PairCounts:
    """Count one pair per outgoing ARG0/ARG1 edge of every frame instance.

    The argument label is the target's concept (predicates included) or the
    attribute value for constant targets.
    """
    pairs = PairCounts(*subcorpora)
    for subcorpus, graph in graphs:
        for source, role, target in graph.edges:
            if role not in ARGUMENT_SIDES:
                continue
            frame = graph.concept(source)
            if not is_predicate(frame):
                continue
            argument = target.value if isinstance(target, Attribute) else graph.concept(target)
            pairs.add(subcorpus, FramePair(frame, role, argument))
    return pairs


def score_arguments(pairs: PairCounts, frame: str, side: str) -> list[ZScoredElement]:
    """Rank one frame slot's argument vocabulary by z, descending.

    Totals are the slot's pair counts per subcorpus, not corpus-wide
    element totals.  Raises :class:`UnknownFrame` if the frame never occurs
    on either side in either subcorpus; a frame that exists but has no
    pairs on the requested side yields an empty list.
    """
    if side not in ARGUMENT_SIDES:
        raise ValueError(f"side must be one of {ARGUMENT_SIDES}, got {side!r}")
    if not pairs.has_frame(frame):
        raise UnknownFrame(f"frame {frame!r} has no argument pairs in either subcorpus")
    table = pairs.arguments(frame, side)
    counts_i = {arg: fi for arg, (fi, _) in table.items() if fi}
    counts_j = {arg: fj for arg, (_, fj) in table.items() if fj}
    n_i = sum(fi for fi, _ in table.values())
    n_j = sum(fj for _, fj in table.values())
    return rank_table(counts_i, counts_j, n_i, n_j)


# ---------------------------------------------------------------------------
# Arrow notation


@dataclass(frozen=True)
class NarrativeTriple:
    """A frame with scored ARG0/ARG1 arcs; at least one side present."""

    frame: str
    arg0: Optional[tuple[str, float]] = None
    arg1: Optional[tuple[str, float]] = None

    def __post_init__(self):
        if self.arg0 is None and self.arg1 is None:
            raise ValueError("a triple needs at least one argument side")


def render_triple(triple: NarrativeTriple) -> str:
    """`ARG0 <-z-- FRAME --z-> ARG1` with z to one decimal; absent sides omitted."""
    parts = []
    if triple.arg0 is not None:
        label, z = triple.arg0
        parts.append(f"{label} <-{z:.1f}-- ")
    parts.append(triple.frame)
    if triple.arg1 is not None:
        label, z = triple.arg1
        parts.append(f" --{z:.1f}-> {label}")
    return "".join(parts)


_TRIPLE_RE = re.compile(
    r"^(?:(?P<arg0>\S+) <-(?P<z0>-?\d+\.\d)-- )?"
    r"(?P<frame>\S+)"
    r"(?: --(?P<z1>-?\d+\.\d)-> (?P<arg1>\S+))?$"
)


def parse_triple(text: str) -> NarrativeTriple:
    """Inverse of :func:`render_triple` for well-formed notation."""
    m = _TRIPLE_RE.match(text)
    if not m:
        raise ValueError(f"not a triple notation: {text!r}")
    arg0 = (m.group("arg0"), float(m.group("z0"))) if m.group("arg0") else None
    arg1 = (m.group("arg1"), float(m.group("z1"))) if m.group("arg1") else None
    return NarrativeTriple(m.group("frame"), arg0=arg0, arg1=arg1)


def pairs_csv(pairs: PairCounts, frame: str, side: Optional[str] = None) -> str:
    """CSV of scored arguments: frame, side, argument, f_i, f_j, z."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["frame", "side", "argument", "f_i", "f_j", "z"])
    sides = (side,) if side else ARGUMENT_SIDES
    for s in sides:
        for entry in score_arguments(pairs, frame, s):
            writer.writerow([frame, s, entry.label, entry.f_i, entry.f_j, f"{entry.z:.4f}"])
    return buf.getvalue()
