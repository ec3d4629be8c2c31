"""Per-subcorpus element frequencies and smoothed log-odds z-scores.

Two labeled subcorpora (conventionally ``i`` = conspiracy, ``j`` =
mainstream) are compared label by label within one element kind.  The
score is the +1-smoothed log-odds ratio, variance-normalized:

    z = [ln((f_i+1)/(n_i-f_i+1)) - ln((f_j+1)/(n_j-f_j+1))]
        / sqrt(1/(f_i+1) + 1/(f_j+1))

A positive z means the label is over-represented in subcorpus i; the sign
flips exactly under swapping the subcorpora.  No background corpus or
configurable prior is involved: the smoothing constant is fixed at +1 and
the logarithm is natural.

Counts are never mixed across element kinds: plot frequencies are scored
against the plot vocabulary only, characters against characters, and so on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .mining import ORDERED_KINDS, ElementKind, NarrativeElement

__all__ = [
    "ElementCounts",
    "EmptyCorpus",
    "UnknownLabel",
    "ZScoredElement",
    "aggregate",
    "counts_from_json_dict",
    "counts_to_json_dict",
    "merge_aggregates",
    "rank",
    "rank_table",
    "top_bottom",
    "z_score",
]


class UnknownLabel(ValueError):
    """A record carries a subcorpus label outside the configured pair."""


class EmptyCorpus(ValueError):
    """One subcorpus contributed zero elements of every kind."""


def z_score(f_i: int, n_i: int, f_j: int, n_j: int) -> float:
    """Smoothed log-odds z-score of a label with frequency f and total n per subcorpus.

    Requires 0 <= f_i <= n_i and 0 <= f_j <= n_j; the +1 smoothing keeps
    every logarithm and the variance term finite, including at f = 0.
    Computed in double precision.
    """
    if not (0 <= f_i <= n_i and 0 <= f_j <= n_j):
        raise ValueError(f"need 0 <= f <= n, got f_i={f_i} n_i={n_i} f_j={f_j} n_j={n_j}")
    log_odds = math.log((f_i + 1) / (n_i - f_i + 1)) - math.log((f_j + 1) / (n_j - f_j + 1))
    return log_odds / math.sqrt(1.0 / (f_i + 1) + 1.0 / (f_j + 1))


@dataclass(frozen=True)
class ZScoredElement:
    label: str
    z: float
    f_i: int
    f_j: int


@dataclass
class ElementCounts:
    """Frequency tables of one element kind for a fixed (i, j) subcorpus pair."""

    kind: ElementKind
    subcorpus_i: str
    subcorpus_j: str
    counts_i: dict[str, int] = field(default_factory=dict)
    counts_j: dict[str, int] = field(default_factory=dict)

    @property
    def n_i(self) -> int:
        return sum(self.counts_i.values())

    @property
    def n_j(self) -> int:
        return sum(self.counts_j.values())

    def vocabulary(self) -> list[str]:
        """Union of labels across both subcorpora, sorted."""
        return sorted(set(self.counts_i) | set(self.counts_j))

    def add(self, subcorpus: str, label: str, count: int = 1) -> None:
        if subcorpus == self.subcorpus_i:
            self.counts_i[label] = self.counts_i.get(label, 0) + count
        elif subcorpus == self.subcorpus_j:
            self.counts_j[label] = self.counts_j.get(label, 0) + count
        else:
            raise UnknownLabel(
                f"subcorpus {subcorpus!r} is neither "
                f"{self.subcorpus_i!r} nor {self.subcorpus_j!r}"
            )

    def merge(self, other: "ElementCounts") -> "ElementCounts":
        """Combine two count tables; associative and commutative."""
        if (self.kind, self.subcorpus_i, self.subcorpus_j) != (
            other.kind,
            other.subcorpus_i,
            other.subcorpus_j,
        ):
            raise ValueError("can only merge counts of the same kind and subcorpus pair")
        merged = ElementCounts(self.kind, self.subcorpus_i, self.subcorpus_j)
        for counts, target in (
            (self.counts_i, merged.counts_i),
            (other.counts_i, merged.counts_i),
            (self.counts_j, merged.counts_j),
            (other.counts_j, merged.counts_j),
        ):
            for label, count in counts.items():
                target[label] = target.get(label, 0) + count
        return merged


def aggregate(
    elements: Iterable[tuple[str, NarrativeElement]],
    subcorpora: tuple[str, str] = ("conspiracy", "mainstream"),
) -> dict[ElementKind, ElementCounts]:
    """Tally a stream of (subcorpus label, element) pairs per kind.

    The (i, j) ordering is taken from ``subcorpora`` and fixes the sign
    convention for all downstream scores.  Raises :class:`UnknownLabel` on
    any label outside the pair and :class:`EmptyCorpus` if either subcorpus
    ends up with zero elements across all kinds.
    """
    sub_i, sub_j = subcorpora
    if sub_i == sub_j:
        raise ValueError(f"subcorpus labels must differ, got {sub_i!r} twice")
    table = {kind: ElementCounts(kind, sub_i, sub_j) for kind in ORDERED_KINDS}
    for subcorpus, element in elements:
        table[element.kind].add(subcorpus, element.label)
    for name, side in ((sub_i, "n_i"), (sub_j, "n_j")):
        if sum(getattr(counts, side) for counts in table.values()) == 0:
            raise EmptyCorpus(f"subcorpus {name!r} has no elements of any kind")
    return table


def merge_aggregates(
    a: Mapping[ElementKind, ElementCounts], b: Mapping[ElementKind, ElementCounts]
) -> dict[ElementKind, ElementCounts]:
    return {kind: a[kind].merge(b[kind]) for kind in a}


def rank_table(
    counts_i: Mapping[str, int],
    counts_j: Mapping[str, int],
    n_i: int | None = None,
    n_j: int | None = None,
) -> list[ZScoredElement]:
    """Score every label in the union vocabulary; absent labels count 0.

    Sorted by z descending, ties broken by label ascending.
    """
    if n_i is None:
        n_i = sum(counts_i.values())
    if n_j is None:
        n_j = sum(counts_j.values())
    scored = [
        ZScoredElement(
            label,
            z_score(counts_i.get(label, 0), n_i, counts_j.get(label, 0), n_j),
            counts_i.get(label, 0),
            counts_j.get(label, 0),
        )
        for label in set(counts_i) | set(counts_j)
    ]
    scored.sort(key=lambda e: (-e.z, e.label))
    return scored


def rank(counts: ElementCounts) -> list[ZScoredElement]:
    """Rank one kind's vocabulary by z, descending."""
    return rank_table(counts.counts_i, counts.counts_j)


def top_bottom(
    ranked: list[ZScoredElement], n: int
) -> tuple[list[ZScoredElement], list[ZScoredElement]]:
    """First min(n, len) entries, and the last min(n, len) reversed.

    The bottom list leads with the most j-over-represented label.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = min(n, len(ranked))
    return ranked[:k], ranked[len(ranked) - k :][::-1]


# ---------------------------------------------------------------------------
# JSON form: {kind, labels: [{label, f_i, f_j}], n_i, n_j, subcorpus_i, subcorpus_j}


def counts_to_json_dict(counts: ElementCounts) -> dict:
    return {
        "kind": counts.kind.value,
        "labels": [
            {
                "label": label,
                "f_i": counts.counts_i.get(label, 0),
                "f_j": counts.counts_j.get(label, 0),
            }
            for label in counts.vocabulary()
        ],
        "n_i": counts.n_i,
        "n_j": counts.n_j,
        "subcorpus_i": counts.subcorpus_i,
        "subcorpus_j": counts.subcorpus_j,
    }


def counts_from_json_dict(data: dict) -> ElementCounts:
    counts = ElementCounts(
        ElementKind(data["kind"]), data["subcorpus_i"], data["subcorpus_j"]
    )
    for row in data["labels"]:
        if row["f_i"]:
            counts.counts_i[row["label"]] = row["f_i"]
        if row["f_j"]:
            counts.counts_j[row["label"]] = row["f_j"]
    return counts
