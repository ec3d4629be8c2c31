"""narramine: mine narrative elements from Penman-serialized semantic graphs
and contrast two labeled subcorpora with smoothed log-odds z-scores."""

from .graph import (
    AmrGraph,
    Attribute,
    Concept,
    CyclicGraph,
    Edge,
    InvalidGraph,
    MalformedPenman,
    is_predicate,
    parse_penman,
    serialize_penman,
)
from .mining import (
    ElementKind,
    NarrativeElement,
    mine_all,
    mine_characters,
    mine_entities,
    mine_moral,
    mine_plot,
    mine_setting,
)
from .stats import (
    ElementCounts,
    EmptyCorpus,
    UnknownLabel,
    ZScoredElement,
    aggregate,
    rank,
    top_bottom,
    z_score,
)
from .triples import (
    FramePair,
    NarrativeTriple,
    PairCounts,
    UnknownFrame,
    collect_pairs,
    parse_triple,
    render_triple,
    score_arguments,
)
from .corpus import (
    BadRecord,
    CorpusStatsReport,
    Document,
    display_label,
    emit_plot_data,
    load_corpus,
    stats_report,
)

__version__ = "0.1.0"

__all__ = [
    "AmrGraph",
    "Attribute",
    "BadRecord",
    "Concept",
    "CorpusStatsReport",
    "CyclicGraph",
    "Document",
    "Edge",
    "ElementCounts",
    "ElementKind",
    "EmptyCorpus",
    "FramePair",
    "InvalidGraph",
    "MalformedPenman",
    "NarrativeElement",
    "NarrativeTriple",
    "PairCounts",
    "UnknownFrame",
    "UnknownLabel",
    "ZScoredElement",
    "aggregate",
    "collect_pairs",
    "display_label",
    "emit_plot_data",
    "is_predicate",
    "load_corpus",
    "mine_all",
    "mine_characters",
    "mine_entities",
    "mine_moral",
    "mine_plot",
    "mine_setting",
    "parse_penman",
    "parse_triple",
    "rank",
    "render_triple",
    "score_arguments",
    "serialize_penman",
    "stats_report",
    "top_bottom",
    "z_score",
]
