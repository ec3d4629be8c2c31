"""amr_adapter: raw text to corpus JSONL (sentence splitting plus a
text-to-AMR backend) and 2-D projection of label embeddings."""

from .backends import RuleBackend, Seq2SeqBackend, TextToAmr, make_backend
from .embeddings import (
    HashedEmbeddings,
    TransformerInputEmbeddings,
    project_labels,
    write_coordinates,
)
from .pipeline import (
    BadInput,
    ParseStats,
    RawDocument,
    parse_documents,
    read_raw_documents,
    run_parse,
)
from .sentences import split_sentences

__version__ = "0.1.0"

__all__ = [
    "BadInput",
    "HashedEmbeddings",
    "ParseStats",
    "RawDocument",
    "RuleBackend",
    "Seq2SeqBackend",
    "TextToAmr",
    "TransformerInputEmbeddings",
    "make_backend",
    "parse_documents",
    "project_labels",
    "read_raw_documents",
    "run_parse",
    "split_sentences",
    "write_coordinates",
]
