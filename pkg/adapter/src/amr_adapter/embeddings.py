"""Label embeddings and 2-D projection.

The production source is the input-embedding matrix of the same pretrained
model that parses the text (mean of sub-token vectors per label, with a
warning when a label falls apart into sub-tokens).  Offline, a hashed
source provides deterministic but semantics-free vectors so the projection
plumbing stays testable.

Dimensionality reduction uses UMAP when the package is installed and
otherwise a deterministic PCA via SVD.  The source, reducer, and seed are
recorded as a comment header in the coordinates CSV.
"""
from __future__ import annotations

import csv
import hashlib
import warnings
from typing import Protocol, Sequence, TextIO

import numpy as np


class SubTokenWarning(UserWarning):
    """A label was not a single vocabulary item; its vector is a sub-token mean."""


class EmbeddingSource(Protocol):
    name: str

    def vectors(self, labels: Sequence[str]) -> np.ndarray: ...


class HashedEmbeddings:
    """Stable per-token random vectors keyed by a content hash.

    Carries no semantics; exists so projection output shape, determinism,
    and file format can be exercised without model assets.
    """

    def __init__(self, dim: int = 64):
        self.dim = dim
        self.name = f"hashed-{dim}d"

    def _token_vector(self, token: str) -> np.ndarray:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "big"))
        return rng.standard_normal(self.dim)

    def vectors(self, labels: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(labels), self.dim))
        for row, label in enumerate(labels):
            tokens = [t for t in label.replace("-", " ").replace("_", " ").split() if t]
            if tokens:
                out[row] = np.mean([self._token_vector(t.lower()) for t in tokens], axis=0)
        return out


class TransformerInputEmbeddings:
    """Input-layer vectors of a local pretrained model directory."""

    def __init__(self, model_dir: str):
        from transformers import AutoModel, AutoTokenizer

        self.tokenizer = AutoTokenizer.from_pretrained(model_dir)
        model = AutoModel.from_pretrained(model_dir)
        self.matrix = model.get_input_embeddings().weight.detach().cpu().numpy()
        self.name = f"input-layer:{model_dir.rstrip('/').rsplit('/', 1)[-1]}"

    def vectors(self, labels: Sequence[str]) -> np.ndarray:
        rows = []
        for label in labels:
            ids = self.tokenizer(label, add_special_tokens=False)["input_ids"]
            if not ids:
                rows.append(np.zeros(self.matrix.shape[1]))
                continue
            if len(ids) > 1:
                warnings.warn(
                    f"label {label!r} is {len(ids)} sub-tokens; using their mean",
                    SubTokenWarning,
                )
            rows.append(self.matrix[ids].mean(axis=0))
        return np.asarray(rows)


def reduce_to_2d(vectors: np.ndarray, seed: int) -> tuple[np.ndarray, str]:
    """(n, 2) coordinates plus the reducer name actually used."""
    try:
        import umap  # optional

        coords = umap.UMAP(n_components=2, random_state=seed).fit_transform(vectors)
        return np.asarray(coords, dtype=float), "umap"
    except ImportError:
        centered = vectors - vectors.mean(axis=0, keepdims=True)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        coords = centered @ vt[:2].T
        if coords.shape[1] < 2:
            coords = np.pad(coords, ((0, 0), (0, 2 - coords.shape[1])))
        return coords, "pca-svd"


def project_labels(
    labels: Sequence[str], source: EmbeddingSource, seed: int = 0
) -> tuple[list[tuple[str, float, float]], str]:
    """One (label, x, y) per distinct label, input order preserved."""
    unique: list[str] = []
    seen = set()
    for label in labels:
        if label not in seen:
            seen.add(label)
            unique.append(label)
    if not unique:
        return [], "none"
    coords, reducer = reduce_to_2d(source.vectors(unique), seed)
    rows = [
        (label, float(coords[i, 0]), float(coords[i, 1])) for i, label in enumerate(unique)
    ]
    return rows, reducer


def write_coordinates(
    out: TextIO, labels: Sequence[str], source: EmbeddingSource, seed: int = 0
) -> int:
    """Write the `label,x,y` CSV with a metadata comment header; returns row count."""
    rows, reducer = project_labels(labels, source, seed)
    out.write(f"# source={source.name} reducer={reducer} seed={seed}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label", "x", "y"])
    for label, x, y in rows:
        writer.writerow([label, f"{x:.6f}", f"{y:.6f}"])
    return len(rows)
