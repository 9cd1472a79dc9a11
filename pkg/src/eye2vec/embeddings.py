"""Embedding vectors for token texts and path encodings.

Vectors come from a loaded table when available, otherwise from a seeded
hash-based generator, so the pipeline runs reproducibly with or without a
pretrained export. Keys are namespaced ``tok:<text>`` and
``path:<encoding>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateVector, FormatError
from .hashing import SplitMix64, fnv1a64
from .pathctx import PathContext

HEADER_PREFIX = "eye2vec-embeddings v1 dim="
DEFAULT_DIM = 128
DEFAULT_SEED = 42


@dataclass
class EmbeddingTable:
    dim: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)
    fallback_seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")
        self.fallback_seed &= 0xFFFFFFFFFFFFFFFF
        for key, vec in self.entries.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (self.dim,) or not np.all(np.isfinite(arr)):
                raise ValueError(f"entry {key!r} is not a finite vector of length {self.dim}")
            arr.flags.writeable = False
            self.entries[key] = arr


def load_table(path: str | Path) -> EmbeddingTable:
    """Load a TSV table: header line, then ``key<TAB>f1 f2 ... fd`` rows."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith(HEADER_PREFIX):
        raise FormatError(1, f"expected header {HEADER_PREFIX!r}<d>")
    try:
        dim = int(lines[0][len(HEADER_PREFIX) :])
    except ValueError:
        raise FormatError(1, "dimension in header is not an integer") from None
    if dim < 1:
        raise FormatError(1, "dimension must be positive")

    entries: dict[str, np.ndarray] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(line_no, "expected exactly one tab between key and values")
        key, values_text = parts
        if not (key.startswith("tok:") or key.startswith("path:")):
            raise FormatError(line_no, f"key {key!r} must be namespaced 'tok:' or 'path:'")
        if key in entries:
            raise FormatError(line_no, f"duplicate key {key!r}")
        components = values_text.split()
        if len(components) != dim:
            raise FormatError(line_no, f"expected {dim} components, got {len(components)}")
        try:
            vector = np.array([float(c) for c in components], dtype=np.float64)
        except ValueError:
            raise FormatError(line_no, "non-numeric vector component") from None
        if not np.all(np.isfinite(vector)):
            raise FormatError(line_no, "vector components must be finite")
        entries[key] = vector
    return EmbeddingTable(dim=dim, entries=entries)


def fallback_vector(key: str, dim: int, fallback_seed: int) -> np.ndarray:
    """Deterministic unit vector for a key absent from the table."""
    stream = SplitMix64(fnv1a64(key) ^ fallback_seed)
    raw = np.empty(dim, dtype=np.float64)
    for i in range(dim):
        raw[i] = 2.0 * stream.next_float01() - 1.0
    norm = math.sqrt(float(np.dot(raw, raw)))
    if norm == 0.0:
        raise DegenerateVector(f"fallback vector for key {key!r} is all zeros")
    out = raw / norm
    out.flags.writeable = False
    return out


def lookup(table: EmbeddingTable, key: str) -> np.ndarray:
    """Stored vector for ``key``, or the seeded fallback when absent."""
    if not (key.startswith("tok:") or key.startswith("path:")):
        raise ValueError(f"key {key!r} must be namespaced 'tok:' or 'path:'")
    stored = table.entries.get(key)
    if stored is not None:
        return stored
    return fallback_vector(key, table.dim, table.fallback_seed)


def context_vector(table: EmbeddingTable, context: PathContext) -> np.ndarray:
    """Concatenated (source token, path, target token) embedding, length 3*dim."""
    return np.concatenate(
        [
            lookup(table, "tok:" + context.source_text),
            lookup(table, "path:" + context.path_encoding),
            lookup(table, "tok:" + context.target_text),
        ]
    )
