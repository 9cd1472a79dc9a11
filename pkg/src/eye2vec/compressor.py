"""Aggregate a transition profile into one eye vector per recording.

The eye vector is the ratio-weighted sum of the profile's context vectors;
the more often a context was traversed, the more its embedding contributes.
Summation runs in a canonical order so outputs are bit-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingTable, context_vector
from .errors import EmptyProfileError, FormatError, ZeroVectorError
from .linker import TransitionProfile


@dataclass
class EyeVector:
    recording_id: str
    dim: int
    values: np.ndarray
    normalized: bool
    meta: dict

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.dim,):
            raise ValueError(f"values must have length {self.dim}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        if self.normalized and abs(float(np.linalg.norm(self.values)) - 1.0) > 1e-9:
            raise ValueError("vector is marked normalized but its L2 norm is not 1")
        self.values.flags.writeable = False

    def to_json_dict(self) -> dict:
        return {
            "recording_id": self.recording_id,
            "dim": self.dim,
            "normalized": self.normalized,
            "meta": dict(self.meta),
            "values": [float(v) for v in self.values],
        }

    def to_json(self) -> str:
        # json.dumps renders floats via repr(), the shortest round-trip form.
        return json.dumps(self.to_json_dict(), ensure_ascii=False)

    @classmethod
    def from_json_dict(cls, data: dict) -> "EyeVector":
        try:
            return cls(
                recording_id=data["recording_id"],
                dim=data["dim"],
                values=np.array(data["values"], dtype=np.float64),
                normalized=data["normalized"],
                meta=dict(data["meta"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(1, f"bad eye-vector JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "EyeVector":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.lineno, f"invalid JSON: {exc.msg}") from None
        return cls.from_json_dict(data)


def read_eye_vector(path: str | Path) -> EyeVector:
    return EyeVector.from_json(Path(path).read_text(encoding="utf-8"))


def compress(
    profile: TransitionProfile, table: EmbeddingTable, normalize: bool = True
) -> EyeVector:
    """Ratio-weighted sum of the profile's context vectors.

    Entries are summed sorted by context string so the floating-point result
    does not depend on profile construction order.
    """
    if profile.total_transitions == 0:
        raise EmptyProfileError(f"profile {profile.recording_id!r} has no transitions")
    out_dim = 3 * table.dim
    raw = np.zeros(out_dim, dtype=np.float64)
    for context in sorted(profile.entries, key=lambda c: c.context_string):
        raw += profile.entries[context].ratio * context_vector(table, context)
    if normalize:
        norm = float(np.linalg.norm(raw))
        if norm == 0.0:
            raise ZeroVectorError("weighted context vectors cancel to the zero vector")
        values = raw / norm
    else:
        values = raw
    meta = {
        "total_transitions": profile.total_transitions,
        "distinct_contexts": len(profile.entries),
        "embedding_seed": table.fallback_seed,
        "created_from": str(profile.content_hash()),
    }
    return EyeVector(
        recording_id=profile.recording_id,
        dim=out_dim,
        values=values,
        normalized=normalize,
        meta=meta,
    )
