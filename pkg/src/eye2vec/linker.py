"""Link grid fixations to AST leaves and count path-context transitions.

Each consecutive pair of successfully mapped fixations contributes one
transition; the per-context counts are normalized to ratios so recordings of
different lengths stay comparable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

from .gaze import Fixation, GridPos, Recording
from .hashing import fnv1a64
from .minilang import AstNode, LeafToken, leaves
from .pathctx import PathContext, make_context, path_between

DEFAULT_SNAP_TOL_COLS = 3


@dataclass(frozen=True)
class MappedFixation:
    """Outcome of hit-testing one fixation against the leaves."""

    fixation: Fixation
    leaf: LeafToken | None
    mapping: Literal["hit", "snapped", "dropped"]
    snap_distance_cols: int = 0
    drop_reason: str = ""

    def __post_init__(self) -> None:
        if (self.leaf is not None) != (self.mapping in ("hit", "snapped")):
            raise ValueError("leaf must be present exactly for hit/snapped mappings")

    @property
    def is_mapped(self) -> bool:
        return self.leaf is not None


@dataclass(frozen=True)
class LinkOptions:
    snap_tol_cols: int = DEFAULT_SNAP_TOL_COLS
    self_transitions: Literal["keep", "drop"] = "drop"
    chain: Literal["skip", "strict"] = "skip"

    def __post_init__(self) -> None:
        if self.snap_tol_cols < 0:
            raise ValueError("snap_tol_cols must be >= 0")
        if self.self_transitions not in ("keep", "drop"):
            raise ValueError("self_transitions must be 'keep' or 'drop'")
        if self.chain not in ("skip", "strict"):
            raise ValueError("chain must be 'skip' or 'strict'")


@dataclass(frozen=True)
class ProfileEntry:
    count: int
    ratio: float


@dataclass
class TransitionProfile:
    recording_id: str
    entries: dict[PathContext, ProfileEntry] = field(default_factory=dict)
    total_transitions: int = 0

    def __post_init__(self) -> None:
        counted = sum(e.count for e in self.entries.values())
        if counted != self.total_transitions:
            raise ValueError(
                f"counts sum to {counted} but total_transitions is {self.total_transitions}"
            )
        if self.total_transitions > 0:
            ratio_sum = sum(e.ratio for e in self.entries.values())
            if abs(ratio_sum - 1.0) > 1e-9:
                raise ValueError(f"ratios sum to {ratio_sum}, expected 1")

    @classmethod
    def from_counts(cls, recording_id: str, counts: dict[PathContext, int]) -> "TransitionProfile":
        total = sum(counts.values())
        entries = {
            ctx: ProfileEntry(count, count / total)
            for ctx, count in counts.items()
            if count > 0
        }
        return cls(recording_id, entries, total)

    @property
    def is_empty(self) -> bool:
        return self.total_transitions == 0

    def counts(self) -> dict[PathContext, int]:
        return {ctx: e.count for ctx, e in self.entries.items()}

    def content_hash(self) -> int:
        """Order-independent fingerprint of (recording_id, counts)."""
        parts = [f"{self.recording_id}\x1f{self.total_transitions}"]
        for ctx in sorted(self.entries, key=lambda c: c.context_string):
            parts.append(f"{ctx.hash}:{self.entries[ctx].count}")
        return fnv1a64("\x1e".join(parts))

    def sorted_entries(self) -> list[tuple[PathContext, ProfileEntry]]:
        """Entries by descending count, ties by context string ascending."""
        return sorted(self.entries.items(), key=lambda kv: (-kv[1].count, kv[0].context_string))

    def to_json_dict(self) -> dict:
        return {
            "recording_id": self.recording_id,
            "total_transitions": self.total_transitions,
            "entries": [
                {
                    "context": ctx.context_string,
                    "hash": str(ctx.hash),
                    "count": entry.count,
                    "ratio": entry.ratio,
                }
                for ctx, entry in self.sorted_entries()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)


def map_fixation(
    fixation: Fixation, root: AstNode, snap_tol_cols: int = DEFAULT_SNAP_TOL_COLS
) -> MappedFixation:
    """Hit-test a grid fixation against the leaves of ``root``.

    Exact span containment wins; otherwise the nearest leaf on the same line
    within ``snap_tol_cols`` columns is used (ties toward the leaf with the
    smaller start column); otherwise the fixation is dropped.
    """
    if snap_tol_cols < 0:
        raise ValueError("snap_tol_cols must be >= 0")
    pos = fixation.position
    if not isinstance(pos, GridPos):
        raise TypeError("fixation must be in grid mode; run the coordinate converter first")

    best: LeafToken | None = None
    best_distance = 0
    for leaf in leaves(root):
        span = leaf.span
        if span.contains(pos.line, pos.col):
            return MappedFixation(fixation, leaf, "hit")
        if span.start_line != pos.line:
            continue
        if pos.col < span.start_col:
            distance = span.start_col - pos.col
        else:
            distance = pos.col - span.end_col
        if distance <= snap_tol_cols and (
            best is None
            or distance < best_distance
            or (distance == best_distance and span.start_col < best.span.start_col)
        ):
            best = leaf
            best_distance = distance
    if best is not None:
        return MappedFixation(fixation, best, "snapped", snap_distance_cols=best_distance)
    return MappedFixation(fixation, None, "dropped", drop_reason="no-leaf")


def _self_transition_context(leaf: LeafToken) -> PathContext:
    # A re-fixation has no leaf-to-leaf path; the degenerate context uses the
    # enclosing node's label as the sole path element.
    return make_context(leaf.text, leaf.parent.label, leaf.text)


def build_profile(
    recording: Recording, root: AstNode, options: LinkOptions | None = None
) -> TransitionProfile:
    """Map every fixation and count transitions between consecutive leaves.

    With ``chain="skip"`` dropped fixations do not sever the sequence; with
    ``chain="strict"`` they do. Self transitions (same leaf twice) are
    dropped by default and never break the chain. An empty result (zero
    transitions) is returned as a valid, empty profile.
    """
    options = options or LinkOptions()
    mapped = [map_fixation(f, root, options.snap_tol_cols) for f in recording.fixations]

    runs: list[list[LeafToken]]
    if options.chain == "skip":
        runs = [[m.leaf for m in mapped if m.leaf is not None]]
    else:
        runs = [[]]
        for m in mapped:
            if m.leaf is None:
                runs.append([])
            else:
                runs[-1].append(m.leaf)

    counts: dict[PathContext, int] = {}
    for run in runs:
        for a, b in zip(run, run[1:]):
            if a is b:
                if options.self_transitions == "drop":
                    continue
                context = _self_transition_context(a)
            else:
                context = path_between(root, a, b)
            counts[context] = counts.get(context, 0) + 1
    return TransitionProfile.from_counts(recording.recording_id, counts)
