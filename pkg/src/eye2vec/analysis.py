"""Vector-space analyses over eye vectors: similarity, clustering, prediction.

All operations are deterministic given their inputs and seeds; clustering
uses a splitmix64-driven k-means++ so results reproduce across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .compressor import EyeVector
from .errors import DimMismatch, EmptyClass, InsufficientData, InvalidK, ZeroVectorError
from .hashing import SplitMix64

DEFAULT_MAX_ITERS = 100


def _as_vector(v) -> np.ndarray:
    if isinstance(v, EyeVector):
        return v.values
    return np.asarray(v, dtype=np.float64)


def cosine_similarity(u, v) -> float:
    """Cosine of the angle between ``u`` and ``v``, clamped to [-1, 1]."""
    u = _as_vector(u)
    v = _as_vector(v)
    if u.shape != v.shape:
        raise DimMismatch(f"dims differ: {u.shape} vs {v.shape}")
    if np.array_equal(u, v):
        if not np.any(u):
            raise ZeroVectorError("cosine similarity of a zero vector is undefined")
        return 1.0
    uu = float(np.dot(u, u))
    vv = float(np.dot(v, v))
    if uu == 0.0 or vv == 0.0:
        raise ZeroVectorError("cosine similarity of a zero vector is undefined")
    value = float(np.dot(u, v)) / math.sqrt(uu * vv)
    return max(-1.0, min(1.0, value))


@dataclass
class DistanceMatrix:
    ids: list[str]
    values: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.ids)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (n, n):
            raise ValueError("matrix shape must match the number of ids")


def distance_matrix(vectors: Sequence[EyeVector]) -> DistanceMatrix:
    """Pairwise cosine distances (1 - similarity), computed once and mirrored."""
    if len(vectors) < 2:
        raise ValueError("need at least two vectors")
    n = len(vectors)
    values = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = 1.0 - cosine_similarity(vectors[i], vectors[j])
            values[i, j] = d
            values[j, i] = d
    return DistanceMatrix([v.recording_id for v in vectors], values)


def _as_matrix(vectors) -> np.ndarray:
    if len(vectors) > 0 and isinstance(vectors[0], EyeVector):
        return np.stack([v.values for v in vectors])
    return np.asarray(vectors, dtype=np.float64)


def kmeans(
    vectors,
    k: int,
    seed: int,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> list[int]:
    """Seeded k-means++ plus Lloyd iterations over L2-normalized vectors.

    On unit vectors, squared Euclidean distance orders points exactly like
    cosine distance (||u - v||^2 = 2 - 2 cos), so this clusters by angle.
    Empty clusters are re-seeded with the point farthest from its centroid
    (smallest index among ties). Assignments are deterministic given the
    inputs and seed.
    """
    data = _as_matrix(vectors)
    if data.ndim != 2:
        raise ValueError("vectors must form a 2-D matrix")
    n = data.shape[0]
    if k < 1 or k > n:
        raise InvalidK(f"k must be in 1..{n}, got {k}")
    norms = np.linalg.norm(data, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise ValueError("vectors must be L2-normalized")

    stream = SplitMix64(seed)
    centers = _kmeanspp_init(data, k, stream)
    n_centers = centers.shape[0]

    assignments = np.full(n, -1, dtype=np.int64)
    previous_sse = math.inf
    for _ in range(max_iters):
        dist2 = _pairwise_sq_dists(data, centers)
        new_assignments = np.argmin(dist2, axis=1)
        own = dist2[np.arange(n), new_assignments]

        reseeded = False
        for j in range(n_centers):
            if np.any(new_assignments == j):
                continue
            candidates = np.flatnonzero(own > 0)
            if candidates.size == 0:
                continue  # every point sits on its centroid; leave empty
            farthest = candidates[np.argmax(own[candidates])]
            centers[j] = data[farthest]
            new_assignments[farthest] = j
            own[farthest] = 0.0
            reseeded = True

        sse = float(own.sum())
        if sse > previous_sse + 1e-9:
            raise AssertionError("k-means objective increased between iterations")
        previous_sse = sse

        stable = not reseeded and np.array_equal(new_assignments, assignments)
        assignments = new_assignments
        if stable:
            break
        for j in range(n_centers):
            members = data[assignments == j]
            if members.shape[0] > 0:
                centers[j] = members.mean(axis=0)
    return [int(a) for a in assignments]


def _kmeanspp_init(data: np.ndarray, k: int, stream: SplitMix64) -> np.ndarray:
    n = data.shape[0]
    chosen = [stream.randint(n)]
    while len(chosen) < k:
        d2 = np.min(_pairwise_sq_dists(data, data[chosen]), axis=1)
        total = float(d2.sum())
        if total == 0.0:
            break  # fewer distinct points than k; extra clusters stay empty
        r = stream.next_float01() * total
        cumulative = np.cumsum(d2)
        index = int(np.searchsorted(cumulative, r, side="right"))
        if index >= n:  # r rounded up to the total weight
            index = int(np.flatnonzero(d2 > 0)[-1])
        chosen.append(index)
    return data[chosen].astype(np.float64, copy=True)


def _pairwise_sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


@dataclass
class LabeledSet:
    """Eye vectors paired with labels for supervised use."""

    items: list[tuple[EyeVector, str]]

    def __post_init__(self) -> None:
        if not self.items:
            raise EmptyClass("labeled set is empty")
        dims = {v.dim for v, _ in self.items}
        if len(dims) > 1:
            raise DimMismatch(f"vectors have mixed dims: {sorted(dims)}")
        if any(not label for _, label in self.items):
            raise ValueError("labels must be nonempty")
        if len({label for _, label in self.items}) < 2:
            raise InsufficientData("need at least two distinct labels")

    def by_label(self) -> dict[str, list[EyeVector]]:
        grouped: dict[str, list[EyeVector]] = {}
        for vector, label in self.items:
            grouped.setdefault(label, []).append(vector)
        return grouped


def _normalize(v: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ZeroVectorError("cannot normalize a zero vector")
    return v / norm


def _class_centroids(train: LabeledSet) -> list[tuple[str, np.ndarray]]:
    grouped = train.by_label()
    centroids = []
    for label in sorted(grouped):
        members = grouped[label]
        if not members:
            raise EmptyClass(f"label {label!r} has no training vectors")
        normalized = np.stack([_normalize(v.values) for v in members])
        centroids.append((label, _normalize(normalized.mean(axis=0))))
    return centroids


def nearest_centroid_predict(train: LabeledSet, test: Sequence[EyeVector]) -> list[str]:
    """Label each test vector with its most cosine-similar class centroid.

    Training vectors are normalized before the mean is taken, so rescaling
    any of them cannot change a prediction. Ties go to the label that sorts
    first.
    """
    centroids = _class_centroids(train)
    predictions = []
    for vector in test:
        best_label, best_score = None, -math.inf
        for label, centroid in centroids:
            score = cosine_similarity(vector.values, centroid)
            if score > best_score:
                best_label, best_score = label, score
        predictions.append(best_label)
    return predictions


def leave_one_out(train: LabeledSet) -> float:
    """Accuracy of nearest-centroid prediction with each item held out once."""
    counts: dict[str, int] = {}
    for _, label in train.items:
        counts[label] = counts.get(label, 0) + 1
    if any(c < 2 for c in counts.values()):
        raise InsufficientData("leave-one-out needs at least 2 items per label")
    correct = 0
    for i, (vector, label) in enumerate(train.items):
        rest = LabeledSet(train.items[:i] + train.items[i + 1 :])
        if nearest_centroid_predict(rest, [vector])[0] == label:
            correct += 1
    return correct / len(train.items)
