"""Adaptive clustering over spatio-temporal frame features.

k-means runs Lloyd's iterations from a seeded k-means++ initialization, so a
given (X, k, seed) always produces the same clustering. The cluster count is
chosen by maximizing the mean silhouette score over a k range, ties going to
the smaller k. One representative frame per cluster (nearest to the centroid)
becomes a proposal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInputError,
    KTooLargeError,
    RangeInvalidError,
    SingleClusterError,
    TooFewPointsError,
)
from .features import FrameManifest, SpatioTemporalVector

CONVERGENCE_TOL = 1e-6
MAX_ITER = 100
DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 10


@dataclass
class ClusteringResult:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray
    silhouette: float | None = None


@dataclass
class ProposalSet:
    """Representative frames chosen for one video, sorted by frame index."""

    video_id: str
    frame_indices: list[int]
    k_star: int
    per_cluster_distance: list[float]
    silhouette: float | None


def _as_points(X) -> np.ndarray:
    pts = np.asarray(X, dtype=np.float64)
    if pts.size == 0:
        raise EmptyInputError("no points to cluster")
    if pts.ndim != 2:
        raise ValueError(f"expected a 2-D point array, got shape {pts.shape}")
    return pts


def _sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - C[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(n))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            # all remaining mass is on already-chosen points (duplicates)
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[j] = X[idx]
        d2 = np.minimum(d2, ((X - centers[j]) ** 2).sum(axis=1))
    return centers


def kmeans(X, k: int, seed: int) -> ClusteringResult:
    """Seeded Lloyd's k-means; every cluster in the result is non-empty.

    Converges when the largest centroid movement drops below 1e-6 or after
    100 iterations. An empty cluster is repaired by re-seeding it on the
    point currently farthest from its assigned centroid.
    """
    pts = _as_points(X)
    n = pts.shape[0]
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise KTooLargeError(f"k={k} exceeds the {n} available points")

    rng = np.random.default_rng(seed)
    centroids = _kmeanspp_init(pts, k, rng)
    assignments = np.zeros(n, dtype=np.intp)
    for _ in range(MAX_ITER):
        d2 = _sq_dists(pts, centroids)
        assignments = d2.argmin(axis=1)
        counts = np.bincount(assignments, minlength=k)
        if (counts == 0).any():
            own = d2[np.arange(n), assignments].copy()
            for c in np.flatnonzero(counts == 0):
                far = int(own.argmax())
                centroids[c] = pts[far]
                assignments[far] = c
                own[far] = -1.0
        new_centroids = np.empty_like(centroids)
        for c in range(k):
            new_centroids[c] = pts[assignments == c].mean(axis=0)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < CONVERGENCE_TOL:
            break
    return ClusteringResult(k=k, assignments=assignments, centroids=centroids)


def silhouette(X, assignments) -> float:
    """Mean silhouette score under Euclidean distance.

    Per point, s = (b - a) / max(a, b) where a is the mean distance to the
    point's own cluster and b the smallest mean distance to any other
    cluster. Singleton clusters contribute 0, as does the 0/0 case when all
    distances vanish.
    """
    pts = _as_points(X)
    labels = np.asarray(assignments)
    n = pts.shape[0]
    if n < 3:
        raise TooFewPointsError(f"silhouette needs at least 3 points, got {n}")
    if labels.shape != (n,):
        raise ValueError("assignments must align with the points")
    uniq = np.unique(labels)
    if uniq.size < 2:
        raise SingleClusterError("silhouette is undefined for a single cluster")

    dists = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    cols = np.searchsorted(uniq, labels)
    sizes = np.bincount(cols, minlength=uniq.size)
    # mean distance from every point to every cluster
    cluster_mean = np.empty((n, uniq.size), dtype=np.float64)
    for j, c in enumerate(uniq):
        cluster_mean[:, j] = dists[:, labels == c].sum(axis=1) / sizes[j]

    rows = np.arange(n)
    own_size = sizes[cols].astype(np.float64)
    own_mean = cluster_mean[rows, cols]
    nearest_other = cluster_mean.copy()
    nearest_other[rows, cols] = np.inf
    b = nearest_other.min(axis=1)

    scores = np.zeros(n, dtype=np.float64)
    multi = own_size > 1  # singleton clusters contribute 0
    a = np.zeros(n, dtype=np.float64)
    a[multi] = own_mean[multi] * own_size[multi] / (own_size[multi] - 1)  # exclude self
    denom = np.maximum(a, b)
    valid = multi & (denom > 0.0)  # 0/0 convention: score stays 0
    scores[valid] = (b[valid] - a[valid]) / denom[valid]
    return float(scores.mean())


def select_k(X, k_min: int, k_max: int, seed: int) -> tuple[int, ClusteringResult]:
    """Cluster for every k in [k_min, k_max] and keep the best silhouette.

    Ties break toward the smaller k, which yields fewer proposals.
    """
    pts = _as_points(X)
    n = pts.shape[0]
    if n < 3:
        raise TooFewPointsError(f"k selection needs at least 3 points, got {n}")
    if not 2 <= k_min <= k_max <= n - 1:
        raise RangeInvalidError(f"need 2 <= k_min <= k_max <= {n - 1}, got [{k_min}, {k_max}]")

    best_k = -1
    best: ClusteringResult | None = None
    for k in range(k_min, k_max + 1):
        result = kmeans(pts, k, seed)
        result.silhouette = silhouette(pts, result.assignments)
        if best is None or result.silhouette > best.silhouette:
            best_k, best = k, result
    assert best is not None
    return best_k, best


def propose(
    manifest: FrameManifest,
    features: list[SpatioTemporalVector],
    k_min: int = DEFAULT_K_MIN,
    k_max: int = DEFAULT_K_MAX,
    seed: int = 42,
) -> ProposalSet:
    """Cluster a video's features and return one frame per cluster.

    With fewer than 3 frames the silhouette criterion is undefined, so every
    frame passes through as its own proposal. k_max is clamped to n-1 so the
    default range works on short videos.
    """
    if len(features) != len(manifest.entries):
        raise ValueError(
            f"{manifest.video_id!r}: {len(features)} feature vectors for {len(manifest.entries)} frames"
        )
    frame_ids = manifest.frame_indices()
    n = len(frame_ids)
    if n < 3:
        return ProposalSet(
            video_id=manifest.video_id,
            frame_indices=frame_ids,
            k_star=n,
            per_cluster_distance=[0.0] * n,
            silhouette=None,
        )

    X = np.stack([f.combined for f in features])
    k_star, result = select_k(X, k_min, min(k_max, n - 1), seed)

    reps: list[tuple[int, float]] = []
    for c in range(k_star):
        members = np.flatnonzero(result.assignments == c)
        d = np.sqrt(((X[members] - result.centroids[c]) ** 2).sum(axis=1))
        pick = int(members[d.argmin()])
        reps.append((frame_ids[pick], float(d.min())))
    reps.sort()
    return ProposalSet(
        video_id=manifest.video_id,
        frame_indices=[fi for fi, _ in reps],
        k_star=k_star,
        per_cluster_distance=[dist for _, dist in reps],
        silhouette=result.silhouette,
    )
