"""Caption-aware frame scoring.

Three per-frame signals are computed from unit-norm embeddings:

  * semantic:  cosine between the frame and the caption
  * temporal:  cosine between the frame and the pooled whole-video embedding
  * drop:      how much the video-to-caption cosine falls when the frame is
               removed from the pool (negative when a frame is misleading)

Each signal is min-max normalized per video and combined with non-negative
weights that sum to one. Ablations (single signals, pairs) are expressed by
zeroing weights; there is no separate code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embedding import EmbeddingSet, cosine, mean_pool
from .errors import EmptySetError, TooFewFramesError, WeightSumError, ZeroVectorError

WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class Weights:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise WeightSumError(f"weights must be non-negative: {self}")
        total = self.alpha + self.beta + self.gamma
        if abs(total - 1.0) > WEIGHT_TOL:
            raise WeightSumError(f"weights must sum to 1, got {total!r}")


EQUAL_WEIGHTS = Weights(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


@dataclass
class ScoreBreakdown:
    """Raw and normalized signals plus the weighted combination for one frame."""

    frame_index: int
    s_sem_raw: float
    s_temp_raw: float
    s_drop_raw: float
    s_sem: float
    s_temp: float
    s_drop: float
    combined: float


def semantic_scores(embedding_set: EmbeddingSet) -> list[float]:
    """Cosine of each frame against the caption."""
    if not embedding_set.frames:
        raise EmptySetError("no frames to score")
    return [cosine(f, embedding_set.caption) for f in embedding_set.frames]


def temporal_scores(embedding_set: EmbeddingSet) -> list[float]:
    """Cosine of each frame against the pooled whole-video embedding."""
    if not embedding_set.frames:
        raise EmptySetError("no frames to score")
    video = mean_pool(embedding_set.frames)
    return [cosine(f, video) for f in embedding_set.frames]


def drop_scores(embedding_set: EmbeddingSet) -> list[float]:
    """Marginal contribution of each frame to video-caption alignment.

    For frame i: cos(pool(all), caption) - cos(pool(all but i), caption).
    Negative values (dropping the frame helps) are kept raw; min-max
    normalization downstream maps the most harmful frame to 0.
    """
    frames = embedding_set.frames
    n = len(frames)
    if n < 2:
        raise TooFewFramesError("drop scoring needs at least two frames")
    F = np.stack([f.values for f in frames])
    t = embedding_set.caption.values
    total = F.sum(axis=0)

    pooled = total / n
    pooled_norm = float(np.linalg.norm(pooled))
    if pooled_norm <= 1e-12:
        raise ZeroVectorError("frame embeddings cancel to zero when pooled")
    base = float(np.clip(pooled / pooled_norm @ t, -1.0, 1.0))

    loo = (total[None, :] - F) / (n - 1)
    norms = np.linalg.norm(loo, axis=1)
    if (norms <= 1e-12).any():
        raise ZeroVectorError("a leave-one-out pool cancels to zero")
    loo_sims = np.clip((loo / norms[:, None]) @ t, -1.0, 1.0)
    return [base - float(s) for s in loo_sims]


def minmax_normalize(raw: Sequence[float]) -> list[float]:
    """Map values onto [0, 1]; a constant list maps to all zeros."""
    arr = np.asarray(list(raw), dtype=np.float64)
    if arr.size == 0:
        raise EmptySetError("nothing to normalize")
    if not np.isfinite(arr).all():
        raise ValueError("cannot normalize non-finite values")
    lo = float(arr.min())
    hi = float(arr.max())
    if hi <= lo:
        return [0.0] * arr.size
    return [float(x) for x in (arr - lo) / (hi - lo)]


def score_frames(embedding_set: EmbeddingSet, weights: Weights = EQUAL_WEIGHTS) -> list[ScoreBreakdown]:
    """Score every frame of a video against its caption.

    A single-frame video is by definition its own keyframe: all normalized
    signals are set to 1 and the combination is 1.0.
    """
    frames = embedding_set.frames
    if not frames:
        raise EmptySetError("no frames to score")
    indices = embedding_set.indices()

    if len(frames) == 1:
        sem_raw = cosine(frames[0], embedding_set.caption)
        return [
            ScoreBreakdown(
                frame_index=indices[0],
                s_sem_raw=sem_raw,
                s_temp_raw=1.0,
                s_drop_raw=0.0,
                s_sem=1.0,
                s_temp=1.0,
                s_drop=1.0,
                combined=weights.alpha + weights.beta + weights.gamma,
            )
        ]

    sem_raw = semantic_scores(embedding_set)
    temp_raw = temporal_scores(embedding_set)
    drop_raw = drop_scores(embedding_set)
    sem = minmax_normalize(sem_raw)
    temp = minmax_normalize(temp_raw)
    drop = minmax_normalize(drop_raw)
    return [
        ScoreBreakdown(
            frame_index=indices[i],
            s_sem_raw=sem_raw[i],
            s_temp_raw=temp_raw[i],
            s_drop_raw=drop_raw[i],
            s_sem=sem[i],
            s_temp=temp[i],
            s_drop=drop[i],
            combined=weights.alpha * sem[i] + weights.beta * temp[i] + weights.gamma * drop[i],
        )
        for i in range(len(frames))
    ]
