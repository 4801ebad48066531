"""Turn per-frame scores into a final keyframe set.

Besides plain top-k there are three threshold families: an absolute cutoff,
mean + lambda * std, and a fraction of the per-video maximum. A selection is
never empty: when a threshold rejects everything, the top-scoring frame is
force-included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameterError, EmptyInputError
from .scoring import ScoreBreakdown

THRESHOLD_STRATEGIES = ("absolute", "mean_std", "frac_max")
DEFAULT_STRATEGY = "frac_max"
DEFAULT_PARAM = 0.8


@dataclass
class SelectionResult:
    video_id: str
    selected: list[int]
    strategy: str
    parameters: dict[str, float]
    n_candidates: int


def _ranked(scores: list[ScoreBreakdown]) -> list[ScoreBreakdown]:
    # ties break toward the smaller frame index
    return sorted(scores, key=lambda s: (-s.combined, s.frame_index))


def select_top_k(scores: list[ScoreBreakdown], k: int, video_id: str = "") -> SelectionResult:
    """Keep the k highest combined scores (all of them when k exceeds the count)."""
    if k < 1:
        raise BadParameterError(f"k must be >= 1, got {k}")
    if not scores:
        raise EmptyInputError("no scored frames to select from")
    chosen = sorted(s.frame_index for s in _ranked(scores)[:k])
    return SelectionResult(
        video_id=video_id,
        selected=chosen,
        strategy="top_k",
        parameters={"k": k},
        n_candidates=len(scores),
    )


def select_threshold(
    scores: list[ScoreBreakdown],
    strategy: str,
    param: float,
    video_id: str = "",
) -> SelectionResult:
    """Keep frames whose combined score passes the strategy's predicate."""
    if strategy not in THRESHOLD_STRATEGIES:
        raise BadParameterError(f"unknown strategy {strategy!r}, expected one of {THRESHOLD_STRATEGIES}")
    if not scores:
        raise EmptyInputError("no scored frames to select from")
    combined = np.array([s.combined for s in scores], dtype=np.float64)

    if strategy == "absolute":
        if not 0.0 <= param <= 1.0:
            raise BadParameterError(f"absolute threshold must lie in [0, 1], got {param}")
        cutoff = param
        key = "tau"
    elif strategy == "frac_max":
        if not 0.0 < param <= 1.0:
            raise BadParameterError(f"frac_max ratio must lie in (0, 1], got {param}")
        cutoff = param * float(combined.max())
        key = "rho"
    else:  # mean_std: any real lambda is allowed
        cutoff = float(combined.mean()) + param * float(combined.std())
        key = "lambda"

    if float(combined.max()) <= 0.0:
        # constant normalization zeroed every score: no predicate is
        # meaningful, collapse to the argmax fallback below
        kept: list[int] = []
    else:
        kept = [s.frame_index for s, c in zip(scores, combined) if c >= cutoff]
    if not kept:
        kept = [_ranked(scores)[0].frame_index]
    return SelectionResult(
        video_id=video_id,
        selected=sorted(kept),
        strategy=strategy,
        parameters={key: param},
        n_candidates=len(scores),
    )
