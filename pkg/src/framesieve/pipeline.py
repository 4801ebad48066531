"""Per-video orchestration shared by the CLI subcommands.

Each stage is a plain function over in-memory values; the CLI wires them to
files. Videos are independent, so the propose stage can fan out over a
bounded thread pool (feature extraction decodes images).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import container as ksec
from .clustering import DEFAULT_K_MAX, DEFAULT_K_MIN, ProposalSet, propose
from .embedding import Embedding, EmbeddingSet, l2_normalize
from .errors import FrameSieveError
from .features import (
    DEFAULT_BINS,
    DEFAULT_GAMMA_TIME,
    FrameManifest,
    auto_step,
    sample_frames,
    st_vectors,
)
from .metrics import ReductionReport, reduction_report, video_embedding_from_selection
from .scoring import ScoreBreakdown, Weights, score_frames
from .selection import SelectionResult, select_threshold, select_top_k


@dataclass
class VideoScores:
    video_id: str
    weights: Weights
    frames: list[ScoreBreakdown]


def propose_stage(
    manifests: list[FrameManifest],
    gamma_time: float = DEFAULT_GAMMA_TIME,
    step: int | None = None,
    k_min: int = DEFAULT_K_MIN,
    k_max: int = DEFAULT_K_MAX,
    seed: int = 42,
    bins_per_channel: int = DEFAULT_BINS,
    jobs: int | None = None,
) -> list[ProposalSet]:
    """Sample, featurize, and cluster every video. Order follows the input."""

    def one(manifest: FrameManifest) -> ProposalSet:
        eff_step = step if step is not None else auto_step(len(manifest))
        sampled = sample_frames(manifest, eff_step)
        feats = st_vectors(sampled, gamma_time=gamma_time, bins_per_channel=bins_per_channel)
        return propose(sampled, feats, k_min=k_min, k_max=k_max, seed=seed)

    if jobs is not None and jobs > 1 and len(manifests) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, manifests))
    return [one(m) for m in manifests]


def embedding_set_for_video(
    manifest: FrameManifest,
    frame_vectors: dict[str, np.ndarray],
    text_vectors: dict[str, np.ndarray],
    restrict_to: list[int] | None = None,
) -> EmbeddingSet:
    """Assemble one video's EmbeddingSet from container contents.

    Vectors are re-normalized on load so float32 round trips cannot drift the
    cosine math. `restrict_to` limits the frames (e.g. to proposal indices).
    """
    wanted = restrict_to if restrict_to is not None else manifest.frame_indices()
    frames: list[Embedding] = []
    for fi in wanted:
        key = ksec.frame_key(manifest.video_id, fi)
        if key not in frame_vectors:
            raise FrameSieveError(f"frame embedding {key!r} missing from container")
        frames.append(l2_normalize(frame_vectors[key], id=key))
    cap_key = ksec.caption_key(manifest.video_id)
    if cap_key not in text_vectors:
        raise FrameSieveError(f"caption embedding {cap_key!r} missing from container")
    caption = l2_normalize(text_vectors[cap_key], id=cap_key)
    return EmbeddingSet(frames=frames, caption=caption, frame_indices=list(wanted), video_id=manifest.video_id)


def score_stage(
    manifests: list[FrameManifest],
    frame_vectors: dict[str, np.ndarray],
    text_vectors: dict[str, np.ndarray],
    weights: Weights,
    proposals: dict[str, list[int]] | None = None,
) -> list[VideoScores]:
    out = []
    for manifest in manifests:
        restrict = proposals.get(manifest.video_id) if proposals is not None else None
        embedding_set = embedding_set_for_video(manifest, frame_vectors, text_vectors, restrict)
        out.append(VideoScores(manifest.video_id, weights, score_frames(embedding_set, weights)))
    return out


def select_stage(scored: list[VideoScores], strategy: str, param: float) -> list[SelectionResult]:
    results = []
    for vs in scored:
        if strategy == "top_k":
            results.append(select_top_k(vs.frames, int(param), video_id=vs.video_id))
        else:
            results.append(select_threshold(vs.frames, strategy, param, video_id=vs.video_id))
    return results


def selected_video_embeddings(
    manifests: list[FrameManifest],
    frame_vectors: dict[str, np.ndarray],
    text_vectors: dict[str, np.ndarray],
    selections: list[SelectionResult],
) -> tuple[list[str], list[np.ndarray]]:
    """Pool each video's selected frames into a retrieval-side video vector."""
    by_id = {m.video_id: m for m in manifests}
    ids, vectors = [], []
    for sel in selections:
        manifest = by_id[sel.video_id]
        embedding_set = embedding_set_for_video(manifest, frame_vectors, text_vectors, sel.selected)
        pooled = video_embedding_from_selection(embedding_set, sel.selected)
        ids.append(sel.video_id)
        vectors.append(pooled.values)
    return ids, vectors


def reduction_stage(
    selections: list[SelectionResult],
    n_ufp: int,
    n_avg: float,
) -> ReductionReport:
    return reduction_report(selections, n_ufp=n_ufp, n_avg=n_avg)
