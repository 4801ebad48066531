"""Evaluation arithmetic: frame reduction rates, recall@k, and keyframe F1.

The F1 protocol is fixed here so results are bit-reproducible: frames are
compared by histogram intersection of their HSV histograms and matched
greedily one-to-one in descending similarity order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .embedding import Embedding, EmbeddingSet, mean_pool
from .errors import (
    BadParameterError,
    EmptyInputError,
    EmptySetError,
    MissingGroundTruthError,
    NonPositiveReferenceError,
)
from .features import DEFAULT_BINS, hsv_histogram
from .selection import SelectionResult

DEFAULT_N_UFP = 8
DEFAULT_F1_THRESHOLD = 0.8


@dataclass
class ReductionReport:
    asf: float
    frr_ufp: float
    frr_avg: float
    n_ufp: int
    n_avg: float


@dataclass(eq=False)
class SimilarityMatrix:
    """Text-by-video cosine similarities with id labels on both axes."""

    row_ids: list[str]
    col_ids: list[str]
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (len(self.row_ids), len(self.col_ids)):
            raise ValueError(f"matrix shape {vals.shape} does not match the id lists")
        if not np.isfinite(vals).all():
            raise ValueError("similarity matrix contains non-finite values")
        if len(set(self.row_ids)) != len(self.row_ids) or len(set(self.col_ids)) != len(self.col_ids):
            raise ValueError("row and column ids must be unique")
        self.values = vals


def frr(n_sel: float, n_ref: float) -> float:
    """Frame reduction rate 1 - n_sel/n_ref; negative when selection exceeds the reference."""
    if n_ref <= 0:
        raise NonPositiveReferenceError(f"reference frame count must be > 0, got {n_ref}")
    if n_sel < 0:
        raise ValueError(f"selected frame count must be >= 0, got {n_sel}")
    return 1.0 - n_sel / n_ref


def reduction_report(
    selections: Sequence[SelectionResult],
    n_ufp: int = DEFAULT_N_UFP,
    n_avg: float = 0.0,
) -> ReductionReport:
    """Average selected frames per video and the two reduction rates."""
    if not selections:
        raise EmptyInputError("no selections to report on")
    asf = float(np.mean([len(s.selected) for s in selections]))
    return ReductionReport(
        asf=asf,
        frr_ufp=frr(asf, n_ufp),
        frr_avg=frr(asf, n_avg),
        n_ufp=n_ufp,
        n_avg=n_avg,
    )


def recall_at_k(
    sim: SimilarityMatrix,
    k: int,
    direction: str,
    pairs: Mapping[str, str],
) -> float:
    """Percentage of queries whose ground-truth item ranks in the top k.

    `pairs` maps each text id to its ground-truth video id (a bijection).
    Ranking is by similarity descending with ties broken by item id, so the
    result is deterministic.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    d = direction.lower()
    if d not in ("t2v", "v2t"):
        raise ValueError(f"direction must be T2V or V2T, got {direction!r}")

    if d == "t2v":
        query_ids, item_ids = sim.row_ids, sim.col_ids
        matrix = sim.values
        truth = dict(pairs)
    else:
        query_ids, item_ids = sim.col_ids, sim.row_ids
        matrix = sim.values.T
        truth = {v: t for t, v in pairs.items()}
        if len(truth) != len(pairs):
            raise MissingGroundTruthError("pairing is not one-to-one")

    item_pos = {iid: j for j, iid in enumerate(item_ids)}
    hits = 0
    for qi, qid in enumerate(query_ids):
        gt = truth.get(qid)
        if gt is None or gt not in item_pos:
            raise MissingGroundTruthError(f"no ground-truth item for query {qid!r}")
        row = matrix[qi]
        order = sorted(range(len(item_ids)), key=lambda j: (-row[j], item_ids[j]))
        if order.index(item_pos[gt]) < k:
            hits += 1
    return 100.0 * hits / len(query_ids)


def histogram_intersection(a: np.ndarray, b: np.ndarray) -> float:
    """Overlap of two L1-normalized histograms, in [0, 1]."""
    return float(np.minimum(a, b).sum())


def keyframe_f1(
    selected: Sequence[np.ndarray],
    ground_truth: Sequence[np.ndarray],
    sim_threshold: float = DEFAULT_F1_THRESHOLD,
    bins_per_channel: int = DEFAULT_BINS,
) -> dict[str, float]:
    """Precision/recall/F1 of selected frames against ground-truth frames.

    Both arguments are RGB images. Pairs are matched greedily one-to-one in
    descending histogram-intersection order; a pair counts when its
    similarity reaches `sim_threshold`.
    """
    if not selected or not ground_truth:
        raise EmptySetError("both frame sets must be non-empty")
    if not 0.0 < sim_threshold <= 1.0:
        raise BadParameterError(f"similarity threshold must lie in (0, 1], got {sim_threshold}")

    sel_hists = [hsv_histogram(img, bins_per_channel) for img in selected]
    gt_hists = [hsv_histogram(img, bins_per_channel) for img in ground_truth]
    candidates = sorted(
        (
            (histogram_intersection(hs, hg), si, gi)
            for si, hs in enumerate(sel_hists)
            for gi, hg in enumerate(gt_hists)
        ),
        key=lambda item: (-item[0], item[1], item[2]),
    )

    used_sel: set[int] = set()
    used_gt: set[int] = set()
    matches = 0
    for similarity, si, gi in candidates:
        if similarity < sim_threshold:
            break
        if si in used_sel or gi in used_gt:
            continue
        used_sel.add(si)
        used_gt.add(gi)
        matches += 1

    precision = matches / len(selected)
    recall = matches / len(ground_truth)
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return {"precision": precision, "recall": recall, "f1": f1, "matches": float(matches)}


def video_embedding_from_selection(embedding_set: EmbeddingSet, selected: Sequence[int]) -> Embedding:
    """Mean-pool the embeddings of the selected frames into one video vector."""
    if not selected:
        raise EmptySetError("selection is empty")
    by_index = dict(zip(embedding_set.indices(), embedding_set.frames))
    missing = [i for i in selected if i not in by_index]
    if missing:
        raise ValueError(f"selected frames missing from the embedding set: {missing}")
    return mean_pool([by_index[i] for i in selected], id=embedding_set.video_id)
