"""framesieve: keyframe selection for video-language tasks.

Two-stage pipeline: cluster cheap spatio-temporal frame features to propose
candidate frames, then score proposals against a caption embedding and keep
the frames that carry the video's semantics. Evaluation helpers cover
retrieval recall, frame-reduction rates, and keyframe F1.
"""

from .clustering import ClusteringResult, ProposalSet, kmeans, propose, select_k, silhouette
from .container import caption_key, frame_key, read_container, write_container
from .embedding import Embedding, EmbeddingSet, cosine, l2_normalize, leave_one_out_pool, mean_pool
from .features import (
    FrameEntry,
    FrameManifest,
    SpatioTemporalVector,
    build_st_vector,
    hsv_histogram,
    load_image,
    load_manifests,
    normalized_timestamp,
    sample_frames,
    write_manifests,
)
from .metrics import (
    ReductionReport,
    SimilarityMatrix,
    frr,
    histogram_intersection,
    keyframe_f1,
    recall_at_k,
    reduction_report,
    video_embedding_from_selection,
)
from .scoring import (
    ScoreBreakdown,
    Weights,
    drop_scores,
    minmax_normalize,
    score_frames,
    semantic_scores,
    temporal_scores,
)
from .selection import SelectionResult, select_threshold, select_top_k

__version__ = "0.1.0"

__all__ = [
    "ClusteringResult",
    "Embedding",
    "EmbeddingSet",
    "FrameEntry",
    "FrameManifest",
    "ProposalSet",
    "ReductionReport",
    "ScoreBreakdown",
    "SelectionResult",
    "SimilarityMatrix",
    "SpatioTemporalVector",
    "Weights",
    "build_st_vector",
    "caption_key",
    "cosine",
    "drop_scores",
    "frame_key",
    "frr",
    "histogram_intersection",
    "hsv_histogram",
    "keyframe_f1",
    "kmeans",
    "l2_normalize",
    "leave_one_out_pool",
    "load_image",
    "load_manifests",
    "mean_pool",
    "minmax_normalize",
    "normalized_timestamp",
    "propose",
    "read_container",
    "recall_at_k",
    "reduction_report",
    "sample_frames",
    "score_frames",
    "select_k",
    "select_threshold",
    "select_top_k",
    "semantic_scores",
    "silhouette",
    "temporal_scores",
    "video_embedding_from_selection",
    "write_container",
    "write_manifests",
]
