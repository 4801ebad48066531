"""Per-frame features for clustering: HSV color histograms plus a scaled timestamp.

Conventions (the histogram layout is a project decision, kept fixed for
reproducibility):
  * three per-channel histograms (H, S, V) concatenated, 16 bins each by default
  * hue in degrees, binned by floor(h / 360 * bins); 360 wraps into the last bin
  * the concatenated histogram is L1-normalized so components sum to 1
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    EmptyImageError,
    ManifestError,
    NonPositiveGammaError,
    UnreadableImageError,
)
from .fileio import atomic_write_text

DEFAULT_BINS = 16
DEFAULT_GAMMA_TIME = 10.0
MAX_CLUSTER_FRAMES = 256


@dataclass
class FrameEntry:
    frame_index: int
    timestamp_s: float
    image_path: str


@dataclass
class FrameManifest:
    """Ordered list of one video's sampled frames."""

    video_id: str
    entries: list[FrameEntry]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ManifestError(f"manifest for {self.video_id!r} has no entries")
        for a, b in zip(self.entries, self.entries[1:]):
            if b.frame_index <= a.frame_index:
                raise ManifestError(
                    f"{self.video_id!r}: frame_index not strictly increasing "
                    f"({a.frame_index} then {b.frame_index})"
                )
            if b.timestamp_s < a.timestamp_s:
                raise ManifestError(f"{self.video_id!r}: timestamps decrease at frame {b.frame_index}")

    def __len__(self) -> int:
        return len(self.entries)

    def frame_indices(self) -> list[int]:
        return [e.frame_index for e in self.entries]


@dataclass
class SpatioTemporalVector:
    """Visual histogram concatenated with a scaled normalized timestamp."""

    visual: np.ndarray
    temporal: float
    combined: np.ndarray


def load_manifests(path: str | Path) -> list[FrameManifest]:
    """Read a JSONL manifest file, grouping lines by video_id.

    Videos keep first-seen order; entries within a video must already be
    sorted by frame_index. Relative image paths resolve against the manifest
    file's directory, so fixture trees stay relocatable.
    """
    base = Path(path).resolve().parent
    groups: dict[str, list[FrameEntry]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                image_path = Path(str(obj["image_path"]))
                if not image_path.is_absolute():
                    image_path = base / image_path
                entry = FrameEntry(
                    frame_index=int(obj["frame_index"]),
                    timestamp_s=float(obj["timestamp_s"]),
                    image_path=str(image_path),
                )
                video_id = str(obj["video_id"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ManifestError(f"{path}: bad manifest line {lineno}: {exc}") from exc
            groups.setdefault(video_id, []).append(entry)
    if not groups:
        raise ManifestError(f"{path}: manifest is empty")
    return [FrameManifest(video_id=vid, entries=entries) for vid, entries in groups.items()]


def write_manifests(path: str | Path, manifests: list[FrameManifest]) -> None:
    """Write manifests back out as JSONL (one line per frame)."""
    lines = []
    for m in manifests:
        for e in m.entries:
            lines.append(
                json.dumps(
                    {
                        "video_id": m.video_id,
                        "frame_index": e.frame_index,
                        "timestamp_s": e.timestamp_s,
                        "image_path": e.image_path,
                    },
                    ensure_ascii=False,
                )
            )
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_image(path: str | Path) -> np.ndarray:
    """Decode a PNG or JPEG into an (H, W, 3) uint8 RGB array. Alpha is dropped."""
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"), dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnreadableImageError(f"cannot decode image {path}") from exc


def _hsv_bin_indices(img: np.ndarray, nb: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel HSV bin indices computed in exact integer arithmetic.

    8-bit channels make every hue a rational with a small denominator, and
    many land exactly on a bin edge (e.g. hue 22.5 with 16 bins), so float
    conversion would put such pixels on an arbitrary side. Integer math
    evaluates floor(h / 360 * nb) exactly.
    """
    px = img.reshape(-1, 3).astype(np.int64)
    r, g, b = px[:, 0], px[:, 1], px[:, 2]
    maxc = px.max(axis=1)
    minc = px.min(axis=1)
    delta = maxc - minc

    v_idx = np.minimum(maxc * nb // 255, nb - 1)

    s_idx = np.zeros_like(maxc)
    lit = maxc > 0
    s_idx[lit] = np.minimum(delta[lit] * nb // maxc[lit], nb - 1)

    # hue in sixths of the circle: (g-b)/delta mod 6, (b-r)/delta + 2, (r-g)/delta + 4
    chrom = delta > 0
    is_r = chrom & (maxc == r)
    is_g = chrom & (maxc == g) & ~is_r
    is_b = chrom & ~is_r & ~is_g
    sixths_num = np.zeros_like(maxc)
    sixths_num[is_r] = np.mod(g[is_r] - b[is_r], 6 * delta[is_r])
    sixths_num[is_g] = b[is_g] - r[is_g] + 2 * delta[is_g]
    sixths_num[is_b] = r[is_b] - g[is_b] + 4 * delta[is_b]
    h_idx = np.zeros_like(maxc)
    h_idx[chrom] = sixths_num[chrom] * nb // (6 * delta[chrom])
    return h_idx, s_idx, v_idx


def hsv_histogram(frame: np.ndarray, bins_per_channel: int = DEFAULT_BINS) -> np.ndarray:
    """Concatenated per-channel HSV histogram of an RGB image, L1-normalized.

    Output dimension is 3 * bins_per_channel (48 with the default 16 bins).
    """
    if bins_per_channel < 2:
        raise ValueError("bins_per_channel must be >= 2")
    arr = np.asarray(frame)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise EmptyImageError(f"expected a non-empty (H, W, 3) image, got shape {arr.shape}")
    nb = bins_per_channel
    h_idx, s_idx, v_idx = _hsv_bin_indices(arr.astype(np.uint8), nb)
    counts = np.concatenate(
        [
            np.bincount(h_idx, minlength=nb),
            np.bincount(s_idx, minlength=nb),
            np.bincount(v_idx, minlength=nb),
        ]
    ).astype(np.float64)
    return counts / counts.sum()


def normalized_timestamp(i: int, n: int) -> float:
    """Position i among n sampled frames mapped onto [0, 1]; 0.0 for a single frame."""
    if not 0 <= i < n:
        raise IndexError(f"position {i} out of range for {n} frames")
    if n == 1:
        return 0.0
    return i / (n - 1)


def build_st_vector(visual: np.ndarray, t_i: float, gamma_time: float) -> SpatioTemporalVector:
    """Append gamma_time * t_i to the visual histogram as the temporal coordinate."""
    if gamma_time <= 0:
        raise NonPositiveGammaError(f"gamma_time must be > 0, got {gamma_time}")
    visual = np.asarray(visual, dtype=np.float64)
    temporal = gamma_time * t_i
    return SpatioTemporalVector(
        visual=visual,
        temporal=temporal,
        combined=np.concatenate([visual, [temporal]]),
    )


def sample_frames(manifest: FrameManifest, step: int) -> FrameManifest:
    """Keep entries at positions 0, step, 2*step, ... (position 0 always survives)."""
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    return FrameManifest(video_id=manifest.video_id, entries=manifest.entries[::step])


def auto_step(total_frames: int, cap: int = MAX_CLUSTER_FRAMES) -> int:
    """Smallest step that keeps at most `cap` frames in the clustering stage."""
    return max(1, math.ceil(total_frames / cap))


def st_vectors(
    manifest: FrameManifest,
    gamma_time: float = DEFAULT_GAMMA_TIME,
    bins_per_channel: int = DEFAULT_BINS,
    jobs: int | None = None,
) -> list[SpatioTemporalVector]:
    """Decode every manifest frame and build its spatio-temporal vector.

    Decoding may run on a thread pool; results come back in manifest order.
    """
    n = len(manifest.entries)

    def one(pos_entry: tuple[int, FrameEntry]) -> SpatioTemporalVector:
        pos, entry = pos_entry
        hist = hsv_histogram(load_image(entry.image_path), bins_per_channel)
        return build_st_vector(hist, normalized_timestamp(pos, n), gamma_time)

    items = list(enumerate(manifest.entries))
    if jobs is not None and jobs > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, items))
    return [one(item) for item in items]
