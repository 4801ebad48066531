"""Real vision-language backend over a CLIP-compatible checkpoint.

Imports of torch/transformers/Pillow are deferred so the mock backend stays
dependency-light. Any checkpoint exposing `get_image_features` and
`get_text_features` through transformers' CLIPModel interface works; the
container dimension follows the checkpoint's projection width, and all
outputs are L2-normalized before writing.
"""

from __future__ import annotations

import numpy as np

from . import container
from .errors import DecodeError, ModelLoadError
from .jobs import ExportJob


def _load_model(model_id: str):
    try:
        import torch
        from transformers import CLIPModel, CLIPProcessor
    except ImportError as exc:
        raise ModelLoadError(f"model backend needs torch and transformers installed: {exc}") from exc
    try:
        model = CLIPModel.from_pretrained(model_id)
        processor = CLIPProcessor.from_pretrained(model_id)
    except Exception as exc:
        raise ModelLoadError(f"cannot load checkpoint {model_id!r}: {exc}") from exc
    model.eval()
    return torch, model, processor


def _open_image(path: str):
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as img:
            return img.convert("RGB")
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"cannot decode frame image {path}: {exc}") from exc


def _normalized(features) -> np.ndarray:
    arr = features.detach().cpu().numpy().astype(np.float64)
    arr /= np.linalg.norm(arr, axis=1, keepdims=True)
    return arr.astype(np.float32)


def export_model(job: ExportJob) -> tuple[str, str]:
    """Embed every manifest frame and caption with the checkpoint."""
    if job.backend != "model":
        raise ValueError(f"export_model called with backend {job.backend!r}")
    if not job.model_id:
        raise ModelLoadError("backend=model requires a checkpoint identifier")
    job.load()
    torch, model, processor = _load_model(job.model_id)
    batch = max(1, job.batch_size)

    frame_ids = [container.frame_key(ref.video_id, ref.frame_index) for ref in job.frames]
    frame_rows: list[np.ndarray] = []
    with torch.no_grad():
        for start in range(0, len(job.frames), batch):
            chunk = job.frames[start : start + batch]
            images = [_open_image(ref.image_path) for ref in chunk]
            inputs = processor(images=images, return_tensors="pt")
            frame_rows.extend(_normalized(model.get_image_features(**inputs)))

        texts = [job.captions[vid] for vid in job.video_ids]
        inputs = processor(text=texts, return_tensors="pt", padding=True, truncation=True)
        text_rows = list(_normalized(model.get_text_features(**inputs)))

    container.write_container(frame_ids, frame_rows, job.out_frames)
    text_ids = [container.caption_key(vid) for vid in job.video_ids]
    container.write_container(text_ids, text_rows, job.out_texts)
    return job.out_frames, job.out_texts
