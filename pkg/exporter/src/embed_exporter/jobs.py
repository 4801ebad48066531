"""Export job definition and the manifest/caption file loaders."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ManifestFormatError, MissingCaptionError

DEFAULT_DIM = 64


@dataclass
class FrameRef:
    video_id: str
    frame_index: int
    image_path: str


@dataclass
class ExportJob:
    manifest_path: str
    captions_path: str
    backend: str  # "mock" or "model"
    out_frames: str
    out_texts: str
    dimension: int = DEFAULT_DIM
    model_id: str | None = None
    batch_size: int = 1
    frames: list[FrameRef] = field(default_factory=list)
    captions: dict[str, str] = field(default_factory=dict)
    video_ids: list[str] = field(default_factory=list)

    def load(self) -> "ExportJob":
        self.frames = load_frame_refs(self.manifest_path)
        self.captions = load_captions(self.captions_path)
        self.video_ids = []
        for ref in self.frames:
            if ref.video_id not in self.video_ids:
                self.video_ids.append(ref.video_id)
        missing = [v for v in self.video_ids if v not in self.captions]
        if missing:
            raise MissingCaptionError(f"no caption for video(s): {missing}")
        return self


def load_frame_refs(path: str | Path) -> list[FrameRef]:
    base = Path(path).resolve().parent
    refs = []
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
                refs.append(
                    FrameRef(
                        video_id=str(obj["video_id"]),
                        frame_index=int(obj["frame_index"]),
                        image_path=str(image_path),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ManifestFormatError(f"{path}: bad manifest line {lineno}: {exc}") from exc
    if not refs:
        raise ManifestFormatError(f"{path}: manifest is empty")
    return refs


def load_captions(path: str | Path) -> dict[str, str]:
    captions: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                video_id = str(obj["video_id"])
                caption = str(obj["caption"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ManifestFormatError(f"{path}: bad captions line {lineno}: {exc}") from exc
            if video_id in captions:
                raise MissingCaptionError(f"{path}: duplicate caption for {video_id!r} at line {lineno}")
            captions[video_id] = caption
    if not captions:
        raise ManifestFormatError(f"{path}: captions file is empty")
    return captions
