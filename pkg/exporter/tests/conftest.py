from __future__ import annotations

import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent.parent
CONFORMANCE_DIR = REPO_ROOT / "fixtures" / "conformance"


@pytest.fixture
def sample_inputs(tmp_path) -> tuple[Path, Path]:
    """A small two-video manifest plus captions."""
    manifest = tmp_path / "manifest.jsonl"
    lines = []
    for vid, count in (("vidA", 3), ("vidB", 2)):
        for i in range(count):
            lines.append(
                json.dumps(
                    {"video_id": vid, "frame_index": i, "timestamp_s": i * 0.5, "image_path": f"{vid}_{i}.png"}
                )
            )
    manifest.write_text("\n".join(lines) + "\n")
    captions = tmp_path / "captions.jsonl"
    captions.write_text(
        json.dumps({"video_id": "vidA", "caption": "a dog chases a ball"})
        + "\n"
        + json.dumps({"video_id": "vidB", "caption": "a chef slices onions"})
        + "\n"
    )
    return manifest, captions
