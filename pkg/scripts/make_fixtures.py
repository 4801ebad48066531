"""Regenerate the bundled toy fixture under tests/fixtures/toy/.

The fixture is a 12-frame synthetic clip with three color scenes, plus
deterministic frame/caption embedding containers whose middle scene aligns
with the caption. Everything is seeded, so regenerating produces identical
bytes.

Usage: python scripts/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from framesieve.container import caption_key, frame_key, write_container

ROOT = Path(__file__).resolve().parent.parent
TOY = ROOT / "tests" / "fixtures" / "toy"
VIDEO_ID = "toy0"
N_FRAMES = 12
DIM = 32
CAPTION = "three colored scenes with a bright green middle"

SCENE_COLORS = [(200, 44, 44), (44, 200, 44), (44, 44, 200)]


def frame_image(i: int) -> np.ndarray:
    base = np.array(SCENE_COLORS[i // 4], dtype=np.int64)
    img = np.zeros((24, 32, 3), dtype=np.uint8)
    # left half at the scene color, right half darker, both nudged per frame
    shift = (i % 4) * 10
    img[:, :16] = np.clip(base + shift, 0, 255)
    img[:, 16:] = np.clip(base - 60 + shift, 0, 255)
    return img


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def main() -> None:
    frames_dir = TOY / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)

    manifest_lines = []
    for i in range(N_FRAMES):
        name = f"frame_{i:03d}.png"
        Image.fromarray(frame_image(i)).save(frames_dir / name)
        manifest_lines.append(
            json.dumps(
                {
                    "video_id": VIDEO_ID,
                    "frame_index": i,
                    "timestamp_s": round(i * 0.5, 3),
                    "image_path": f"frames/{name}",
                }
            )
        )
    (TOY / "manifest.jsonl").write_text("\n".join(manifest_lines) + "\n")
    (TOY / "captions.jsonl").write_text(json.dumps({"video_id": VIDEO_ID, "caption": CAPTION}) + "\n")

    rng = np.random.default_rng(7)
    caption_vec = unit(rng.standard_normal(DIM))
    ids, vectors = [], []
    for i in range(N_FRAMES):
        noise = rng.standard_normal(DIM)
        # middle scene aligns with the caption; frame 6 aligns most
        pull = 2.5 if i == 6 else (1.2 if 4 <= i <= 7 else 0.2)
        ids.append(frame_key(VIDEO_ID, i))
        vectors.append(unit(pull * caption_vec + noise).astype(np.float32))
    write_container(ids, vectors, TOY / "frames.ksec")
    write_container([caption_key(VIDEO_ID)], [caption_vec.astype(np.float32)], TOY / "texts.ksec")
    print(f"wrote toy fixture under {TOY}")


if __name__ == "__main__":
    main()
