"""Regenerate the shared format-conformance fixture under fixtures/conformance/.

The fixture is produced by the mock backend so any KSEC implementation can
verify it decodes to exactly the values recorded in expected.json.

Usage: python scripts/make_conformance_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from embed_exporter.container import read_container
from embed_exporter.jobs import ExportJob
from embed_exporter.mock import export_mock

REPO_ROOT = Path(__file__).resolve().parent.parent.parent
OUT_DIR = REPO_ROOT / "fixtures" / "conformance"
DIM = 8

VIDEOS = {
    "confA": (3, "a person assembles a wooden chair"),
    "confB": (2, "waves crash on a rocky shore at dusk"),
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    manifest_lines = []
    for vid, (n_frames, _) in VIDEOS.items():
        for i in range(n_frames):
            manifest_lines.append(
                json.dumps(
                    {"video_id": vid, "frame_index": i, "timestamp_s": i * 1.0, "image_path": f"{vid}_{i}.png"}
                )
            )
    manifest = OUT_DIR / "manifest.jsonl"
    manifest.write_text("\n".join(manifest_lines) + "\n")
    captions = OUT_DIR / "captions.jsonl"
    captions.write_text(
        "\n".join(json.dumps({"video_id": vid, "caption": cap}) for vid, (_, cap) in VIDEOS.items()) + "\n"
    )

    job = ExportJob(
        manifest_path=str(manifest),
        captions_path=str(captions),
        backend="mock",
        out_frames=str(OUT_DIR / "mock_frames.ksec"),
        out_texts=str(OUT_DIR / "mock_texts.ksec"),
        dimension=DIM,
    )
    export_mock(job)

    expected = {}
    for name in ("mock_frames.ksec", "mock_texts.ksec"):
        ids, vectors = read_container(OUT_DIR / name)
        expected[name] = {
            "dimension": int(vectors.shape[1]),
            "count": len(ids),
            "vectors": {ident: [float(x) for x in vectors[i]] for i, ident in enumerate(ids)},
        }
    (OUT_DIR / "expected.json").write_text(json.dumps(expected, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote conformance fixture under {OUT_DIR}")


if __name__ == "__main__":
    main()
