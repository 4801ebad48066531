from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest
from PIL import Image

from framesieve.cli import main
from framesieve.container import write_container
from framesieve.fileio import read_jsonl

from .conftest import TOY_DIR, solid_image

TOY_MANIFEST = str(TOY_DIR / "manifest.jsonl")
TOY_FRAMES = str(TOY_DIR / "frames.ksec")
TOY_TEXTS = str(TOY_DIR / "texts.ksec")


class TestPropose:
    def test_writes_one_row_per_video(self, tmp_path):
        out = tmp_path / "proposals.jsonl"
        assert main(["propose", "--manifest", TOY_MANIFEST, "--out", str(out)]) == 0
        rows = read_jsonl(out)
        assert len(rows) == 1
        row = rows[0]
        assert row["video_id"] == "toy0"
        assert row["seed"] == 42
        assert len(row["frame_indices"]) == row["k_star"]
        assert set(row["frame_indices"]) <= set(range(12))
        assert -1.0 <= row["silhouette"] <= 1.0

    def test_worker_pool_output_is_order_stable(self, tmp_path):
        # two videos sharing the toy frames; --jobs must not affect the bytes
        rows = []
        for vid in ("clipA", "clipB"):
            for i in range(12):
                rows.append(
                    json.dumps(
                        {
                            "video_id": vid,
                            "frame_index": i,
                            "timestamp_s": i * 0.5,
                            "image_path": str(TOY_DIR / "frames" / f"frame_{i:03d}.png"),
                        }
                    )
                )
        manifest = tmp_path / "two.jsonl"
        manifest.write_text("\n".join(rows) + "\n")
        serial, parallel = tmp_path / "serial.jsonl", tmp_path / "parallel.jsonl"
        assert main(["propose", "--manifest", str(manifest), "--jobs", "1", "--out", str(serial)]) == 0
        assert main(["propose", "--manifest", str(manifest), "--jobs", "4", "--out", str(parallel)]) == 0
        assert serial.read_bytes() == parallel.read_bytes()
        assert [r["video_id"] for r in read_jsonl(serial)] == ["clipA", "clipB"]

    def test_missing_manifest_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["propose", "--out", "x.jsonl"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_nonexistent_manifest_is_data_error(self, tmp_path, capsys):
        rc = main(["propose", "--manifest", str(tmp_path / "nope.jsonl"), "--out", str(tmp_path / "o")])
        assert rc == 1
        assert "propose" in capsys.readouterr().err


class TestScore:
    def test_scores_all_manifest_frames(self, tmp_path):
        out = tmp_path / "scores.jsonl"
        rc = main(
            [
                "score",
                "--embeddings",
                TOY_FRAMES,
                "--text-embeddings",
                TOY_TEXTS,
                "--manifest",
                TOY_MANIFEST,
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        (row,) = read_jsonl(out)
        assert len(row["frames"]) == 12
        for f in row["frames"]:
            for key in ("s_sem", "s_temp", "s_drop", "combined"):
                assert 0.0 <= f[key] <= 1.0
            assert "raw" not in f

    def test_emit_raw_adds_raw_block(self, tmp_path):
        out = tmp_path / "scores.jsonl"
        main(
            [
                "score",
                "--embeddings",
                TOY_FRAMES,
                "--text-embeddings",
                TOY_TEXTS,
                "--manifest",
                TOY_MANIFEST,
                "--emit-raw",
                "--out",
                str(out),
            ]
        )
        (row,) = read_jsonl(out)
        assert all("raw" in f and set(f["raw"]) == {"s_sem", "s_temp", "s_drop"} for f in row["frames"])

    def test_restricts_to_proposals(self, tmp_path):
        proposals = tmp_path / "p.jsonl"
        main(["propose", "--manifest", TOY_MANIFEST, "--out", str(proposals)])
        out = tmp_path / "scores.jsonl"
        main(
            [
                "score",
                "--embeddings",
                TOY_FRAMES,
                "--text-embeddings",
                TOY_TEXTS,
                "--manifest",
                TOY_MANIFEST,
                "--proposals",
                str(proposals),
                "--out",
                str(out),
            ]
        )
        (row,) = read_jsonl(out)
        assert [f["frame_index"] for f in row["frames"]] == read_jsonl(proposals)[0]["frame_indices"]

    def test_bad_weight_sum_exits_one(self, tmp_path, capsys):
        rc = main(
            [
                "score",
                "--embeddings",
                TOY_FRAMES,
                "--manifest",
                TOY_MANIFEST,
                "--alpha",
                "0.5",
                "--beta",
                "0.3",
                "--gamma",
                "0.1",
                "--out",
                str(tmp_path / "s.jsonl"),
            ]
        )
        assert rc == 1
        assert "sum" in capsys.readouterr().err


class TestSelect:
    @pytest.fixture
    def scores_path(self, tmp_path):
        out = tmp_path / "scores.jsonl"
        main(
            [
                "score",
                "--embeddings",
                TOY_FRAMES,
                "--text-embeddings",
                TOY_TEXTS,
                "--manifest",
                TOY_MANIFEST,
                "--out",
                str(out),
            ]
        )
        return out

    def test_top_k(self, tmp_path, scores_path):
        out = tmp_path / "sel.jsonl"
        assert main(["select", "--scores", str(scores_path), "--strategy", "top_k", "--param", "3", "--out", str(out)]) == 0
        (row,) = read_jsonl(out)
        assert len(row["selected"]) == 3
        assert row["strategy"] == "top_k"

    def test_frac_max_default(self, tmp_path, scores_path):
        out = tmp_path / "sel.jsonl"
        assert main(["select", "--scores", str(scores_path), "--out", str(out)]) == 0
        (row,) = read_jsonl(out)
        assert 1 <= len(row["selected"]) <= 12
        assert row["params"] == {"rho": 0.8}


class TestEvalCommands:
    def test_eval_reduction(self, tmp_path, capsys):
        sel = tmp_path / "sel.jsonl"
        rows = [
            {"video_id": "a", "strategy": "top_k", "params": {"k": 2}, "selected": [0, 4], "seed": 1},
            {"video_id": "b", "strategy": "top_k", "params": {"k": 2}, "selected": [1, 2, 3], "seed": 1},
        ]
        sel.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        rc = main(["eval-reduction", "--selections", str(sel), "--n-ufp", "8", "--n-avg", "408"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["asf"] == 2.5
        assert abs(report["frr_ufp"] - 0.6875) < 1e-9
        assert report["n_videos"] == 2

    def test_eval_retrieval_identity(self, tmp_path, capsys):
        dim = 6
        eye = np.eye(dim, dtype=np.float32)
        videos = tmp_path / "videos.ksec"
        texts = tmp_path / "texts.ksec"
        write_container([f"v{i}" for i in range(3)], eye[:3], videos)
        write_container([f"t{i}" for i in range(3)], eye[:3], texts)
        pairs = tmp_path / "pairs.jsonl"
        pairs.write_text("\n".join(json.dumps({"text_id": f"t{i}", "video_id": f"v{i}"}) for i in range(3)) + "\n")
        rc = main(
            [
                "eval-retrieval",
                "--video-embeddings",
                str(videos),
                "--text-embeddings",
                str(texts),
                "--pairs",
                str(pairs),
                "--k",
                "1,5",
            ]
        )
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["t2v"]["r@1"] == 100.0
        assert report["v2t"]["r@5"] == 100.0

    def test_eval_f1_identical_sets(self, tmp_path, capsys):
        frames_dir = tmp_path / "frames"
        frames_dir.mkdir()
        for i, color in enumerate([(250, 10, 10), (10, 250, 10)]):
            Image.fromarray(solid_image(color)).save(frames_dir / f"{i}.png")
        manifest = tmp_path / "m.jsonl"
        manifest.write_text(
            "\n".join(
                json.dumps(
                    {"video_id": "v", "frame_index": i, "timestamp_s": float(i), "image_path": f"frames/{i}.png"}
                )
                for i in range(2)
            )
            + "\n"
        )
        rc = main(["eval-f1", "--selected-manifest", str(manifest), "--gt-manifest", str(manifest)])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["f1"] == 1.0


class TestPipeline:
    def test_end_to_end_artifacts(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        rc = main(
            [
                "pipeline",
                "--manifest",
                TOY_MANIFEST,
                "--frame-embeddings",
                TOY_FRAMES,
                "--text-embeddings",
                TOY_TEXTS,
                "--video-embeddings-out",
                str(tmp_path / "videos.ksec"),
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["asf"] <= 12
        assert json.loads(out.read_text()) == report
        for suffix in (".proposals.jsonl", ".scores.jsonl", ".selection.jsonl"):
            assert (tmp_path / f"report{suffix}").exists()
        assert (tmp_path / "videos.ksec").exists()

    def test_missing_embedding_key_names_stage(self, tmp_path, capsys):
        bad = tmp_path / "bad.ksec"
        write_container(["other#0"], np.ones((1, 4), dtype=np.float32), bad)
        rc = main(
            [
                "pipeline",
                "--manifest",
                TOY_MANIFEST,
                "--frame-embeddings",
                str(bad),
                "--out",
                str(tmp_path / "report.json"),
            ]
        )
        assert rc == 1
        assert "stage 'score'" in capsys.readouterr().err


def test_module_entrypoint_version():
    result = subprocess.run(
        [sys.executable, "-m", "framesieve", "--version"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "framesieve" in result.stdout
