"""Format interop: containers written here must decode identically everywhere.

framesieve (the consumer package) is installed alongside in this repo, so the
cross-implementation checks import its reader directly.
"""

from __future__ import annotations

import json

import numpy as np
import framesieve

from embed_exporter.container import read_container, write_container
from embed_exporter.jobs import ExportJob
from embed_exporter.mock import export_mock

from .conftest import CONFORMANCE_DIR


class TestCrossImplementation:
    def test_mock_output_parses_in_consumer_reader(self, sample_inputs, tmp_path):
        manifest, captions = sample_inputs
        job = ExportJob(
            manifest_path=str(manifest),
            captions_path=str(captions),
            backend="mock",
            out_frames=str(tmp_path / "frames.ksec"),
            out_texts=str(tmp_path / "texts.ksec"),
            dimension=32,
        )
        export_mock(job)
        ours_ids, ours_vecs = read_container(tmp_path / "frames.ksec")
        theirs_ids, theirs_vecs = framesieve.read_container(tmp_path / "frames.ksec")
        assert theirs_ids == ours_ids
        assert theirs_vecs.tobytes() == ours_vecs.tobytes()
        assert len(theirs_ids) == 5  # one vector per manifest frame

    def test_writers_produce_identical_bytes(self, tmp_path):
        rng = np.random.default_rng(3)
        ids = [f"v{i}#0" for i in range(4)]
        vectors = rng.standard_normal((4, 6)).astype(np.float32)
        write_container(ids, list(vectors), tmp_path / "ours.ksec")
        framesieve.write_container(ids, vectors, tmp_path / "theirs.ksec")
        assert (tmp_path / "ours.ksec").read_bytes() == (tmp_path / "theirs.ksec").read_bytes()


class TestCheckedInFixture:
    def test_fixture_decodes_identically_in_both_readers(self):
        expected = json.loads((CONFORMANCE_DIR / "expected.json").read_text())
        for name, entry in expected.items():
            path = CONFORMANCE_DIR / name
            for reader in (read_container, framesieve.read_container):
                ids, vectors = reader(path)
                assert len(ids) == entry["count"]
                assert vectors.shape == (entry["count"], entry["dimension"])
                for i, ident in enumerate(ids):
                    want = np.array(entry["vectors"][ident], dtype=np.float64)
                    assert np.array_equal(vectors[i].astype(np.float64), want), ident

    def test_fixture_regenerates_byte_identically(self, tmp_path):
        job = ExportJob(
            manifest_path=str(CONFORMANCE_DIR / "manifest.jsonl"),
            captions_path=str(CONFORMANCE_DIR / "captions.jsonl"),
            backend="mock",
            out_frames=str(tmp_path / "frames.ksec"),
            out_texts=str(tmp_path / "texts.ksec"),
            dimension=8,
        )
        export_mock(job)
        assert (tmp_path / "frames.ksec").read_bytes() == (CONFORMANCE_DIR / "mock_frames.ksec").read_bytes()
        assert (tmp_path / "texts.ksec").read_bytes() == (CONFORMANCE_DIR / "mock_texts.ksec").read_bytes()
