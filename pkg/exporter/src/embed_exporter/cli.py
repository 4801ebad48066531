"""`embed-export`: turn a frame manifest plus captions into KSEC containers."""

from __future__ import annotations

import argparse
import sys

from .errors import ExportError
from .jobs import DEFAULT_DIM, ExportJob
from .mock import export_mock
from .model import export_model


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embed-export", description=__doc__)
    parser.add_argument("--manifest", required=True, help="frame manifest JSONL")
    parser.add_argument("--captions", required=True, help="captions JSONL ({video_id, caption})")
    parser.add_argument("--backend", required=True, choices=("mock", "model"))
    parser.add_argument("--model", default=None, help="checkpoint id or path (backend=model)")
    parser.add_argument("--dim", type=int, default=DEFAULT_DIM, help="vector width (backend=mock)")
    parser.add_argument("--batch-size", type=int, default=1)
    parser.add_argument("--out-frames", required=True)
    parser.add_argument("--out-texts", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = ExportJob(
        manifest_path=args.manifest,
        captions_path=args.captions,
        backend=args.backend,
        out_frames=args.out_frames,
        out_texts=args.out_texts,
        dimension=args.dim,
        model_id=args.model,
        batch_size=args.batch_size,
    )
    try:
        if args.backend == "mock":
            export_mock(job)
        else:
            export_model(job)
    except (ExportError, OSError) as exc:
        print(f"embed-export: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
