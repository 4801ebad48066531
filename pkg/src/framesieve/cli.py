"""Command-line interface.

Subcommands mirror the pipeline stages (propose, score, select), the three
evaluation reports, and a `pipeline` command that chains propose -> score ->
select -> reduction report in one invocation. Usage errors exit 2; data
errors exit 1 with the failing stage named on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from . import container as ksec
from .clustering import DEFAULT_K_MAX, DEFAULT_K_MIN, ProposalSet
from .errors import FrameSieveError
from .features import DEFAULT_BINS, DEFAULT_GAMMA_TIME, load_image, load_manifests
from .fileio import atomic_write_text, dump_json, read_jsonl, write_jsonl
from .metrics import (
    DEFAULT_F1_THRESHOLD,
    DEFAULT_N_UFP,
    ReductionReport,
    SimilarityMatrix,
    keyframe_f1,
    recall_at_k,
)
from .pipeline import (
    VideoScores,
    propose_stage,
    reduction_stage,
    score_stage,
    select_stage,
    selected_video_embeddings,
)
from .scoring import ScoreBreakdown, Weights
from .selection import DEFAULT_PARAM, DEFAULT_STRATEGY, SelectionResult

DEFAULT_SEED = 42


class StageError(Exception):
    """Wraps a failure with the pipeline stage it happened in."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def _proposals_to_rows(proposals: list[ProposalSet], seed: int) -> list[dict]:
    return [
        {
            "video_id": p.video_id,
            "k_star": p.k_star,
            "frame_indices": p.frame_indices,
            "silhouette": p.silhouette,
            "seed": seed,
        }
        for p in proposals
    ]


def _scores_to_rows(scored: list[VideoScores], seed: int, emit_raw: bool) -> list[dict]:
    rows = []
    for vs in scored:
        frames = []
        for s in vs.frames:
            obj = {
                "frame_index": s.frame_index,
                "s_sem": s.s_sem,
                "s_temp": s.s_temp,
                "s_drop": s.s_drop,
                "combined": s.combined,
            }
            if emit_raw:
                obj["raw"] = {"s_sem": s.s_sem_raw, "s_temp": s.s_temp_raw, "s_drop": s.s_drop_raw}
            frames.append(obj)
        rows.append(
            {
                "video_id": vs.video_id,
                "weights": {"alpha": vs.weights.alpha, "beta": vs.weights.beta, "gamma": vs.weights.gamma},
                "frames": frames,
                "seed": seed,
            }
        )
    return rows


def _selections_to_rows(selections: list[SelectionResult], seed: int) -> list[dict]:
    return [
        {
            "video_id": s.video_id,
            "strategy": s.strategy,
            "params": s.parameters,
            "selected": s.selected,
            "seed": seed,
        }
        for s in selections
    ]


def _scores_from_rows(rows: list[dict]) -> list[VideoScores]:
    out = []
    for row in rows:
        w = row["weights"]
        weights = Weights(float(w["alpha"]), float(w["beta"]), float(w["gamma"]))
        frames = []
        for f in row["frames"]:
            raw = f.get("raw", {})
            frames.append(
                ScoreBreakdown(
                    frame_index=int(f["frame_index"]),
                    s_sem_raw=float(raw.get("s_sem", f["s_sem"])),
                    s_temp_raw=float(raw.get("s_temp", f["s_temp"])),
                    s_drop_raw=float(raw.get("s_drop", f["s_drop"])),
                    s_sem=float(f["s_sem"]),
                    s_temp=float(f["s_temp"]),
                    s_drop=float(f["s_drop"]),
                    combined=float(f["combined"]),
                )
            )
        out.append(VideoScores(str(row["video_id"]), weights, frames))
    return out


def _report_reduction(report: ReductionReport, n_videos: int, seed: int) -> dict:
    return {
        "asf": report.asf,
        "frr_ufp": report.frr_ufp,
        "frr_avg": report.frr_avg,
        "n_ufp": report.n_ufp,
        "n_avg": report.n_avg,
        "n_videos": n_videos,
        "seed": seed,
    }


def _add_propose_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma-time", type=float, default=DEFAULT_GAMMA_TIME, help="temporal scale factor")
    p.add_argument("--step", type=int, default=None, help="sampling step (default: auto, caps at 256 frames)")
    p.add_argument("--k-min", type=int, default=DEFAULT_K_MIN)
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS, help="histogram bins per HSV channel")


def _add_weight_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0 / 3.0, help="semantic weight")
    p.add_argument("--beta", type=float, default=1.0 / 3.0, help="temporal weight")
    p.add_argument("--gamma", type=float, default=1.0 / 3.0, help="drop-impact weight")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framesieve", description=__doc__)
    parser.add_argument("--version", action="version", version=f"framesieve {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("propose", help="cluster frames and emit proposals")
    p.add_argument("--manifest", required=True)
    _add_propose_args(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=os.cpu_count())
    p.add_argument("--out", required=True)

    p = sub.add_parser("score", help="score frames against captions")
    p.add_argument("--embeddings", required=True, help="frame embedding container")
    p.add_argument("--text-embeddings", default=None, help="caption container (default: --embeddings)")
    p.add_argument("--manifest", required=True)
    p.add_argument("--proposals", default=None, help="restrict scoring to these proposals")
    _add_weight_args(p)
    p.add_argument("--emit-raw", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)

    p = sub.add_parser("select", help="pick keyframes from scores")
    p.add_argument("--scores", required=True)
    p.add_argument("--strategy", default=DEFAULT_STRATEGY, choices=("top_k", "absolute", "mean_std", "frac_max"))
    p.add_argument("--param", type=float, default=DEFAULT_PARAM)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)

    p = sub.add_parser("eval-retrieval", help="recall@k over embedding containers")
    p.add_argument("--video-embeddings", required=True)
    p.add_argument("--text-embeddings", required=True)
    p.add_argument("--pairs", required=True, help="JSONL of {text_id, video_id} ground truth")
    p.add_argument("--k", default="1,5,10", help="comma-separated k values")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("eval-reduction", help="frame reduction report from selections")
    p.add_argument("--selections", required=True)
    p.add_argument("--n-ufp", type=int, default=DEFAULT_N_UFP)
    p.add_argument("--n-avg", type=float, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("eval-f1", help="keyframe F1 between two frame manifests")
    p.add_argument("--selected-manifest", required=True)
    p.add_argument("--gt-manifest", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_F1_THRESHOLD)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("pipeline", help="propose, score, select, and report in one run")
    p.add_argument("--manifest", required=True)
    p.add_argument("--frame-embeddings", required=True)
    p.add_argument("--text-embeddings", default=None, help="caption container (default: --frame-embeddings)")
    _add_propose_args(p)
    _add_weight_args(p)
    p.add_argument("--strategy", default=DEFAULT_STRATEGY, choices=("top_k", "absolute", "mean_std", "frac_max"))
    p.add_argument("--param", type=float, default=DEFAULT_PARAM)
    p.add_argument("--n-ufp", type=int, default=DEFAULT_N_UFP)
    p.add_argument("--n-avg", type=float, default=None, help="default: mean frame count of the manifest")
    p.add_argument("--emit-raw", action="store_true")
    p.add_argument("--video-embeddings-out", default=None, help="optionally write pooled selected-frame vectors")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=os.cpu_count())
    p.add_argument("--out", required=True, help="reduction report path; intermediates written beside it")
    return parser


def _cmd_propose(args: argparse.Namespace) -> int:
    manifests = load_manifests(args.manifest)
    proposals = propose_stage(
        manifests,
        gamma_time=args.gamma_time,
        step=args.step,
        k_min=args.k_min,
        k_max=args.k_max,
        seed=args.seed,
        bins_per_channel=args.bins,
        jobs=args.jobs,
    )
    write_jsonl(args.out, _proposals_to_rows(proposals, args.seed))
    return 0


def _load_proposal_indices(path: str) -> dict[str, list[int]]:
    return {str(r["video_id"]): [int(i) for i in r["frame_indices"]] for r in read_jsonl(path)}


def _cmd_score(args: argparse.Namespace) -> int:
    manifests = load_manifests(args.manifest)
    weights = Weights(args.alpha, args.beta, args.gamma)
    frame_vectors = ksec.load_as_dict(args.embeddings)
    text_vectors = ksec.load_as_dict(args.text_embeddings) if args.text_embeddings else frame_vectors
    proposals = _load_proposal_indices(args.proposals) if args.proposals else None
    scored = score_stage(manifests, frame_vectors, text_vectors, weights, proposals)
    write_jsonl(args.out, _scores_to_rows(scored, args.seed, args.emit_raw))
    return 0


def _cmd_select(args: argparse.Namespace) -> int:
    scored = _scores_from_rows(read_jsonl(args.scores))
    selections = select_stage(scored, args.strategy, args.param)
    write_jsonl(args.out, _selections_to_rows(selections, args.seed))
    return 0


def _cmd_eval_retrieval(args: argparse.Namespace) -> int:
    text_ids, text_vecs = ksec.read_container(args.text_embeddings)
    video_ids, video_vecs = ksec.read_container(args.video_embeddings)
    sim = SimilarityMatrix(
        row_ids=text_ids,
        col_ids=video_ids,
        values=text_vecs.astype("float64") @ video_vecs.astype("float64").T,
    )
    pairs = {str(r["text_id"]): str(r["video_id"]) for r in read_jsonl(args.pairs)}
    ks = [int(k) for k in args.k.split(",") if k.strip()]
    report = {
        "t2v": {f"r@{k}": recall_at_k(sim, k, "t2v", pairs) for k in ks},
        "v2t": {f"r@{k}": recall_at_k(sim, k, "v2t", pairs) for k in ks},
        "n_texts": len(text_ids),
        "n_videos": len(video_ids),
        "seed": args.seed,
    }
    print(dump_json(report))
    return 0


def _cmd_eval_reduction(args: argparse.Namespace) -> int:
    rows = read_jsonl(args.selections)
    selections = [
        SelectionResult(
            video_id=str(r["video_id"]),
            selected=[int(i) for i in r["selected"]],
            strategy=str(r.get("strategy", "")),
            parameters=dict(r.get("params", {})),
            n_candidates=len(r["selected"]),
        )
        for r in rows
    ]
    report = reduction_stage(selections, n_ufp=args.n_ufp, n_avg=args.n_avg)
    print(dump_json(_report_reduction(report, len(selections), args.seed)))
    return 0


def _cmd_eval_f1(args: argparse.Namespace) -> int:
    per_video = {}
    selected = {m.video_id: m for m in load_manifests(args.selected_manifest)}
    ground_truth = {m.video_id: m for m in load_manifests(args.gt_manifest)}
    if set(selected) != set(ground_truth):
        raise FrameSieveError("selected and ground-truth manifests cover different videos")
    for video_id in selected:
        sel_imgs = [load_image(e.image_path) for e in selected[video_id].entries]
        gt_imgs = [load_image(e.image_path) for e in ground_truth[video_id].entries]
        per_video[video_id] = keyframe_f1(sel_imgs, gt_imgs, args.threshold, args.bins)
    report = {
        "precision": sum(v["precision"] for v in per_video.values()) / len(per_video),
        "recall": sum(v["recall"] for v in per_video.values()) / len(per_video),
        "f1": sum(v["f1"] for v in per_video.values()) / len(per_video),
        "threshold": args.threshold,
        "per_video": per_video,
        "seed": args.seed,
    }
    print(dump_json(report))
    return 0


def _cmd_pipeline(args: argparse.Namespace) -> int:
    out = Path(args.out)
    stem = out.with_suffix("")

    with _stage("propose"):
        manifests = load_manifests(args.manifest)
        proposals = propose_stage(
            manifests,
            gamma_time=args.gamma_time,
            step=args.step,
            k_min=args.k_min,
            k_max=args.k_max,
            seed=args.seed,
            bins_per_channel=args.bins,
            jobs=args.jobs,
        )
        write_jsonl(f"{stem}.proposals.jsonl", _proposals_to_rows(proposals, args.seed))

    with _stage("score"):
        weights = Weights(args.alpha, args.beta, args.gamma)
        frame_vectors = ksec.load_as_dict(args.frame_embeddings)
        text_vectors = ksec.load_as_dict(args.text_embeddings) if args.text_embeddings else frame_vectors
        proposal_indices = {p.video_id: p.frame_indices for p in proposals}
        scored = score_stage(manifests, frame_vectors, text_vectors, weights, proposal_indices)
        write_jsonl(f"{stem}.scores.jsonl", _scores_to_rows(scored, args.seed, args.emit_raw))

    with _stage("select"):
        selections = select_stage(scored, args.strategy, args.param)
        write_jsonl(f"{stem}.selection.jsonl", _selections_to_rows(selections, args.seed))
        if args.video_embeddings_out:
            ids, vectors = selected_video_embeddings(manifests, frame_vectors, text_vectors, selections)
            ksec.write_container(ids, vectors, args.video_embeddings_out)

    with _stage("reduce"):
        n_avg = args.n_avg if args.n_avg is not None else sum(len(m) for m in manifests) / len(manifests)
        report = reduction_stage(selections, n_ufp=args.n_ufp, n_avg=n_avg)
        payload = dump_json(_report_reduction(report, len(selections), args.seed))
        atomic_write_text(out, payload + "\n")
        print(payload)
    return 0


_COMMANDS = {
    "propose": _cmd_propose,
    "score": _cmd_score,
    "select": _cmd_select,
    "eval-retrieval": _cmd_eval_retrieval,
    "eval-reduction": _cmd_eval_reduction,
    "eval-f1": _cmd_eval_f1,
    "pipeline": _cmd_pipeline,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except StageError as exc:
        print(f"framesieve {args.command}: {exc}", file=sys.stderr)
        return 1
    except (FrameSieveError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"framesieve {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
