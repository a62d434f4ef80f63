"""Command-line entry point.

One executable, `moviesim`, with one subcommand per pipeline stage plus
`run-all` and `serve`.  Configuration comes from an optional JSON config
file; any CLI flag overrides the config field of the same name.  Stages
re-use artifacts already present in the artifact directory unless
`--force` is given.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .artifacts import ArtifactStore
from .audio.classes import read_feature_csv, taxonomy_for_kind
from .audio.svm import svm_train
from .corpus import load_manifest, load_tags
from .errors import MovieSimError, ValidationError
from .evaluation import GroundTruth, evaluate_model, ground_truth
from .pipeline import PipelineConfig, ensure_stage, run_pipeline
from .report import render_text, write_report
from .similarity import MODALITIES, FusionWeights, fuse, similarity_matrix
from .topics.lda import topic_top_words

log = logging.getLogger(__name__)


def _parse_cli_weights(raw: str) -> dict[str, float]:
    """`modality=weight` (or `modality:weight`) pairs, comma separated."""
    weights: dict[str, float] = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        sep = "=" if "=" in part else ":"
        name, _, value = part.partition(sep)
        name = name.strip()
        if name not in MODALITIES:
            raise ValidationError(f"unknown modality {name!r}; valid: {sorted(MODALITIES)}")
        if name in weights:
            raise ValidationError(f"modality {name!r} given twice")
        try:
            weights[name] = float(value)
        except ValueError:
            raise ValidationError(f"weight for {name!r} is not a number: {value!r}") from None
    if not weights:
        raise ValidationError("no weights given; expected modality=weight pairs")
    return weights


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    if args.config:
        cfg = PipelineConfig.from_file(args.config)
    else:
        manifest = getattr(args, "manifest", None)
        artifacts = getattr(args, "artifacts", None) or getattr(args, "out", None)
        if not manifest or not artifacts:
            raise ValidationError(
                "either --config or both --manifest and --artifacts are required"
            )
        cfg = PipelineConfig(manifest=str(manifest), artifact_dir=str(artifacts))

    overrides = {
        "manifest": "manifest",
        "artifacts": "artifact_dir",
        "out": "artifact_dir",
        "report_dir": "report_dir",
        "t": "n_topics",
        "alpha": "alpha",
        "beta": "beta",
        "iters": "iterations",
        "seed": "seed",
        "k": "k",
        "step": "fusion_step",
        "port": "port",
        "epochs": "svm_epochs",
        "lam": "svm_lambda",
    }
    for flag, field_name in overrides.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, field_name, value)

    if getattr(args, "filter_config", None):
        with open(args.filter_config, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{args.filter_config}: not valid JSON ({exc})") from exc
        allowed = {"min_doc_freq", "max_doc_ratio", "low_info_max_tf", "low_info_min_doc_ratio"}
        unknown = sorted(set(raw) - allowed)
        if unknown:
            raise ValidationError(f"{args.filter_config}: unknown filter keys {unknown}")
        for key, value in raw.items():
            setattr(cfg, key, value)
    return cfg


def _print_outcomes(outcomes: dict[str, str]) -> None:
    for stage, what in outcomes.items():
        print(f"{stage}: {what}")


def _cmd_stage(args, stage: str) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    _print_outcomes(ensure_stage(cfg, store, stage, force=args.force))


def _cmd_similarity(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    if args.modality is None:
        _print_outcomes(ensure_stage(cfg, store, "similarity", force=args.force))
        return
    if args.modality not in MODALITIES:
        raise ValidationError(f"unknown modality {args.modality!r}; valid: {sorted(MODALITIES)}")
    name = f"sim_{args.modality}"
    if store.exists(name) and not args.force:
        print(f"similarity[{args.modality}]: cached")
        return
    mv = store.load(f"vectors_{args.modality}")
    store.save(name, similarity_matrix(mv))
    print(f"similarity[{args.modality}]: ran")


def _cmd_fuse(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    raw = _parse_cli_weights(args.weights)
    weights = FusionWeights.normalized(raw)
    matrices = {}
    for modality in weights.weights:
        matrices[modality] = store.load(f"sim_{modality}")
    fused = fuse(matrices, weights)
    store.save("sim_fused", fused)
    store.save("fusion_weights", weights)
    print("fused with weights " + ", ".join(f"{m}={w:g}" for m, w in sorted(weights.weights.items())))


def _cmd_search_weights(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    _print_outcomes(ensure_stage(cfg, store, "search-weights", force=args.force))
    weights = store.load("fusion_weights")
    fusion_report = store.load("fusion_report")
    print("weights: " + ", ".join(f"{m}={w:g}" for m, w in sorted(weights.weights.items())))
    print(f"median first-rec rank: {fusion_report.median_first_rec_rank:g}")
    print(f"top-10 pct: {fusion_report.top10_pct:.1f}")


def _cmd_evaluate(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)

    ensure_stage(cfg, store, "similarity", force=False)
    if args.gt:
        tags = load_tags(args.gt)
        manifest = load_manifest(cfg.manifest)
        gt = ground_truth(tags, manifest.movie_order)
        store.save("gt", gt.matrix)
    else:
        ensure_stage(cfg, store, "ground-truth", force=False)
        gt_matrix = store.load("gt")
        gt = GroundTruth(
            matrix=gt_matrix, tag_space_size=int(gt_matrix.provenance["tag_space_size"])
        )

    if args.models:
        names = [m.strip() for m in args.models.split(",") if m.strip()]
        bad = [m for m in names if m not in MODALITIES and m != "fusion"]
        if bad:
            raise ValidationError(f"unknown model names {bad}; valid: {sorted(MODALITIES)} + ['fusion']")
    else:
        names = list(MODALITIES)
        if store.exists("sim_fused"):
            names.append("fusion")

    reports = []
    for name in names:
        matrix = store.load("sim_fused" if name == "fusion" else f"sim_{name}")
        reports.append(evaluate_model(name, matrix, gt.matrix))

    if args.fused:
        weights = FusionWeights.normalized(_parse_cli_weights(args.fused))
        matrices = {m: store.load(f"sim_{m}") for m in weights.weights}
        label = "fused[" + ",".join(f"{m}={w:g}" for m, w in sorted(weights.weights.items())) + "]"
        reports.append(evaluate_model(label, fuse(matrices, weights), gt.matrix))

    store.save("eval_reports", reports)
    paths = write_report(reports, cfg.resolved_report_dir())
    sys.stdout.write(render_text(reports))
    print("written: " + ", ".join(str(p) for p in paths))


def _cmd_export_topics(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    model = store.load("lda_model")
    payload = []
    for t in range(model.n_topics):
        summary = topic_top_words(model, t, args.n)
        payload.append(
            {"topic_id": summary.topic_id, "top_words": [[w, p] for w, p in summary.top_words]}
        )
    text = json.dumps(payload, ensure_ascii=False, indent=2)
    if args.out_file:
        Path(args.out_file).write_text(text + "\n", encoding="utf-8")
        print(f"written: {args.out_file}")
    else:
        print(text)


def _cmd_audio_train(args) -> None:
    cfg = _build_config(args)
    store = ArtifactStore(cfg.artifact_dir)
    taxonomy = taxonomy_for_kind(args.kind)
    data_dir = Path(args.data)
    vectors = []
    labels = []
    for label in taxonomy.labels:
        path = data_dir / f"{label}.csv"
        if not path.is_file():
            raise ValidationError(
                f"no training examples for class {label!r}: expected {path}"
            )
        feats = read_feature_csv(str(path))
        vectors.extend(feats.vectors)
        labels.extend([label] * feats.n_segments)
    model = svm_train(
        np.array(vectors),
        labels,
        taxonomy,
        epochs=cfg.svm_epochs,
        lam=cfg.svm_lambda,
        seed=cfg.seed,
    )
    store.save(f"svm_{args.kind}", model)
    print(f"svm_{args.kind}: trained on {len(labels)} segments")


def _cmd_run_all(args) -> None:
    cfg = _build_config(args)
    _print_outcomes(run_pipeline(cfg, force=args.force))


def _cmd_serve(args) -> None:
    cfg = _build_config(args)
    from .service import serve

    serve(cfg, port=args.port, ui_dir=args.ui, host=args.host)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moviesim",
        description="Multimodal movie similarity: train models, fuse rankings, serve a browser.",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its fields")
    common.add_argument("--manifest", help="corpus manifest JSON")
    common.add_argument("--artifacts", help="artifact directory")
    common.add_argument("--report-dir", dest="report_dir", help="report output directory")
    common.add_argument("--force", action="store_true", help="re-run even if artifacts exist")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-text", parents=[common], help="parse subtitles into a bag of words")
    p.add_argument("--out", help="artifact directory (alias for --artifacts)")
    p.add_argument("--filter-config", dest="filter_config", help="JSON vocabulary filter settings")
    p.set_defaults(func=lambda a: _cmd_stage(a, "ingest-text"))

    p = sub.add_parser("train-tfidf", parents=[common], help="build the tf-idf matrix")
    p.set_defaults(func=lambda a: _cmd_stage(a, "train-tfidf"))

    p = sub.add_parser("train-lsi", parents=[common], help="fit the truncated-SVD model")
    p.add_argument("--k", type=int, help="number of latent dimensions")
    p.set_defaults(func=lambda a: _cmd_stage(a, "train-lsi"))

    p = sub.add_parser("train-lda", parents=[common], help="fit the topic model")
    p.add_argument("--t", type=int, help="number of topics")
    p.add_argument("--alpha", type=float, help="document-topic prior (default 50/topics)")
    p.add_argument("--beta", type=float, help="topic-word prior")
    p.add_argument("--iters", type=int, help="Gibbs sweeps")
    p.add_argument("--seed", type=int, help="sampler seed")
    p.set_defaults(func=lambda a: _cmd_stage(a, "train-lda"))

    p = sub.add_parser("export-topics", parents=[common], help="emit top words per topic as JSON")
    p.add_argument("--n", type=int, default=20, help="words per topic")
    p.add_argument("--out-file", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_export_topics)

    p = sub.add_parser("audio-train", parents=[common], help="train an audio segment classifier")
    p.add_argument("--kind", required=True, choices=["genre", "event"])
    p.add_argument("--data", required=True, help="directory of per-class feature CSVs (<label>.csv)")
    p.add_argument("--epochs", type=int, help="training epochs")
    p.add_argument("--lam", type=float, help="L2 regularization strength")
    p.add_argument("--seed", type=int, help="shuffling seed")
    p.set_defaults(func=_cmd_audio_train)

    p = sub.add_parser(
        "audio-represent", parents=[common], help="build audio class histograms per movie"
    )
    p.set_defaults(func=lambda a: _cmd_stage(a, "audio"))

    p = sub.add_parser("metadata", parents=[common], help="build metadata one-hot vectors")
    p.set_defaults(func=lambda a: _cmd_stage(a, "metadata"))

    p = sub.add_parser("similarity", parents=[common], help="compute similarity matrices")
    p.add_argument("--modality", help="compute one modality only")
    p.set_defaults(func=_cmd_similarity)

    p = sub.add_parser("fuse", parents=[common], help="fuse matrices with explicit weights")
    p.add_argument("--weights", required=True, help="e.g. lda=0.3,metadata=0.7")
    p.set_defaults(func=_cmd_fuse)

    p = sub.add_parser("search-weights", parents=[common], help="grid-search fusion weights")
    p.add_argument("--step", type=float, help="simplex grid step (must divide 1)")
    p.set_defaults(func=_cmd_search_weights)

    p = sub.add_parser("evaluate", parents=[common], help="rank against the tag ground truth")
    p.add_argument("--models", help="comma list of models (default: all + stored fusion)")
    p.add_argument("--fused", help="also evaluate this ad-hoc weighting, e.g. lda=0.5,lsi=0.5")
    p.add_argument("--gt", help="tags CSV overriding the manifest's tags path")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("run-all", parents=[common], help="run every stage in order")
    p.set_defaults(func=_cmd_run_all)

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API (and optional UI)")
    p.add_argument("--port", type=int, help="listen port")
    p.add_argument("--host", default="127.0.0.1", help="bind address")
    p.add_argument("--ui", help="static UI directory to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        args.func(args)
    except MovieSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
