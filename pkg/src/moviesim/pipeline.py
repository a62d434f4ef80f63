"""Staged pipeline: ingest, models, vectors, matrices, search, report.

Each stage persists named artifacts through an ArtifactStore and is
skipped when all of its artifacts already exist (unless forced).  A
failing stage removes whatever partial artifacts it wrote and is
re-raised as StageError carrying the stage name.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable

import numpy as np

from .artifacts import ArtifactStore
from .audio.classes import (
    class_histogram,
    event_taxonomy,
    genre_taxonomy,
    read_feature_csv,
    split_mixed_labels,
)
from .audio.svm import classify_segments
from .corpus import CorpusManifest, load_manifest, load_tags
from .errors import ParameterError, StageError, ValidationError
from .evaluation import GroundTruth, ground_truth
from .evaluation import report as eval_report
from .report import write_report
from .similarity import (
    MODALITIES,
    FusionWeights,
    ModalityVectors,
    SimilarityMatrix,
    fuse,
    metadata_vectors,
    similarity_matrix,
)
from .text.lemmas import load_default_lemmatizer
from .text.srt import parse_srt
from .text.tokens import TokenStream, normalize
from .text.vocab import FilterConfig, build_bow, build_vocabulary, load_default_stopwords
from .topics.lda import lda_doc_topics, lda_fit
from .topics.lsi import lsi_fit
from .topics.tfidf import tfidf
from .weight_search import search_weights

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    manifest: str
    artifact_dir: str
    report_dir: str | None = None  # defaults to <artifact_dir>/report
    # vocabulary filtering
    min_doc_freq: int = 2
    max_doc_ratio: float = 0.95
    low_info_max_tf: int = 2
    low_info_min_doc_ratio: float = 0.5
    # topic models
    n_topics: int = 55
    alpha: float | None = None  # defaults to 50 / n_topics
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 13
    k: int = 35
    # audio classifiers
    svm_epochs: int = 100
    svm_lambda: float = 1e-4
    # fusion weight search
    fusion_step: float = 0.05
    # service
    port: int = 8765

    def resolved_alpha(self) -> float:
        return 50.0 / self.n_topics if self.alpha is None else self.alpha

    def resolved_report_dir(self) -> Path:
        if self.report_dir is not None:
            return Path(self.report_dir)
        return Path(self.artifact_dir) / "report"

    def filter_config(self) -> FilterConfig:
        return FilterConfig(
            min_doc_freq=self.min_doc_freq,
            max_doc_ratio=self.max_doc_ratio,
            low_info_max_tf=self.low_info_max_tf,
            low_info_min_doc_ratio=self.low_info_min_doc_ratio,
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(raw, source=str(path))

    @classmethod
    def from_dict(cls, raw: dict, source: str = "<config>") -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValidationError(f"{source}: unknown config keys {unknown}")
        if "manifest" not in raw or "artifact_dir" not in raw:
            raise ValidationError(f"{source}: config requires 'manifest' and 'artifact_dir'")
        cfg = cls(**raw)
        base = Path(source).parent if source not in ("<config>", "<cli>") else Path.cwd()
        cfg.manifest = str((base / cfg.manifest).resolve())
        cfg.artifact_dir = str((base / cfg.artifact_dir).resolve())
        if cfg.report_dir is not None:
            cfg.report_dir = str((base / cfg.report_dir).resolve())
        return cfg


def _token_streams(manifest: CorpusManifest) -> list[TokenStream]:
    lemmatizer = load_default_lemmatizer()
    streams = []
    for movie_id in manifest.movie_order:
        path = manifest.subtitles[movie_id]
        doc = parse_srt(Path(path).read_bytes())
        if doc.skipped_blocks:
            log.warning("%s: skipped %d malformed subtitle blocks", movie_id, doc.skipped_blocks)
        tokens = lemmatizer.lemmatize_all(normalize(doc.text))
        streams.append(TokenStream(movie_id=movie_id, tokens=tokens))
    return streams


# -- stage bodies ------------------------------------------------------------

def _stage_ingest_text(cfg: PipelineConfig, store: ArtifactStore) -> None:
    manifest = load_manifest(cfg.manifest)
    streams = _token_streams(manifest)
    vocab = build_vocabulary(streams, load_default_stopwords(), cfg.filter_config())
    bow = build_bow(streams, vocab)
    store.save("bow_corpus", bow)


def _stage_train_tfidf(cfg: PipelineConfig, store: ArtifactStore) -> None:
    bow = store.load("bow_corpus")
    matrix = tfidf(bow)
    store.save("tfidf", matrix)
    store.save(
        "vectors_tfidf",
        ModalityVectors(modality="tfidf", vectors=matrix.rows, movie_order=matrix.movie_order),
    )


def _stage_train_lsi(cfg: PipelineConfig, store: ArtifactStore) -> None:
    matrix = store.load("tfidf")
    model = lsi_fit(matrix, cfg.k)
    store.save("lsi_model", model)
    store.save(
        "vectors_lsi",
        ModalityVectors(modality="lsi", vectors=model.doc_vectors, movie_order=model.movie_order),
    )


def _stage_train_lda(cfg: PipelineConfig, store: ArtifactStore) -> None:
    bow = store.load("bow_corpus")
    model = lda_fit(
        bow,
        n_topics=cfg.n_topics,
        alpha=cfg.resolved_alpha(),
        beta=cfg.beta,
        iterations=cfg.iterations,
        seed=cfg.seed,
    )
    store.save("lda_model", model)
    store.save(
        "vectors_lda",
        ModalityVectors(
            modality="lda", vectors=lda_doc_topics(model), movie_order=model.movie_order
        ),
    )


def _stage_metadata(cfg: PipelineConfig, store: ArtifactStore) -> None:
    manifest = load_manifest(cfg.manifest)
    store.save("vectors_metadata", metadata_vectors(manifest.movies))


def _stage_audio(cfg: PipelineConfig, store: ArtifactStore) -> None:
    manifest = load_manifest(cfg.manifest)
    taxonomies = {"genre": genre_taxonomy(), "event": event_taxonomy()}
    models = {}

    order = manifest.movie_order
    vectors = {kind: np.zeros((len(order), len(tax.labels))) for kind, tax in taxonomies.items()}
    flagged = {kind: set() for kind in taxonomies}

    for row, movie_id in enumerate(order):
        audio = manifest.audio.get(movie_id)
        if audio is None:
            for kind in taxonomies:
                flagged[kind].add(movie_id)
            continue
        if audio.kind == "labels":
            genre_labels, event_labels = split_mixed_labels(audio.path)
            per_kind = {"genre": genre_labels, "event": event_labels}
        else:
            feats = read_feature_csv(audio.path, movie_id=movie_id)
            per_kind = {}
            for kind in taxonomies:
                if kind not in models:
                    name = f"svm_{kind}"
                    if not store.exists(name):
                        raise ValidationError(
                            f"movie {movie_id!r} supplies raw audio features but no "
                            f"{kind} classifier is trained; run "
                            f"`moviesim audio-train --kind {kind} --data DIR` first"
                        )
                    models[kind] = store.load(name)
                per_kind[kind] = classify_segments(models[kind], feats)
        for kind, tax in taxonomies.items():
            hist = class_histogram(per_kind[kind], tax, movie_id=movie_id)
            vectors[kind][row] = hist.proportions
            if hist.flagged:
                flagged[kind].add(movie_id)

    for kind in taxonomies:
        modality = f"audio_{kind}"
        store.save(
            f"vectors_{modality}",
            ModalityVectors(
                modality=modality,
                vectors=vectors[kind],
                movie_order=list(order),
                flagged=frozenset(flagged[kind]),
            ),
        )


def _stage_similarity(cfg: PipelineConfig, store: ArtifactStore) -> None:
    for modality in MODALITIES:
        mv = store.load(f"vectors_{modality}")
        store.save(f"sim_{modality}", similarity_matrix(mv))


def _stage_ground_truth(cfg: PipelineConfig, store: ArtifactStore) -> None:
    manifest = load_manifest(cfg.manifest)
    if manifest.tags_path is None:
        raise ValidationError("no ground truth available: manifest has no tags file")
    tags = load_tags(manifest.tags_path)
    gt = ground_truth(tags, manifest.movie_order)
    store.save("gt", gt.matrix)


def _load_ground_truth(store: ArtifactStore) -> GroundTruth:
    matrix = store.load("gt")
    return GroundTruth(matrix=matrix, tag_space_size=int(matrix.provenance["tag_space_size"]))


def _load_matrices(store: ArtifactStore) -> dict[str, SimilarityMatrix]:
    return {modality: store.load(f"sim_{modality}") for modality in MODALITIES}


def _stage_search_weights(cfg: PipelineConfig, store: ArtifactStore) -> None:
    matrices = _load_matrices(store)
    gt = _load_ground_truth(store)
    weights, fusion_report = search_weights(matrices, gt, step=cfg.fusion_step)
    store.save("fusion_weights", weights)
    store.save("sim_fused", fuse(matrices, weights))
    store.save("fusion_report", fusion_report)


def _stage_evaluate(cfg: PipelineConfig, store: ArtifactStore) -> None:
    matrices = _load_matrices(store)
    gt = _load_ground_truth(store)
    models = [(modality, matrices[modality]) for modality in MODALITIES]
    if store.exists("sim_fused"):
        models.append(("fusion", store.load("sim_fused")))
    reports = eval_report(models, gt.matrix)
    store.save("eval_reports", reports)
    paths = write_report(reports, cfg.resolved_report_dir())
    log.info("report written: %s", ", ".join(str(p) for p in paths))


@dataclass
class Stage:
    name: str
    artifacts: tuple[str, ...]
    run: Callable[[PipelineConfig, ArtifactStore], None]
    deps: tuple[str, ...] = field(default_factory=tuple)


STAGES = [
    Stage("ingest-text", ("bow_corpus",), _stage_ingest_text),
    Stage("train-tfidf", ("tfidf", "vectors_tfidf"), _stage_train_tfidf, ("ingest-text",)),
    Stage("train-lsi", ("lsi_model", "vectors_lsi"), _stage_train_lsi, ("train-tfidf",)),
    Stage("train-lda", ("lda_model", "vectors_lda"), _stage_train_lda, ("ingest-text",)),
    Stage("metadata", ("vectors_metadata",), _stage_metadata),
    Stage("audio", ("vectors_audio_genre", "vectors_audio_event"), _stage_audio),
    Stage(
        "similarity",
        tuple(f"sim_{m}" for m in MODALITIES),
        _stage_similarity,
        ("train-tfidf", "train-lsi", "train-lda", "metadata", "audio"),
    ),
    Stage("ground-truth", ("gt",), _stage_ground_truth),
    Stage(
        "search-weights",
        ("fusion_weights", "sim_fused", "fusion_report"),
        _stage_search_weights,
        ("similarity", "ground-truth"),
    ),
    Stage("evaluate", ("eval_reports",), _stage_evaluate, ("similarity", "ground-truth")),
]

_BY_NAME = {s.name: s for s in STAGES}


def stage_names() -> list[str]:
    return [s.name for s in STAGES]


def _execute(stage: Stage, cfg: PipelineConfig, store: ArtifactStore) -> None:
    log.info("stage %s: running", stage.name)
    try:
        stage.run(cfg, store)
    except Exception as exc:
        for name in stage.artifacts:
            try:
                store.remove(name)
            except OSError:
                pass
        raise StageError(stage.name, exc) from exc


def ensure_stage(
    cfg: PipelineConfig, store: ArtifactStore, name: str, force: bool = False
) -> dict[str, str]:
    """Runs a stage (and any missing dependencies) and reports what
    happened per stage: 'ran' or 'cached'."""
    if name not in _BY_NAME:
        raise ParameterError(f"unknown stage {name!r}; stages: {stage_names()}")
    outcome: dict[str, str] = {}

    def visit(stage_name: str, forced: bool) -> None:
        stage = _BY_NAME[stage_name]
        for dep in stage.deps:
            if dep not in outcome:
                visit(dep, False)
        if not forced and all(store.exists(a) for a in stage.artifacts):
            log.info("stage %s: cached", stage_name)
            outcome[stage_name] = "cached"
            return
        _execute(stage, cfg, store)
        outcome[stage_name] = "ran"

    visit(name, force)
    return outcome


def run_pipeline(
    cfg: PipelineConfig,
    force: bool = False,
    with_search: bool = True,
    with_eval: bool = True,
) -> dict[str, str]:
    """Runs all stages in dependency order; returns per-stage outcomes."""
    store = ArtifactStore(cfg.artifact_dir)
    outcome: dict[str, str] = {}
    for stage in STAGES:
        if stage.name == "search-weights" and not with_search:
            outcome[stage.name] = "skipped"
            continue
        if stage.name == "evaluate" and not with_eval:
            outcome[stage.name] = "skipped"
            continue
        if not force and all(store.exists(a) for a in stage.artifacts):
            log.info("stage %s: cached", stage.name)
            outcome[stage.name] = "cached"
            continue
        _execute(stage, cfg, store)
        outcome[stage.name] = "ran"
    return outcome
