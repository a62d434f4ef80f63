"""Shared fixtures and helpers.

The expensive fixture here is one full pipeline run over the bundled
12-movie corpus with cheap model settings; service and CLI tests read
the resulting artifacts instead of re-running the stages.
"""

import csv
from pathlib import Path

import numpy as np
import pytest

import moviesim
from moviesim.artifacts import ArtifactStore
from moviesim.pipeline import PipelineConfig, run_pipeline

MINI_CORPUS = Path(moviesim.__file__).parent / "data" / "mini_corpus"


def cheap_config(artifact_dir, **overrides) -> PipelineConfig:
    """Mini-corpus pipeline settings tuned for test speed, not quality."""
    params = dict(
        manifest=str(MINI_CORPUS / "manifest.json"),
        artifact_dir=str(artifact_dir),
        n_topics=4,
        alpha=0.5,
        beta=0.01,
        iterations=120,
        seed=11,
        k=4,
        fusion_step=0.25,
    )
    params.update(overrides)
    return PipelineConfig(**params)


@pytest.fixture(scope="session")
def mini_pipeline(tmp_path_factory):
    """(config, store, fresh-run outcomes) for one full run over the bundled
    corpus.  Tests may re-run stages (results are deterministic) but must
    not delete artifacts."""
    cfg = cheap_config(tmp_path_factory.mktemp("mini_artifacts"))
    outcomes = run_pipeline(cfg)
    return cfg, ArtifactStore(cfg.artifact_dir), outcomes


def blob_training_set(taxonomy, per_class=20, seed=2024, radius=20.0):
    """One radius-1 disk of points per class, centers on a circle: every
    class is linearly separable from the union of the others."""
    rng = np.random.default_rng(seed)
    k = len(taxonomy.labels)
    vectors, labels = [], []
    for c, label in enumerate(taxonomy.labels):
        angle = 2 * np.pi * c / k
        center = radius * np.array([np.cos(angle), np.sin(angle)])
        r = np.sqrt(rng.uniform(0.0, 1.0, per_class))
        theta = rng.uniform(0.0, 2 * np.pi, per_class)
        pts = center + np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        vectors.append(pts)
        labels.extend([label] * per_class)
    return np.vstack(vectors), labels


def write_feature_csv(path, vectors) -> None:
    vectors = np.asarray(vectors)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i + 1}" for i in range(vectors.shape[1])])
        writer.writerows(vectors.tolist())
