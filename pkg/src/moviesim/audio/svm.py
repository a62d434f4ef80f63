"""One-vs-rest linear SVM trained by seeded stochastic subgradient descent.

Each class gets a binary hinge-loss classifier with L2 regularization,
trained Pegasos-style with an offset step size 1/(lambda*(t + 1/lambda));
the offset keeps the first steps (and the unregularized bias) bounded,
which plain 1/(lambda*t) does not with small lambda.  Features are
standardized to zero mean and unit variance before training and the
standardization is stored in the model, so classification applies the
identical transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError, ValidationError
from .classes import ClassTaxonomy, SegmentFeatures


@dataclass
class SvmModel:
    taxonomy: ClassTaxonomy
    weights: np.ndarray  # (classes, dim), in standardized feature space
    biases: np.ndarray  # (classes,)
    feature_mean: np.ndarray  # (dim,)
    feature_scale: np.ndarray  # (dim,), zero-variance dims get scale 1
    epochs: int
    lam: float
    seed: int
    objective_trace: list[list[float]] = field(default_factory=list)  # per class, per epoch

    def __post_init__(self):
        if self.weights.shape[0] != len(self.taxonomy.labels):
            raise ValidationError("one weight vector per taxonomy class required")
        if self.weights.shape[1] != self.feature_mean.shape[0]:
            raise ValidationError("weight and standardization dimensions differ")

    @property
    def feature_dim(self) -> int:
        return int(self.weights.shape[1])

    def standardize(self, vectors: np.ndarray) -> np.ndarray:
        return (vectors - self.feature_mean) / self.feature_scale

    def unstandardize(self, vectors: np.ndarray) -> np.ndarray:
        return vectors * self.feature_scale + self.feature_mean

    def decision_scores(self, vectors: np.ndarray) -> np.ndarray:
        if vectors.ndim != 2 or vectors.shape[1] != self.feature_dim:
            raise ParameterError(
                f"expected (n, {self.feature_dim}) feature vectors, got {vectors.shape}"
            )
        return self.standardize(vectors) @ self.weights.T + self.biases


def svm_objective(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, lam: float) -> float:
    """Regularized hinge objective: lam/2 ||w||^2 + mean hinge loss."""
    margins = y * (x @ w + b)
    hinge = np.maximum(0.0, 1.0 - margins)
    return float(0.5 * lam * np.dot(w, w) + hinge.mean())


def svm_train(
    vectors: np.ndarray,
    labels: list[str],
    taxonomy: ClassTaxonomy,
    epochs: int = 100,
    lam: float = 1e-4,
    seed: int = 0,
) -> SvmModel:
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2 or vectors.shape[0] != len(labels):
        raise ParameterError("need one feature vector per label")
    if epochs < 1:
        raise ParameterError("epochs must be positive")
    if lam <= 0:
        raise ParameterError("lambda must be positive")
    for label in labels:
        if label not in taxonomy.labels:
            raise ValidationError(f"label {label!r} is not in the {taxonomy.kind} taxonomy")
    present = set(labels)
    missing = [c for c in taxonomy.labels if c not in present]
    if missing:
        raise ValidationError(f"no training examples for class {missing[0]!r}")

    mean = vectors.mean(axis=0)
    scale = vectors.std(axis=0)
    scale = np.where(scale == 0.0, 1.0, scale)
    x = (vectors - mean) / scale
    n, dim = x.shape

    n_classes = len(taxonomy.labels)
    weights = np.zeros((n_classes, dim))
    biases = np.zeros(n_classes)
    trace: list[list[float]] = []

    t0 = 1.0 / lam  # keeps eta <= ~1 from the first step
    for c, class_label in enumerate(taxonomy.labels):
        y = np.where(np.array(labels) == class_label, 1.0, -1.0)
        rng = np.random.default_rng([seed, c])
        w = np.zeros(dim)
        b = 0.0
        t = 0
        per_epoch = []
        for _ in range(epochs):
            for i in rng.permutation(n):
                t += 1
                eta = 1.0 / (lam * (t + t0))
                if y[i] * (np.dot(w, x[i]) + b) < 1.0:
                    w = (1.0 - eta * lam) * w + eta * y[i] * x[i]
                    b += eta * y[i]
                else:
                    w = (1.0 - eta * lam) * w
            per_epoch.append(svm_objective(w, b, x, y, lam))
        weights[c] = w
        biases[c] = b
        trace.append(per_epoch)

    return SvmModel(
        taxonomy=taxonomy,
        weights=weights,
        biases=biases,
        feature_mean=mean,
        feature_scale=scale,
        epochs=epochs,
        lam=lam,
        seed=seed,
        objective_trace=trace,
    )


def classify_segments(model: SvmModel, feats: SegmentFeatures) -> list[str]:
    """Per-segment argmax over class decision scores; ties go to the
    earlier taxonomy label."""
    if feats.n_segments == 0:
        return []
    if feats.dim != model.feature_dim:
        raise ParameterError(
            f"feature dimension {feats.dim} does not match model dimension {model.feature_dim}"
        )
    scores = model.decision_scores(feats.vectors)
    picks = np.argmax(scores, axis=1)  # first max wins, matching taxonomy order
    return [model.taxonomy.labels[k] for k in picks]
