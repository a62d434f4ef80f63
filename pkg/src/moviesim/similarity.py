"""Per-modality movie vectors, cosine similarity matrices and late fusion.

Every matrix uses the manifest's movie order and is exactly symmetric by
construction (upper triangle computed, then mirrored).  Movies with a zero
vector get cosine 0 by convention and are flagged rather than dropped, so
indices never drift between artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import MovieRecord
from .errors import ParameterError, ValidationError

MODALITIES = ("tfidf", "lsi", "lda", "audio_event", "audio_genre", "metadata")


@dataclass
class ModalityVectors:
    modality: str
    vectors: np.ndarray  # (movies, dim) float64
    movie_order: list[str]
    flagged: frozenset[str] = field(default_factory=frozenset)  # zero-vector movies

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ValidationError(f"unknown modality {self.modality!r}")

    def __eq__(self, other):
        return (
            isinstance(other, ModalityVectors)
            and self.modality == other.modality
            and np.array_equal(self.vectors, other.vectors)
            and self.movie_order == other.movie_order
            and self.flagged == other.flagged
        )


@dataclass
class SimilarityMatrix:
    values: np.ndarray  # (n, n) float64, symmetric
    movie_order: list[str]
    provenance: dict  # {"modality": name} or {"fusion": {mod: weight}}
    flagged: frozenset[str] = field(default_factory=frozenset)

    def __eq__(self, other):
        return (
            isinstance(other, SimilarityMatrix)
            and np.array_equal(self.values, other.values)
            and self.movie_order == other.movie_order
            and self.provenance == other.provenance
            and self.flagged == other.flagged
        )

    def row(self, movie_id: str) -> np.ndarray:
        return self.values[self.movie_order.index(movie_id)]


@dataclass
class FusionWeights:
    weights: dict[str, float]

    def validate(self, available: set[str]) -> None:
        if not self.weights:
            raise ParameterError("fusion weights are empty")
        for mod, w in self.weights.items():
            if w < 0:
                raise ParameterError(f"negative weight for {mod!r}")
            if mod not in available:
                raise ParameterError(f"no similarity matrix for modality {mod!r}")
        total = sum(self.weights.values())
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"weights must sum to 1, got {total}")

    @classmethod
    def normalized(cls, raw: dict[str, float]) -> "FusionWeights":
        """Scale non-negative raw weights to sum 1 (slider UIs send
        unnormalized values)."""
        if any(w < 0 for w in raw.values()):
            raise ParameterError("weights must be non-negative")
        total = sum(raw.values())
        if total <= 0:
            raise ParameterError("at least one weight must be positive")
        return cls({mod: w / total for mod, w in raw.items()})


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a, b) / (|a| |b|); 0 by convention when either norm is zero."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def similarity_matrix(mv: ModalityVectors) -> SimilarityMatrix:
    n = len(mv.movie_order)
    if n < 2:
        raise ParameterError("need at least 2 movies")
    vectors = np.asarray(mv.vectors, dtype=np.float64)

    norms = np.sqrt((vectors * vectors).sum(axis=1))
    nonzero = norms > 0.0
    unit = np.zeros_like(vectors)
    unit[nonzero] = vectors[nonzero] / norms[nonzero, None]

    sim = unit @ unit.T
    np.clip(sim, -1.0, 1.0, out=sim)
    upper = np.triu(sim, k=1)
    values = upper + upper.T  # exact symmetry
    values[np.diag_indices(n)] = np.where(nonzero, 1.0, 0.0)

    flagged = frozenset(
        mv.movie_order[i] for i in range(n) if not nonzero[i]
    ) | mv.flagged
    return SimilarityMatrix(
        values=values,
        movie_order=list(mv.movie_order),
        provenance={"modality": mv.modality},
        flagged=flagged,
    )


def fuse(matrices: dict[str, SimilarityMatrix], weights: FusionWeights) -> SimilarityMatrix:
    """Element-wise weighted sum of similarity matrices.

    A movie stays flagged in the fusion only when every positively
    weighted component flags it (it then carries no signal at all).
    """
    weights.validate(set(matrices))
    order = None
    for mod in sorted(weights.weights):
        m = matrices[mod]
        if order is None:
            order = m.movie_order
        elif m.movie_order != order:
            raise ValidationError(f"matrix {mod!r} has a different movie order")
    assert order is not None

    n = len(order)
    values = np.zeros((n, n))
    flagged: frozenset[str] | None = None
    for mod in sorted(weights.weights):
        w = weights.weights[mod]
        values += w * matrices[mod].values
        if w > 0:
            flagged = matrices[mod].flagged if flagged is None else flagged & matrices[mod].flagged
    return SimilarityMatrix(
        values=values,
        movie_order=list(order),
        provenance={"fusion": dict(weights.weights)},
        flagged=flagged or frozenset(),
    )


def metadata_vectors(records: list[MovieRecord]) -> ModalityVectors:
    """Binary one-hot vectors over all cast names, directors and genres in
    the corpus; blocks ordered cast / directors / genres, each sorted."""
    if not records:
        raise ParameterError("no movie records")
    cast = sorted({name for r in records for name in r.cast})
    directors = sorted({name for r in records for name in r.directors})
    genres = sorted({g for r in records for g in r.genres})
    columns = (
        [("cast", c) for c in cast]
        + [("director", d) for d in directors]
        + [("genre", g) for g in genres]
    )
    index = {key: i for i, key in enumerate(columns)}

    vectors = np.zeros((len(records), len(columns)))
    for row, rec in enumerate(records):
        for c in rec.cast:
            vectors[row, index[("cast", c)]] = 1.0
        for d in rec.directors:
            vectors[row, index[("director", d)]] = 1.0
        for g in rec.genres:
            vectors[row, index[("genre", g)]] = 1.0

    flagged = frozenset(
        r.movie_id for r in records if not (r.cast or r.directors or r.genres)
    )
    return ModalityVectors(
        modality="metadata",
        vectors=vectors,
        movie_order=[r.movie_id for r in records],
        flagged=flagged,
    )
