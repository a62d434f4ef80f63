"""Ranking evaluation against the tag-space ground truth.

For each movie the model's first recommendation is the other movie with
the highest model similarity; its quality is the 1-based position of that
recommendation when the other movies are ranked by ground-truth
similarity.  Ties are always broken by lexicographically smallest movie
id, in both the model argmax and the ground-truth sort, so reports are
reproducible.  A movie is never its own recommendation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import TagVector, tag_space
from .errors import ParameterError, ValidationError
from .similarity import ModalityVectors, SimilarityMatrix, similarity_matrix


@dataclass
class GroundTruth:
    matrix: SimilarityMatrix
    tag_space_size: int


@dataclass
class RecDetail:
    movie_id: str
    first_rec: str
    gt_rank: int


@dataclass
class EvalReport:
    model: str
    median_first_rec_rank: float
    top10_pct: float
    details: list[RecDetail] = field(default_factory=list)
    excluded: list[str] = field(default_factory=list)


def ground_truth(tags: list[TagVector], movie_order: list[str]) -> GroundTruth:
    if not tags:
        raise ValidationError("no ground truth available: tag file is empty")
    by_movie = {tv.movie_id: tv for tv in tags}
    missing = [m for m in movie_order if m not in by_movie]
    if missing:
        raise ValidationError(f"movies without tag vectors: {missing}")

    space = tag_space(tags)
    index = {t: i for i, t in enumerate(space)}
    vectors = np.zeros((len(movie_order), len(space)))
    for row, movie_id in enumerate(movie_order):
        for tag, rel in by_movie[movie_id].tag_weights.items():
            vectors[row, index[tag]] = rel
    zero = [movie_order[i] for i in range(len(movie_order)) if not vectors[i].any()]
    if zero:
        raise ValidationError(f"movies whose tag vectors are all zero: {zero}")

    mv = ModalityVectors(modality="metadata", vectors=vectors, movie_order=list(movie_order))
    matrix = similarity_matrix(mv)
    matrix.provenance = {"ground_truth": "tag-space cosine", "tag_space_size": len(space)}
    return GroundTruth(matrix=matrix, tag_space_size=len(space))


# -- shared ranking core (also drives the fusion weight search) -------------

def lex_permutation(movie_order: list[str]) -> np.ndarray:
    """Column permutation putting movie ids in lexicographic order, so a
    first-occurrence argmax breaks ties toward the smallest id."""
    return np.array(sorted(range(len(movie_order)), key=lambda i: movie_order[i]))


def gt_rank_table(gt: SimilarityMatrix) -> np.ndarray:
    """rank[i, j]: 1-based position of movie j when the movies other than i
    are sorted by descending ground-truth similarity to i (ties broken by
    lexicographically smaller id).  Diagonal entries are 0 (undefined)."""
    n = len(gt.movie_order)
    lex_rank = np.empty(n, dtype=np.int64)
    lex_rank[lex_permutation(gt.movie_order)] = np.arange(n)
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        others = np.array([j for j in range(n) if j != i])
        row = gt.values[i, others]
        order = np.lexsort((lex_rank[others], -row))
        table[i, others[order]] = np.arange(1, n)
    return table


def first_recs(
    values: np.ndarray, movie_order: list[str], lex_perm: np.ndarray | None = None
) -> np.ndarray:
    """Index of each movie's first recommendation (self excluded, ties to
    the lexicographically smallest id)."""
    n = len(movie_order)
    if lex_perm is None:
        lex_perm = lex_permutation(movie_order)
    perm_pos = np.empty(n, dtype=np.int64)
    perm_pos[lex_perm] = np.arange(n)
    shuffled = values[:, lex_perm].astype(np.float64, copy=True)
    shuffled[np.arange(n), perm_pos] = -np.inf
    return lex_perm[np.argmax(shuffled, axis=1)]


def rank_details(model: SimilarityMatrix, gt: SimilarityMatrix) -> tuple[list[RecDetail], list[str]]:
    """Per-movie first recommendation and its ground-truth rank; flagged
    zero-vector movies are excluded (second return value)."""
    if model.movie_order != gt.movie_order:
        raise ValidationError("model and ground truth have different movie orders")
    n = len(model.movie_order)
    if n < 2:
        raise ParameterError("need at least 2 movies")
    recs = first_recs(model.values, model.movie_order)
    table = gt_rank_table(gt)
    details = []
    excluded = []
    for i, movie_id in enumerate(model.movie_order):
        if movie_id in model.flagged:
            excluded.append(movie_id)
            continue
        j = int(recs[i])
        details.append(
            RecDetail(movie_id=movie_id, first_rec=model.movie_order[j], gt_rank=int(table[i, j]))
        )
    if not details:
        raise ValidationError("every movie is flagged; nothing to evaluate")
    return details, excluded


def first_rec_rank(model: SimilarityMatrix, gt: SimilarityMatrix, movie_id: str) -> int:
    if movie_id in model.flagged:
        raise ValidationError(f"movie {movie_id!r} has a zero vector; excluded from ranking")
    details, _ = rank_details(model, gt)
    for det in details:
        if det.movie_id == movie_id:
            return det.gt_rank
    raise ValidationError(f"unknown movie {movie_id!r}")


def median_first_rec_rank(model: SimilarityMatrix, gt: SimilarityMatrix) -> float:
    """Median of the per-movie ranks; the mean of the two middle values for
    even counts, so half-integers are possible."""
    details, _ = rank_details(model, gt)
    return float(np.median([d.gt_rank for d in details]))


def top10_pct(model: SimilarityMatrix, gt: SimilarityMatrix) -> float:
    """Percentage of movies whose first recommendation sits in the ground
    truth's top 10 for that movie."""
    if len(model.movie_order) < 11:
        raise ParameterError("top-10 percentage needs a corpus of at least 11 movies")
    details, _ = rank_details(model, gt)
    hits = sum(1 for d in details if d.gt_rank <= 10)
    return 100.0 * hits / len(details)


def evaluate_model(name: str, model: SimilarityMatrix, gt: SimilarityMatrix) -> EvalReport:
    details, excluded = rank_details(model, gt)
    ranks = [d.gt_rank for d in details]
    report = EvalReport(
        model=name,
        median_first_rec_rank=float(np.median(ranks)),
        top10_pct=100.0 * sum(1 for r in ranks if r <= 10) / len(ranks),
        details=details,
        excluded=excluded,
    )
    return report


def report(models: list[tuple[str, SimilarityMatrix]], gt: SimilarityMatrix) -> list[EvalReport]:
    if models and len(gt.movie_order) < 11:
        raise ParameterError("reports need a corpus of at least 11 movies")
    return [evaluate_model(name, m, gt) for name, m in models]
