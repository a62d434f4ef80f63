"""tf-idf weighting: raw term frequency times ln(N / document frequency),
rows L2-normalized.  Terms present in every document weigh 0 (ln 1)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..text.vocab import BowCorpus


@dataclass
class TfidfMatrix:
    rows: np.ndarray  # (movies, terms) float64
    movie_order: list[str]
    terms: list[str]

    def __eq__(self, other):
        return (
            isinstance(other, TfidfMatrix)
            and np.array_equal(self.rows, other.rows)
            and self.movie_order == other.movie_order
            and self.terms == other.terms
        )


def tfidf(bow: BowCorpus) -> TfidfMatrix:
    n = bow.n_movies
    if n == 0:
        raise ParameterError("tf-idf needs a non-empty corpus")
    v = len(bow.vocabulary)
    df = np.zeros(v, dtype=np.int64)
    for row in bow.counts:
        for col in row:
            df[col] += 1

    idf = np.zeros(v)
    nz = df > 0
    idf[nz] = np.log(n / df[nz])

    rows = np.zeros((n, v))
    for d, row in enumerate(bow.counts):
        for col, count in row.items():
            rows[d, col] = count * idf[col]
        norm = math.sqrt(float(np.dot(rows[d], rows[d])))
        if norm > 0.0:
            rows[d] /= norm
    return TfidfMatrix(rows=rows, movie_order=list(bow.movie_order), terms=list(bow.vocabulary.terms))
