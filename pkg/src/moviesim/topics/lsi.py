"""Latent semantic indexing: rank-K truncated SVD of the movie x term
tf-idf matrix.  Documents live in the latent space as U_K * Sigma_K.

The decomposition is delegated to LAPACK (numpy.linalg.svd) at our corpus
scale; correctness is defined by reconstruction-residual checks against an
independent full-SVD oracle in the test suite, not by algorithm choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from .tfidf import TfidfMatrix


@dataclass
class LsiModel:
    k: int
    term_vectors: np.ndarray  # (terms, k)
    singular_values: np.ndarray  # (k,) strictly positive, non-increasing
    doc_vectors: np.ndarray  # (movies, k) = U_K * Sigma_K
    movie_order: list[str]

    def __eq__(self, other):
        return (
            isinstance(other, LsiModel)
            and self.k == other.k
            and np.array_equal(self.term_vectors, other.term_vectors)
            and np.array_equal(self.singular_values, other.singular_values)
            and np.array_equal(self.doc_vectors, other.doc_vectors)
            and self.movie_order == other.movie_order
        )

    def reconstruction(self) -> np.ndarray:
        return (self.doc_vectors @ self.term_vectors.T)


def lsi_fit(tfidf: TfidfMatrix, k: int) -> LsiModel:
    d, v = tfidf.rows.shape
    if not 1 <= k <= min(d, v):
        raise ParameterError(f"K must be in [1, {min(d, v)}], got {k}")
    try:
        u, s, vt = np.linalg.svd(tfidf.rows, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ParameterError(f"SVD did not converge: {exc}") from exc

    # singular values must stay strictly positive: a rank-deficient input
    # gets its trailing numerically-zero components dropped
    tol = max(d, v) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    effective = int(np.sum(s > tol))
    kept = min(k, effective)
    if kept == 0:
        raise ParameterError("input matrix is numerically zero; no latent dimensions")

    return LsiModel(
        k=kept,
        term_vectors=vt[:kept].T.copy(),
        singular_values=s[:kept].copy(),
        doc_vectors=(u[:, :kept] * s[:kept]).copy(),
        movie_order=list(tfidf.movie_order),
    )
