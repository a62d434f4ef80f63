"""Vocabulary filtering and bag-of-words construction.

A term survives the vocabulary filters iff
  (a) it is not a stopword,
  (b) its document frequency is >= min_doc_freq,
  (c) its document frequency / N is <= max_doc_ratio, and
  (d) it is NOT low-information: max per-document term frequency
      <= low_info_max_tf while appearing in >= low_info_min_doc_ratio
      of documents (low intra-document, high inter-document frequency).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..errors import ParameterError, ValidationError
from .tokens import TokenStream

log = logging.getLogger(__name__)


@dataclass
class FilterConfig:
    min_doc_freq: int = 2
    max_doc_ratio: float = 0.95
    low_info_max_tf: int = 2
    low_info_min_doc_ratio: float = 0.5

    def validate(self, corpus_size: int) -> None:
        if self.min_doc_freq < 1:
            raise ParameterError("min_doc_freq must be >= 1")
        if self.min_doc_freq > corpus_size:
            raise ParameterError(
                f"min_doc_freq {self.min_doc_freq} exceeds corpus size {corpus_size}"
            )
        if not 0.0 < self.max_doc_ratio <= 1.0:
            raise ParameterError("max_doc_ratio must be in (0, 1]")
        if self.low_info_max_tf < 1:
            raise ParameterError("low_info_max_tf must be >= 1")
        if not 0.0 < self.low_info_min_doc_ratio <= 1.0:
            raise ParameterError("low_info_min_doc_ratio must be in (0, 1]")


@dataclass
class Vocabulary:
    terms: list[str]  # lexicographically ordered, unique
    index: dict[str, int]

    @classmethod
    def from_terms(cls, terms: list[str]) -> "Vocabulary":
        terms = sorted(terms)
        return cls(terms=terms, index={t: i for i, t in enumerate(terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.terms == other.terms


@dataclass
class BowCorpus:
    vocabulary: Vocabulary
    counts: list[dict[int, int]]  # per movie: column id -> positive count
    movie_order: list[str]

    def __eq__(self, other):
        return (
            isinstance(other, BowCorpus)
            and self.vocabulary == other.vocabulary
            and self.counts == other.counts
            and self.movie_order == other.movie_order
        )

    @property
    def n_movies(self) -> int:
        return len(self.movie_order)

    def doc_length(self, d: int) -> int:
        return sum(self.counts[d].values())


def load_stopwords(path: str | Path) -> set[str]:
    """One term per line; ``#`` starts a comment."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip()
            if word:
                words.add(word)
    return words


@lru_cache(maxsize=1)
def load_default_stopwords() -> frozenset[str]:
    """Union of the bundled general-English and subtitle-specific lists."""
    words: set[str] = set()
    data = resources.files("moviesim.data")
    for name in ("stopwords_english.txt", "stopwords_movie.txt"):
        text = (data / name).read_text(encoding="utf-8")
        for line in text.splitlines():
            word = line.split("#", 1)[0].strip()
            if word:
                words.add(word)
    return frozenset(words)


def build_vocabulary(
    streams: list[TokenStream],
    stopwords: set[str],
    cfg: FilterConfig,
) -> Vocabulary:
    if not streams:
        raise ParameterError("at least one token stream is required")
    n = len(streams)
    cfg.validate(n)

    doc_freq: Counter[str] = Counter()
    max_tf: dict[str, int] = {}
    for stream in streams:
        tf = Counter(stream.tokens)
        for term, count in tf.items():
            doc_freq[term] += 1
            if count > max_tf.get(term, 0):
                max_tf[term] = count

    surviving = []
    for term, df in doc_freq.items():
        if term in stopwords:
            continue
        if df < cfg.min_doc_freq:
            continue
        if df / n > cfg.max_doc_ratio:
            continue
        if max_tf[term] <= cfg.low_info_max_tf and df / n >= cfg.low_info_min_doc_ratio:
            continue
        surviving.append(term)

    if not surviving:
        raise ValidationError(
            "no terms survive the vocabulary filters; relax min_doc_freq or "
            "the low-information thresholds"
        )
    return Vocabulary.from_terms(surviving)


def build_bow(streams: list[TokenStream], vocab: Vocabulary) -> BowCorpus:
    """Count in-vocabulary tokens per movie; OOV tokens are dropped silently.
    A movie whose stream becomes empty keeps its (empty) row so matrix
    indices stay aligned."""
    index = vocab.index
    counts = []
    for stream in streams:
        row: dict[int, int] = {}
        for tok in stream.tokens:
            col = index.get(tok)
            if col is not None:
                row[col] = row.get(col, 0) + 1
        if not row:
            log.warning("movie %s has no in-vocabulary tokens", stream.movie_id)
        counts.append(row)
    return BowCorpus(
        vocabulary=vocab,
        counts=counts,
        movie_order=[s.movie_id for s in streams],
    )
