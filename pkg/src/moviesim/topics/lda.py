"""Latent Dirichlet Allocation fitted by collapsed Gibbs sampling.

Per-token update: remove token i (document d, word w) from the count
tables, then draw its topic t with probability proportional to

    (doc_topic[d, t] + alpha) * (topic_word[t, w] + beta) / (topic_total[t] + V * beta)

and add it back.  A fixed sweep budget is used (no convergence test), the
whole run is deterministic given (corpus, parameters, seed), and a single
final sample yields the theta / phi estimates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError, ValidationError
from ..text.vocab import BowCorpus


@dataclass
class LdaModel:
    n_topics: int
    alpha: float
    beta: float
    topic_word_counts: np.ndarray  # (T, V) int64
    doc_topic_counts: np.ndarray  # (D, T) int64
    topic_totals: np.ndarray  # (T,) int64
    assignments: list[np.ndarray]  # per document, int64 per token
    rng_seed: int
    terms: list[str]
    movie_order: list[str]

    def __eq__(self, other):
        return (
            isinstance(other, LdaModel)
            and self.n_topics == other.n_topics
            and self.alpha == other.alpha
            and self.beta == other.beta
            and np.array_equal(self.topic_word_counts, other.topic_word_counts)
            and np.array_equal(self.doc_topic_counts, other.doc_topic_counts)
            and np.array_equal(self.topic_totals, other.topic_totals)
            and len(self.assignments) == len(other.assignments)
            and all(np.array_equal(a, b) for a, b in zip(self.assignments, other.assignments))
            and self.rng_seed == other.rng_seed
            and self.terms == other.terms
            and self.movie_order == other.movie_order
        )

    def validate_counts(self) -> None:
        """Count-conservation identities; cheap enough to run per sweep."""
        if not np.array_equal(self.topic_word_counts.sum(axis=1), self.topic_totals):
            raise ValidationError("topic_totals disagree with topic_word_counts")
        doc_lengths = np.array([len(a) for a in self.assignments], dtype=np.int64)
        if not np.array_equal(self.doc_topic_counts.sum(axis=1), doc_lengths):
            raise ValidationError("doc_topic_counts rows disagree with document lengths")
        for a in self.assignments:
            if a.size and (a.min() < 0 or a.max() >= self.n_topics):
                raise ValidationError("topic assignment outside [0, T)")


@dataclass
class TopicSummary:
    topic_id: int
    top_words: list[tuple[str, float]]  # probability non-increasing


def _expand_tokens(bow: BowCorpus) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Flatten the sparse counts into parallel (doc, word) token arrays.
    Tokens within a document are laid out in ascending column order, which
    is deterministic and statistically irrelevant to the sampler."""
    token_doc = []
    token_word = []
    doc_lengths = []
    for d, row in enumerate(bow.counts):
        length = 0
        for col in sorted(row):
            count = row[col]
            token_word.extend([col] * count)
            length += count
        token_doc.extend([d] * length)
        doc_lengths.append(length)
    return (
        np.asarray(token_doc, dtype=np.int64),
        np.asarray(token_word, dtype=np.int64),
        doc_lengths,
    )


def lda_fit(
    bow: BowCorpus,
    n_topics: int,
    alpha: float,
    beta: float,
    iterations: int,
    seed: int,
    check_every_sweep: bool = False,
) -> LdaModel:
    if n_topics < 1:
        raise ParameterError("T must be >= 1")
    if alpha <= 0 or beta <= 0:
        raise ParameterError("alpha and beta must be positive")
    if iterations < 1:
        raise ParameterError("iterations must be >= 1")
    if bow.n_movies == 0:
        raise ParameterError("corpus is empty")

    n_docs = bow.n_movies
    v = len(bow.vocabulary)
    token_doc, token_word, doc_lengths = _expand_tokens(bow)
    n_tokens = token_doc.size

    rng = np.random.default_rng(seed)
    z = rng.integers(0, n_topics, size=n_tokens, dtype=np.int64)

    doc_topic = np.zeros((n_docs, n_topics), dtype=np.int64)
    word_topic = np.zeros((v, n_topics), dtype=np.int64)  # transposed for row locality
    topic_total = np.zeros(n_topics, dtype=np.int64)
    np.add.at(doc_topic, (token_doc, z), 1)
    np.add.at(word_topic, (token_word, z), 1)
    np.add.at(topic_total, z, 1)

    v_beta = v * beta
    for sweep in range(iterations):
        u = rng.random(n_tokens)
        for i in range(n_tokens):
            d = token_doc[i]
            w = token_word[i]
            t = z[i]
            dt = doc_topic[d]
            wt = word_topic[w]
            dt[t] -= 1
            wt[t] -= 1
            topic_total[t] -= 1

            p = (dt + alpha) * (wt + beta) / (topic_total + v_beta)
            cdf = np.cumsum(p)
            t = int(np.searchsorted(cdf, u[i] * cdf[-1], side="right"))
            if t >= n_topics:  # guards the u == 1-epsilon edge
                t = n_topics - 1

            z[i] = t
            dt[t] += 1
            wt[t] += 1
            topic_total[t] += 1

        if check_every_sweep:
            _check_counts(doc_topic, word_topic, topic_total, doc_lengths, sweep)

    assignments = []
    offset = 0
    for length in doc_lengths:
        assignments.append(z[offset : offset + length].copy())
        offset += length

    return LdaModel(
        n_topics=n_topics,
        alpha=alpha,
        beta=beta,
        topic_word_counts=word_topic.T.copy(),
        doc_topic_counts=doc_topic,
        topic_totals=topic_total,
        assignments=assignments,
        rng_seed=seed,
        terms=list(bow.vocabulary.terms),
        movie_order=list(bow.movie_order),
    )


def _check_counts(doc_topic, word_topic, topic_total, doc_lengths, sweep):
    if not np.array_equal(word_topic.sum(axis=0), topic_total):
        raise ValidationError(f"sweep {sweep}: topic totals drifted from word counts")
    if not np.array_equal(doc_topic.sum(axis=1), np.asarray(doc_lengths)):
        raise ValidationError(f"sweep {sweep}: doc-topic rows drifted from doc lengths")


def lda_doc_topics(model: LdaModel) -> np.ndarray:
    """theta(d, t) = (doc_topic[d, t] + alpha) / (tokens(d) + T * alpha).
    Rows are probability vectors; a zero-token document gets the uniform
    prior 1/T."""
    counts = model.doc_topic_counts.astype(np.float64)
    lengths = counts.sum(axis=1, keepdims=True)
    return (counts + model.alpha) / (lengths + model.n_topics * model.alpha)


def topic_phi(model: LdaModel, topic: int) -> np.ndarray:
    """phi(t, w) = (count + beta) / (total + V * beta)."""
    v = model.topic_word_counts.shape[1]
    return (model.topic_word_counts[topic] + model.beta) / (
        model.topic_totals[topic] + v * model.beta
    )


def topic_top_words(model: LdaModel, topic: int, n: int) -> TopicSummary:
    if not 0 <= topic < model.n_topics:
        raise ParameterError(f"topic {topic} out of range [0, {model.n_topics})")
    if n < 1:
        raise ParameterError("n must be >= 1")
    phi = topic_phi(model, topic)
    order = sorted(range(len(model.terms)), key=lambda w: (-phi[w], model.terms[w]))
    top = [(model.terms[w], float(phi[w])) for w in order[:n]]
    return TopicSummary(topic_id=topic, top_words=top)
