"""System-level acceptance gate.

Each test re-derives its expectation from an independent oracle or a
closed-form construction, then prints exactly one PASS/FAIL line, so the
whole gate reads off the test output at a glance (run with -s or check
the captured stdout).
"""

import contextlib
import json
import math
import time
from pathlib import Path

import numpy as np

from _oracles import (
    jacobi_svd,
    match_topic_to_vocab,
    oracle_median,
    oracle_rank_details,
    oracle_top10_pct,
    planted_corpus,
)
from conftest import MINI_CORPUS, blob_training_set
from moviesim.artifacts import ArtifactStore
from moviesim.audio.classes import (
    SegmentFeatures,
    class_histogram,
    event_taxonomy,
    genre_taxonomy,
)
from moviesim.audio.features import FEATURE_NAMES, short_term_features
from moviesim.audio.svm import classify_segments, svm_train
from moviesim.evaluation import (
    GroundTruth,
    evaluate_model,
    first_rec_rank,
    median_first_rec_rank,
    top10_pct,
)
from moviesim.pipeline import PipelineConfig, run_pipeline
from moviesim.similarity import MODALITIES, ModalityVectors, SimilarityMatrix, similarity_matrix
from moviesim.text.srt import TIMESTAMP_RE, parse_srt
from moviesim.text.tokens import TokenStream, normalize
from moviesim.text.vocab import Vocabulary, build_bow
from moviesim.topics.lda import lda_doc_topics, lda_fit, topic_top_words
from moviesim.topics.lsi import lsi_fit
from moviesim.topics.tfidf import TfidfMatrix
from moviesim.weight_search import search_weights

FIXTURES = Path(__file__).parent / "fixtures"


@contextlib.contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    print(f"PASS: {name}")


def bow_from_token_lists(*docs):
    vocab = Vocabulary.from_terms(sorted({t for d in docs for t in d}))
    streams = [TokenStream(movie_id=f"m{i:02d}", tokens=list(d)) for i, d in enumerate(docs)]
    return build_bow(streams, vocab)


def sim(values, order, modality="tfidf", flagged=frozenset()):
    return SimilarityMatrix(
        values=np.asarray(values, dtype=np.float64),
        movie_order=list(order),
        provenance={"modality": modality},
        flagged=flagged,
    )


def random_symmetric(rng, n):
    raw = rng.uniform(-1.0, 1.0, size=(n, n))
    values = (raw + raw.T) / 2.0
    values[np.diag_indices(n)] = 1.0
    return values


def test_topic_recovery_on_planted_vocabularies():
    with criterion("topic recovery: two planted vocabularies, invariants every sweep, < 5 s"):
        docs, labels, vocabs = planted_corpus(
            n_docs=20, words_per_topic=10, doc_len=80, seed=101
        )
        bow = bow_from_token_lists(*docs)
        start = time.perf_counter()
        model = lda_fit(
            bow,
            n_topics=2,
            alpha=0.5,
            beta=0.01,
            iterations=200,
            seed=101,
            check_every_sweep=True,
        )
        elapsed = time.perf_counter() - start

        # each topic's top-10 words must be exactly one planted vocabulary
        assigned = []
        for t in range(2):
            words = [w for w, _ in topic_top_words(model, t, 10).top_words]
            assigned.append(match_topic_to_vocab(words, vocabs))
        assert sorted(assigned) == [0, 1]

        doc_topic = lda_doc_topics(model).argmax(axis=1)
        agreement = np.mean([assigned[t] == lab for t, lab in zip(doc_topic, labels)])
        assert agreement >= 0.9
        assert elapsed < 5.0


def test_topic_model_determinism():
    with criterion("topic model: identical seeds give bit-identical sampler states"):
        docs, _, _ = planted_corpus(n_docs=12, words_per_topic=8, doc_len=50, seed=33)
        bow = bow_from_token_lists(*docs)
        a = lda_fit(bow, n_topics=3, alpha=0.5, beta=0.01, iterations=60, seed=9)
        b = lda_fit(bow, n_topics=3, alpha=0.5, beta=0.01, iterations=60, seed=9)
        assert a == b
        assert all(np.array_equal(x, y) for x, y in zip(a.assignments, b.assignments))


def test_low_rank_reconstruction_error():
    with criterion("latent indexing: residual equals the dropped singular values (1e-8)"):
        rng = np.random.default_rng(202)
        for trial in range(20):
            rows = rng.normal(size=(10, 20))
            mat = TfidfMatrix(
                rows=rows,
                movie_order=[f"m{i:02d}" for i in range(10)],
                terms=[f"t{j:02d}" for j in range(20)],
            )
            _, sigma, _ = jacobi_svd(rows)
            for k in range(1, 6):
                err = np.linalg.norm(rows - lsi_fit(mat, k).reconstruction())
                tail = math.sqrt(float(np.sum(sigma[k:] ** 2)))
                assert abs(err - tail) < 1e-8, (trial, k)

        left, right = rng.normal(size=(10, 4)), rng.normal(size=(4, 20))
        exact = TfidfMatrix(
            rows=left @ right,
            movie_order=[f"m{i:02d}" for i in range(10)],
            terms=[f"t{j:02d}" for j in range(20)],
        )
        assert np.linalg.norm(exact.rows - lsi_fit(exact, 4).reconstruction()) < 1e-9


def test_ranking_metrics_match_brute_force():
    with criterion("ranking metrics: exact agreement with the sort-based oracle, 50 instances"):
        rng = np.random.default_rng(404)
        for _ in range(50):
            n = int(rng.integers(11, 31))
            order = [f"m{i:03d}" for i in range(n)]
            rng.shuffle(order)
            model = sim(random_symmetric(rng, n), order)
            gt = sim(random_symmetric(rng, n), order, "metadata")

            expected = oracle_rank_details(model.values, gt.values, order)
            ranks = [rank for _, rank in expected.values()]
            assert median_first_rec_rank(model, gt) == oracle_median(ranks)
            assert top10_pct(model, gt) == oracle_top10_pct(ranks)
            for movie_id, (_, rank) in expected.items():
                assert first_rec_rank(model, gt, movie_id) == rank

        # a model identical to the ground truth recommends rank 1 everywhere
        values = random_symmetric(rng, 15)
        order = [f"m{i:03d}" for i in range(15)]
        model = sim(values, order)
        gt = sim(values.copy(), order, "metadata")
        assert median_first_rec_rank(model, gt) == 1.0
        assert top10_pct(model, gt) == 100.0


def test_even_count_median_midpoint():
    with criterion("median convention: rank multiset {10, 21} reports 15.5"):
        n = 22
        order = [f"m{i:02d}" for i in range(n)]
        # symmetric ground truth decreasing in the partner index: for any
        # query, movie j sits at rank j (rank j-1 for partners before it)
        gt_vals = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i != j:
                    gt_vals[i, j] = (44.0 - i - j) / 44.0
        np.fill_diagonal(gt_vals, 1.0)

        model_vals = np.zeros((n, n))
        np.fill_diagonal(model_vals, 1.0)
        model_vals[0, 10] = model_vals[10, 0] = 0.9  # m00's pick lands at rank 10
        model_vals[1, 21] = model_vals[21, 1] = 0.8  # m01's pick lands at rank 21
        model = sim(model_vals, order, flagged=frozenset(order[2:]))
        gt = sim(gt_vals, order, "metadata")

        report = evaluate_model("engineered", model, gt)
        assert sorted(d.gt_rank for d in report.details) == [10, 21]
        assert report.median_first_rec_rank == 15.5
        assert oracle_median([10, 21]) == 15.5
        assert len(report.excluded) == 20


def test_fused_weights_beat_each_single_modality():
    with criterion("weight search: fused ranking strictly beats both single modalities"):
        rng = np.random.default_rng(20240818)
        n = 20
        order = [f"m{i:03d}" for i in range(n)]
        raw_a = rng.uniform(-1, 1, size=(n, n))
        a_vals = (raw_a + raw_a.T) / 2
        raw_b = rng.uniform(-1, 1, size=(n, n))
        b_vals = (raw_b + raw_b.T) / 2
        noise = rng.normal(scale=0.01, size=(n, n))
        gt_vals = 0.6 * a_vals + 0.4 * b_vals + (noise + noise.T) / 2
        for m in (a_vals, b_vals, gt_vals):
            m[np.diag_indices(n)] = 1.0

        matrices = {"tfidf": sim(a_vals, order), "lsi": sim(b_vals, order, "lsi")}
        gt = GroundTruth(matrix=sim(gt_vals, order, "metadata"), tag_space_size=4)

        weights, fused_rep = search_weights(matrices, gt, step=0.05)
        weights_again, rep_again = search_weights(matrices, gt, step=0.05)
        assert weights_again.weights == weights.weights
        assert rep_again == fused_rep

        for name, matrix in matrices.items():
            solo = evaluate_model(name, matrix, gt.matrix)
            assert fused_rep.median_first_rec_rank < solo.median_first_rec_rank


def test_similarity_matrix_properties():
    with criterion("similarity: symmetric, unit diagonal, scale invariant within 1e-12"):
        rng = np.random.default_rng(707)
        for _ in range(200):
            n = int(rng.integers(2, 10))
            dim = int(rng.integers(2, 8))
            vectors = rng.normal(size=(n, dim))
            order = [f"m{i}" for i in range(n)]
            matrix = similarity_matrix(
                ModalityVectors(modality="tfidf", vectors=vectors, movie_order=order)
            )
            assert float(np.max(np.abs(matrix.values - matrix.values.T))) <= 1e-12
            assert np.allclose(np.diag(matrix.values), 1.0, atol=1e-12)

            scales = rng.uniform(0.1, 100.0, size=(n, 1))
            scaled = similarity_matrix(
                ModalityVectors(modality="tfidf", vectors=vectors * scales, movie_order=order)
            )
            assert float(np.max(np.abs(scaled.values - matrix.values))) <= 1e-12


def test_classifier_fits_separable_blobs():
    with criterion("classifier: separable blobs fit perfectly, objective falls, deterministic"):
        taxonomy = event_taxonomy()
        x, labels = blob_training_set(taxonomy, per_class=50, seed=808)
        model = svm_train(x, labels, taxonomy, epochs=30, seed=5)

        predicted = classify_segments(model, SegmentFeatures(movie_id="", vectors=x))
        assert predicted == labels  # 100% training accuracy
        for trace in model.objective_trace:
            assert trace[-1] <= trace[0]

        again = svm_train(x, labels, taxonomy, epochs=30, seed=5)
        assert np.array_equal(again.weights, model.weights)
        assert np.array_equal(again.biases, model.biases)
        assert again.objective_trace == model.objective_trace


def test_audio_feature_sanity():
    with criterion("audio: silent signal, 1 kHz centroid within 5%, histogram mass 1"):
        rate = 16000
        silent = short_term_features(np.zeros(rate), rate)
        assert np.all(silent[:, FEATURE_NAMES.index("energy")] == 0.0)
        assert np.all(silent[:, FEATURE_NAMES.index("zcr")] == 0.0)

        t = np.arange(rate) / rate
        tone = 0.5 * np.sin(2 * np.pi * 1000.0 * t)
        centroid = short_term_features(tone, rate)[:, FEATURE_NAMES.index("centroid")]
        assert np.all(np.abs(centroid - 1000.0) <= 50.0)  # every frame within 5%

        rng = np.random.default_rng(909)
        taxonomy = genre_taxonomy()
        for _ in range(25):
            k = int(rng.integers(1, 40))
            labels = [taxonomy.labels[int(i)] for i in rng.integers(0, 8, size=k)]
            hist = class_histogram(labels, taxonomy)
            assert abs(float(hist.proportions.sum()) - 1.0) <= 1e-12


def test_subtitle_golden_files():
    with criterion("subtitles: golden fixtures tokenize exactly, no timestamp survives"):
        doc = parse_srt((FIXTURES / "golden_markup.srt").read_bytes())
        assert doc.skipped_blocks == 0
        assert normalize(doc.text) == [
            "once", "upon", "a", "time",
            "he", "said", "never", "again",
            "what", "now", "we", "run",
            "lights", "out",
        ]

        doc = parse_srt((FIXTURES / "golden_multiline.srt").read_bytes())
        assert doc.skipped_blocks == 0
        assert doc.text == (
            "The harbor lights were fading fast, and nobody spoke. "
            "Three lines of one sentence."
        )

        doc = parse_srt((FIXTURES / "golden_malformed.srt").read_bytes())
        assert doc.skipped_blocks == 2
        assert normalize(doc.text) == [
            "good", "block", "one",
            "good", "block", "two", "but", "this", "line", "stays",
            "final", "line",
        ]

        for name in ("golden_markup.srt", "golden_multiline.srt", "golden_malformed.srt"):
            parsed = parse_srt((FIXTURES / name).read_bytes())
            assert not TIMESTAMP_RE.search(parsed.text)


def test_end_to_end_bundled_corpus(tmp_path):
    with criterion("end to end: bundled 12-movie corpus to full report in < 60 s"):
        raw = json.loads((MINI_CORPUS / "config_mini.json").read_text())
        raw["artifact_dir"] = str(tmp_path / "artifacts")
        raw["report_dir"] = str(tmp_path / "report")
        cfg = PipelineConfig.from_dict(raw, source=str(MINI_CORPUS / "config_mini.json"))

        start = time.perf_counter()
        outcomes = run_pipeline(cfg)
        elapsed = time.perf_counter() - start
        assert set(outcomes.values()) == {"ran"}
        assert elapsed < 60.0

        store = ArtifactStore(cfg.artifact_dir)
        reports = store.load("eval_reports")
        assert [r.model for r in reports] == list(MODALITIES) + ["fusion"]
        for rep in reports:
            assert len(rep.details) + len(rep.excluded) == 12
            assert 1.0 <= rep.median_first_rec_rank <= 11.0
            assert 0.0 <= rep.top10_pct <= 100.0

        weights = store.load("fusion_weights")
        assert abs(sum(weights.weights.values()) - 1.0) < 1e-9

        report_dir = tmp_path / "report"
        text = (report_dir / "report.txt").read_text()
        lines = text.splitlines()
        assert lines[0].startswith("Model")
        assert len(lines) == 2 + len(reports)  # header, rule, one row per model
        for name in (
            "report.csv",
            "report_details.csv",
            "report.json",
            "median_rank.png",
            "top10_pct.png",
        ):
            assert (report_dir / name).is_file()
