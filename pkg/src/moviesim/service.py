"""Read-only HTTP/JSON service over trained artifacts.

Endpoints:
    GET /movies
    GET /movies/{id}
    GET /movies/{id}/topics
    GET /movies/{id}/similar?weights=lda:0.5,metadata:0.5&n=10
    GET /topics
    GET /topics/{id}/words?n=20
    GET /topics/{id}/movies
    GET /eval/report
    GET /modalities

All responses are JSON (UTF-8); errors use {"error": {"code", "message"}}.
Weights arrive unnormalized (slider values) and are normalized here; the
what-if fusion calls the same fuse() as the offline pipeline, so results
agree exactly.  The service never mutates artifacts; every response is a
pure function of (artifacts, query).  Optionally serves a static UI
directory for any path that is not part of the API.
"""

from __future__ import annotations

import json
import logging
import mimetypes
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

import numpy as np

from .artifacts import ArtifactStore
from .corpus import CorpusManifest, load_manifest
from .errors import MovieSimError, ValidationError
from .evaluation import EvalReport
from .pipeline import PipelineConfig
from .report import report_as_dict
from .similarity import MODALITIES, FusionWeights, SimilarityMatrix, fuse
from .topics.lda import LdaModel, lda_doc_topics, topic_top_words

log = logging.getLogger(__name__)


class ApiError(MovieSimError):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass
class ServiceState:
    manifest: CorpusManifest
    matrices: dict[str, SimilarityMatrix]
    lda: LdaModel | None = None
    doc_topics: np.ndarray | None = None  # (movies, topics)
    reports: list[EvalReport] = field(default_factory=list)
    fusion_weights: FusionWeights | None = None
    ui_dir: Path | None = None

    def movie_index(self, movie_id: str) -> int:
        try:
            return self.manifest.movie_order.index(movie_id)
        except ValueError:
            raise ApiError(404, f"unknown movie {movie_id!r}") from None

    def require_lda(self) -> LdaModel:
        if self.lda is None:
            raise ApiError(404, "no topic model artifact is loaded")
        return self.lda

    def topic_bounds(self, topic_id: str) -> int:
        model = self.require_lda()
        try:
            t = int(topic_id)
        except ValueError:
            raise ApiError(400, f"topic id must be an integer, got {topic_id!r}") from None
        if not 0 <= t < model.n_topics:
            raise ApiError(404, f"topic {t} out of range [0, {model.n_topics})")
        return t


def load_service_state(cfg: PipelineConfig, ui_dir: str | None = None) -> ServiceState:
    store = ArtifactStore(cfg.artifact_dir)
    manifest = load_manifest(cfg.manifest)
    matrices = {}
    for modality in MODALITIES:
        name = f"sim_{modality}"
        if store.exists(name):
            matrices[modality] = store.load(name)
    if not matrices:
        raise ValidationError(
            f"no similarity matrices in {cfg.artifact_dir}; run `moviesim run-all` first"
        )
    state = ServiceState(manifest=manifest, matrices=matrices)
    if store.exists("lda_model"):
        state.lda = store.load("lda_model")
        state.doc_topics = lda_doc_topics(state.lda)
    if store.exists("eval_reports"):
        state.reports = store.load("eval_reports")
    if store.exists("fusion_weights"):
        state.fusion_weights = store.load("fusion_weights")
    if ui_dir is not None:
        state.ui_dir = Path(ui_dir).resolve()
        if not (state.ui_dir / "index.html").is_file():
            raise ValidationError(f"{ui_dir}: no index.html to serve")
    return state


def parse_weights(raw: str, available: set[str]) -> FusionWeights:
    """Parses `modality:weight` (or `modality=weight`) pairs and normalizes
    them to sum 1."""
    weights: dict[str, float] = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        sep = ":" if ":" in part else "="
        name, _, value = part.partition(sep)
        name = name.strip()
        if name not in MODALITIES:
            raise ApiError(400, f"unknown modality {name!r}; valid: {sorted(MODALITIES)}")
        if name not in available:
            raise ApiError(400, f"no similarity matrix for modality {name!r}")
        if name in weights:
            raise ApiError(400, f"modality {name!r} given twice")
        try:
            w = float(value)
        except ValueError:
            raise ApiError(400, f"weight for {name!r} is not a number: {value!r}") from None
        if not np.isfinite(w) or w < 0:
            raise ApiError(400, f"weight for {name!r} must be a finite non-negative number")
        weights[name] = w
    if not weights:
        raise ApiError(400, "no weights given; expected modality:weight pairs")
    try:
        return FusionWeights.normalized(weights)
    except ValueError as exc:
        raise ApiError(400, str(exc)) from None


def _movie_payload(state: ServiceState, movie_id: str) -> dict:
    rec = state.manifest.record(movie_id)
    return {
        "id": rec.movie_id,
        "title": rec.title,
        "cast": sorted(rec.cast),
        "directors": sorted(rec.directors),
        "genres": sorted(rec.genres),
    }


def _ranked_others(state: ServiceState, matrix: SimilarityMatrix, movie_id: str,
                   n: int | None) -> list[dict]:
    order = matrix.movie_order
    i = order.index(movie_id)
    row = matrix.values[i]
    others = np.array([j for j in range(len(order)) if j != i])
    lex = np.array([order[j] for j in others])
    ranked = others[np.lexsort((lex, -row[others]))]
    if n is not None:
        ranked = ranked[:n]
    return [
        {
            "movie_id": order[j],
            "title": state.manifest.record(order[j]).title,
            "score": float(row[j]),
        }
        for j in ranked
    ]


def handle_api(state: ServiceState, path: str, query: dict[str, list[str]]):
    """Routes one GET request; returns a JSON-serializable object or raises
    ApiError.  Returns None when the path is not an API path."""
    parts = [unquote(p) for p in path.strip("/").split("/")] if path.strip("/") else []

    if parts == ["movies"]:
        return [_movie_payload(state, m) for m in state.manifest.movie_order]

    if len(parts) == 2 and parts[0] == "movies":
        state.movie_index(parts[1])
        return _movie_payload(state, parts[1])

    if len(parts) == 3 and parts[0] == "movies" and parts[2] == "topics":
        i = state.movie_index(parts[1])
        state.require_lda()
        row = state.doc_topics[i]
        pairs = sorted(enumerate(row), key=lambda p: (-p[1], p[0]))
        return {
            "movie_id": parts[1],
            "topics": [{"topic": t, "weight": float(w)} for t, w in pairs],
        }

    if len(parts) == 3 and parts[0] == "movies" and parts[2] == "similar":
        movie_id = parts[1]
        state.movie_index(movie_id)
        n = None
        if "n" in query:
            try:
                n = int(query["n"][0])
            except ValueError:
                raise ApiError(400, f"n must be an integer, got {query['n'][0]!r}") from None
            if n < 1:
                raise ApiError(400, "n must be at least 1")
        if "weights" in query:
            weights = parse_weights(query["weights"][0], set(state.matrices))
        elif state.fusion_weights is not None:
            weights = state.fusion_weights
        else:
            raise ApiError(400, "weights required (no stored fusion weights to fall back to)")
        fused = fuse(state.matrices, weights)
        return {
            "movie_id": movie_id,
            "weights": weights.weights,
            "flagged": movie_id in fused.flagged,
            "similar": _ranked_others(state, fused, movie_id, n),
        }

    if parts == ["topics"]:
        model = state.require_lda()
        mass = state.doc_topics.mean(axis=0)
        out = []
        for t in range(model.n_topics):
            summary = topic_top_words(model, t, 3)
            out.append(
                {
                    "topic": t,
                    "share": float(mass[t]),
                    "preview": [w for w, _ in summary.top_words],
                }
            )
        return out

    if len(parts) == 3 and parts[0] == "topics" and parts[2] == "words":
        t = state.topic_bounds(parts[1])
        n = 20
        if "n" in query:
            try:
                n = int(query["n"][0])
            except ValueError:
                raise ApiError(400, f"n must be an integer, got {query['n'][0]!r}") from None
            if n < 1:
                raise ApiError(400, "n must be at least 1")
        summary = topic_top_words(state.require_lda(), t, n)
        return {
            "topic": t,
            "words": [{"word": w, "weight": float(p)} for w, p in summary.top_words],
        }

    if len(parts) == 3 and parts[0] == "topics" and parts[2] == "movies":
        t = state.topic_bounds(parts[1])
        order = state.manifest.movie_order
        col = state.doc_topics[:, t]
        ranked = sorted(range(len(order)), key=lambda i: (-col[i], order[i]))
        return {
            "topic": t,
            "movies": [
                {
                    "movie_id": order[i],
                    "title": state.manifest.record(order[i]).title,
                    "weight": float(col[i]),
                }
                for i in ranked
            ],
        }

    if parts == ["eval", "report"]:
        return {"reports": [report_as_dict(r) for r in state.reports]}

    if parts == ["modalities"]:
        return {
            "modalities": [
                {"name": m, "flagged": sorted(state.matrices[m].flagged)}
                for m in MODALITIES
                if m in state.matrices
            ],
            "fusion_weights": state.fusion_weights.weights if state.fusion_weights else None,
        }

    return None


def _guess_type(path: Path) -> str:
    guessed, _ = mimetypes.guess_type(str(path))
    return guessed or "application/octet-stream"


def make_handler(state: ServiceState):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):
            log.debug("%s " + fmt, self.address_string(), *args)

        def _send_json(self, code: int, payload) -> None:
            body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
            self.send_response(code)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _send_error_json(self, code: int, message: str) -> None:
            self._send_json(code, {"error": {"code": code, "message": message}})

        def _serve_static(self, path: str) -> None:
            assert state.ui_dir is not None
            rel = path.strip("/") or "index.html"
            target = (state.ui_dir / rel).resolve()
            if not str(target).startswith(str(state.ui_dir)) or not target.is_file():
                self._send_error_json(404, f"no such path: {path}")
                return
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", _guess_type(target))
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_GET(self):
            parsed = urlparse(self.path)
            query = parse_qs(parsed.query)
            try:
                payload = handle_api(state, parsed.path, query)
            except ApiError as exc:
                self._send_error_json(exc.code, exc.message)
                return
            except Exception as exc:  # pragma: no cover - defensive
                log.exception("request failed: %s", self.path)
                self._send_error_json(500, f"internal error: {exc}")
                return
            if payload is not None:
                self._send_json(200, payload)
            elif state.ui_dir is not None:
                self._serve_static(parsed.path)
            else:
                self._send_error_json(404, f"no such endpoint: {parsed.path}")

    return Handler


def make_server(state: ServiceState, port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    handler = make_handler(state)
    return ThreadingHTTPServer((host, port), handler)


def serve(cfg: PipelineConfig, port: int | None = None, ui_dir: str | None = None,
          host: str = "127.0.0.1") -> None:
    """Blocking entry point used by the CLI."""
    state = load_service_state(cfg, ui_dir=ui_dir)
    server = make_server(state, port if port is not None else cfg.port, host=host)
    log.info("serving on http://%s:%d", host, server.server_port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
