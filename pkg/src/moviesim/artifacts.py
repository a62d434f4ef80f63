"""Flat-file artifact store with versioned formats.

Small artifacts (models, reports, weights) are stored as JSON envelopes
named `<name>.<format_version>.json`:

    {"artifact": "<kind>", "format_version": 1, "payload": {...}}

Large numeric arrays inside JSON payloads are packed as little-endian
bytes in base64 (`{"__array__": ..., "dtype", "shape", "data"}`), which
keeps every float bit-exact across a round trip.

Matrices are stored in a little-endian binary layout:

    similarity matrix, `<name>.<version>.msim`:
        magic b"MSIM" | u16 version | u32 n | n*n f64 row-major values
        | id list | meta blob
    rectangular vectors, `<name>.<version>.mvec`:
        magic b"MVEC" | u16 version | u32 rows | u32 cols
        | rows*cols f64 row-major values | id list | meta blob

    id list:  u32 count, then per id u32 byte length + UTF-8 bytes
    meta blob: u32 byte length + UTF-8 JSON (provenance, flags, term list)

Loading a file whose version differs from the supported one raises
ArtifactVersionError; any structural damage raises ArtifactIntegrityError.
"""

from __future__ import annotations

import base64
import json
import struct
from pathlib import Path

import numpy as np

from .audio.classes import ClassTaxonomy, taxonomy_for_kind
from .audio.svm import SvmModel
from .errors import ArtifactIntegrityError, ArtifactVersionError, ParameterError
from .evaluation import EvalReport, RecDetail
from .similarity import FusionWeights, ModalityVectors, SimilarityMatrix
from .text.vocab import BowCorpus, Vocabulary
from .topics.lda import LdaModel
from .topics.lsi import LsiModel
from .topics.tfidf import TfidfMatrix

FORMAT_VERSION = 1

_MAGIC_SQUARE = b"MSIM"
_MAGIC_RECT = b"MVEC"


def _pack_array(arr: np.ndarray, dtype: str) -> dict:
    data = np.ascontiguousarray(arr, dtype=dtype).tobytes()
    return {
        "__array__": True,
        "dtype": dtype,
        "shape": list(arr.shape),
        "data": base64.b64encode(data).decode("ascii"),
    }


def _unpack_array(obj: dict) -> np.ndarray:
    raw = base64.b64decode(obj["data"])
    arr = np.frombuffer(raw, dtype=obj["dtype"]).copy()
    return arr.reshape(obj["shape"])


class _Reader:
    def __init__(self, data: bytes, path: Path):
        self.data = data
        self.pos = 0
        self.path = path

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ArtifactIntegrityError(f"{self.path}: truncated (needed {n} more bytes)")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u16(self) -> int:
        return struct.unpack("<H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def ids(self) -> list[str]:
        count = self.u32()
        out = []
        for _ in range(count):
            length = self.u32()
            try:
                out.append(self.take(length).decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise ArtifactIntegrityError(f"{self.path}: bad id encoding") from exc
        return out

    def meta(self) -> dict:
        length = self.u32()
        try:
            return json.loads(self.take(length).decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ArtifactIntegrityError(f"{self.path}: bad meta blob") from exc


def _encode_ids(ids: list[str]) -> bytes:
    parts = [struct.pack("<I", len(ids))]
    for s in ids:
        raw = s.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    return b"".join(parts)


def _encode_meta(meta: dict) -> bytes:
    raw = json.dumps(meta, ensure_ascii=False).encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


def _write_square(path: Path, matrix: SimilarityMatrix) -> None:
    n = len(matrix.movie_order)
    meta = {
        "content": "similarity",
        "provenance": matrix.provenance,
        "flagged": sorted(matrix.flagged),
    }
    with open(path, "wb") as fh:
        fh.write(_MAGIC_SQUARE)
        fh.write(struct.pack("<H", FORMAT_VERSION))
        fh.write(struct.pack("<I", n))
        fh.write(np.ascontiguousarray(matrix.values, dtype="<f8").tobytes())
        fh.write(_encode_ids(matrix.movie_order))
        fh.write(_encode_meta(meta))


def _read_square(reader: _Reader) -> SimilarityMatrix:
    n = reader.u32()
    values = np.frombuffer(reader.take(8 * n * n), dtype="<f8").copy().reshape(n, n)
    ids = reader.ids()
    if len(ids) != n:
        raise ArtifactIntegrityError(f"{reader.path}: id count {len(ids)} != matrix size {n}")
    meta = reader.meta()
    return SimilarityMatrix(
        values=values,
        movie_order=ids,
        provenance=meta.get("provenance", {}),
        flagged=frozenset(meta.get("flagged", [])),
    )


def _write_rect(path: Path, vectors: np.ndarray, ids: list[str], meta: dict) -> None:
    rows, cols = vectors.shape
    with open(path, "wb") as fh:
        fh.write(_MAGIC_RECT)
        fh.write(struct.pack("<H", FORMAT_VERSION))
        fh.write(struct.pack("<II", rows, cols))
        fh.write(np.ascontiguousarray(vectors, dtype="<f8").tobytes())
        fh.write(_encode_ids(ids))
        fh.write(_encode_meta(meta))


def _read_rect(reader: _Reader):
    rows = reader.u32()
    cols = reader.u32()
    values = np.frombuffer(reader.take(8 * rows * cols), dtype="<f8").copy().reshape(rows, cols)
    ids = reader.ids()
    if len(ids) != rows:
        raise ArtifactIntegrityError(f"{reader.path}: id count {len(ids)} != row count {rows}")
    meta = reader.meta()
    content = meta.get("content")
    if content == "tfidf":
        return TfidfMatrix(rows=values, movie_order=ids, terms=list(meta["terms"]))
    if content == "modality_vectors":
        return ModalityVectors(
            modality=meta["modality"],
            vectors=values,
            movie_order=ids,
            flagged=frozenset(meta.get("flagged", [])),
        )
    raise ArtifactIntegrityError(f"{reader.path}: unknown rectangular content {content!r}")


# -- JSON payload encoders/decoders per artifact kind ------------------------

def _encode_payload(obj) -> tuple[str, dict]:
    if isinstance(obj, Vocabulary):
        return "vocabulary", {"terms": list(obj.terms)}
    if isinstance(obj, BowCorpus):
        counts = [sorted(doc.items()) for doc in obj.counts]
        return "bow_corpus", {
            "terms": list(obj.vocabulary.terms),
            "movie_order": list(obj.movie_order),
            "counts": counts,
        }
    if isinstance(obj, LsiModel):
        return "lsi_model", {
            "k": obj.k,
            "singular_values": _pack_array(obj.singular_values, "<f8"),
            "term_vectors": _pack_array(obj.term_vectors, "<f8"),
            "doc_vectors": _pack_array(obj.doc_vectors, "<f8"),
            "movie_order": list(obj.movie_order),
        }
    if isinstance(obj, LdaModel):
        return "lda_model", {
            "n_topics": obj.n_topics,
            "alpha": obj.alpha,
            "beta": obj.beta,
            "rng_seed": obj.rng_seed,
            "terms": list(obj.terms),
            "movie_order": list(obj.movie_order),
            "topic_word_counts": _pack_array(obj.topic_word_counts, "<i8"),
            "doc_topic_counts": _pack_array(obj.doc_topic_counts, "<i8"),
            "topic_totals": _pack_array(obj.topic_totals, "<i8"),
            "assignments": [_pack_array(a, "<i8") for a in obj.assignments],
        }
    if isinstance(obj, SvmModel):
        return "svm_model", {
            "taxonomy_kind": obj.taxonomy.kind,
            "epochs": obj.epochs,
            "lam": obj.lam,
            "seed": obj.seed,
            "weights": _pack_array(obj.weights, "<f8"),
            "biases": _pack_array(obj.biases, "<f8"),
            "feature_mean": _pack_array(obj.feature_mean, "<f8"),
            "feature_scale": _pack_array(obj.feature_scale, "<f8"),
            "objective_trace": obj.objective_trace,
        }
    if isinstance(obj, FusionWeights):
        return "fusion_weights", {"weights": dict(obj.weights)}
    if isinstance(obj, EvalReport):
        return "eval_report", _report_payload(obj)
    if isinstance(obj, list) and obj and all(isinstance(r, EvalReport) for r in obj):
        return "eval_report_set", {"reports": [_report_payload(r) for r in obj]}
    raise ParameterError(f"cannot persist object of type {type(obj).__name__}")


def _report_payload(r: EvalReport) -> dict:
    return {
        "model": r.model,
        "median_first_rec_rank": r.median_first_rec_rank,
        "top10_pct": r.top10_pct,
        "details": [
            {"movie_id": d.movie_id, "first_rec": d.first_rec, "gt_rank": d.gt_rank}
            for d in r.details
        ],
        "excluded": list(r.excluded),
    }


def _decode_report(p: dict) -> EvalReport:
    return EvalReport(
        model=p["model"],
        median_first_rec_rank=p["median_first_rec_rank"],
        top10_pct=p["top10_pct"],
        details=[
            RecDetail(movie_id=d["movie_id"], first_rec=d["first_rec"], gt_rank=d["gt_rank"])
            for d in p["details"]
        ],
        excluded=list(p["excluded"]),
    )


def _decode_payload(kind: str, p: dict, path: Path):
    if kind == "vocabulary":
        return Vocabulary.from_terms(p["terms"])
    if kind == "bow_corpus":
        vocab = Vocabulary.from_terms(p["terms"])
        counts = [{int(w): int(c) for w, c in doc} for doc in p["counts"]]
        return BowCorpus(vocabulary=vocab, counts=counts, movie_order=list(p["movie_order"]))
    if kind == "lsi_model":
        return LsiModel(
            k=p["k"],
            term_vectors=_unpack_array(p["term_vectors"]),
            singular_values=_unpack_array(p["singular_values"]),
            doc_vectors=_unpack_array(p["doc_vectors"]),
            movie_order=list(p["movie_order"]),
        )
    if kind == "lda_model":
        return LdaModel(
            n_topics=p["n_topics"],
            alpha=p["alpha"],
            beta=p["beta"],
            topic_word_counts=_unpack_array(p["topic_word_counts"]),
            doc_topic_counts=_unpack_array(p["doc_topic_counts"]),
            topic_totals=_unpack_array(p["topic_totals"]),
            assignments=[_unpack_array(a) for a in p["assignments"]],
            rng_seed=p["rng_seed"],
            terms=list(p["terms"]),
            movie_order=list(p["movie_order"]),
        )
    if kind == "svm_model":
        return SvmModel(
            taxonomy=taxonomy_for_kind(p["taxonomy_kind"]),
            weights=_unpack_array(p["weights"]),
            biases=_unpack_array(p["biases"]),
            feature_mean=_unpack_array(p["feature_mean"]),
            feature_scale=_unpack_array(p["feature_scale"]),
            epochs=p["epochs"],
            lam=p["lam"],
            seed=p["seed"],
            objective_trace=[list(map(float, row)) for row in p["objective_trace"]],
        )
    if kind == "fusion_weights":
        return FusionWeights(weights={k: float(v) for k, v in p["weights"].items()})
    if kind == "eval_report":
        return _decode_report(p)
    if kind == "eval_report_set":
        return [_decode_report(r) for r in p["reports"]]
    raise ArtifactIntegrityError(f"{path}: unknown artifact kind {kind!r}")


class ArtifactStore:
    """One directory of named artifacts; names map to files
    `<name>.<format_version>.<ext>`."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _find(self, name: str) -> Path | None:
        hits = sorted(self.root.glob(f"{name}.*.json"))
        hits += sorted(self.root.glob(f"{name}.*.msim"))
        hits += sorted(self.root.glob(f"{name}.*.mvec"))
        hits = [h for h in hits if h.name[: len(name) + 1] == f"{name}."]
        if len(hits) > 1:
            raise ArtifactIntegrityError(
                f"ambiguous artifact {name!r}: {[h.name for h in hits]}"
            )
        return hits[0] if hits else None

    def exists(self, name: str) -> bool:
        return self._find(name) is not None

    def remove(self, name: str) -> None:
        path = self._find(name)
        if path is not None:
            path.unlink()

    def names(self) -> list[str]:
        out = set()
        for path in self.root.iterdir():
            parts = path.name.rsplit(".", 2)
            if len(parts) == 3 and parts[2] in ("json", "msim", "mvec"):
                out.add(parts[0])
        return sorted(out)

    def save(self, name: str, obj) -> Path:
        if isinstance(obj, SimilarityMatrix):
            path = self.root / f"{name}.{FORMAT_VERSION}.msim"
            _write_square(path, obj)
            return path
        if isinstance(obj, ModalityVectors):
            path = self.root / f"{name}.{FORMAT_VERSION}.mvec"
            meta = {
                "content": "modality_vectors",
                "modality": obj.modality,
                "flagged": sorted(obj.flagged),
            }
            _write_rect(path, obj.vectors, list(obj.movie_order), meta)
            return path
        if isinstance(obj, TfidfMatrix):
            path = self.root / f"{name}.{FORMAT_VERSION}.mvec"
            meta = {"content": "tfidf", "terms": list(obj.terms)}
            _write_rect(path, obj.rows, list(obj.movie_order), meta)
            return path
        kind, payload = _encode_payload(obj)
        path = self.root / f"{name}.{FORMAT_VERSION}.json"
        envelope = {"artifact": kind, "format_version": FORMAT_VERSION, "payload": payload}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(envelope, fh, ensure_ascii=False)
        return path

    def load(self, name: str):
        path = self._find(name)
        if path is None:
            raise FileNotFoundError(f"no artifact named {name!r} in {self.root}")
        version_token = path.name.rsplit(".", 2)[1]
        if version_token != str(FORMAT_VERSION):
            raise ArtifactVersionError(
                f"{path}: format version {version_token} is not supported (expected {FORMAT_VERSION})"
            )
        if path.suffix == ".json":
            return self._load_json(path)
        return self._load_binary(path)

    def _load_json(self, path: Path):
        try:
            with open(path, encoding="utf-8") as fh:
                envelope = json.load(fh)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ArtifactIntegrityError(f"{path}: not valid JSON ({exc})") from exc
        if not isinstance(envelope, dict) or "artifact" not in envelope:
            raise ArtifactIntegrityError(f"{path}: missing artifact envelope")
        if envelope.get("format_version") != FORMAT_VERSION:
            raise ArtifactVersionError(
                f"{path}: format version {envelope.get('format_version')!r} is not supported"
            )
        try:
            return _decode_payload(envelope["artifact"], envelope["payload"], path)
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactIntegrityError(f"{path}: malformed payload ({exc})") from exc

    def _load_binary(self, path: Path):
        reader = _Reader(path.read_bytes(), path)
        magic = reader.take(4)
        if magic not in (_MAGIC_SQUARE, _MAGIC_RECT):
            raise ArtifactIntegrityError(f"{path}: bad magic {magic!r}")
        version = reader.u16()
        if version != FORMAT_VERSION:
            raise ArtifactVersionError(
                f"{path}: format version {version} is not supported (expected {FORMAT_VERSION})"
            )
        try:
            if magic == _MAGIC_SQUARE:
                return _read_square(reader)
            return _read_rect(reader)
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactIntegrityError(f"{path}: malformed binary payload ({exc})") from exc
