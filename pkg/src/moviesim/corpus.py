"""Corpus inputs: the manifest, movie metadata records and tag-relevance data.

The manifest is a single JSON document naming every movie and every input
file (subtitles, audio, tags).  All matrices and vector collections built
downstream use the manifest's movie order, so the manifest is the one
canonical entry point for a corpus.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError

AUDIO_KINDS = ("features", "labels")


@dataclass(frozen=True)
class MovieRecord:
    movie_id: str
    title: str
    cast: frozenset[str] = field(default_factory=frozenset)
    directors: frozenset[str] = field(default_factory=frozenset)
    genres: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.movie_id:
            raise ValidationError("movie_id must be non-empty")


@dataclass(frozen=True)
class AudioInput:
    kind: str  # "features" (segment CSV) or "labels" (one label per line)
    path: Path

    def __post_init__(self):
        if self.kind not in AUDIO_KINDS:
            raise ValidationError(
                f"audio kind must be one of {AUDIO_KINDS}, got {self.kind!r}"
            )


@dataclass
class TagVector:
    movie_id: str
    tag_weights: dict[str, float]


@dataclass
class CorpusManifest:
    movies: list[MovieRecord]
    subtitles: dict[str, Path]
    audio: dict[str, AudioInput]
    tags_path: Path | None

    @property
    def movie_order(self) -> list[str]:
        return [m.movie_id for m in self.movies]

    def record(self, movie_id: str) -> MovieRecord:
        for m in self.movies:
            if m.movie_id == movie_id:
                return m
        raise KeyError(movie_id)


def load_manifest(path: str | Path) -> CorpusManifest:
    """Load and validate a corpus manifest.

    Raises OSError if the file is missing, ValidationError on duplicate
    movie ids, dangling path-map references, or missing referenced files.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"manifest {path} is not valid JSON: {exc}") from exc

    root = path.parent
    movies = []
    seen = set()
    for entry in doc.get("movies", []):
        rec = MovieRecord(
            movie_id=entry["id"],
            title=entry.get("title", entry["id"]),
            cast=frozenset(entry.get("cast", [])),
            directors=frozenset(entry.get("directors", [])),
            genres=frozenset(entry.get("genres", [])),
        )
        if rec.movie_id in seen:
            raise ValidationError(f"duplicate movie_id {rec.movie_id!r} in manifest")
        seen.add(rec.movie_id)
        movies.append(rec)

    def resolve(p: str) -> Path:
        q = Path(p)
        return q if q.is_absolute() else root / q

    subtitles = {}
    for movie_id, sub_path in doc.get("subtitles", {}).items():
        if movie_id not in seen:
            raise ValidationError(
                f"subtitles entry references unknown movie_id {movie_id!r}"
            )
        subtitles[movie_id] = resolve(sub_path)

    audio = {}
    for movie_id, spec in doc.get("audio", {}).items():
        if movie_id not in seen:
            raise ValidationError(
                f"audio entry references unknown movie_id {movie_id!r}"
            )
        audio[movie_id] = AudioInput(kind=spec["kind"], path=resolve(spec["path"]))

    tags_path = resolve(doc["tags"]) if doc.get("tags") else None

    missing = [m.movie_id for m in movies if m.movie_id not in subtitles]
    if missing:
        raise ValidationError(f"movies without a subtitle path: {missing}")

    for movie_id, p in subtitles.items():
        if not p.exists():
            raise ValidationError(f"subtitle file for {movie_id!r} not found: {p}")
    for movie_id, a in audio.items():
        if not a.path.exists():
            raise ValidationError(f"audio file for {movie_id!r} not found: {a.path}")
    if tags_path is not None and not tags_path.exists():
        raise ValidationError(f"tags file not found: {tags_path}")

    return CorpusManifest(
        movies=movies, subtitles=subtitles, audio=audio, tags_path=tags_path
    )


def load_tags(path: str | Path) -> list[TagVector]:
    """Read the tag-relevance CSV (header ``movie_id,tag,relevance``).

    Relevance values outside [0, 1] are an error, not clamped: they surface
    data corruption early.  Returns one TagVector per distinct movie_id in
    file order; an empty file yields an empty list.
    """
    path = Path(path)
    by_movie: dict[str, dict[str, float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ValidationError(
                    f"{path}:{lineno}: expected 3 columns movie_id,tag,relevance"
                )
            movie_id, tag, raw = row[0].strip(), row[1].strip(), row[2].strip()
            try:
                relevance = float(raw)
            except ValueError as exc:
                raise ValidationError(
                    f"{path}:{lineno}: relevance {raw!r} is not a number"
                ) from exc
            if not 0.0 <= relevance <= 1.0:
                raise ValidationError(
                    f"{path}:{lineno}: relevance {relevance} outside [0, 1]"
                )
            by_movie.setdefault(movie_id, {})[tag] = relevance
    return [TagVector(movie_id=k, tag_weights=v) for k, v in by_movie.items()]


def tag_space(tags: list[TagVector]) -> list[str]:
    """All distinct tag strings across the file, sorted; these are the
    ground-truth vector dimensions."""
    seen: set[str] = set()
    for tv in tags:
        seen.update(tv.tag_weights)
    return sorted(seen)
