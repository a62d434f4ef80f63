"""Audio class taxonomies, segment containers and class histograms.

Two fixed taxonomies exist: eight musical genres and eight audio event
classes.  Their label sets are disjoint, so a label file may mix lines
from both and each line still belongs to exactly one taxonomy.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError, ValidationError

GENRE_LABELS = (
    "blues",
    "classical",
    "country",
    "electronic",
    "jazz",
    "rap",
    "reggae",
    "rock",
)

EVENT_LABELS = (
    "music",
    "speech",
    "env_background",
    "env_abrupt",
    "env_constant_high",
    "gunshots",
    "screams",
    "fights",
)


@dataclass(frozen=True)
class ClassTaxonomy:
    kind: str  # "genre" | "event"
    labels: tuple[str, ...]

    def __post_init__(self):
        expected = {"genre": GENRE_LABELS, "event": EVENT_LABELS}.get(self.kind)
        if expected is None:
            raise ValidationError(f"unknown taxonomy kind {self.kind!r}")
        if self.labels != expected:
            raise ValidationError(f"{self.kind} taxonomy must be exactly {list(expected)}")

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"label {label!r} is not in the {self.kind} taxonomy") from None


def genre_taxonomy() -> ClassTaxonomy:
    return ClassTaxonomy(kind="genre", labels=GENRE_LABELS)


def event_taxonomy() -> ClassTaxonomy:
    return ClassTaxonomy(kind="event", labels=EVENT_LABELS)


@dataclass
class SegmentFeatures:
    movie_id: str
    vectors: np.ndarray  # (segments, dim) float64

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2:
            raise ValidationError("segment features must be a 2-D array (segments x dim)")
        if not np.all(np.isfinite(self.vectors)):
            raise ValidationError("segment features contain NaN or Inf")

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def n_segments(self) -> int:
        return int(self.vectors.shape[0])


@dataclass
class ClassHistogram:
    movie_id: str
    kind: str
    proportions: np.ndarray  # aligned with the taxonomy's label order
    flagged: bool = field(default=False)  # no segments; all-zero by convention

    def __post_init__(self):
        self.proportions = np.asarray(self.proportions, dtype=np.float64)
        if np.any(self.proportions < 0):
            raise ValidationError("histogram proportions must be non-negative")
        total = float(self.proportions.sum())
        if self.flagged:
            if total != 0.0:
                raise ValidationError("a flagged histogram must be all zero")
        elif abs(total - 1.0) > 1e-12:
            raise ValidationError(f"histogram proportions sum to {total}, expected 1")


def class_histogram(
    labels: list[str], taxonomy: ClassTaxonomy, movie_id: str = ""
) -> ClassHistogram:
    counts = np.zeros(len(taxonomy.labels))
    for label in labels:
        counts[taxonomy.index(label)] += 1
    if not labels:
        return ClassHistogram(movie_id=movie_id, kind=taxonomy.kind, proportions=counts, flagged=True)
    return ClassHistogram(
        movie_id=movie_id, kind=taxonomy.kind, proportions=counts / len(labels)
    )


def read_feature_csv(path: str, movie_id: str = "") -> SegmentFeatures:
    """Parses a per-segment feature file: header `f1..fN`, one row of N
    numbers per segment."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty feature file") from None
        expected = [f"f{i + 1}" for i in range(len(header))]
        if [h.strip() for h in header] != expected:
            raise ValidationError(f"{path}: header must be {','.join(expected)} style (f1..fN)")
        width = len(header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != width:
                raise ValidationError(
                    f"{path}:{lineno}: expected {width} values, got {len(row)}"
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: non-numeric value") from None
            if not all(math.isfinite(v) for v in values):
                raise ValidationError(f"{path}:{lineno}: NaN or Inf value")
            rows.append(values)
    if not rows:
        raise ValidationError(f"{path}: no segments")
    return SegmentFeatures(movie_id=movie_id, vectors=np.array(rows))


def read_label_lines(path: str) -> list[tuple[int, str]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            label = line.strip()
            if label:
                out.append((lineno, label))
    return out


def read_label_file(path: str, taxonomy: ClassTaxonomy) -> list[str]:
    """One taxonomy label per line; blank lines ignored."""
    labels = []
    for lineno, label in read_label_lines(path):
        if label not in taxonomy.labels:
            raise ValidationError(
                f"{path}:{lineno}: label {label!r} is not in the {taxonomy.kind} taxonomy"
            )
        labels.append(label)
    return labels


def split_mixed_labels(path: str) -> tuple[list[str], list[str]]:
    """Splits a label file that may mix genre and event lines into
    (genre labels, event labels).  The taxonomies are disjoint, so every
    line belongs to exactly one of them."""
    genres, events = [], []
    for lineno, label in read_label_lines(path):
        if label in GENRE_LABELS:
            genres.append(label)
        elif label in EVENT_LABELS:
            events.append(label)
        else:
            raise ValidationError(f"{path}:{lineno}: label {label!r} is not in either taxonomy")
    return genres, events


def taxonomy_for_kind(kind: str) -> ClassTaxonomy:
    if kind == "genre":
        return genre_taxonomy()
    if kind == "event":
        return event_taxonomy()
    raise ParameterError(f"unknown taxonomy kind {kind!r}")
