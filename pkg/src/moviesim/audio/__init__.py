from .classes import (
    EVENT_LABELS,
    GENRE_LABELS,
    ClassHistogram,
    ClassTaxonomy,
    SegmentFeatures,
    class_histogram,
    event_taxonomy,
    genre_taxonomy,
    read_feature_csv,
    read_label_file,
    split_mixed_labels,
)
from .features import extract_features, read_wav
from .svm import SvmModel, classify_segments, svm_objective, svm_train

__all__ = [
    "EVENT_LABELS",
    "GENRE_LABELS",
    "ClassHistogram",
    "ClassTaxonomy",
    "SegmentFeatures",
    "SvmModel",
    "class_histogram",
    "classify_segments",
    "event_taxonomy",
    "extract_features",
    "genre_taxonomy",
    "read_feature_csv",
    "read_label_file",
    "read_wav",
    "split_mixed_labels",
    "svm_objective",
    "svm_train",
]
