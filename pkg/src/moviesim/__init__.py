"""Multimodal movie similarity: subtitle topic models, audio class
histograms and metadata vectors, fused into one ranking."""

__version__ = "0.1.0"

from .corpus import CorpusManifest, MovieRecord, TagVector, load_manifest, load_tags
from .errors import (
    ArtifactIntegrityError,
    ArtifactVersionError,
    MovieSimError,
    ParameterError,
    StageError,
    ValidationError,
)
from .similarity import (
    MODALITIES,
    FusionWeights,
    ModalityVectors,
    SimilarityMatrix,
    cosine,
    fuse,
    metadata_vectors,
    similarity_matrix,
)

__all__ = [
    "MODALITIES",
    "ArtifactIntegrityError",
    "ArtifactVersionError",
    "CorpusManifest",
    "FusionWeights",
    "ModalityVectors",
    "MovieRecord",
    "MovieSimError",
    "ParameterError",
    "SimilarityMatrix",
    "StageError",
    "TagVector",
    "ValidationError",
    "__version__",
    "cosine",
    "fuse",
    "load_manifest",
    "load_tags",
    "metadata_vectors",
    "similarity_matrix",
]
