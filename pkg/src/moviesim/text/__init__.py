from .srt import SrtDocument, parse_srt
from .tokens import TokenStream, normalize
from .lemmas import Lemmatizer, load_default_lemmatizer
from .vocab import BowCorpus, FilterConfig, Vocabulary, build_bow, build_vocabulary

__all__ = [
    "SrtDocument",
    "parse_srt",
    "TokenStream",
    "normalize",
    "Lemmatizer",
    "load_default_lemmatizer",
    "BowCorpus",
    "FilterConfig",
    "Vocabulary",
    "build_bow",
    "build_vocabulary",
]
