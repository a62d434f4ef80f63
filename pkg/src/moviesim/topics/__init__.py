from .tfidf import TfidfMatrix, tfidf
from .lsi import LsiModel, lsi_fit
from .lda import LdaModel, TopicSummary, lda_doc_topics, lda_fit, topic_top_words

__all__ = [
    "TfidfMatrix",
    "tfidf",
    "LsiModel",
    "lsi_fit",
    "LdaModel",
    "TopicSummary",
    "lda_fit",
    "lda_doc_topics",
    "topic_top_words",
]
