"""regtrack: regulatory-change tracking with hierarchical text classification."""

from .labels import (
    ActionabilityLabel,
    ApplicabilityLabel,
    LabelSource,
    Provenance,
    RelevanceLabel,
    Task,
    to_relevance,
)
from .corpus import (
    Announcement,
    DatasetSplit,
    LabeledCorpus,
    class_counts,
    load_corpus,
    save_corpus,
    stratified_split,
)
from .features import BagOfWordsVectorizer, SparseVector, Vocabulary, fit_vocabulary, tokenize, vectorize

__version__ = "0.1.0"

__all__ = [
    "ActionabilityLabel",
    "ApplicabilityLabel",
    "RelevanceLabel",
    "LabelSource",
    "Provenance",
    "Task",
    "to_relevance",
    "Announcement",
    "LabeledCorpus",
    "DatasetSplit",
    "load_corpus",
    "save_corpus",
    "class_counts",
    "stratified_split",
    "BagOfWordsVectorizer",
    "SparseVector",
    "Vocabulary",
    "fit_vocabulary",
    "tokenize",
    "vectorize",
    "__version__",
]
