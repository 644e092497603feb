"""Unigram+bigram bag-of-words features over a lexicographic vocabulary.

The pipeline is deliberately plain: lowercase alphanumeric tokens, no
stemming, no stopword removal, raw term counts. Preprocessing variants were
not worth their complexity for this data, so none are implemented.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .base import ParamsMixin, check_is_fitted

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase tokens; every character outside [a-z0-9] separates."""
    return _TOKEN_RE.findall(text.lower())


def ngram_terms(tokens: Sequence[str]) -> list[str]:
    """All unigrams followed by all adjacent bigrams rendered as "w1_w2"."""
    terms = list(tokens)
    terms.extend(f"{a}_{b}" for a, b in zip(tokens, tokens[1:]))
    return terms


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, count) pairs against a fixed-dimension vocabulary."""

    entries: tuple[tuple[int, int], ...]
    dimension: int

    def __post_init__(self) -> None:
        prev = -1
        for index, count in self.entries:
            if index <= prev:
                raise ValueError("indices must be strictly increasing")
            if index >= self.dimension:
                raise ValueError(f"index {index} out of range for dimension {self.dimension}")
            if count < 1:
                raise ValueError("counts must be >= 1")
            prev = index

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def total_count(self) -> int:
        return sum(count for _, count in self.entries)


@dataclass(frozen=True)
class Vocabulary:
    """Term-to-index map with lexicographic indices and a corpus fingerprint.

    The fingerprint (doc count + order-insensitive digest) lets persisted
    models detect that they are being used with a different vocabulary.
    """

    index: dict[str, int]
    doc_count: int
    digest: str

    def __len__(self) -> int:
        return len(self.index)

    @property
    def fingerprint(self) -> dict:
        return {"doc_count": self.doc_count, "digest": self.digest}

    def to_json_dict(self) -> dict:
        return {"index": self.index, "doc_count": self.doc_count, "digest": self.digest}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Vocabulary":
        return cls(
            index={str(k): int(v) for k, v in obj["index"].items()},
            doc_count=int(obj["doc_count"]),
            digest=str(obj["digest"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def corpus_digest(docs: Iterable[str]) -> tuple[int, str]:
    """Order-insensitive digest: hash of sorted per-doc hashes."""
    doc_hashes = sorted(hashlib.sha256(d.encode("utf-8")).hexdigest() for d in docs)
    h = hashlib.sha256()
    for dh in doc_hashes:
        h.update(dh.encode("ascii"))
    return len(doc_hashes), h.hexdigest()


def fit_vocabulary(training_docs: Sequence[str]) -> Vocabulary:
    """Union of unigram+bigram terms over the docs, indexed lexicographically."""
    if len(training_docs) == 0:
        raise ValueError("cannot fit a vocabulary on an empty document list")
    terms: set[str] = set()
    for doc in training_docs:
        terms.update(ngram_terms(tokenize(doc)))
    index = {term: i for i, term in enumerate(sorted(terms))}
    doc_count, digest = corpus_digest(training_docs)
    return Vocabulary(index=index, doc_count=doc_count, digest=digest)


def vectorize(text: str, vocab: Vocabulary) -> SparseVector:
    """Counts of in-vocabulary terms; out-of-vocabulary terms are ignored."""
    counts: dict[int, int] = {}
    for term in ngram_terms(tokenize(text)):
        idx = vocab.index.get(term)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    entries = tuple(sorted(counts.items()))
    return SparseVector(entries=entries, dimension=len(vocab))


class CsrMatrix:
    """Row-compressed document-term counts, just enough for classifier math."""

    def __init__(self, data: np.ndarray, indices: np.ndarray, indptr: np.ndarray, n_cols: int):
        self.data = data
        self.indices = indices
        self.indptr = indptr
        self.shape = (len(indptr) - 1, n_cols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[SparseVector]) -> "CsrMatrix":
        if not vectors:
            raise ValueError("need at least one vector")
        dims = {v.dimension for v in vectors}
        if len(dims) != 1:
            raise ValueError(f"mixed vector dimensions: {sorted(dims)}")
        indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
        cols: list[int] = []
        vals: list[float] = []
        for i, vec in enumerate(vectors):
            for idx, count in vec.entries:
                cols.append(idx)
                vals.append(float(count))
            indptr[i + 1] = len(cols)
        return cls(
            data=np.asarray(vals, dtype=np.float64),
            indices=np.asarray(cols, dtype=np.int64),
            indptr=indptr,
            n_cols=dims.pop(),
        )

    def dot(self, w: np.ndarray) -> np.ndarray:
        """X @ w for a dense weight vector."""
        contrib = self.data * w[self.indices]
        out = np.zeros(self.shape[0], dtype=np.float64)
        # reduceat misbehaves on empty rows; mask them out explicitly
        row_nnz = np.diff(self.indptr)
        nonempty = row_nnz > 0
        if contrib.size:
            sums = np.add.reduceat(contrib, self.indptr[:-1][nonempty])
            out[nonempty] = sums
        return out

    def t_dot(self, r: np.ndarray) -> np.ndarray:
        """X.T @ r for a dense residual vector."""
        row_nnz = np.diff(self.indptr)
        per_entry = np.repeat(r, row_nnz) * self.data
        return np.bincount(self.indices, weights=per_entry, minlength=self.shape[1]).astype(
            np.float64
        )

    def row_sums(self) -> np.ndarray:
        out = np.zeros(self.shape[0], dtype=np.float64)
        row_nnz = np.diff(self.indptr)
        nonempty = row_nnz > 0
        if self.data.size:
            out[nonempty] = np.add.reduceat(self.data, self.indptr[:-1][nonempty])
        return out

    def class_term_counts(self, mask: np.ndarray) -> np.ndarray:
        """Column sums over the rows selected by a boolean mask."""
        row_nnz = np.diff(self.indptr)
        per_entry = np.repeat(mask.astype(np.float64), row_nnz) * self.data
        return np.bincount(self.indices, weights=per_entry, minlength=self.shape[1]).astype(
            np.float64
        )


class BagOfWordsVectorizer(ParamsMixin):
    """fit/transform wrapper so the feature step slots into estimator pipelines.

    fit() learns the vocabulary from training texts; transform() maps texts
    to SparseVectors and never extends the vocabulary.
    """

    def __init__(self) -> None:
        self.vocabulary_: Vocabulary | None = None

    def fit(self, texts: Sequence[str], y=None) -> "BagOfWordsVectorizer":
        self.vocabulary_ = fit_vocabulary(texts)
        return self

    def transform(self, texts: Sequence[str]) -> list[SparseVector]:
        check_is_fitted(self, "vocabulary_")
        return [vectorize(t, self.vocabulary_) for t in texts]

    def fit_transform(self, texts: Sequence[str], y=None) -> list[SparseVector]:
        return self.fit(texts).transform(texts)
