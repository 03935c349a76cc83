"""Embedding-based summary evaluation.

A token sequence reduces to a normalized bag of words (nBOW) over the
content words the embedding table knows.  The distance between two
nBOWs is the minimum cost of transporting one's word mass onto the
other's, with per-pair cost equal to Euclidean distance between the
word vectors, solved exactly.  A summary is scored against a document
as the mean over its paragraphs of 1/(1 + distance); identical content
gives 1 and the score decays toward 0 as vocabularies drift apart.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .embeddings import EmbeddingStore
from .textprep import Document, Stoplist, word_tokens
from .transport import solve_transport

__all__ = [
    "NoComparableContent",
    "NBow",
    "WesmScore",
    "nbow",
    "wmd",
    "rwmd",
    "wesm",
    "wesm_text",
]


class NoComparableContent(ValueError):
    """No in-vocabulary content word survived filtering."""


@dataclass(frozen=True)
class NBow:
    words: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.words) != len(self.weights):
            raise ValueError("words and weights must be parallel")
        if len(set(self.words)) != len(self.words):
            raise ValueError("words must be distinct")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class WesmScore:
    value: float
    per_paragraph: tuple[tuple[int, float], ...]
    skipped_paragraphs: tuple[int, ...]


def nbow(
    tokens: Iterable[str], stoplist: Stoplist, store: EmbeddingStore
) -> NBow:
    """Frequency-normalized distribution over retained words.

    Stopwords, punctuation-only tokens, and words missing from the
    embedding table are dropped; the rest are counted case-folded and
    normalized to sum to 1.
    """
    counts: Counter[str] = Counter()
    for tok in tokens:
        word = tok.lower()
        if not any(c.isalnum() for c in word):
            continue
        if word in stoplist:
            continue
        if store.lookup(word) is None:
            continue
        counts[word] += 1
    if not counts:
        raise NoComparableContent("no in-vocabulary content words")
    total = sum(counts.values())
    items = sorted(counts.items())
    return NBow(
        words=tuple(w for w, _ in items),
        weights=tuple(c / total for _, c in items),
    )


def _distance_matrix(a: NBow, b: NBow, store: EmbeddingStore) -> np.ndarray:
    X = np.array([store.lookup(w) for w in a.words], dtype=float)
    Y = np.array([store.lookup(w) for w in b.words], dtype=float)
    diff = X[:, None, :] - Y[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def wmd(a: NBow, b: NBow, store: EmbeddingStore) -> float:
    """Minimum cumulative travel cost between the two distributions."""
    cost = _distance_matrix(a, b, store)
    value, _ = solve_transport(a.weights, b.weights, cost)
    return value


def rwmd(a: NBow, b: NBow, store: EmbeddingStore) -> float:
    """Relaxed lower bound on wmd: each side routes all mass to its
    nearest counterpart.  A fast screen only; never a reported score."""
    cost = _distance_matrix(a, b, store)
    lb_a = float(np.dot(a.weights, cost.min(axis=1)))
    lb_b = float(np.dot(b.weights, cost.min(axis=0)))
    return max(lb_a, lb_b)


def wesm(
    summary_tokens: Sequence[str],
    doc: Document,
    stoplist: Stoplist,
    store: EmbeddingStore,
) -> WesmScore:
    """Mean over comparable paragraphs of 1/(1 + distance to summary).

    Paragraphs with no in-vocabulary content are excluded from the mean
    and reported in ``skipped_paragraphs``; if the summary itself (or
    every paragraph) filters to nothing, NoComparableContent is raised.
    """
    summary_bow = nbow(summary_tokens, stoplist, store)
    per_paragraph = []
    skipped = []
    for p in doc.paragraphs:
        tokens = word_tokens(doc.paragraph_text(p.index))
        try:
            para_bow = nbow(tokens, stoplist, store)
        except NoComparableContent:
            skipped.append(p.index)
            continue
        per_paragraph.append((p.index, wmd(summary_bow, para_bow, store)))
    if not per_paragraph:
        raise NoComparableContent("no comparable paragraphs in document")
    value = sum(1.0 / (1.0 + d) for _, d in per_paragraph) / len(per_paragraph)
    return WesmScore(
        value=value,
        per_paragraph=tuple(per_paragraph),
        skipped_paragraphs=tuple(skipped),
    )


def wesm_text(
    summary_text: str, doc: Document, stoplist: Stoplist, store: EmbeddingStore
) -> WesmScore:
    """wesm over a raw summary string."""
    return wesm(word_tokens(summary_text), doc, stoplist, store)
