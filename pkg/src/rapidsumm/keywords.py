"""Keyword extraction: graph-based word ranking and phrase scoring.

Two extractors share one contract: given a parsed document they produce
a score table, and for each sentence a list of the keyword scores that
occur in it.  The graph extractor scores single words by iterating a
damped weighted centrality update over a co-occurrence graph; the
phrase extractor scores maximal stopword-free token runs by word
frequency and adjacency degree.
"""
from __future__ import annotations

from collections import Counter
from enum import Enum

import numpy as np

from .textprep import Document

__all__ = [
    "ExtractorKind",
    "textrank_word_scores",
    "rake_word_scores",
    "rake_phrase_scores",
    "candidate_phrases",
    "sentence_contributions",
    "top_keywords",
]


class ExtractorKind(str, Enum):
    TEXTRANK = "textrank"
    RAKE = "rake"


def textrank_word_scores(
    doc: Document,
    *,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 100,
    window: int = 2,
) -> dict[str, float]:
    """Score each distinct content word by damped graph centrality.

    Vertices are distinct normalized content words.  Two words are
    connected when they appear within ``window`` positions of each other
    in a sentence's content-token sequence; the edge weight is the
    co-occurrence count.  Scores start at 1.0 and iterate

        s(v) = (1 - d) + d * sum over neighbours u of w(u,v)/W(u) * s(u)

    where W(u) is the total edge weight at u.  Iteration stops when the
    largest per-vertex change drops below ``tol``.  Words with no
    neighbours get (1 - d).
    """
    vocab: dict[str, int] = {}
    sequences: list[list[int]] = []
    for s in doc.sentences:
        ids = []
        for t in s.content_tokens:
            w = t.normalized
            if w not in vocab:
                vocab[w] = len(vocab)
            ids.append(vocab[w])
        sequences.append(ids)

    n = len(vocab)
    if n == 0:
        return {}

    pair_counts: Counter[tuple[int, int]] = Counter()
    for ids in sequences:
        for i in range(len(ids)):
            for j in range(i + 1, min(i + window, len(ids))):
                a, b = ids[i], ids[j]
                if a == b:
                    continue
                if a > b:
                    a, b = b, a
                pair_counts[(a, b)] += 1

    scores = np.ones(n)
    if pair_counts:
        lo = np.fromiter((p[0] for p in pair_counts), dtype=np.intp, count=len(pair_counts))
        hi = np.fromiter((p[1] for p in pair_counts), dtype=np.intp, count=len(pair_counts))
        w = np.fromiter(pair_counts.values(), dtype=float, count=len(pair_counts))
        heads = np.concatenate([lo, hi])
        tails = np.concatenate([hi, lo])
        weights = np.concatenate([w, w])
        total_at = np.bincount(heads, weights=weights, minlength=n)
        coef = weights / total_at[heads]
        for _ in range(max_iter):
            inflow = np.bincount(tails, weights=coef * scores[heads], minlength=n)
            updated = (1.0 - damping) + damping * inflow
            done = np.max(np.abs(updated - scores)) < tol
            scores = updated
            if done:
                break
    else:
        scores = np.full(n, 1.0 - damping)

    # isolated vertices in a graph that has some edges
    if pair_counts:
        connected = np.zeros(n, dtype=bool)
        connected[heads] = True
        scores = np.where(connected, scores, 1.0 - damping)

    return {word: float(scores[idx]) for word, idx in vocab.items()}


def candidate_phrases(doc: Document) -> list[tuple[int, tuple[str, ...]]]:
    """Maximal content-token runs, as (sentence_index, words) pairs.

    A run breaks at every stopword or punctuation token; the break
    structure reuses the content decision made at parse time.
    """
    runs: list[tuple[int, tuple[str, ...]]] = []
    for s in doc.sentences:
        content_spans = {t.span for t in s.content_tokens}
        run: list[str] = []
        for t in s.tokens:
            if t.span in content_spans:
                run.append(t.normalized)
            elif run:
                runs.append((s.index, tuple(run)))
                run = []
        if run:
            runs.append((s.index, tuple(run)))
    return runs


def rake_word_scores(doc: Document) -> dict[str, float]:
    """Per-word score deg(w)/freq(w) over candidate runs.

    freq(w) counts occurrences of w inside candidates.  deg(w) is
    freq(w) plus one for every candidate-internal neighbour on either
    side, so a word in the middle of a three-word run picks up two.
    """
    freq: Counter[str] = Counter()
    adj: Counter[str] = Counter()
    for _, words in candidate_phrases(doc):
        freq.update(words)
        for a, b in zip(words, words[1:]):
            adj[a] += 1
            adj[b] += 1
    return {w: (freq[w] + adj[w]) / freq[w] for w in freq}


def rake_phrase_scores(doc: Document) -> dict[str, float]:
    """Phrase score = sum of member word scores; repeats collapse."""
    word_scores = rake_word_scores(doc)
    out: dict[str, float] = {}
    for _, words in candidate_phrases(doc):
        phrase = " ".join(words)
        if phrase not in out:
            out[phrase] = sum(word_scores[w] for w in words)
    return out


def sentence_contributions(
    doc: Document, extractor: ExtractorKind | str
) -> list[list[float]]:
    """Per sentence, the keyword scores occurring in it (with repeats).

    For the graph extractor every content-token occurrence contributes
    its word score; for the phrase extractor every candidate run
    contributes its phrase score.
    """
    kind = ExtractorKind(extractor)
    per_sentence: list[list[float]] = [[] for _ in doc.sentences]
    if kind is ExtractorKind.TEXTRANK:
        table = textrank_word_scores(doc)
        for s in doc.sentences:
            per_sentence[s.index] = [table[t.normalized] for t in s.content_tokens]
    else:
        word_scores = rake_word_scores(doc)
        for sent_idx, words in candidate_phrases(doc):
            per_sentence[sent_idx].append(sum(word_scores[w] for w in words))
    return per_sentence


def top_keywords(
    doc: Document, extractor: ExtractorKind | str, n: int = 10
) -> list[tuple[str, float]]:
    """Highest-scoring keywords, ties broken alphabetically."""
    kind = ExtractorKind(extractor)
    if kind is ExtractorKind.TEXTRANK:
        table = textrank_word_scores(doc)
    else:
        table = rake_phrase_scores(doc)
    ranked = sorted(table.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[: max(n, 0)]
