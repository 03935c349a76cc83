"""N-gram and skip-bigram recall between a candidate summary and one or
more reference summaries.

All measures are recall oriented: matched units are clipped to the
reference's own counts and divided by the reference's unit total, then
averaged over references (references contributing zero units are left
out).  Tokenization lowercases and drops punctuation-only tokens; no
stemming, no stopword removal, so results are reproducible from raw
text alone.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .textprep import word_tokens

__all__ = [
    "NoReferenceContent",
    "RougeScores",
    "ngram_counts",
    "su4_units",
    "rouge_n",
    "rouge_su4",
    "score_texts",
]


class NoReferenceContent(ValueError):
    """Every reference produced zero scoring units."""


@dataclass(frozen=True)
class RougeScores:
    r1: float
    r2: float
    rsu4: float

    @property
    def r_avg(self) -> float:
        return (self.r1 + self.r2 + self.rsu4) / 3.0


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def su4_units(
    tokens: Sequence[str],
    *,
    include_unigrams: bool = True,
    include_skip_bigrams: bool = True,
    max_skip: int = 4,
) -> Counter:
    """Combined multiset of unigrams and ordered skip-bigrams.

    A skip-bigram pairs tokens i < j with at most ``max_skip`` tokens
    between them (j - i <= max_skip + 1).  Unigrams are kept as
    1-tuples so the two unit kinds never collide in the multiset.
    """
    units: Counter = Counter()
    if include_unigrams:
        for t in tokens:
            units[(t,)] += 1
    if include_skip_bigrams:
        for i in range(len(tokens)):
            for j in range(i + 1, min(i + max_skip + 2, len(tokens))):
                units[(tokens[i], tokens[j])] += 1
    return units


def _clipped_recall(cand_units: Counter, ref_units: Counter) -> float:
    total = sum(ref_units.values())
    matched = sum(min(c, ref_units[u]) for u, c in cand_units.items() if u in ref_units)
    return matched / total


def _mean_over_references(cand_units: Counter, refs_units: list[Counter]) -> float:
    recalls = [
        _clipped_recall(cand_units, ru) for ru in refs_units if sum(ru.values()) > 0
    ]
    if not recalls:
        raise NoReferenceContent("all references yield zero scoring units")
    return sum(recalls) / len(recalls)


def rouge_n(
    candidate: Sequence[str], references: Sequence[Sequence[str]], n: int
) -> float:
    """Clipped n-gram recall, averaged over usable references."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not references:
        raise ValueError("at least one reference is required")
    cand = ngram_counts(candidate, n)
    return _mean_over_references(cand, [ngram_counts(r, n) for r in references])


def rouge_su4(
    candidate: Sequence[str], references: Sequence[Sequence[str]]
) -> float:
    """Recall over unigrams plus skip-bigrams with gap at most four."""
    if not references:
        raise ValueError("at least one reference is required")
    cand = su4_units(candidate)
    return _mean_over_references(cand, [su4_units(r) for r in references])


def score_texts(
    candidate_text: str,
    reference_texts: Sequence[str],
    *,
    truncate: int | None = None,
) -> RougeScores:
    """Tokenize and score raw strings; ``truncate`` keeps only the first
    N candidate tokens (the usual fixed-budget evaluation convention)."""
    cand = word_tokens(candidate_text)
    if truncate is not None:
        cand = cand[:truncate]
    refs = [word_tokens(r) for r in reference_texts]
    return RougeScores(
        r1=rouge_n(cand, refs, 1),
        r2=rouge_n(cand, refs, 2),
        rsu4=rouge_su4(cand, refs),
    )
