"""Sentence ranking: direct keyword-score sums and a softplus variant.

The softplus transform ln(1 + e^x) is applied to each keyword score
before summing.  It is strictly positive and adds more to small scores
than to large ones, so sentences holding several weak keywords can
overtake a sentence with one strong keyword, while the ordering of
single large scores is preserved (the transform approaches identity for
big x).
"""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .keywords import ExtractorKind, sentence_contributions
from .textprep import Document

__all__ = ["RankMode", "softplus", "combine_scores", "sentence_ranks", "rank_order"]


class RankMode(str, Enum):
    DIRECT = "direct"
    SOFTPLUS = "softplus"


def softplus(x):
    """ln(1 + e^x), computed as max(x, 0) + log1p(e^-|x|) to avoid
    overflow for large positive x.  Accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    out = np.maximum(arr, 0.0) + np.log1p(np.exp(-np.abs(arr)))
    if arr.ndim == 0:
        return float(out)
    return out


def combine_scores(values: Iterable[float], mode: RankMode | str) -> float:
    """Fold keyword scores into one sentence rank value."""
    mode = RankMode(mode)
    vals = list(values)
    if not vals:
        return 0.0
    if mode is RankMode.DIRECT:
        return float(sum(vals))
    return float(np.sum(softplus(np.asarray(vals, dtype=float))))


def sentence_ranks(
    doc: Document, extractor: ExtractorKind | str, mode: RankMode | str
) -> list[float]:
    """Rank value for every sentence, in document order."""
    mode = RankMode(mode)
    return [combine_scores(c, mode) for c in sentence_contributions(doc, extractor)]


def rank_order(ranks: Sequence[float]) -> list[int]:
    """Sentence indices from highest rank to lowest; ties keep document
    order (earlier sentence wins)."""
    return sorted(range(len(ranks)), key=lambda i: (-ranks[i], i))
