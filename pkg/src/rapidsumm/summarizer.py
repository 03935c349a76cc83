"""Budgeted sentence selection with round-robin topic coverage.

Sentences are visited in descending rank order.  A sentence is taken
unless its topic is already covered in the current round, it does not
fit the remaining budget, or it was taken earlier.  Once every topic is
covered the round ends: the covered-topic set empties and scanning
restarts from the top.  Selection stops when a full scan takes nothing.
The emitted summary lists sentences in original document order.

Variant names follow a fixed grammar: a leading E means softplus-
enhanced ranking (otherwise direct sums); the middle names the
clustering scheme (S = whole document, P = paragraphs, T3/T2 = lexical
cohesion segments, LDA = probabilistic topics); the suffix names the
keyword extractor (TRank = word graph, RAKE = phrase runs).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .keywords import ExtractorKind
from .ranking import RankMode, rank_order, sentence_ranks
from .textprep import Document
from .topics import TopicAssignment, TopicScheme, assign_topics

__all__ = [
    "BudgetUnit",
    "CharBudget",
    "PercentBudget",
    "WordBudget",
    "SummarySpec",
    "RankedSentence",
    "Summary",
    "VariantSpec",
    "VARIANTS",
    "DEFAULT_VARIANTS",
    "select_sentences",
    "summarize",
    "render_summary",
]


class BudgetUnit(str, Enum):
    CHARS = "chars"
    WORDS = "words"


@dataclass(frozen=True)
class CharBudget:
    limit: int

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError("character budget must be >= 0")


@dataclass(frozen=True)
class PercentBudget:
    percent: float

    def __post_init__(self):
        if not 0 < self.percent <= 100:
            raise ValueError("percent must be in (0, 100]")


@dataclass(frozen=True)
class WordBudget:
    limit: int

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError("word budget must be >= 0")


LengthSpec = Union[CharBudget, PercentBudget, WordBudget]


@dataclass(frozen=True)
class VariantSpec:
    name: str
    mode: RankMode
    scheme: TopicScheme
    extractor: ExtractorKind


def _v(name, mode, scheme, extractor):
    return VariantSpec(name, RankMode(mode), TopicScheme(scheme), ExtractorKind(extractor))


VARIANTS: dict[str, VariantSpec] = {
    v.name: v
    for v in [
        _v("ESTRank", "softplus", "tcs", "textrank"),
        _v("EPTRank", "softplus", "tcp", "textrank"),
        _v("ET3Rank", "softplus", "tctt", "textrank"),
        _v("ELDATRank", "softplus", "tclda", "textrank"),
        _v("ESRAKE", "softplus", "tcs", "rake"),
        _v("EPRAKE", "softplus", "tcp", "rake"),
        _v("ET2RAKE", "softplus", "tctt", "rake"),
        _v("ELDARAKE", "softplus", "tclda", "rake"),
        _v("STRank", "direct", "tcs", "textrank"),
        _v("PTRank", "direct", "tcp", "textrank"),
        _v("T3Rank", "direct", "tctt", "textrank"),
        _v("LDATRank", "direct", "tclda", "textrank"),
        _v("SRAKE", "direct", "tcs", "rake"),
        _v("PRAKE", "direct", "tcp", "rake"),
        _v("T2RAKE", "direct", "tctt", "rake"),
        _v("LDARAKE", "direct", "tclda", "rake"),
    ]
}

# the five variants used for cross-method comparisons and benchmarks
DEFAULT_VARIANTS = ("ET3Rank", "ESRAKE", "ET2RAKE", "PRAKE", "T2RAKE")


@dataclass(frozen=True)
class SummarySpec:
    variant: str
    length: LengthSpec

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(
                f"unknown variant {self.variant!r}; expected one of {sorted(VARIANTS)}"
            )


@dataclass(frozen=True)
class RankedSentence:
    index: int
    score: float


@dataclass(frozen=True)
class Summary:
    variant: str
    selected: tuple[int, ...]
    char_used: int
    words_used: int
    budget: int
    budget_unit: BudgetUnit
    rounds: int
    scores: tuple[float, ...]
    topics: tuple[int, ...]


def _word_len(doc: Document, index: int) -> int:
    return len(doc.sentence_text(index).split())


def resolve_budget(doc: Document, length: LengthSpec) -> tuple[BudgetUnit, int]:
    """Reduce a LengthSpec to (unit, absolute amount)."""
    if isinstance(length, CharBudget):
        return BudgetUnit.CHARS, length.limit
    if isinstance(length, PercentBudget):
        return BudgetUnit.CHARS, math.floor(doc.char_count * length.percent / 100.0)
    if isinstance(length, WordBudget):
        return BudgetUnit.WORDS, length.limit
    raise TypeError(f"not a length spec: {length!r}")


def select_sentences(
    ranked: Sequence[RankedSentence],
    topics: TopicAssignment,
    budget: int,
    doc: Document,
    *,
    unit: BudgetUnit | str = BudgetUnit.CHARS,
    variant: str = "",
    trace: list[tuple[int, int]] | None = None,
) -> Summary:
    """Run the covered-topic selection loop over a ranked list.

    ``trace``, when given, collects (round, sentence_index) in selection
    order.  ``rounds`` on the result counts how many times the covered
    set was emptied, whether because it filled up or because every
    sentence still fitting the budget sat in an already covered topic.
    """
    unit = BudgetUnit(unit)
    if unit is BudgetUnit.CHARS:
        cost = [s.char_length for s in doc.sentences]
    else:
        cost = [_word_len(doc, s.index) for s in doc.sentences]

    remaining = budget
    selected: set[int] = set()
    covered: set[int] = set()
    rounds = 0
    while True:
        progress = False
        # a fitting sentence passed over only because its topic was taken
        blocked = False
        i = 0
        while i < len(ranked):
            idx = ranked[i].index
            if idx in selected or cost[idx] > remaining:
                i += 1
                continue
            if topics.topic_of[idx] in covered:
                blocked = True
                i += 1
                continue
            selected.add(idx)
            remaining -= cost[idx]
            covered.add(topics.topic_of[idx])
            progress = True
            if trace is not None:
                trace.append((rounds, idx))
            if len(covered) == topics.topic_count:
                covered.clear()
                rounds += 1
                i = 0
                continue
            i += 1
        if progress:
            continue
        # a clustering can strand topics (ids nothing maps to, or topics
        # whose sentences are all taken); the covered set would then pin
        # every leftover sentence forever, so it resets here too
        if blocked and covered:
            covered.clear()
            rounds += 1
            continue
        break

    order = tuple(sorted(selected))
    score_of = {rs.index: rs.score for rs in ranked}
    return Summary(
        variant=variant,
        selected=order,
        char_used=sum(doc.sentences[i].char_length for i in order),
        words_used=sum(_word_len(doc, i) for i in order),
        budget=budget,
        budget_unit=unit,
        rounds=rounds,
        scores=tuple(score_of.get(i, 0.0) for i in order),
        topics=tuple(topics.topic_of[i] for i in order),
    )


def summarize(
    doc: Document,
    spec: SummarySpec,
    *,
    seed: int = 42,
    lda_iterations: int = 500,
    trace: list[tuple[int, int]] | None = None,
) -> Summary:
    """Rank, cluster, and select under one named variant."""
    vspec = VARIANTS[spec.variant]
    ranks = sentence_ranks(doc, vspec.extractor, vspec.mode)
    ranked = [RankedSentence(i, ranks[i]) for i in rank_order(ranks)]
    topics = assign_topics(doc, vspec.scheme, seed=seed, iterations=lda_iterations)
    unit, budget = resolve_budget(doc, spec.length)
    return select_sentences(
        ranked, topics, budget, doc, unit=unit, variant=spec.variant, trace=trace
    )


def render_summary(doc: Document, summary: Summary) -> str:
    """Summary text: selected sentences in document order, one per line."""
    return "\n".join(doc.sentence_text(i) for i in summary.selected)
