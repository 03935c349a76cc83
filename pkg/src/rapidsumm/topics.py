"""Topic clustering over a parsed document.

Four schemes with one output shape: every sentence gets a topic id in
[0, K).  The trivial schemes treat the whole document (tcs) or each
paragraph (tcp) as a topic.  The lexical-cohesion scheme (tctt) cuts
the document where adjacent text blocks stop sharing vocabulary and
snaps the cuts to paragraph breaks.  The probabilistic scheme (tclda)
fits topic-word distributions by collapsed Gibbs sampling, with
sentences standing in as mini-documents, then assigns each sentence to
its highest-likelihood topic.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .textprep import Document

__all__ = [
    "TopicScheme",
    "TopicAssignment",
    "TopicWordModel",
    "EmptyDocument",
    "assign_tcs",
    "assign_tcp",
    "texttiling_segment",
    "choose_num_topics",
    "lda_fit",
    "lda_assign",
    "assign_topics",
]

LOG_FLOOR = 1e-12


class EmptyDocument(ValueError):
    """Raised when an operation needs content tokens and finds none."""


class TopicScheme(str, Enum):
    TCS = "tcs"
    TCP = "tcp"
    TCTT = "tctt"
    TCLDA = "tclda"


@dataclass(frozen=True)
class TopicAssignment:
    scheme: TopicScheme
    topic_of: tuple[int, ...]
    topic_count: int

    def __post_init__(self):
        if self.topic_count < 1:
            raise ValueError("topic_count must be at least 1")
        for t in self.topic_of:
            if not 0 <= t < self.topic_count:
                raise ValueError(f"topic id {t} outside [0, {self.topic_count})")


@dataclass(frozen=True)
class TopicWordModel:
    K: int
    word_probs: tuple[dict[str, float], ...]
    alpha: float
    beta: float
    iterations: int
    seed: int


def assign_tcs(doc: Document) -> TopicAssignment:
    """Everything is one topic; selection never blocks on topics."""
    return TopicAssignment(
        scheme=TopicScheme.TCS,
        topic_of=tuple(0 for _ in doc.sentences),
        topic_count=1,
    )


def assign_tcp(doc: Document) -> TopicAssignment:
    """Each paragraph is its own topic."""
    return TopicAssignment(
        scheme=TopicScheme.TCP,
        topic_of=tuple(s.paragraph_index for s in doc.sentences),
        topic_count=max(len(doc.paragraphs), 1),
    )


# --- lexical-cohesion segmentation ---------------------------------------


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(c * b[w] for w, c in a.items() if w in b)
    na = math.sqrt(sum(c * c for c in a.values()))
    nb = math.sqrt(sum(c * c for c in b.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


def texttiling_segment(
    doc: Document,
    *,
    pseudo_sentence_len: int = 20,
    block_size: int = 6,
    smoothing_rounds: int = 1,
) -> TopicAssignment:
    """Cut the document at lexical-cohesion valleys.

    The content-token stream is grouped into pseudo-sentences of
    ``pseudo_sentence_len`` tokens (a short remainder keeps its own
    group).  At each gap, blocks of up to ``block_size`` pseudo-sentences
    on either side are compared by cosine over word counts; the score
    sequence is mean-smoothed, valley depths are measured, and gaps
    deeper than mean - stddev become cuts.  Cuts snap to the nearest
    paragraph break, so topics are always whole-paragraph runs.  Too few
    tokens to fill two blocks, or no paragraph break at all, yields a
    single topic.
    """
    w = pseudo_sentence_len
    b = block_size
    n_sent = len(doc.sentences)
    single = TopicAssignment(
        scheme=TopicScheme.TCTT, topic_of=tuple(0 for _ in range(n_sent)), topic_count=1
    )

    stream = [
        (t.normalized, t.span[0])
        for s in doc.sentences
        for t in s.content_tokens
    ]
    if len(stream) < 2 * b * w or len(doc.paragraphs) < 2:
        return single

    groups: list[list[tuple[str, int]]] = [
        stream[i : i + w] for i in range(0, len(stream), w)
    ]
    counters = [Counter(word for word, _ in g) for g in groups]
    n_ps = len(groups)

    # cohesion score at each gap g (between groups g-1 and g)
    scores = []
    for g in range(1, n_ps):
        left: Counter = Counter()
        for c in counters[max(0, g - b) : g]:
            left.update(c)
        right: Counter = Counter()
        for c in counters[g : min(n_ps, g + b)]:
            right.update(c)
        # rounding keeps equal-distribution blocks exactly equal, so a
        # uniform document yields an exactly flat score curve
        scores.append(round(_cosine(left, right), 10))

    for _ in range(max(smoothing_rounds, 0)):
        smoothed = []
        for i in range(len(scores)):
            window = scores[max(0, i - 1) : i + 2]
            smoothed.append(round(sum(window) / len(window), 10))
        scores = smoothed

    # depth at a gap: climb away from it in both directions while the
    # score keeps rising; depth is the total rise
    depths = []
    for i in range(len(scores)):
        lpeak = scores[i]
        j = i
        while j > 0 and scores[j - 1] >= lpeak:
            lpeak = scores[j - 1]
            j -= 1
        rpeak = scores[i]
        j = i
        while j < len(scores) - 1 and scores[j + 1] >= rpeak:
            rpeak = scores[j + 1]
            j += 1
        depths.append((lpeak - scores[i]) + (rpeak - scores[i]))

    mean = sum(depths) / len(depths)
    var = sum((d - mean) ** 2 for d in depths) / len(depths)
    cutoff = mean - math.sqrt(var)
    cut_positions = [
        groups[i + 1][0][1] for i, d in enumerate(depths) if d > cutoff
    ]
    if not cut_positions:
        return single

    # snap each cut to the nearest paragraph start (ties -> earlier)
    break_chars = [doc.paragraphs[p].span[0] for p in range(1, len(doc.paragraphs))]
    snapped = sorted(
        {min(break_chars, key=lambda bc: (abs(bc - pos), bc)) for pos in cut_positions}
    )

    topic_of = []
    for s in doc.sentences:
        seg = sum(1 for bc in snapped if s.span[0] >= bc)
        topic_of.append(seg)
    return TopicAssignment(
        scheme=TopicScheme.TCTT, topic_of=tuple(topic_of), topic_count=len(snapped) + 1
    )


# --- probabilistic topics -------------------------------------------------


def choose_num_topics(doc: Document) -> int:
    """Topic count grows with document length, clamped to [5, 8]."""
    return min(5 + doc.word_count // 1000, 8)


def lda_fit(
    doc: Document,
    K: int,
    iterations: int = 500,
    seed: int = 42,
    *,
    alpha: float | None = None,
    beta: float = 0.01,
) -> TopicWordModel:
    """Collapsed Gibbs sampling with sentences as mini-documents.

    Word probabilities come from the final sampler state with beta
    smoothing.  Fixed seed means byte-identical results across runs.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    if alpha is None:
        alpha = 50.0 / K

    docs: list[list[int]] = []
    vocab: dict[str, int] = {}
    for s in doc.sentences:
        ids = []
        for t in s.content_tokens:
            word = t.normalized
            if word not in vocab:
                vocab[word] = len(vocab)
            ids.append(vocab[word])
        if ids:
            docs.append(ids)
    if not vocab:
        raise EmptyDocument("no content tokens to model")

    V = len(vocab)
    rng = random.Random(seed)
    n_dk = [[0] * K for _ in docs]
    n_kw = [[0] * V for _ in range(K)]
    n_k = [0] * K
    z: list[list[int]] = []
    for d, ids in enumerate(docs):
        zs = []
        for word in ids:
            k = rng.randrange(K)
            zs.append(k)
            n_dk[d][k] += 1
            n_kw[k][word] += 1
            n_k[k] += 1
        z.append(zs)

    beta_v = beta * V
    probs = [0.0] * K
    for _ in range(iterations):
        for d, ids in enumerate(docs):
            zs = z[d]
            row = n_dk[d]
            for i, word in enumerate(ids):
                k = zs[i]
                row[k] -= 1
                n_kw[k][word] -= 1
                n_k[k] -= 1
                total = 0.0
                for j in range(K):
                    denom = n_k[j] + beta_v
                    if denom > 0.0:
                        total += (row[j] + alpha) * (n_kw[j][word] + beta) / denom
                    probs[j] = total
                if total > 0.0:
                    u = rng.random() * total
                    k = 0
                    while probs[k] <= u:
                        k += 1
                # zero mass (possible only with beta = 0): keep the old topic
                zs[i] = k
                row[k] += 1
                n_kw[k][word] += 1
                n_k[k] += 1

    words = list(vocab)
    word_probs = []
    for k in range(K):
        denom = n_k[k] + beta_v
        if denom <= 0.0:
            word_probs.append({w: 1.0 / V for w in words})
        else:
            word_probs.append(
                {w: (n_kw[k][vocab[w]] + beta) / denom for w in words}
            )
    return TopicWordModel(
        K=K,
        word_probs=tuple(word_probs),
        alpha=alpha,
        beta=beta,
        iterations=iterations,
        seed=seed,
    )


def lda_assign(doc: Document, model: TopicWordModel) -> TopicAssignment:
    """Most-likely topic per sentence, by summed log word probability.

    Words the model never saw get a 1e-12 floor instead of zeroing the
    whole sentence.  Ties go to the lowest topic id; a sentence with no
    content tokens goes to topic 0.
    """
    topic_of = []
    for s in doc.sentences:
        words = [t.normalized for t in s.content_tokens]
        if not words:
            topic_of.append(0)
            continue
        best_j = 0
        best = -math.inf
        for j in range(model.K):
            table = model.word_probs[j]
            ll = sum(math.log(max(table.get(w, 0.0), LOG_FLOOR)) for w in words)
            if ll > best:
                best = ll
                best_j = j
        topic_of.append(best_j)
    return TopicAssignment(
        scheme=TopicScheme.TCLDA, topic_of=tuple(topic_of), topic_count=model.K
    )


def assign_topics(
    doc: Document,
    scheme: TopicScheme | str,
    *,
    seed: int = 42,
    iterations: int = 500,
) -> TopicAssignment:
    """Run one clustering scheme end to end."""
    scheme = TopicScheme(scheme)
    if scheme is TopicScheme.TCS:
        return assign_tcs(doc)
    if scheme is TopicScheme.TCP:
        return assign_tcp(doc)
    if scheme is TopicScheme.TCTT:
        return texttiling_segment(doc)
    model = lda_fit(doc, choose_num_topics(doc), iterations=iterations, seed=seed)
    return lda_assign(doc, model)
