"""Wall-clock benchmark of the summarization pipeline.

Synthetic documents are built by concatenating randomly chosen corpus
articles until the word count is as close as possible to a target
size, then each variant summarizes every document single-threaded at a
30 percent budget while a monotonic clock runs.  Embedding tables play
no part here; they belong to evaluation, not summarization.
"""
from __future__ import annotations

import math
import platform
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .summarizer import (
    DEFAULT_VARIANTS,
    PercentBudget,
    SummarySpec,
    VARIANTS,
    summarize,
)
from .textprep import load_document, read_text_file
from .topics import TopicScheme

__all__ = [
    "EmptyCorpus",
    "VariantTiming",
    "SizeBucket",
    "BenchReport",
    "load_corpus",
    "synthesize_document",
    "synthetic_documents",
    "runtime_threshold",
    "run_benchmark",
    "format_report",
    "plot_series",
    "write_plot_data",
]

DEFAULT_SIZES = tuple(range(500, 10001, 500))


class EmptyCorpus(ValueError):
    """The corpus directory holds no usable plain-text articles."""


@dataclass(frozen=True)
class VariantTiming:
    variant: str
    mean: float
    median: float
    p95: float
    limit: float | None
    within_limit: bool | None


@dataclass(frozen=True)
class SizeBucket:
    target_words: int
    actual_words: int
    timings: tuple[VariantTiming, ...]


@dataclass(frozen=True)
class BenchReport:
    buckets: tuple[SizeBucket, ...]
    machine_note: str

    def failures(self) -> list[tuple[int, str]]:
        """(bucket size, variant) pairs that missed their time limit."""
        out = []
        for b in self.buckets:
            for t in b.timings:
                if t.within_limit is False:
                    out.append((b.target_words, t.variant))
        return out


def load_corpus(corpus_dir: str | Path) -> list[str]:
    """Read every .txt article under the directory, sorted by name so
    the random synthesis below is reproducible."""
    root = Path(corpus_dir)
    texts = []
    if root.is_dir():
        for p in sorted(root.glob("*.txt")):
            text = read_text_file(p)
            if text.strip():
                texts.append(text)
    if not texts:
        raise EmptyCorpus(f"no non-empty .txt articles in {root}")
    return texts


def synthesize_document(
    articles: Sequence[str], target_words: int, rng: random.Random
) -> str:
    """Concatenate random articles while each addition moves the word
    count closer to the target; always keeps at least one article."""
    if not articles:
        raise EmptyCorpus("no articles to synthesize from")
    if target_words < 1:
        raise ValueError("target_words must be positive")
    parts: list[str] = []
    words = 0
    while True:
        pick = articles[rng.randrange(len(articles))]
        n = len(pick.split())
        if parts and abs(words + n - target_words) >= abs(words - target_words):
            break
        parts.append(pick)
        words += n
    return "\n\n".join(parts)


def synthetic_documents(
    articles: Sequence[str],
    sizes: Sequence[int],
    samples: int,
    seed: int,
) -> dict[int, list[str]]:
    rng = random.Random(seed)
    return {
        size: [synthesize_document(articles, size, rng) for _ in range(samples)]
        for size in sizes
    }


def runtime_threshold(words: int) -> float | None:
    """Realtime budget in seconds for a document of the given length."""
    if words <= 3000:
        return 0.5
    if words <= 5500:
        return 1.0
    if words <= 10000:
        return 3.0
    return None


def _nearest_rank_p95(values: Sequence[float]) -> float:
    ordered = sorted(values)
    rank = math.ceil(0.95 * len(ordered))
    return ordered[max(rank - 1, 0)]


def _machine_note() -> str:
    return (
        f"{platform.platform()}; python {platform.python_version()}; "
        f"{platform.processor() or platform.machine()}"
    )


def run_benchmark(
    articles: Sequence[str],
    *,
    variants: Sequence[str] = DEFAULT_VARIANTS,
    sizes: Sequence[int] = DEFAULT_SIZES,
    samples: int = 3,
    percent: float = 30.0,
    seed: int = 42,
    lda_iterations: int = 500,
) -> BenchReport:
    """Time parse + summarize end-to-end, one clock per document and
    variant.  LDA-clustered variants are timed but exempt from the
    realtime limits."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if list(sizes) != sorted(set(sizes)):
        raise ValueError("sizes must be strictly ascending")
    docs = synthetic_documents(articles, sizes, samples, seed)
    buckets = []
    for size in sizes:
        texts = docs[size]
        actual = round(statistics.fmean(len(t.split()) for t in texts))
        timings = []
        for name in variants:
            spec = SummarySpec(variant=name, length=PercentBudget(percent))
            times = []
            for text in texts:
                start = time.perf_counter()
                doc = load_document(text)
                summarize(doc, spec, seed=seed, lda_iterations=lda_iterations)
                times.append(time.perf_counter() - start)
            mean = statistics.fmean(times)
            is_lda = VARIANTS[name].scheme is TopicScheme.TCLDA
            limit = None if is_lda else runtime_threshold(size)
            timings.append(
                VariantTiming(
                    variant=name,
                    mean=mean,
                    median=statistics.median(times),
                    p95=_nearest_rank_p95(times),
                    limit=limit,
                    within_limit=None if limit is None else mean < limit,
                )
            )
        buckets.append(
            SizeBucket(target_words=size, actual_words=actual, timings=tuple(timings))
        )
    return BenchReport(buckets=tuple(buckets), machine_note=_machine_note())


def format_report(report: BenchReport) -> str:
    """Tab-separated table, one row per size bucket and variant."""
    lines = ["words\tactual\tvariant\tmean_s\tmedian_s\tp95_s\tlimit_s\tstatus"]
    for b in report.buckets:
        for t in b.timings:
            limit = "-" if t.limit is None else f"{t.limit:.2f}"
            status = (
                "exempt"
                if t.within_limit is None
                else ("ok" if t.within_limit else "OVER")
            )
            lines.append(
                f"{b.target_words}\t{b.actual_words}\t{t.variant}"
                f"\t{t.mean:.4f}\t{t.median:.4f}\t{t.p95:.4f}\t{limit}\t{status}"
            )
    lines.append(f"# machine: {report.machine_note}")
    return "\n".join(lines)


def plot_series(report: BenchReport) -> dict[str, list[tuple[float, float]]]:
    """Per-variant curve points: x in hundreds of words, y in seconds."""
    series: dict[str, list[tuple[float, float]]] = {}
    for b in report.buckets:
        for t in b.timings:
            series.setdefault(t.variant, []).append((b.actual_words / 100.0, t.mean))
    return series


def write_plot_data(report: BenchReport, out_dir: str | Path) -> list[Path]:
    """One two-column whitespace-separated data file per variant."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for variant, points in plot_series(report).items():
        path = root / f"runtime_{variant}.dat"
        body = "\n".join(f"{x:.2f} {y:.6f}" for x, y in points)
        path.write_text(body + "\n", encoding="utf-8")
        written.append(path)
    return written
