"""Command-line surface for the toolkit.

Subcommands: summarize, keywords, topics, rouge, wesm, bench, compare.
Exit codes: 0 success, 1 runtime failure, 2 usage error.  Structured
output is one JSON record per line, one record per document, so corpus
runs stream without buffering.  Every record carries the stable keys
variant, budget, char_used, sentences and scores.
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .benchmark import format_report, load_corpus, run_benchmark, write_plot_data
from .keywords import top_keywords
from .ordering import Direction, normalized_l1, scores_to_ordering
from .rouge import NoReferenceContent, score_texts
from .similarity import NoComparableContent, wesm_text
from .summarizer import (
    DEFAULT_VARIANTS,
    VARIANTS,
    CharBudget,
    PercentBudget,
    Summary,
    SummarySpec,
    WordBudget,
    render_summary,
    summarize,
)
from .textprep import (
    Document,
    Stoplist,
    default_stoplist,
    load_document,
    load_stoplist,
    read_text_file,
    word_tokens,
)
from .topics import TopicScheme, assign_topics
from .transport import TransportError

__all__ = ["ENV_EMBEDDINGS", "UsageError", "build_parser", "main", "entrypoint"]

ENV_EMBEDDINGS = "RAPIDSUMM_EMBEDDINGS"


class UsageError(Exception):
    """Bad invocation detected after argparse has run."""


# --- shared helpers ---


def _expand_inputs(raw: Sequence[str]) -> list[Path]:
    """Files stay files; a directory expands to its sorted .txt members."""
    out: list[Path] = []
    for item in raw:
        p = Path(item)
        if p.is_dir():
            out.extend(sorted(p.glob("*.txt")))
        elif p.exists():
            out.append(p)
        else:
            raise FileNotFoundError(f"input not found: {p}")
    if not out:
        raise FileNotFoundError("no input files found")
    return out


def _stem_key(path: Path) -> str:
    """Pairing key: file name up to the first dot, so doc.txt matches
    doc.1.txt and doc.2.txt."""
    return path.name.split(".")[0]


def _length_from_args(args: argparse.Namespace):
    if getattr(args, "chars", None) is not None:
        return CharBudget(args.chars)
    if getattr(args, "words", None) is not None:
        return WordBudget(args.words)
    percent = getattr(args, "percent", None)
    return PercentBudget(30.0 if percent is None else percent)


def _load_stoplist_arg(args: argparse.Namespace) -> Stoplist | None:
    path = getattr(args, "stoplist", None)
    return load_stoplist(path) if path else None


def _emit(lines: list[str], output: Path | None) -> None:
    body = "\n".join(lines) + ("\n" if lines else "")
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _jsonl(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False)


def _summary_record(source: str, doc: Document, summary: Summary) -> dict:
    return {
        "document": source,
        "variant": summary.variant,
        "budget": summary.budget,
        "budget_unit": summary.budget_unit.value,
        "char_used": summary.char_used,
        "rounds": summary.rounds,
        "sentences": [
            {
                "index": idx,
                "text": doc.sentence_text(idx),
                "score": summary.scores[pos],
                "topic": summary.topics[pos],
            }
            for pos, idx in enumerate(summary.selected)
        ],
        "scores": {},
    }


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


# --- summarize ---


def _summarize_job(job):
    source, text, variants, length, seed, iterations, stoplist = job
    doc = load_document(text, stoplist)
    out = []
    for name in variants:
        summary = summarize(
            doc,
            SummarySpec(variant=name, length=length),
            seed=seed,
            lda_iterations=iterations,
        )
        out.append((_summary_record(source, doc, summary), render_summary(doc, summary)))
    return out


def _cmd_summarize(args: argparse.Namespace) -> int:
    variants = tuple(args.variant) if args.variant else ("ET3Rank",)
    length = _length_from_args(args)
    stoplist = _load_stoplist_arg(args)
    inputs = _expand_inputs(args.inputs)
    jobs = [
        (str(p), read_text_file(p), variants, length, args.seed, args.lda_iterations, stoplist)
        for p in inputs
    ]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_summarize_job, jobs))
    else:
        results = [_summarize_job(j) for j in jobs]

    lines: list[str] = []
    single = len(inputs) == 1 and len(variants) == 1
    for per_doc in results:
        for record, text in per_doc:
            if args.format == "structured":
                lines.append(_jsonl(record))
            elif single:
                lines.append(text)
            else:
                lines.append(f"== {record['document']} :: {record['variant']} ==")
                lines.append(text)
                lines.append("")
    _emit(lines, args.output)
    return 0


# --- keywords ---


def _cmd_keywords(args: argparse.Namespace) -> int:
    stoplist = _load_stoplist_arg(args)
    inputs = _expand_inputs(args.inputs)
    lines: list[str] = []
    for p in inputs:
        doc = load_document(read_text_file(p), stoplist)
        ranked = top_keywords(doc, args.extractor, args.top)
        if args.format == "structured":
            lines.append(
                _jsonl(
                    {
                        "document": str(p),
                        "variant": args.extractor,
                        "budget": None,
                        "char_used": doc.char_count,
                        "sentences": [],
                        "scores": {term: score for term, score in ranked},
                    }
                )
            )
        else:
            if len(inputs) > 1:
                lines.append(f"== {p} ==")
            for term, score in ranked:
                lines.append(f"{score:.4f}\t{term}")
            if len(inputs) > 1:
                lines.append("")
    _emit(lines, None)
    return 0


# --- topics ---


def _cmd_topics(args: argparse.Namespace) -> int:
    stoplist = _load_stoplist_arg(args)
    inputs = _expand_inputs(args.inputs)
    lines: list[str] = []
    for p in inputs:
        doc = load_document(read_text_file(p), stoplist)
        assignment = assign_topics(
            doc, TopicScheme(args.scheme), seed=args.seed, iterations=args.iterations
        )
        if args.format == "structured":
            lines.append(
                _jsonl(
                    {
                        "document": str(p),
                        "variant": args.scheme,
                        "budget": None,
                        "char_used": doc.char_count,
                        "sentences": [
                            {"index": i, "topic": t, "text": doc.sentence_text(i)}
                            for i, t in enumerate(assignment.topic_of)
                        ],
                        "scores": {"topic_count": assignment.topic_count},
                    }
                )
            )
        else:
            lines.append(f"== {p} ({assignment.topic_count} topics) ==")
            for i, t in enumerate(assignment.topic_of):
                snippet = doc.sentence_text(i)
                if len(snippet) > 60:
                    snippet = snippet[:57] + "..."
                lines.append(f"{i}\t{t}\t{snippet}")
            lines.append("")
    _emit(lines, None)
    return 0


# --- rouge ---


def _collect_references(ref_args: Sequence[str]) -> tuple[list[Path], bool]:
    """Return (reference files, stem_mode).  Directories switch on
    stem pairing; plain files apply to every candidate."""
    dirs = []
    files = []
    for item in ref_args:
        p = Path(item)
        if p.is_dir():
            dirs.append(p)
        elif p.exists():
            files.append(p)
        else:
            raise FileNotFoundError(f"reference not found: {p}")
    pool = [f for d in dirs for f in sorted(d.glob("*.txt"))] + files
    return pool, bool(dirs)


def _cmd_rouge(args: argparse.Namespace) -> int:
    candidates = _expand_inputs(args.candidates)
    pool, stem_mode = _collect_references(args.references)
    lines: list[str] = []
    if args.format == "text":
        lines.append("candidate\tr1\tr2\trsu4\tr_avg")
    scored: list[tuple[float, float, float, float]] = []
    for cand in candidates:
        refs = [f for f in pool if _stem_key(f) == _stem_key(cand)] if stem_mode else pool
        if not refs:
            _warn(f"no reference for {cand}; skipped")
            continue
        cand_text = read_text_file(cand)
        try:
            result = score_texts(
                cand_text,
                [read_text_file(r) for r in refs],
                truncate=args.truncate,
            )
        except NoReferenceContent:
            _warn(f"references for {cand} have no scoring units; skipped")
            continue
        scored.append((result.r1, result.r2, result.rsu4, result.r_avg))
        if args.format == "structured":
            lines.append(
                _jsonl(
                    {
                        "document": str(cand),
                        "variant": "-",
                        "budget": args.truncate,
                        "char_used": len(cand_text),
                        "sentences": [],
                        "scores": {
                            "r1": result.r1,
                            "r2": result.r2,
                            "rsu4": result.rsu4,
                            "r_avg": result.r_avg,
                        },
                    }
                )
            )
        else:
            lines.append(
                f"{cand}\t{result.r1:.4f}\t{result.r2:.4f}"
                f"\t{result.rsu4:.4f}\t{result.r_avg:.4f}"
            )
    if not scored:
        print("error: no candidate could be scored", file=sys.stderr)
        return 1
    means = [statistics.fmean(col) for col in zip(*scored)]
    if args.format == "structured":
        lines.append(
            _jsonl(
                {
                    "document": "MEAN",
                    "variant": "-",
                    "budget": args.truncate,
                    "char_used": 0,
                    "sentences": [],
                    "scores": {
                        "r1": means[0],
                        "r2": means[1],
                        "rsu4": means[2],
                        "r_avg": means[3],
                    },
                }
            )
        )
    else:
        lines.append(
            f"MEAN\t{means[0]:.4f}\t{means[1]:.4f}\t{means[2]:.4f}\t{means[3]:.4f}"
        )
    _emit(lines, None)
    return 0


# --- wesm ---


def _resolve_embeddings(args: argparse.Namespace) -> Path:
    raw = args.embeddings or os.environ.get(ENV_EMBEDDINGS)
    if not raw:
        raise UsageError(
            f"an embeddings path is required (--embeddings or ${ENV_EMBEDDINGS})"
        )
    return Path(raw)


def _cmd_wesm(args: argparse.Namespace) -> int:
    from .embeddings import load_embeddings

    if args.summaries and args.variant:
        raise UsageError("--summaries and --variant are mutually exclusive")
    emb_path = _resolve_embeddings(args)
    originals = _expand_inputs(args.originals)
    stoplist = _load_stoplist_arg(args) or default_stoplist()

    texts = {p: read_text_file(p) for p in originals}
    vocab = set()
    for t in texts.values():
        vocab.update(word_tokens(t))

    pairs: list[tuple[Path, Path]] = []
    if args.summaries:
        summary_files = _expand_inputs([args.summaries])
        by_key: dict[str, Path] = {}
        for f in summary_files:
            by_key.setdefault(_stem_key(f), f)
        for p in originals:
            match = by_key.get(_stem_key(p))
            if match is None:
                _warn(f"no summary for {p}; skipped")
            else:
                pairs.append((p, match))
        if not pairs:
            print("error: no original/summary pair found", file=sys.stderr)
            return 1
        for _, f in pairs:
            vocab.update(word_tokens(read_text_file(f)))

    store = load_embeddings(
        emb_path, fmt=args.embeddings_format, restrict_to=vocab
    )

    lines: list[str] = []
    if args.format == "text":
        lines.append("document\tvariant\twesm")
    per_variant: dict[str, list[float]] = {}

    def record(doc_name: str, variant: str, value: float | None, base: dict | None = None):
        rec = base or {
            "document": doc_name,
            "variant": variant,
            "budget": None,
            "budget_unit": None,
            "char_used": 0,
            "sentences": [],
            "scores": {},
        }
        if value is None:
            rec["scores"] = dict(rec["scores"], error="no comparable content")
        else:
            rec["scores"] = dict(rec["scores"], wesm=value)
            per_variant.setdefault(variant, []).append(value)
        if args.format == "structured":
            lines.append(_jsonl(rec))
        else:
            shown = "NA" if value is None else f"{value:.6f}"
            lines.append(f"{doc_name}\t{variant}\t{shown}")

    if args.summaries:
        for orig, summ in pairs:
            doc = load_document(texts[orig], stoplist)
            summary_text = read_text_file(summ)
            try:
                score = wesm_text(summary_text, doc, stoplist, store)
            except NoComparableContent as exc:
                _warn(f"{summ}: {exc}")
                record(str(orig), "-", None)
                continue
            record(str(orig), "-", score.value)
    else:
        variants = tuple(args.variant) if args.variant else DEFAULT_VARIANTS
        length = _length_from_args(args)
        for orig in originals:
            doc = load_document(texts[orig], stoplist)
            for name in variants:
                summary = summarize(
                    doc,
                    SummarySpec(variant=name, length=length),
                    seed=args.seed,
                    lda_iterations=args.lda_iterations,
                )
                base = _summary_record(str(orig), doc, summary)
                try:
                    score = wesm_text(render_summary(doc, summary), doc, stoplist, store)
                except NoComparableContent as exc:
                    _warn(f"{orig} [{name}]: {exc}")
                    record(str(orig), name, None, base)
                    continue
                record(str(orig), name, score.value, base)

    for variant in sorted(per_variant):
        values = per_variant[variant]
        mean = statistics.fmean(values)
        if args.format == "structured":
            lines.append(
                _jsonl(
                    {
                        "document": "MEAN",
                        "variant": variant,
                        "budget": None,
                        "budget_unit": None,
                        "char_used": 0,
                        "sentences": [],
                        "scores": {"wesm": mean, "documents": len(values)},
                    }
                )
            )
        else:
            lines.append(f"MEAN\t{variant}\t{mean:.6f}")
    _emit(lines, None)
    return 0


# --- bench ---


def _cmd_bench(args: argparse.Namespace) -> int:
    articles = load_corpus(args.corpus)
    sizes = tuple(range(args.min_words, args.max_words + 1, args.step))
    if not sizes:
        raise UsageError("empty size range")
    variants = tuple(args.variant) if args.variant else DEFAULT_VARIANTS
    report = run_benchmark(
        articles,
        variants=variants,
        sizes=sizes,
        samples=args.samples,
        percent=args.percent,
        seed=args.seed,
        lda_iterations=args.lda_iterations,
    )
    table = format_report(report)
    print(table)
    if not args.no_artifacts:
        from .figures import render_runtime_figure

        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.tsv").write_text(table + "\n", encoding="utf-8")
        write_plot_data(report, out_dir)
        render_runtime_figure(report, out_dir / "runtime.png")
        print(f"# artifacts: {out_dir}", file=sys.stderr)
    return 0


# --- compare ---


def _read_score_column(path: Path) -> tuple[list[str] | None, list[float]]:
    labels: list[str] = []
    values: list[float] = []
    bare = 0
    for raw in read_text_file(path).splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values.append(float(fields[-1]))
        except ValueError as exc:
            raise UsageError(f"{path}: bad score line {line!r}") from exc
        if len(fields) >= 2:
            labels.append(" ".join(fields[:-1]))
        else:
            bare += 1
    if not values:
        raise UsageError(f"{path}: no scores")
    if bare and labels:
        raise UsageError(f"{path}: mix of labeled and bare score lines")
    return (labels or None), values


def _cmd_compare(args: argparse.Namespace) -> int:
    if not 2 <= len(args.columns) <= 3:
        raise UsageError("compare takes two or three score columns")
    paths = [Path(c) for c in args.columns]
    parsed = [_read_score_column(p) for p in paths]
    base_labels, base_values = parsed[0]
    k = len(base_values)
    labels = base_labels or [f"s{i + 1}" for i in range(k)]
    columns: list[list[float]] = [base_values]
    for path, (col_labels, col_values) in zip(paths[1:], parsed[1:]):
        if len(col_values) != k:
            raise UsageError(f"{path}: expected {k} scores, got {len(col_values)}")
        if col_labels is not None and base_labels is not None:
            if sorted(col_labels) != sorted(base_labels):
                raise UsageError(f"{path}: labels do not match {paths[0]}")
            reorder = {lab: v for lab, v in zip(col_labels, col_values)}
            col_values = [reorder[lab] for lab in labels]
        columns.append(col_values)

    direction = (
        Direction.HIGHER_BETTER if args.direction == "higher" else Direction.LOWER_BETTER
    )
    orderings = [scores_to_ordering(col, direction) for col in columns]
    names = [f"O{i + 1}" for i in range(len(orderings))]
    distances = {
        f"{names[i]},{names[j]}": normalized_l1(orderings[i], orderings[j])
        for i in range(len(orderings))
        for j in range(i + 1, len(orderings))
    }

    lines: list[str] = []
    if args.format == "structured":
        lines.append(
            _jsonl(
                {
                    "document": "-",
                    "variant": "compare",
                    "budget": None,
                    "char_used": 0,
                    "sentences": [],
                    "scores": distances,
                    "systems": labels,
                    "orderings": {
                        name: list(o.ranks) for name, o in zip(names, orderings)
                    },
                }
            )
        )
    else:
        lines.append("system\t" + "\t".join(names))
        for row, label in enumerate(labels):
            ranks = "\t".join(str(o.ranks[row]) for o in orderings)
            lines.append(f"{label}\t{ranks}")
        for pair, dist in distances.items():
            lines.append(f"{pair}\t{dist:.6f}")
    _emit(lines, None)
    return 0


# --- parser ---


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text tables or line-delimited JSON records",
    )


def _add_length_group(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--percent", type=float, help="budget as %% of document characters (default 30)")
    g.add_argument("--chars", type=int, help="budget in characters")
    g.add_argument("--words", type=int, help="budget in words")


def _add_stoplist(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stoplist", help="custom stopword file (one word per line)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rapidsumm",
        description="Realtime extractive summarization with keyword ranking, "
        "topic clustering, and embedding-based evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    variant_names = sorted(VARIANTS)

    p = sub.add_parser("summarize", help="summarize documents under a length budget")
    p.add_argument("inputs", nargs="+", metavar="FILE", help="text files or a directory")
    p.add_argument(
        "--variant",
        action="append",
        choices=variant_names,
        metavar="NAME",
        help=f"summarizer variant, repeatable (default ET3Rank; one of {', '.join(variant_names)})",
    )
    _add_length_group(p)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--lda-iterations", type=int, default=500)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--output", type=Path, help="write results here instead of stdout")
    _add_stoplist(p)
    _add_format(p)
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("keywords", help="rank keywords or key phrases")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--extractor", choices=("textrank", "rake"), default="textrank")
    p.add_argument("--top", type=int, default=10)
    _add_stoplist(p)
    _add_format(p)
    p.set_defaults(func=_cmd_keywords)

    p = sub.add_parser("topics", help="assign sentences to topics")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument(
        "--scheme", choices=[s.value for s in TopicScheme], default="tctt"
    )
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--iterations", type=int, default=500)
    _add_stoplist(p)
    _add_format(p)
    p.set_defaults(func=_cmd_topics)

    p = sub.add_parser("rouge", help="n-gram recall against reference summaries")
    p.add_argument("candidates", nargs="+", metavar="CANDIDATE")
    p.add_argument(
        "--references",
        action="append",
        required=True,
        metavar="PATH",
        help="reference file or directory, repeatable; directories pair by file-name stem",
    )
    p.add_argument("--truncate", type=int, help="score only the first N candidate words")
    _add_format(p)
    p.set_defaults(func=_cmd_rouge)

    p = sub.add_parser("wesm", help="embedding similarity between summaries and originals")
    p.add_argument("originals", nargs="+", metavar="ORIGINAL")
    p.add_argument("--summaries", help="existing summary file or directory (pairs by stem)")
    p.add_argument(
        "--variant",
        action="append",
        choices=variant_names,
        metavar="NAME",
        help="generate summaries with this variant instead (repeatable; default the five standard variants)",
    )
    _add_length_group(p)
    p.add_argument("--embeddings", help=f"embedding table (default ${ENV_EMBEDDINGS})")
    p.add_argument("--embeddings-format", choices=("text", "binary"))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--lda-iterations", type=int, default=500)
    _add_stoplist(p)
    _add_format(p)
    p.set_defaults(func=_cmd_wesm)

    p = sub.add_parser("bench", help="time the pipeline on synthetic documents")
    p.add_argument("--corpus", required=True, help="directory of .txt articles")
    p.add_argument("--min-words", type=int, default=500)
    p.add_argument("--max-words", type=int, default=10000)
    p.add_argument("--step", type=int, default=500)
    p.add_argument("--samples", type=int, default=3, help="documents per size bucket")
    p.add_argument(
        "--variant",
        action="append",
        choices=variant_names,
        metavar="NAME",
        help="variant to time, repeatable (default the five standard variants)",
    )
    p.add_argument("--percent", type=float, default=30.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--lda-iterations", type=int, default=500)
    p.add_argument("--out-dir", type=Path, default=Path("bench_out"))
    p.add_argument(
        "--no-artifacts",
        action="store_true",
        help="print the table only; skip plot data and figure files",
    )
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("compare", help="rank score columns and measure ordering distance")
    p.add_argument("columns", nargs="+", metavar="SCORES", help="two or three score-column files")
    p.add_argument("--direction", choices=("higher", "lower"), default="higher")
    _add_format(p)
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if isinstance(code, int):
            return code
        return 0 if code is None else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, TransportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())
