"""Realtime extractive summarization toolkit.

Sentences are ranked by keyword scores (word-graph centrality or
phrase co-occurrence), optionally passed through a softplus transform
that rewards breadth of evidence, then selected round-robin across
topics until a length budget is spent.  Evaluation tools cover n-gram
recall, an embedding-transport similarity measure, ordering agreement,
and a wall-clock benchmark harness.
"""
from .benchmark import (
    BenchReport,
    EmptyCorpus,
    load_corpus,
    run_benchmark,
    runtime_threshold,
    synthesize_document,
)
from .embeddings import (
    DimensionMismatch,
    EmbeddingFormatError,
    EmbeddingStore,
    EmptyFile,
    MalformedHeader,
    MalformedLine,
    TruncatedFile,
    load_binary_embeddings,
    load_embeddings,
    load_text_embeddings,
    write_binary_embeddings,
    write_text_embeddings,
)
from .keywords import (
    ExtractorKind,
    candidate_phrases,
    rake_phrase_scores,
    rake_word_scores,
    sentence_contributions,
    textrank_word_scores,
    top_keywords,
)
from .ordering import (
    Direction,
    LengthMismatch,
    Ordering,
    max_l1_distance,
    normalized_l1,
    scores_to_ordering,
)
from .ranking import RankMode, combine_scores, rank_order, sentence_ranks, softplus
from .rouge import (
    NoReferenceContent,
    RougeScores,
    ngram_counts,
    rouge_n,
    rouge_su4,
    score_texts,
    su4_units,
)
from .similarity import (
    NBow,
    NoComparableContent,
    WesmScore,
    nbow,
    rwmd,
    wesm,
    wesm_text,
    wmd,
)
from .summarizer import (
    DEFAULT_VARIANTS,
    VARIANTS,
    BudgetUnit,
    CharBudget,
    PercentBudget,
    Summary,
    SummarySpec,
    VariantSpec,
    WordBudget,
    render_summary,
    resolve_budget,
    select_sentences,
    summarize,
)
from .textprep import (
    Document,
    InvalidEncodingError,
    Paragraph,
    Sentence,
    Stoplist,
    Token,
    default_stoplist,
    load_document,
    load_stoplist,
    read_text_file,
    word_tokens,
)
from .topics import (
    EmptyDocument,
    TopicAssignment,
    TopicScheme,
    TopicWordModel,
    assign_tcp,
    assign_tcs,
    assign_topics,
    choose_num_topics,
    lda_assign,
    lda_fit,
    texttiling_segment,
)
from .transport import TransportError, solve_transport, transport_cost

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # text preparation
    "Document",
    "Paragraph",
    "Sentence",
    "Token",
    "Stoplist",
    "InvalidEncodingError",
    "load_document",
    "read_text_file",
    "load_stoplist",
    "default_stoplist",
    "word_tokens",
    # keyword extraction
    "ExtractorKind",
    "textrank_word_scores",
    "rake_word_scores",
    "rake_phrase_scores",
    "candidate_phrases",
    "sentence_contributions",
    "top_keywords",
    # ranking
    "RankMode",
    "softplus",
    "combine_scores",
    "sentence_ranks",
    "rank_order",
    # topic clustering
    "TopicScheme",
    "TopicAssignment",
    "TopicWordModel",
    "EmptyDocument",
    "assign_tcs",
    "assign_tcp",
    "assign_topics",
    "texttiling_segment",
    "choose_num_topics",
    "lda_fit",
    "lda_assign",
    # summarization
    "BudgetUnit",
    "CharBudget",
    "PercentBudget",
    "WordBudget",
    "SummarySpec",
    "Summary",
    "VariantSpec",
    "VARIANTS",
    "DEFAULT_VARIANTS",
    "summarize",
    "render_summary",
    "resolve_budget",
    "select_sentences",
    # embeddings
    "EmbeddingStore",
    "EmbeddingFormatError",
    "MalformedLine",
    "MalformedHeader",
    "DimensionMismatch",
    "EmptyFile",
    "TruncatedFile",
    "load_embeddings",
    "load_text_embeddings",
    "load_binary_embeddings",
    "write_text_embeddings",
    "write_binary_embeddings",
    # transport and similarity
    "TransportError",
    "solve_transport",
    "transport_cost",
    "NBow",
    "WesmScore",
    "NoComparableContent",
    "nbow",
    "wmd",
    "rwmd",
    "wesm",
    "wesm_text",
    # recall scoring
    "RougeScores",
    "NoReferenceContent",
    "ngram_counts",
    "su4_units",
    "rouge_n",
    "rouge_su4",
    "score_texts",
    # orderings
    "Ordering",
    "Direction",
    "LengthMismatch",
    "scores_to_ordering",
    "normalized_l1",
    "max_l1_distance",
    # benchmarking
    "BenchReport",
    "EmptyCorpus",
    "load_corpus",
    "synthesize_document",
    "run_benchmark",
    "runtime_threshold",
]
