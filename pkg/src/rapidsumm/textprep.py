"""Deterministic text ingestion: paragraphs, sentences, tokens.

Everything here preserves character offsets into the source string, so a
summary can be rendered by slicing the original text instead of
re-serializing tokens.  Paragraphs are separated by blank lines (single
newlines do not break a paragraph), sentences are split by a rule-based
splitter with an abbreviation guard, and tokens are maximal runs of word
characters or of non-space punctuation.  No stemming, no statistical
models; identical input bytes always produce an identical structure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

__all__ = [
    "Token",
    "Sentence",
    "Paragraph",
    "Document",
    "Stoplist",
    "InvalidEncodingError",
    "load_document",
    "content_tokens",
    "word_tokens",
    "load_stoplist",
    "default_stoplist",
    "read_text_file",
]


class InvalidEncodingError(ValueError):
    """Raised when an input file is not valid UTF-8."""


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    span: tuple[int, int]


@dataclass(frozen=True)
class Sentence:
    index: int
    paragraph_index: int
    span: tuple[int, int]
    tokens: tuple[Token, ...]
    content_tokens: tuple[Token, ...]

    @property
    def char_length(self) -> int:
        return self.span[1] - self.span[0]


@dataclass(frozen=True)
class Paragraph:
    index: int
    span: tuple[int, int]
    sentence_indices: tuple[int, ...]


@dataclass(frozen=True)
class Document:
    raw_text: str
    paragraphs: tuple[Paragraph, ...]
    sentences: tuple[Sentence, ...]
    char_count: int

    def sentence_text(self, index: int) -> str:
        start, end = self.sentences[index].span
        return self.raw_text[start:end]

    def paragraph_text(self, index: int) -> str:
        start, end = self.paragraphs[index].span
        return self.raw_text[start:end]

    @property
    def word_count(self) -> int:
        """Number of word-like tokens (punctuation runs excluded)."""
        return sum(
            1
            for s in self.sentences
            for t in s.tokens
            if any(c.isalnum() for c in t.normalized)
        )


class Stoplist:
    """Case-insensitive stopword set; entries are lowercased on load."""

    def __init__(self, words: Iterable[str], source_name: str = "custom"):
        self.words = frozenset(w.lower() for w in words)
        self.source_name = source_name

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __repr__(self) -> str:
        return f"Stoplist({len(self.words)} words, source={self.source_name!r})"


# Paragraph separator: a newline followed by at least one more
# (possibly whitespace-padded) newline.
_PARA_SEP = re.compile(r"(?:\r?\n)(?:[ \t]*\r?\n)+")

# A token is a run of word characters (with internal apostrophes) or a
# run of non-space punctuation.  Punctuation runs are kept as tokens so
# phrase extraction can treat them as delimiters.
_TOKEN = re.compile(r"\w+(?:['’]\w+)*|[^\w\s]+", re.UNICODE)

_TERMINALS = frozenset(".!?")
_CLOSERS = frozenset("\"')]’”")
_WS = frozenset(" \t\r\n")


def read_text_file(path: str | Path) -> str:
    """Read a file as UTF-8, raising InvalidEncodingError on bad bytes."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncodingError(f"{path}: not valid UTF-8 ({exc})") from exc


def load_stoplist(path: str | Path) -> Stoplist:
    """Load a stoplist file: one token per line, '#' lines are comments."""
    words = []
    for line in read_text_file(path).splitlines():
        entry = line.rstrip()
        if not entry or entry.startswith("#"):
            continue
        words.append(entry)
    return Stoplist(words, source_name=str(path))


def _load_packaged_wordfile(name: str) -> frozenset[str]:
    text = resources.files("rapidsumm").joinpath(f"data/{name}").read_text("utf-8")
    out = set()
    for line in text.splitlines():
        entry = line.rstrip()
        if entry and not entry.startswith("#"):
            out.add(entry.lower())
    return frozenset(out)


@lru_cache(maxsize=1)
def default_stoplist() -> Stoplist:
    """The bundled English stoplist."""
    return Stoplist(_load_packaged_wordfile("stopwords_en.txt"), source_name="builtin:en")


@lru_cache(maxsize=1)
def _abbreviations() -> frozenset[str]:
    return _load_packaged_wordfile("abbreviations_en.txt")


def _guarded_period(text: str, period_pos: int, chunk_start: int) -> bool:
    """True when the word before a period marks an abbreviation.

    Single letters are treated as initials ("J. Smith", "U.S.") in
    addition to the shipped guard list.
    """
    end = period_pos
    start = end
    while start > chunk_start and text[start - 1].isalpha():
        start -= 1
    if start == end:
        return False
    word = text[start:end]
    if len(word) == 1:
        return True
    return word.lower() in _abbreviations()


def _sentence_spans(text: str, chunk_start: int, chunk_end: int) -> list[tuple[int, int]]:
    """Split one paragraph chunk into trimmed sentence spans."""
    breaks: list[tuple[int, int]] = []  # (sentence_end, next_start)
    i = chunk_start
    while i < chunk_end:
        ch = text[i]
        if ch in _TERMINALS:
            j = i + 1
            while j < chunk_end and text[j] in _CLOSERS:
                j += 1
            k = j
            while k < chunk_end and text[k] in _WS:
                k += 1
            if k > j and k < chunk_end and (text[k].isupper() or text[k].isdigit()):
                if ch != "." or not _guarded_period(text, i, chunk_start):
                    breaks.append((j, k))
            i = j
        else:
            i += 1

    spans = []
    start = chunk_start
    for sent_end, next_start in breaks:
        spans.append((start, sent_end))
        start = next_start
    spans.append((start, chunk_end))

    trimmed = []
    for s, e in spans:
        while s < e and text[s] in _WS:
            s += 1
        while e > s and text[e - 1] in _WS:
            e -= 1
        if e > s:
            trimmed.append((s, e))
    return trimmed


def _tokenize(text: str, start: int, end: int) -> tuple[Token, ...]:
    toks = []
    for m in _TOKEN.finditer(text, start, end):
        surface = m.group()
        toks.append(Token(surface=surface, normalized=surface.lower(), span=(m.start(), m.end())))
    return tuple(toks)


def _is_content(token: Token, stoplist: Stoplist) -> bool:
    if token.normalized in stoplist:
        return False
    return any(c.isalnum() for c in token.normalized)


def content_tokens(sentence: Sentence, stoplist: Stoplist) -> tuple[Token, ...]:
    """Tokens of the sentence that are neither stopwords nor punctuation."""
    return tuple(t for t in sentence.tokens if _is_content(t, stoplist))


def word_tokens(text: str) -> list[str]:
    """Lowercased word-like tokens; punctuation-only runs are dropped.

    This is the shared tokenization for evaluation metrics: no stemming
    and no stopword removal, so scores are reproducible from raw text.
    """
    return [
        m.group().lower()
        for m in _TOKEN.finditer(text)
        if any(c.isalnum() for c in m.group())
    ]


def load_document(text: str, stoplist: Stoplist | None = None) -> Document:
    """Parse raw text into a Document.

    The stoplist only affects the precomputed ``content_tokens`` on each
    sentence; the raw token stream is stoplist-independent.
    """
    if stoplist is None:
        stoplist = default_stoplist()

    # Paragraph chunks: the non-separator stretches that contain any
    # non-whitespace character.
    chunks: list[tuple[int, int]] = []
    pos = 0
    for m in _PARA_SEP.finditer(text):
        if text[pos:m.start()].strip():
            chunks.append((pos, m.start()))
        pos = m.end()
    if text[pos:].strip():
        chunks.append((pos, len(text)))

    paragraphs: list[Paragraph] = []
    sentences: list[Sentence] = []
    for p_index, (c_start, c_end) in enumerate(chunks):
        sent_indices = []
        for s_start, s_end in _sentence_spans(text, c_start, c_end):
            tokens = _tokenize(text, s_start, s_end)
            sent = Sentence(
                index=len(sentences),
                paragraph_index=p_index,
                span=(s_start, s_end),
                tokens=tokens,
                content_tokens=tuple(t for t in tokens if _is_content(t, stoplist)),
            )
            sent_indices.append(sent.index)
            sentences.append(sent)
        first = sentences[sent_indices[0]].span[0]
        last = sentences[sent_indices[-1]].span[1]
        paragraphs.append(Paragraph(index=p_index, span=(first, last), sentence_indices=tuple(sent_indices)))

    return Document(
        raw_text=text,
        paragraphs=tuple(paragraphs),
        sentences=tuple(sentences),
        char_count=len(text),
    )
