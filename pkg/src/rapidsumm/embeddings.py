"""Word-embedding tables: text and binary loaders, case-folded lookup.

Vectors are held as 32-bit floats to keep Wikipedia-scale vocabularies
in memory; downstream distance math widens to 64-bit.  Both loaders
either produce a complete, consistent store or raise a typed error,
never a half-parsed table.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .textprep import read_text_file

__all__ = [
    "EmbeddingStore",
    "EmbeddingFormatError",
    "MalformedLine",
    "DimensionMismatch",
    "EmptyFile",
    "TruncatedFile",
    "MalformedHeader",
    "load_text_embeddings",
    "load_binary_embeddings",
    "load_embeddings",
    "lookup",
    "write_text_embeddings",
    "write_binary_embeddings",
]


class EmbeddingFormatError(ValueError):
    """Base class for embedding-file parse failures."""


class MalformedLine(EmbeddingFormatError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DimensionMismatch(EmbeddingFormatError):
    def __init__(self, line_no: int, expected: int, got: int):
        super().__init__(f"line {line_no}: expected {expected} values, got {got}")
        self.line_no = line_no
        self.expected = expected
        self.got = got


class EmptyFile(EmbeddingFormatError):
    pass


class TruncatedFile(EmbeddingFormatError):
    pass


class MalformedHeader(EmbeddingFormatError):
    pass


@dataclass(frozen=True)
class EmbeddingStore:
    dim: int
    table: dict[str, np.ndarray]

    @property
    def vocab_size(self) -> int:
        return len(self.table)

    def lookup(self, word: str):
        """The word's vector, or None when out of vocabulary."""
        return self.table.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.table


def lookup(store: EmbeddingStore, word: str):
    return store.lookup(word)


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def load_text_embeddings(
    path: str | Path, *, restrict_to: set[str] | None = None
) -> EmbeddingStore:
    """Parse the whitespace text format.

    An optional first line "vocab_size dim" (two bare integers) is
    treated as a header; every other line is a word followed by the
    vector components.  Words are lowercased; when a word repeats, the
    first line wins.  ``restrict_to`` keeps only the given words, which
    bounds memory when the consumer documents are known up front.
    """
    lines = read_text_file(path).splitlines()

    dim: int | None = None
    start = 0
    for i, line in enumerate(lines):
        if line.strip():
            parts = line.split()
            if len(parts) == 2 and _is_int(parts[0]) and _is_int(parts[1]):
                start = i + 1
                dim = int(parts[1])
                if dim <= 0:
                    raise MalformedHeader(f"non-positive dimension {dim} in header")
            break

    table: dict[str, np.ndarray] = {}
    saw_entry = False
    for ln in range(start, len(lines)):
        line = lines[ln]
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) < 2:
            raise MalformedLine(ln + 1, "expected a word and vector components")
        saw_entry = True
        word = parts[0].lower()
        try:
            vec = np.array([float(p) for p in parts[1:]], dtype=np.float32)
        except ValueError:
            raise MalformedLine(ln + 1, "vector component is not a number") from None
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise DimensionMismatch(ln + 1, dim, len(vec))
        if not np.all(np.isfinite(vec)):
            raise MalformedLine(ln + 1, "vector component is not finite")
        if restrict_to is not None and word not in restrict_to:
            continue
        if word not in table:
            table[word] = vec
    if dim is None or not saw_entry:
        raise EmptyFile(f"{path}: no embedding entries")
    return EmbeddingStore(dim=dim, table=table)


def load_binary_embeddings(
    path: str | Path, *, restrict_to: set[str] | None = None
) -> EmbeddingStore:
    """Parse the binary format: ASCII header "vocab_size dim", then per
    entry a space-terminated word and dim little-endian float32 values,
    each entry optionally followed by a newline."""
    data = Path(path).read_bytes()
    nl = data.find(b"\n")
    if nl < 0:
        raise MalformedHeader("missing header line")
    head = data[:nl].split()
    if len(head) != 2 or not _is_int(head[0].decode("ascii", "replace")) or not _is_int(
        head[1].decode("ascii", "replace")
    ):
        raise MalformedHeader(f"expected 'vocab_size dim', got {data[:nl]!r}")
    vocab_n, dim = int(head[0]), int(head[1])
    if vocab_n < 0 or dim <= 0:
        raise MalformedHeader(f"bad header values {vocab_n} {dim}")

    table: dict[str, np.ndarray] = {}
    pos = nl + 1
    vec_bytes = 4 * dim
    for _ in range(vocab_n):
        while pos < len(data) and data[pos] in b" \r\n":
            pos += 1
        sp = data.find(b" ", pos)
        if sp < 0:
            raise TruncatedFile(f"{path}: ran out of data reading a word")
        word = data[pos:sp].decode("utf-8", errors="replace").lower()
        pos = sp + 1
        if pos + vec_bytes > len(data):
            raise TruncatedFile(f"{path}: vector for {word!r} is cut short")
        vec = np.frombuffer(data, dtype="<f4", count=dim, offset=pos).copy()
        pos += vec_bytes
        if not np.all(np.isfinite(vec)):
            raise EmbeddingFormatError(f"{path}: non-finite vector for {word!r}")
        if restrict_to is not None and word not in restrict_to:
            continue
        if word not in table:
            table[word] = vec
    return EmbeddingStore(dim=dim, table=table)


def load_embeddings(
    path: str | Path,
    *,
    fmt: str | None = None,
    restrict_to: set[str] | None = None,
) -> EmbeddingStore:
    """Load by explicit format ("text"/"binary") or sniff by extension:
    .bin is binary, anything else (.txt, .vec, ...) is text."""
    if fmt is None:
        fmt = "binary" if Path(path).suffix.lower() == ".bin" else "text"
    if fmt == "binary":
        return load_binary_embeddings(path, restrict_to=restrict_to)
    if fmt == "text":
        return load_text_embeddings(path, restrict_to=restrict_to)
    raise ValueError(f"unknown embeddings format {fmt!r}")


def write_text_embeddings(store: EmbeddingStore, path: str | Path, *, header: bool = True):
    out = []
    if header:
        out.append(f"{store.vocab_size} {store.dim}")
    for word, vec in store.table.items():
        out.append(word + " " + " ".join(str(float(x)) for x in vec))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def write_binary_embeddings(store: EmbeddingStore, path: str | Path):
    with open(path, "wb") as fh:
        fh.write(f"{store.vocab_size} {store.dim}\n".encode("ascii"))
        for word, vec in store.table.items():
            fh.write(word.encode("utf-8") + b" ")
            fh.write(np.asarray(vec, dtype="<f4").tobytes())
            fh.write(b"\n")
