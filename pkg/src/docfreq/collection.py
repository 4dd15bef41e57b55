"""Document collections and global/local coordinate mappings.

Positions are 1-based everywhere. Arrays indexed by position carry an
unused padding slot at index 0 so that ``arr[i]`` is position ``i``.

Every document body is followed by the document sentinel ``0x01`` and
the whole concatenation ends with the global sentinel ``0x00``, which is
attributed to the last document.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    EmptyManifest,
    EmptyPattern,
    InvalidPatternByte,
    OutOfRange,
    SentinelByteInInput,
    UnreadableFile,
)

DOC_SENTINEL = 0x01
END_SENTINEL = 0x00


def check_pattern(pattern) -> bytes:
    """Normalize ``pattern`` to bytes, rejecting empty and sentinel-bearing input."""
    if isinstance(pattern, str):
        pattern = pattern.encode()
    pattern = bytes(pattern)
    if not pattern:
        raise EmptyPattern("empty pattern")
    if min(pattern) < 0x02:
        raise InvalidPatternByte(f"pattern byte < 0x02 in {pattern!r}")
    return pattern


@dataclass(frozen=True)
class Collection:
    docs: tuple
    doc_starts: np.ndarray = field(repr=False)
    text: np.ndarray = field(repr=False)

    @classmethod
    def from_docs(cls, docs) -> "Collection":
        docs = tuple(d.encode() if isinstance(d, str) else bytes(d) for d in docs)
        if not docs:
            raise EmptyManifest("collection needs at least one document")
        for k, d in enumerate(docs, 1):
            _check_body(d, f"<doc {k}>")
        lengths = np.fromiter((len(d) + 1 for d in docs), dtype=np.int64, count=len(docs))
        starts = np.empty(len(docs), dtype=np.int64)
        starts[0] = 1
        np.cumsum(lengths[:-1], out=starts[1:])
        starts[1:] += 1
        parts = [np.zeros(1, dtype=np.uint8)]  # padding slot
        sep = np.array([DOC_SENTINEL], dtype=np.uint8)
        for d in docs:
            parts.append(np.frombuffer(d, dtype=np.uint8))
            parts.append(sep)
        parts.append(np.array([END_SENTINEL], dtype=np.uint8))
        text = np.concatenate(parts)
        return cls(docs, starts, text)

    @property
    def t(self) -> int:
        return len(self.docs)

    @property
    def n(self) -> int:
        return len(self.text) - 1

    @property
    def sigma(self) -> int:
        return int(np.unique(self.text[1:]).size)

    @property
    def concat(self) -> bytes:
        return self.text[1:].tobytes()

    def boundary_bits(self) -> np.ndarray:
        """B[1..n] (padded) with a one at the first position of every document."""
        bits = np.zeros(self.n + 1, dtype=bool)
        bits[self.doc_starts] = True
        return bits

    def doc_text(self, doc: int) -> bytes:
        """Body of ``doc`` followed by its own sentinel, as indexed per document."""
        return self.docs[doc - 1] + bytes([DOC_SENTINEL])

    def doc_of(self, pos: int) -> int:
        if not 1 <= pos <= self.n:
            raise OutOfRange(f"position {pos} outside 1..{self.n}")
        return bisect.bisect_right(self._starts, pos)

    def docs_of(self, positions) -> np.ndarray:
        """Vectorized :meth:`doc_of` without bounds checking."""
        return np.searchsorted(self.doc_starts, positions, side="right")

    def to_local(self, pos: int) -> tuple[int, int]:
        doc = self.doc_of(pos)
        return doc, pos - self._starts[doc - 1] + 1

    def to_global(self, doc: int, local: int) -> int:
        if not 1 <= doc <= self.t:
            raise OutOfRange(f"document {doc} outside 1..{self.t}")
        span = len(self.docs[doc - 1]) + (2 if doc == self.t else 1)
        if not 1 <= local <= span:
            raise OutOfRange(f"local offset {local} outside 1..{span} of document {doc}")
        return self._starts[doc - 1] + local - 1

    @property
    def _starts(self) -> list:
        cached = self.__dict__.get("_starts_list")
        if cached is None:
            cached = self.doc_starts.tolist()
            object.__setattr__(self, "_starts_list", cached)
        return cached


def _check_body(body: bytes, name) -> None:
    if not body:
        return
    arr = np.frombuffer(body, dtype=np.uint8)
    bad = np.flatnonzero(arr < 0x02)
    if bad.size:
        raise SentinelByteInInput(name, int(bad[0]))


def read_manifest(path) -> list[Path]:
    """Paths listed in a manifest file, resolved relative to the manifest."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UnreadableFile(f"{path}: {exc}") from exc
    out = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p = Path(line)
        out.append(p if p.is_absolute() else path.parent / p)
    if not out:
        raise EmptyManifest(f"{path}: no documents listed")
    return out


def parse_fasta(data: bytes) -> bytes:
    """Concatenate the sequence lines of a FASTA file, dropping headers."""
    seq = []
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith(b">"):
            continue
        seq.append(line)
    return b"".join(seq)


def ingest(paths, fmt: str = "plain") -> Collection:
    paths = list(paths)
    if not paths:
        raise EmptyManifest("no documents given")
    docs = []
    for p in paths:
        try:
            data = Path(p).read_bytes()
        except OSError as exc:
            raise UnreadableFile(f"{p}: {exc}") from exc
        if fmt == "fasta":
            data = parse_fasta(data)
        elif fmt != "plain":
            raise ValueError(f"unknown document format {fmt!r}")
        _check_body(data, str(p))
        docs.append(data)
    return Collection.from_docs(docs)
