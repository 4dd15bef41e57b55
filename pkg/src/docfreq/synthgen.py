"""Synthetic repetitive collections and query patterns.

Each generated document is a random base followed by mutated copies of
it; a mutation replaces a symbol by a different random symbol.
"""

from __future__ import annotations

import string
from pathlib import Path

import numpy as np

from .collection import Collection
from .errors import InvalidParameter

LETTERS = string.ascii_lowercase.encode()
DNA = b"ACGT"


def mutate(base: np.ndarray, rate: float, sigma: int, rng) -> np.ndarray:
    """Copy of ``base`` (symbol indexes) with each position substituted with probability ``rate``."""
    hit = rng.random(len(base)) < rate
    shift = rng.integers(1, sigma, size=len(base)) if sigma > 1 else np.zeros(len(base), dtype=np.int64)
    out = base.copy()
    out[hit] = (base[hit] + shift[hit]) % sigma
    return out


def gen_concat(d: int, versions_total: int, R: float, base_len: int, seed: int = 0,
               alphabet: bytes = LETTERS) -> Collection:
    if d < 1:
        raise InvalidParameter(f"need at least one base document, got d={d}")
    if not 0.0 <= R <= 1.0:
        raise InvalidParameter(f"mutation probability {R} outside [0, 1]")
    if base_len < 1 or versions_total < 0:
        raise InvalidParameter("base_len must be >= 1 and versions_total >= 0")
    alphabet = bytes(alphabet)
    if not alphabet or min(alphabet) < 0x02:
        raise InvalidParameter("alphabet must be non-empty and avoid bytes 0x00/0x01")
    sigma = len(alphabet)
    lut = np.frombuffer(alphabet, dtype=np.uint8)
    rng = np.random.default_rng(seed)
    per_doc = versions_total // d
    docs = []
    for _ in range(d):
        base = rng.integers(0, sigma, size=base_len)
        parts = [base] + [mutate(base, R, sigma, rng) for _ in range(per_doc)]
        docs.append(lut[np.concatenate(parts)].tobytes())
    return Collection.from_docs(docs)


def gen_patterns(collection: Collection, m: int, count: int, seed: int = 0) -> list[bytes]:
    """``count`` random substrings of length ``m`` drawn from the documents."""
    shortest = min(len(doc) for doc in collection.docs)
    if m < 1 or m > shortest:
        raise InvalidParameter(f"pattern length {m} outside 1..{shortest}")
    if count < 0:
        raise InvalidParameter("count must be >= 0")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        doc = collection.docs[int(rng.integers(collection.t))]
        s = int(rng.integers(0, len(doc) - m + 1))
        out.append(doc[s : s + m])
    return out


def write_collection(collection: Collection, outdir) -> Path:
    """Write one file per document plus ``manifest.txt``; returns the manifest path."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    names = []
    for k, doc in enumerate(collection.docs, 1):
        name = f"doc{k:05d}.txt"
        (outdir / name).write_bytes(doc)
        names.append(name)
    manifest = outdir / "manifest.txt"
    manifest.write_text("".join(n + "\n" for n in names), encoding="utf-8")
    return manifest
