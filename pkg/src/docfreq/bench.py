"""Time/space benchmark over synthetic Concat-style collections."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from . import container
from .index import METHODS, BuildConfig, DocFreqIndex
from .synthgen import DNA, LETTERS, gen_concat, gen_patterns

log = logging.getLogger(__name__)

CSV_HEADER = ("method", "n", "t", "r", "nu", "index_bits_per_symbol", "mean_query_microsec", "ndoc_mean")

# sections each method needs at query time; the collection text itself is not counted
_NEEDS = {
    "pdl": ("GRMR", "PDLX"),
    "gcda": ("DOCS", "GRMR", "GLRX"),
    "ilcp": ("DOCS", "ILCP"),
    "ilcp-star": ("DOCS", "ILCS"),
    "sada": ("DOCS", "CHNS"),
    "wt": ("CHNS", "WTDA"),
    "scan": (),
}


@dataclass
class GenSpec:
    d: int = 10
    versions: int = 100
    R: float = 0.01
    base_len: int = 1000
    seed: int = 0
    alphabet: str = "letters"

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        """Parse ``key=value,...`` (keys: d, versions, R, base_len, seed, alphabet)."""
        spec = cls()
        for item in filter(None, text.split(",")):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown generator key {key!r}")
            typ = type(getattr(spec, key))
            setattr(spec, key, typ(val))
        return spec

    def collection(self):
        alpha = {"letters": LETTERS, "dna": DNA}[self.alphabet]
        return gen_concat(self.d, self.versions, self.R, self.base_len, self.seed, alpha)


def method_bytes(index: DocFreqIndex) -> dict[str, int]:
    """Serialized index size per method: global r-index plus the method's own sections."""
    sizes = {}
    for tag, payload in container.sections(index):
        sizes.setdefault(tag.decode(), []).append(12 + len(payload))
    glob = sizes["RIDX"][0]
    docs = sum(sizes["RIDX"][1:])
    flat = {k: sum(v) for k, v in sizes.items()}
    flat["DOCS"] = docs
    out = {}
    for m in index.methods:
        out[m] = glob + sum(flat.get(tag, 0) for tag in _NEEDS[m])
    return out


def run(gen: GenSpec, methods=METHODS, reps: int = 1, n_patterns: int = 100,
        lengths=(8, 12, 16), sa_provider="grammar-diff") -> list[dict]:
    coll = gen.collection()
    index = DocFreqIndex.build(coll, BuildConfig(tuple(methods), sa_provider, seed=gen.seed))
    stats = index.stats()
    shortest = min(len(d) for d in coll.docs)
    patterns = []
    for k, m in enumerate(lengths):
        if m <= shortest:
            patterns += gen_patterns(coll, m, n_patterns, seed=gen.seed + 1000 + k)
    answers = {}
    timings = {}
    for method in index.methods:
        res = [index.query(p, method) for p in patterns]
        answers[method] = res
        start = time.perf_counter()
        for _ in range(reps):
            for p in patterns:
                index.query(p, method)
        elapsed = time.perf_counter() - start
        timings[method] = elapsed / max(1, reps * len(patterns)) * 1e6
    ref = answers[index.methods[0]]
    for method, res in answers.items():
        if res != ref:
            bad = next(p for p, a, b in zip(patterns, res, ref) if a != b)
            raise AssertionError(f"{method} disagrees with {index.methods[0]} on pattern {bad!r}")
    ndoc_mean = sum(len(a) for a in ref) / max(1, len(ref))
    sizes = method_bytes(index)
    rows = []
    for method in index.methods:
        rows.append({
            "method": method,
            "n": stats["n"],
            "t": stats["t"],
            "r": stats["r"],
            "nu": stats.get("nu", ""),
            "index_bits_per_symbol": round(sizes[method] * 8 / stats["n"], 4),
            "mean_query_microsec": round(timings[method], 2),
            "ndoc_mean": round(ndoc_mean, 3),
        })
        log.info("%s done: %s", method, rows[-1])
    return rows
