"""Run-length BWT index with run-boundary SA samples.

Backward search ranks directly over the runs. ``locate`` keeps the
suffix-array value of the last row of the current range during the
search (the toehold) and then walks upwards with phi, where
``phi(p) = SA[ISA[p] - 1]``, answered from one sample per BWT run by a
successor search over text positions.

Random access to SA and ISA goes through an access provider: either the
plain arrays or grammar-compressed differential arrays.
"""

from __future__ import annotations

import bisect

import numpy as np

from .collection import check_pattern
from .errors import DocMismatch, OutOfRange
from .grammar import BalancedSlp
from .suffix import suffix_array

SIGMA = 256


class PlainSa:
    kind = "plain"

    def __init__(self, sa, isa):
        self.sa_arr = np.asarray(sa, dtype=np.int64)
        self.isa_arr = np.asarray(isa, dtype=np.int64)
        self.n = len(self.sa_arr) - 1

    def sa(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(f"row {i} outside 1..{self.n}")
        return int(self.sa_arr[i])

    def isa(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise OutOfRange(f"position {p} outside 1..{self.n}")
        return int(self.isa_arr[p])


class _PrefixSumGrammar:
    """Grammar over a difference sequence, answering prefix sums by one descent."""

    def __init__(self, grammar: BalancedSlp):
        self.grammar = grammar
        self.sums = grammar.fold(lambda v: v, lambda a, b: a + b)

    def prefix_sum(self, i: int) -> int:
        g = self.grammar
        sym, nt, length, sums = g.root, g.n_terms, g.length, self.sums
        acc = 0
        while sym >= nt:
            a = g.left[sym - nt]
            if i <= length[a]:
                sym = a
            else:
                i -= length[a]
                acc += sums[a]
                sym = g.right[sym - nt]
        return acc + sums[sym]


def _diffs(arr) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)[1:]
    return np.diff(arr, prepend=0)


class GrammarDiffSa:
    kind = "grammar-diff"

    def __init__(self, sa_grammar: BalancedSlp, isa_grammar: BalancedSlp):
        self._sa = _PrefixSumGrammar(sa_grammar)
        self._isa = _PrefixSumGrammar(isa_grammar)
        self.n = sa_grammar.n

    @classmethod
    def from_arrays(cls, sa, isa, seed: int = 0) -> "GrammarDiffSa":
        return cls(BalancedSlp.build(_diffs(sa), seed), BalancedSlp.build(_diffs(isa), seed))

    @property
    def sa_grammar(self) -> BalancedSlp:
        return self._sa.grammar

    @property
    def isa_grammar(self) -> BalancedSlp:
        return self._isa.grammar

    def sa(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(f"row {i} outside 1..{self.n}")
        return self._sa.prefix_sum(i)

    def isa(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise OutOfRange(f"position {p} outside 1..{self.n}")
        return self._isa.prefix_sum(p)


def make_provider(kind: str, sa, isa, seed: int = 0):
    if kind == "plain":
        return PlainSa(sa, isa)
    if kind == "grammar-diff":
        return GrammarDiffSa.from_arrays(sa, isa, seed)
    raise ValueError(f"unknown SA provider {kind!r}")


class RIndex:
    """Run-length BWT index of one sentinel-terminated text.

    Rows and text positions are 1-based.
    """

    def __init__(self, run_sym, run_len, end_samples, phi_keys, phi_vals, provider=None):
        self.run_sym = np.asarray(run_sym, dtype=np.uint8)
        self.run_len = np.asarray(run_len, dtype=np.int64)
        self.end_samples = np.asarray(end_samples, dtype=np.int64)
        self.phi_keys = np.asarray(phi_keys, dtype=np.int64)
        self.phi_vals = np.asarray(phi_vals, dtype=np.int64)
        self.provider = provider
        self.n = int(self.run_len.sum())
        self._prepare()

    def _prepare(self):
        starts = np.empty(len(self.run_len), dtype=np.int64)
        starts[0] = 1
        np.cumsum(self.run_len[:-1], out=starts[1:])
        starts[1:] += 1
        self.run_start = starts
        self._starts = starts.tolist()
        self._syms = self.run_sym.tolist()
        self._ends = self.end_samples.tolist()
        self._phi_keys = self.phi_keys.tolist()
        self._phi_vals = self.phi_vals.tolist()
        counts = np.bincount(self.run_sym, weights=self.run_len, minlength=SIGMA).astype(np.int64)
        self.c_table = np.concatenate(([0], np.cumsum(counts)[:-1])).tolist()
        self._counts = counts.tolist()
        self._runs_of = [[] for _ in range(SIGMA)]
        self._cum_of = [[0] for _ in range(SIGMA)]
        for k, (sym, ln) in enumerate(zip(self._syms, self.run_len.tolist())):
            self._runs_of[sym].append(k)
            cum = self._cum_of[sym]
            cum.append(cum[-1] + ln)

    @classmethod
    def build(cls, text, sa0=None, provider: str | None = "plain", seed: int = 0) -> "RIndex":
        """Index ``text`` (bytes ending in a unique smallest sentinel).

        ``sa0`` is an optional precomputed 0-based suffix array.
        """
        arr = np.frombuffer(bytes(text), dtype=np.uint8) if not isinstance(text, np.ndarray) else text
        n = len(arr)
        if sa0 is None:
            sa0 = suffix_array(arr)
        sa = np.concatenate(([0], np.asarray(sa0, dtype=np.int64) + 1))
        isa = np.zeros(n + 1, dtype=np.int64)
        isa[sa[1:]] = np.arange(1, n + 1)
        bwt = arr[(sa[1:] - 2) % n]
        heads = np.flatnonzero(np.concatenate(([True], bwt[1:] != bwt[:-1])))
        run_sym = bwt[heads]
        run_len = np.diff(np.append(heads, n))
        end_rows = heads + run_len  # 1-based last row of each run
        end_samples = sa[end_rows]
        # phi samples: for every run-start row j the text position y = SA[j] - 1
        # (cyclically), keyed with phi(y) = SA[ISA[y] - 1].
        start_rows = heads + 1
        keys = (sa[start_rows] - 2) % n + 1
        rows_of_keys = isa[keys]
        vals = np.where(rows_of_keys > 1, sa[np.maximum(rows_of_keys - 1, 1)], 0)
        order = np.argsort(keys)
        prov = make_provider(provider, sa, isa, seed) if provider else None
        return cls(run_sym, run_len, end_samples, keys[order], vals[order], prov)

    @property
    def r(self) -> int:
        """Number of BWT runs."""
        return len(self.run_len)

    def _run_of_row(self, i: int) -> int:
        return bisect.bisect_right(self._starts, i) - 1

    def bwt_at(self, i: int) -> int:
        return self._syms[self._run_of_row(i)]

    def rank(self, c: int, i: int) -> int:
        """Occurrences of byte ``c`` in BWT[1..i]."""
        if i <= 0:
            return 0
        k = bisect.bisect_right(self._starts, i) - 1
        runs = self._runs_of[c]
        j = bisect.bisect_left(runs, k)
        total = self._cum_of[c][j]
        if self._syms[k] == c:
            total += i - self._starts[k] + 1
        return total

    def lf(self, i: int) -> int:
        c = self.bwt_at(i)
        return self.c_table[c] + self.rank(c, i)

    def bwt(self) -> bytes:
        return np.repeat(self.run_sym, self.run_len).tobytes()

    def invert(self) -> bytes:
        """Reconstruct the text by LF-walking from the row of the terminator."""
        out = bytearray(self.n)
        row = 1  # suffix consisting of the terminator alone
        for p in range(self.n - 1, -1, -1):
            c = self.bwt_at(row)
            out[p - 1 if p else self.n - 1] = c
            row = self.c_table[c] + self.rank(c, row)
        return bytes(out)

    def search(self, pattern):
        """Backward search. Returns ``(sp, ep, sa_of_ep)`` or ``None`` when absent."""
        pattern = check_pattern(pattern)
        sp, ep = 1, self.n
        toe = self._ends[-1]
        for c in reversed(pattern):
            if not self._counts[c]:
                return None
            k = bisect.bisect_right(self._starts, ep) - 1
            if self._syms[k] == c:
                toe -= 1
            else:
                runs = self._runs_of[c]
                j = bisect.bisect_left(runs, k) - 1
                if j < 0 or self._ends_row(runs[j]) < sp:
                    return None
                toe = self._ends[runs[j]] - 1
            base = self.c_table[c]
            sp = base + self.rank(c, sp - 1) + 1
            ep = base + self.rank(c, ep)
            if sp > ep:
                return None
        return sp, ep, toe

    def step(self, sp: int, ep: int, c: int):
        """Extend the pattern of interval ``sp..ep`` by ``c`` on the left; ``None`` if empty."""
        if c < 2 or not self._counts[c]:
            return None
        base = self.c_table[c]
        sp = base + self.rank(c, sp - 1) + 1
        ep = base + self.rank(c, ep)
        return (sp, ep) if sp <= ep else None

    def _ends_row(self, run: int) -> int:
        return self._starts[run] + int(self.run_len[run]) - 1

    def pattern_interval(self, pattern):
        """SA interval ``(sp, ep)`` of the suffixes prefixed by ``pattern``, or ``None``."""
        hit = self.search(pattern)
        return None if hit is None else hit[:2]

    def count(self, pattern) -> int:
        hit = self.search(pattern)
        return 0 if hit is None else hit[1] - hit[0] + 1

    def phi(self, p: int) -> int:
        k = bisect.bisect_left(self._phi_keys, p)
        y = self._phi_keys[k]
        return self._phi_vals[k] - (y - p)

    def locate(self, sp: int, ep: int, toehold: int | None = None) -> list[int]:
        """Text positions SA[sp..ep] in row order."""
        if not 1 <= sp <= ep <= self.n:
            raise OutOfRange(f"interval [{sp}..{ep}] outside 1..{self.n}")
        if toehold is None:
            toehold = self.sa_access(ep)
        out = [0] * (ep - sp + 1)
        p = toehold
        out[-1] = p
        for k in range(ep - sp - 1, -1, -1):
            p = self.phi(p)
            out[k] = p
        return out

    def locate_pattern(self, pattern) -> list[int]:
        hit = self.search(pattern)
        if hit is None:
            return []
        return self.locate(*hit)

    def sa_access(self, i: int) -> int:
        return self.provider.sa(i)

    def isa_access(self, p: int) -> int:
        return self.provider.isa(p)


class RIndexSet:
    """One index over the concatenation plus, optionally, one per document."""

    def __init__(self, collection, global_index: RIndex, doc_indexes=None):
        self.collection = collection
        self.global_index = global_index
        self.doc_indexes = doc_indexes

    @classmethod
    def build(cls, collection, global_sa0=None, doc_sa0s=None, provider="grammar-diff",
              per_doc=True, seed=0) -> "RIndexSet":
        gi = RIndex.build(collection.text[1:], global_sa0, provider, seed)
        docs = None
        if per_doc:
            docs = []
            for k in range(1, collection.t + 1):
                sa0 = doc_sa0s[k - 1] if doc_sa0s is not None else None
                docs.append(RIndex.build(collection.doc_text(k), sa0, provider, seed))
        return cls(collection, gi, docs)

    @property
    def big_r(self) -> int:
        """Total number of runs over the per-document indexes."""
        return sum(ix.r for ix in self.doc_indexes) if self.doc_indexes else 0

    def pattern_interval(self, pattern):
        return self.global_index.pattern_interval(pattern)

    def da(self, row: int) -> int:
        """Document of SA row ``row``, as rank_1(B, SA[row])."""
        return self.collection.doc_of(self.global_index.sa_access(row))

    def freq_from_extremes(self, doc: int, left_row: int, right_row: int) -> int:
        """Occurrences in ``doc`` given the rows of its leftmost and rightmost occurrence."""
        coll = self.collection
        d1, l1 = coll.to_local(self.global_index.sa_access(left_row))
        d2, l2 = coll.to_local(self.global_index.sa_access(right_row))
        if d1 != doc or d2 != doc:
            raise DocMismatch(f"rows {left_row}/{right_row} map to documents {d1}/{d2}, not {doc}")
        ix = self.doc_indexes[doc - 1]
        return ix.isa_access(l2) - ix.isa_access(l1) + 1
