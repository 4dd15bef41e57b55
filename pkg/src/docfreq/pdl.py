"""Grammar-compressed document array with precomputed document lists.

Every stored nonterminal keeps the sorted list of the documents in its
expansion with their frequencies. A query merges the lists of the
maximal nodes covering the pattern's SA interval.
"""

from __future__ import annotations

import heapq
from collections import Counter

from .grammar import BalancedSlp


def merge_two(x, y):
    docs_a, freqs_a = x
    docs_b, freqs_b = y
    docs, freqs = [], []
    i = j = 0
    na, nb = len(docs_a), len(docs_b)
    while i < na and j < nb:
        da, db = docs_a[i], docs_b[j]
        if da < db:
            docs.append(da)
            freqs.append(freqs_a[i])
            i += 1
        elif db < da:
            docs.append(db)
            freqs.append(freqs_b[j])
            j += 1
        else:
            docs.append(da)
            freqs.append(freqs_a[i] + freqs_b[j])
            i += 1
            j += 1
    docs.extend(docs_a[i:])
    freqs.extend(freqs_a[i:])
    docs.extend(docs_b[j:])
    freqs.extend(freqs_b[j:])
    return docs, freqs


def merge_lists(lists) -> dict[int, int]:
    """k-way merge of ``(docs, freqs)`` lists with a binary heap, summing ties."""
    heap = [(docs[0], k, 0) for k, (docs, _) in enumerate(lists) if docs]
    heapq.heapify(heap)
    out = {}
    while heap:
        doc, k, pos = heap[0]
        out[doc] = out.get(doc, 0) + lists[k][1][pos]
        pos += 1
        docs = lists[k][0]
        if pos < len(docs):
            heapq.heapreplace(heap, (docs[pos], k, pos))
        else:
            heapq.heappop(heap)
    return out


class PdlIndex:
    def __init__(self, grammar: BalancedSlp, lists: dict, threshold: int = 0):
        self.grammar = grammar
        self.lists = lists
        self.threshold = threshold

    @classmethod
    def build(cls, grammar: BalancedSlp, threshold: int = 0) -> "PdlIndex":
        """Lists for every nonterminal whose expansion has at least ``threshold`` symbols."""
        full = grammar.fold(lambda v: ([v], [1]), merge_two)
        nt = grammar.n_terms
        lists = {}
        for sym in range(nt, grammar.n_symbols):
            if grammar.length[sym] >= threshold:
                docs, freqs = full[sym]
                lists[sym] = (tuple(docs), tuple(freqs))
        return cls(grammar, lists, threshold)

    def symbol_list(self, sym: int):
        g = self.grammar
        if g.is_terminal(sym):
            return (g.value(sym),), (1,)
        stored = self.lists.get(sym)
        if stored is not None:
            return stored
        census = sorted(Counter(g.expand(sym)).items())
        return tuple(d for d, _ in census), tuple(f for _, f in census)

    def cover_lists(self, sp: int, ep: int) -> list:
        return [self.symbol_list(sym) for sym, _ in self.grammar.maximal_cover(sp, ep)]

    def query_interval(self, sp: int, ep: int) -> dict[int, int]:
        return merge_lists(self.cover_lists(sp, ep))
