"""Plain suffix structures and the brute-force answer oracle.

These uncompressed arrays feed the construction of every compressed
index and serve as ground truth in tests. Arrays are padded: slot 0 is
unused and ``SA[i]`` is the 1-based text position of row ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collection import Collection, check_pattern


def suffix_array(seq) -> np.ndarray:
    """0-based suffix array of ``seq`` by prefix doubling, O(n log n).

    ``seq`` must end with a unique smallest symbol, so that no suffix is a
    prefix of another.
    """
    s = np.asarray(seq)
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        if rank.max() == n - 1:
            break
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r_sorted = rank[sa]
        s_sorted = second[sa]
        step = (r_sorted[1:] != r_sorted[:-1]) | (s_sorted[1:] != s_sorted[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.concatenate(([0], np.cumsum(step)))
        rank = new
        k *= 2
    return sa.astype(np.int64)


def lcp_kasai(seq, sa) -> np.ndarray:
    """0-based LCP array: ``lcp[i] = lcp(suffix sa[i-1], suffix sa[i])``, ``lcp[0] = 0``."""
    s = bytes(np.asarray(seq, dtype=np.uint8)) if not isinstance(seq, bytes) else seq
    sa_l = np.asarray(sa).tolist()
    n = len(sa_l)
    rank = [0] * n
    for i, p in enumerate(sa_l):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = sa_l[r - 1]
        while p + h < n and q + h < n and s[p + h] == s[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def _pad(arr, fill=0) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    return np.concatenate((np.array([fill], dtype=np.int64), arr))


@dataclass
class SuffixStructures:
    sa: np.ndarray
    isa: np.ndarray
    da: np.ndarray
    lcp: np.ndarray
    rlcp: np.ndarray
    c: np.ndarray
    cnext: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sa) - 1


def build(collection: Collection) -> SuffixStructures:
    text0 = collection.text[1:]
    n = collection.n
    sa0 = suffix_array(text0)
    sa = _pad(sa0 + 1)
    isa = np.zeros(n + 1, dtype=np.int64)
    isa[sa[1:]] = np.arange(1, n + 1)
    da = np.zeros(n + 1, dtype=np.int64)
    da[1:] = collection.docs_of(sa[1:])
    lcp = _pad(lcp_kasai(text0.tobytes(), sa0))
    rlcp = np.zeros(n + 1, dtype=np.int64)
    rlcp[1:n] = lcp[2:]
    c, cnext = previous_next_same(da)
    return SuffixStructures(sa, isa, da, lcp, rlcp, c, cnext)


def previous_next_same(da: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """C and CNext arrays: previous/next row holding the same document (0 / n+1 if none)."""
    n = len(da) - 1
    order = np.argsort(da[1:], kind="stable") + 1
    same = da[order[1:]] == da[order[:-1]]
    c = np.zeros(n + 1, dtype=np.int64)
    c[order[1:][same]] = order[:-1][same]
    cnext = np.full(n + 1, n + 1, dtype=np.int64)
    cnext[0] = 0
    cnext[order[:-1][same]] = order[1:][same]
    return c, cnext


@dataclass
class IlcpArrays:
    ilcp: np.ndarray
    rilcp: np.ndarray


def doc_suffix_arrays(collection: Collection) -> list[np.ndarray]:
    """0-based suffix array of every document text (body + sentinel)."""
    out = []
    for k in range(1, collection.t + 1):
        out.append(suffix_array(np.frombuffer(collection.doc_text(k), dtype=np.uint8)))
    return out


def build_ilcp(collection: Collection, st: SuffixStructures, doc_sas=None) -> IlcpArrays:
    """Interleave the per-document LCP arrays in global suffix order.

    The global terminator row belongs to the last document but has no
    counterpart in that document's own suffix array; it gets value 0.
    """
    if doc_sas is None:
        doc_sas = doc_suffix_arrays(collection)
    n = st.n
    ilcp = np.zeros(n + 1, dtype=np.int64)
    order = np.argsort(st.da[1:], kind="stable") + 1
    bounds = np.searchsorted(st.da[order], np.arange(1, collection.t + 2))
    for k in range(1, collection.t + 1):
        rows = order[bounds[k - 1] : bounds[k]]
        doc_lcp = lcp_kasai(collection.doc_text(k), doc_sas[k - 1])
        if k == collection.t:
            doc_lcp = np.concatenate(([0], doc_lcp))
        assert len(rows) == len(doc_lcp)
        ilcp[rows] = doc_lcp
    rilcp = np.zeros(n + 1, dtype=np.int64)
    has_next = st.cnext[1:] <= n
    rows = np.flatnonzero(has_next) + 1
    rilcp[rows] = ilcp[st.cnext[rows]]
    return IlcpArrays(ilcp, rilcp)


def count_occurrences(text: bytes, pattern: bytes) -> int:
    """Overlapping occurrences of ``pattern`` in ``text`` by sliding window."""
    count = 0
    i = text.find(pattern)
    while i != -1:
        count += 1
        i = text.find(pattern, i + 1)
    return count


def oracle_doc_freq(collection: Collection, pattern) -> dict[int, int]:
    """Ground-truth document frequencies by scanning every document."""
    pattern = check_pattern(pattern)
    out = {}
    for k, doc in enumerate(collection.docs, 1):
        f = count_occurrences(doc, pattern)
        if f:
            out[k] = f
    return out
