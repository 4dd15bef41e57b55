"""Reference document-listing algorithms used as baselines and cross-checks."""

from __future__ import annotations

import numpy as np

from .errors import EmptyInterval
from .succinct import Rmq, WaveletTree


class ChainIndex:
    """C / CNext arrays (previous / next row of the same document) with RMQs."""

    def __init__(self, c, cnext):
        self.c = np.asarray(c, dtype=np.int64)
        self.cnext = np.asarray(cnext, dtype=np.int64)
        self._c = self.c.tolist()
        self.rmq_min = Rmq(self.c[1:], "min")
        self.rmq_max = Rmq(self.cnext[1:], "max")

    def muthu_list(self, sp: int, ep: int, da) -> list[int]:
        """Distinct documents of DA[sp..ep]; stops on ``C[i] >= sp``."""
        if sp > ep:
            raise EmptyInterval(f"empty interval [{sp}..{ep}]")
        out = []
        stack = [(sp, ep)]
        c = self._c
        while stack:
            a, b = stack.pop()
            if a > b:
                continue
            i = self.rmq_min.query(a, b)
            if c[i] >= sp:
                continue
            out.append(da(i))
            stack.append((i + 1, b))
            stack.append((a, i - 1))
        return out

    def leftmost(self, sp: int, ep: int, da) -> dict[int, int]:
        """Leftmost row per document; a set of reported documents is the stop condition."""
        if sp > ep:
            raise EmptyInterval(f"empty interval [{sp}..{ep}]")
        out = {}
        stack = [(sp, ep)]
        while stack:
            a, b = stack.pop()
            if a > b:
                continue
            i = self.rmq_min.query(a, b)
            d = da(i)
            if d in out:
                continue
            out[d] = i
            stack.append((i + 1, b))
            stack.append((a, i - 1))
        return out

    def rightmost(self, sp: int, ep: int, da) -> dict[int, int]:
        if sp > ep:
            raise EmptyInterval(f"empty interval [{sp}..{ep}]")
        out = {}
        stack = [(sp, ep)]
        while stack:
            a, b = stack.pop()
            if a > b:
                continue
            i = self.rmq_max.query(a, b)
            d = da(i)
            if d in out:
                continue
            out[d] = i
            stack.append((a, i - 1))
            stack.append((i + 1, b))
        return out


class WtDocArray:
    """Document array held in a wavelet tree, frequencies by two rank queries."""

    def __init__(self, wt: WaveletTree):
        self.wt = wt

    @classmethod
    def build(cls, da, t: int) -> "WtDocArray":
        return cls(WaveletTree(np.asarray(da)[1:], t))

    def da(self, i: int) -> int:
        return self.wt.access(i)

    def freq(self, doc: int, sp: int, ep: int) -> int:
        return self.wt.rank(doc, ep) - self.wt.rank(doc, sp - 1)


def scan_freq(rset, pattern) -> dict[int, int]:
    """Locate every occurrence and tally its document."""
    coll = rset.collection
    out = {}
    for p in rset.global_index.locate_pattern(pattern):
        d = coll.doc_of(p)
        out[d] = out.get(d, 0) + 1
    return out
