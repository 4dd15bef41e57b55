"""Run-length interleaved LCP arrays and distinct-document traversal.

``RleIlcp`` is the run-length encoded ILCP. ``DoubleRleIlcp`` additionally
merges maximal groups of consecutive runs whose rows all belong to one
document, keeping the minimum value, and flags those groups.

Both answer "leftmost occurrence of every distinct document in
DA[sp..ep]" by recursing with range-minimum queries over run values and
keeping runs whose value is below the pattern length. The rightmost
variant is the same structure built over the right-LCP interleaving in
reversed row order.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyInterval
from .succinct import Rmq, SparseBitvector


class RleIlcp:
    same_doc = None

    def __init__(self, values, starts, n: int):
        self.values = np.asarray(values, dtype=np.int64)
        self.bounds = SparseBitvector(starts, n)
        self.n = n
        self.rmq = Rmq(self.values)
        self._values = self.values.tolist()
        self._starts = self.bounds.positions.tolist() + [n + 1]

    @classmethod
    def build(cls, arr) -> "RleIlcp":
        """Run-length encode a padded array ``arr[1..n]``."""
        body = np.asarray(arr, dtype=np.int64)[1:]
        n = len(body)
        heads = np.flatnonzero(np.concatenate(([True], body[1:] != body[:-1])))
        return cls(body[heads], heads + 1, n)

    @property
    def rho(self) -> int:
        return len(self._values)

    def run_span(self, i: int) -> tuple[int, int]:
        return self._starts[i - 1], self._starts[i] - 1

    def lengths(self) -> np.ndarray:
        return np.diff(np.asarray(self._starts))

    def decode(self) -> np.ndarray:
        return np.concatenate(([0], np.repeat(self.values, self.lengths())))

    def distinct_first(self, sp: int, ep: int, m: int, da) -> dict[int, int]:
        """First row of every distinct document in ``sp..ep``; ``da(row)`` resolves documents."""
        if sp > ep:
            raise EmptyInterval(f"empty interval [{sp}..{ep}]")
        lo, hi = self.bounds.rank1(sp), self.bounds.rank1(ep)
        flags = self.same_doc
        vals, out = self._values, {}
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            if a > b:
                continue
            i = self.rmq.query(a, b)
            if vals[i - 1] >= m:
                continue
            s = max(sp, self._starts[i - 1])
            e = min(ep, self._starts[i] - 1)
            if flags is not None and flags[i - 1]:
                # one document throughout: its first row inside the interval
                rows = (s,)
            else:
                rows = range(s, e + 1)
            for k in rows:
                d = da(k)
                prev = out.get(d)
                if prev is None or k < prev:
                    out[d] = k
            stack.append((i + 1, b))
            stack.append((a, i - 1))
        return out


class DoubleRleIlcp(RleIlcp):
    def __init__(self, values, starts, n: int, same_doc):
        super().__init__(values, starts, n)
        self.same_doc = np.asarray(same_doc, dtype=bool).tolist()

    @classmethod
    def build_from(cls, rle: RleIlcp, da) -> "DoubleRleIlcp":
        """Greedy left-to-right merge of same-document runs of ``rle``; ``da`` is padded."""
        da = np.asarray(da, dtype=np.int64)
        starts = np.asarray(rle._starts[:-1], dtype=np.int64)
        lo = np.minimum.reduceat(da[1:], starts - 1)
        hi = np.maximum.reduceat(da[1:], starts - 1)
        run_doc = np.where(lo == hi, lo, 0).tolist()
        vals = rle._values
        out_vals, out_starts, flags = [], [], []
        i, rho = 0, len(vals)
        while i < rho:
            d = run_doc[i]
            j = i
            if d:
                while j + 1 < rho and run_doc[j + 1] == d:
                    j += 1
            out_vals.append(min(vals[i : j + 1]))
            out_starts.append(int(starts[i]))
            flags.append(bool(d))
            i = j + 1
        return cls(out_vals, out_starts, rle.n, flags)


class Reversed:
    """View of a structure built over reversed rows, answering in original rows."""

    def __init__(self, inner: RleIlcp):
        self.inner = inner
        self.n = inner.n

    def distinct_first(self, sp, ep, m, da):
        n1 = self.n + 1
        res = self.inner.distinct_first(n1 - ep, n1 - sp, m, lambda k: da(n1 - k))
        return {d: n1 - k for d, k in res.items()}


def _reverse_padded(arr) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    return np.concatenate(([0], arr[1:][::-1]))


class IlcpIndex:
    """Left (from ILCP) and right (from right-LCP ILCP) structures, plain or starred."""

    def __init__(self, left: RleIlcp, right_rev: RleIlcp, star: bool):
        self.left = left
        self.right_rev = right_rev
        self.right = Reversed(right_rev)
        self.star = star

    @classmethod
    def build(cls, ilcp, rilcp, da, star: bool) -> "IlcpIndex":
        left = RleIlcp.build(ilcp)
        right = RleIlcp.build(_reverse_padded(rilcp))
        if star:
            left = DoubleRleIlcp.build_from(left, da)
            right = DoubleRleIlcp.build_from(right, _reverse_padded(da))
        return cls(left, right, star)

    def distinct_leftmost(self, sp, ep, m, da) -> dict[int, int]:
        return self.left.distinct_first(sp, ep, m, da)

    def distinct_rightmost(self, sp, ep, m, da) -> dict[int, int]:
        return self.right.distinct_first(sp, ep, m, da)

    def extremes(self, sp, ep, m, da) -> dict[int, tuple[int, int]]:
        lefts = self.distinct_leftmost(sp, ep, m, da)
        rights = self.distinct_rightmost(sp, ep, m, da)
        return {d: (lefts[d], rights[d]) for d in lefts}
