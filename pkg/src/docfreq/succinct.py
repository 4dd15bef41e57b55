"""Rank/select bitvectors, range min/max queries and a wavelet tree.

All query positions are 1-based. These are plain-array versions of the
succinct structures: query semantics match the compact encodings, the
space does not.
"""

from __future__ import annotations

import bisect

import numpy as np

from .errors import EmptyRange, OutOfRange, SelectOverflow


class Bitvector:
    """Static bitvector with rank and select over positions 1..n."""

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=bool)
        self.n = len(bits)
        self.bits = bits
        self._rank = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(bits, out=self._rank[1:])
        self._ones = np.flatnonzero(bits) + 1
        self._zeros = None

    @property
    def ones(self) -> int:
        return int(self._rank[-1])

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(i)
        return int(self.bits[i - 1])

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.n:
            raise OutOfRange(f"rank position {i} outside 0..{self.n}")
        return int(self._rank[i])

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def rank(self, c: int, i: int) -> int:
        return self.rank1(i) if c else self.rank0(i)

    def select1(self, j: int) -> int:
        if j < 1:
            raise OutOfRange(j)
        if j > len(self._ones):
            raise SelectOverflow(f"select_1({j}) but only {len(self._ones)} ones")
        return int(self._ones[j - 1])

    def select0(self, j: int) -> int:
        if self._zeros is None:
            self._zeros = np.flatnonzero(~self.bits) + 1
        if j < 1:
            raise OutOfRange(j)
        if j > len(self._zeros):
            raise SelectOverflow(f"select_0({j}) but only {len(self._zeros)} zeros")
        return int(self._zeros[j - 1])

    def select(self, c: int, j: int) -> int:
        return self.select1(j) if c else self.select0(j)

    def packed(self) -> bytes:
        return np.packbits(self.bits, bitorder="little").tobytes()

    @classmethod
    def unpack(cls, data: bytes, n: int) -> "Bitvector":
        raw = np.frombuffer(data, dtype=np.uint8)
        return cls(np.unpackbits(raw, count=n, bitorder="little").astype(bool))


class SparseBitvector:
    """Bitvector stored as the sorted positions of its ones."""

    def __init__(self, positions, n: int):
        self.n = n
        self.positions = np.asarray(positions, dtype=np.int64)
        self._pos = self.positions.tolist()

    @property
    def ones(self) -> int:
        return len(self._pos)

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.n:
            raise OutOfRange(f"rank position {i} outside 0..{self.n}")
        return bisect.bisect_right(self._pos, i)

    def select1(self, j: int) -> int:
        if j < 1:
            raise OutOfRange(j)
        if j > len(self._pos):
            raise SelectOverflow(f"select_1({j}) but only {len(self._pos)} ones")
        return self._pos[j - 1]

    def __getitem__(self, i: int) -> int:
        k = bisect.bisect_left(self._pos, i)
        return int(k < len(self._pos) and self._pos[k] == i)


class Rmq:
    """Sparse-table range minimum (or maximum) query returning positions.

    Ties resolve to the leftmost extremal position.
    """

    def __init__(self, values, mode: str = "min"):
        if mode not in ("min", "max"):
            raise ValueError(mode)
        self.mode = mode
        vals = np.asarray(values, dtype=np.int64)
        self.values = vals
        n = len(vals)
        self.n = n
        key = vals if mode == "min" else -vals
        self._key = key
        levels = [np.arange(n, dtype=np.int64)]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            a = prev[: n - 2 * span + 1]
            b = prev[span : n - span + 1]
            levels.append(np.where(key[a] <= key[b], a, b))
            span *= 2
        self._levels = levels

    def __call__(self, l: int, r: int) -> int:
        return self.query(l, r)

    def query(self, l: int, r: int) -> int:
        if l > r:
            raise EmptyRange(f"empty range [{l}..{r}]")
        if l < 1 or r > self.n:
            raise OutOfRange(f"range [{l}..{r}] outside 1..{self.n}")
        k = (r - l + 1).bit_length() - 1
        table = self._levels[k]
        a = int(table[l - 1])
        b = int(table[r - (1 << k)])
        return (a if self._key[a] <= self._key[b] else b) + 1


class WaveletTree:
    """Balanced wavelet tree over a sequence with values in 1..sigma."""

    def __init__(self, seq, sigma: int | None = None):
        seq = np.asarray(seq, dtype=np.int64)
        if sigma is None:
            sigma = int(seq.max()) if len(seq) else 1
        self.n = len(seq)
        self.sigma = sigma
        self._nodes = {}
        self._build(seq, 1, sigma)

    def _build(self, seq, lo, hi):
        if lo == hi or len(seq) == 0:
            return
        mid = (lo + hi) // 2
        bits = seq > mid
        self._nodes[(lo, hi)] = Bitvector(bits)
        self._build(seq[~bits], lo, mid)
        self._build(seq[bits], mid + 1, hi)

    def rank(self, c: int, i: int) -> int:
        """Occurrences of ``c`` in seq[1..i]."""
        if not 0 <= i <= self.n:
            raise OutOfRange(f"rank position {i} outside 0..{self.n}")
        if not 1 <= c <= self.sigma:
            return 0
        lo, hi = 1, self.sigma
        while lo < hi:
            node = self._nodes.get((lo, hi))
            if node is None:
                return 0
            mid = (lo + hi) // 2
            if c <= mid:
                i = node.rank0(i)
                hi = mid
            else:
                i = node.rank1(i)
                lo = mid + 1
        return i

    def access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(i)
        lo, hi = 1, self.sigma
        while lo < hi:
            node = self._nodes[(lo, hi)]
            mid = (lo + hi) // 2
            if node[i]:
                i = node.rank1(i)
                lo = mid + 1
            else:
                i = node.rank0(i)
                hi = mid
        return lo

    def select(self, c: int, j: int) -> int:
        """Position of the ``j``-th occurrence of ``c``."""
        path = []
        lo, hi = 1, self.sigma
        while lo < hi:
            node = self._nodes.get((lo, hi))
            if node is None:
                raise SelectOverflow(f"symbol {c} absent")
            mid = (lo + hi) // 2
            bit = int(c > mid)
            path.append((node, bit))
            lo, hi = (mid + 1, hi) if bit else (lo, mid)
        if lo != c:
            raise SelectOverflow(f"symbol {c} absent")
        for node, bit in reversed(path):
            j = node.select(bit, j)
        if j > self.n:
            raise SelectOverflow(j)
        return j

    def node_bits(self):
        """Node bitvectors in preorder; enough to rebuild the tree given n and sigma."""
        out = []

        def walk(lo, hi):
            node = self._nodes.get((lo, hi))
            if node is None:
                return
            out.append(node.bits)
            mid = (lo + hi) // 2
            walk(lo, mid)
            walk(mid + 1, hi)

        walk(1, self.sigma)
        return out

    @classmethod
    def from_node_bits(cls, n: int, sigma: int, bit_arrays) -> "WaveletTree":
        self = cls.__new__(cls)
        self.n = n
        self.sigma = sigma
        self._nodes = {}
        it = iter(bit_arrays)

        def walk(lo, hi, length):
            if lo == hi or length == 0:
                return
            bv = Bitvector(next(it))
            assert bv.n == length
            self._nodes[(lo, hi)] = bv
            mid = (lo + hi) // 2
            walk(lo, mid, length - bv.ones)
            walk(mid + 1, hi, bv.ones)

        walk(1, sigma, n)
        return self
