"""Binary balanced straight-line grammars over integer sequences.

Construction alternates two kinds of pairing rounds over the current
symbol sequence:

* block rounds pair equal neighbours inside maximal runs, left to right;
* partition rounds give every symbol a pseudo-random left/right type for
  the round and pair each left-typed symbol with a right-typed successor.

Both decisions depend only on a symbol and its neighbour, so repeated
substrings are parsed the same way away from their ends and share
nonterminals. Pairs are hash-consed across all rounds. Every nonterminal
has exactly two children; leftover symbols move on unchanged.

Symbol ids ``0..n_terms-1`` are terminals (indexes into ``term_values``),
then nonterminals in creation order, so children always precede parents.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyInput, EmptyRange, OutOfRange

_MASK = (1 << 64) - 1


def _side_bit(sym: int, rnd: int, seed: int) -> int:
    x = (sym * 0x9E3779B97F4A7C15 + rnd * 0xBF58476D1CE4E5B9 + seed) & _MASK
    x ^= x >> 31
    x = (x * 0x94D049BB133111EB) & _MASK
    x ^= x >> 29
    return x & 1


class BalancedSlp:
    def __init__(self, term_values, left, right, root: int):
        self.term_values = np.asarray(term_values, dtype=np.int64)
        self.n_terms = len(self.term_values)
        self.left = list(left)
        self.right = list(right)
        self.root = root
        self._term_list = self.term_values.tolist()
        self.length = [1] * self.n_terms
        self.depth = [0] * self.n_terms
        for a, b in zip(self.left, self.right):
            self.length.append(self.length[a] + self.length[b])
            self.depth.append(1 + max(self.depth[a], self.depth[b]))

    @classmethod
    def build(cls, seq, seed: int = 0) -> "BalancedSlp":
        seq = np.asarray(seq, dtype=np.int64)
        if len(seq) == 0:
            raise EmptyInput("cannot build a grammar over an empty sequence")
        values, cur = np.unique(seq, return_inverse=True)
        cur = cur.ravel().tolist()
        n_terms = len(values)
        left, right = [], []
        pairs = {}

        def rule(a, b):
            key = (a, b)
            sym = pairs.get(key)
            if sym is None:
                sym = n_terms + len(left)
                pairs[key] = sym
                left.append(a)
                right.append(b)
            return sym

        rnd = 0
        while len(cur) > 1:
            out = []
            i, m = 0, len(cur)
            if rnd % 2 == 0:
                while i < m:
                    if i + 1 < m and cur[i] == cur[i + 1]:
                        out.append(rule(cur[i], cur[i]))
                        i += 2
                    else:
                        out.append(cur[i])
                        i += 1
            else:
                side = {}
                for s in cur:
                    if s not in side:
                        side[s] = _side_bit(s, rnd, seed)
                while i < m:
                    if i + 1 < m and side[cur[i]] == 0 and side[cur[i + 1]] == 1:
                        out.append(rule(cur[i], cur[i + 1]))
                        i += 2
                    else:
                        out.append(cur[i])
                        i += 1
            cur = out
            rnd += 1
        return cls(values, left, right, cur[0])

    @classmethod
    def from_rules(cls, term_values, rules, root: int) -> "BalancedSlp":
        """Grammar from explicit ``(left, right)`` rules, mostly for fixtures."""
        left = [a for a, _ in rules]
        right = [b for _, b in rules]
        return cls(term_values, left, right, root)

    @property
    def n(self) -> int:
        return self.length[self.root]

    @property
    def nu(self) -> int:
        """Number of nonterminals."""
        return len(self.left)

    @property
    def n_symbols(self) -> int:
        return self.n_terms + len(self.left)

    @property
    def height(self) -> int:
        return self.depth[self.root]

    def is_terminal(self, sym: int) -> bool:
        return sym < self.n_terms

    def children(self, sym: int) -> tuple[int, int]:
        k = sym - self.n_terms
        return self.left[k], self.right[k]

    def value(self, sym: int) -> int:
        """Sequence value of a terminal symbol."""
        return self._term_list[sym]

    def expand(self, sym: int | None = None) -> list:
        if sym is None:
            sym = self.root
        out = []
        stack = [sym]
        nt = self.n_terms
        while stack:
            s = stack.pop()
            if s < nt:
                out.append(self._term_list[s])
            else:
                stack.append(self.right[s - nt])
                stack.append(self.left[s - nt])
        return out

    def random_access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(f"position {i} outside 1..{self.n}")
        sym, nt = self.root, self.n_terms
        length = self.length
        while sym >= nt:
            a = self.left[sym - nt]
            if i <= length[a]:
                sym = a
            else:
                i -= length[a]
                sym = self.right[sym - nt]
        return self._term_list[sym]

    def maximal_cover(self, l: int, r: int) -> list[tuple[int, int]]:
        """Maximal parse-tree nodes tiling positions ``l..r``, as ``(symbol, start)`` pairs."""
        if l > r:
            raise EmptyRange(f"empty range [{l}..{r}]")
        if l < 1 or r > self.n:
            raise OutOfRange(f"range [{l}..{r}] outside 1..{self.n}")
        out = []
        nt, length = self.n_terms, self.length
        stack = [(self.root, 1)]
        while stack:
            sym, start = stack.pop()
            end = start + length[sym] - 1
            if l <= start and end <= r:
                out.append((sym, start))
                continue
            a, b = self.left[sym - nt], self.right[sym - nt]
            mid = start + length[a]
            if r >= mid:
                stack.append((b, mid))
            if l < mid:
                stack.append((a, start))
        return out

    def fold(self, leaf, combine) -> list:
        """Bottom-up per-symbol values: ``leaf(value)`` for terminals, ``combine(l, r)`` otherwise."""
        vals = [leaf(v) for v in self._term_list]
        for a, b in zip(self.left, self.right):
            vals.append(combine(vals[a], vals[b]))
        return vals
