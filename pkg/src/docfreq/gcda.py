"""Grammar-compressed document array with leftmost/rightmost bitvectors.

For each nonterminal and document ``i`` (bit ``i - 1``):

* ``L[i] = 0`` iff ``i`` occurs and its leftmost occurrence is in the left child;
* ``R[i] = 1`` iff ``i`` occurs and its rightmost occurrence is in the right child;
* ``(L[i], R[i]) = (1, 0)`` iff ``i`` does not occur.

Bitvectors are Python integers, so the combining rules run a machine word
at a time.
"""

from __future__ import annotations

from .grammar import BalancedSlp


def combine(left, right, mask):
    """Bitvectors of a node from those of its left and right child."""
    l_left, r_left = left
    l_right, r_right = right
    return l_left & ~r_left & mask, (~l_right | r_right) & mask


def present(lr, mask) -> int:
    """Bitset of documents occurring below a node."""
    l, r = lr
    return (~l | r) & mask


class _Node:
    __slots__ = ("lr", "left", "right", "sym", "start")

    def __init__(self, lr, left=None, right=None, sym=None, start=0):
        self.lr = lr
        self.left = left
        self.right = right
        self.sym = sym
        self.start = start


class LrIndex:
    def __init__(self, grammar: BalancedSlp, t: int, lr: list):
        self.grammar = grammar
        self.t = t
        self.mask = (1 << t) - 1
        self.lr = lr  # per nonterminal, indexed by sym - n_terms

    @classmethod
    def build(cls, grammar: BalancedSlp, t: int) -> "LrIndex":
        mask = (1 << t) - 1
        vals = grammar.fold(
            lambda doc: (mask ^ (1 << (doc - 1)), 1 << (doc - 1)),
            lambda a, b: combine(a, b, mask),
        )
        return cls(grammar, t, vals[grammar.n_terms :])

    def symbol_lr(self, sym: int):
        g = self.grammar
        if sym < g.n_terms:
            bit = 1 << (g.value(sym) - 1)
            return self.mask ^ bit, bit
        return self.lr[sym - g.n_terms]

    def _tree(self, sp: int, ep: int):
        """Temporary balanced tree over the maximal cover nodes of ``sp..ep``."""
        level = [_Node(self.symbol_lr(s), sym=s, start=st) for s, st in self.grammar.maximal_cover(sp, ep)]
        height = 0
        while len(level) > 1:
            nxt = []
            for k in range(0, len(level) - 1, 2):
                a, b = level[k], level[k + 1]
                nxt.append(_Node(combine(a.lr, b.lr, self.mask), a, b))
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
            height += 1
        return level[0], height

    def tree_height(self, sp: int, ep: int) -> int:
        return self._tree(sp, ep)[1]

    def _descend(self, node: _Node, bit: int, rightmost: bool) -> int:
        while node.sym is None:
            l, r = node.lr
            if rightmost:
                node = node.right if r & bit else node.left
            else:
                node = node.right if l & bit else node.left
        g = self.grammar
        sym, pos, nt = node.sym, node.start, g.n_terms
        while sym >= nt:
            a, b = g.left[sym - nt], g.right[sym - nt]
            l, r = self.symbol_lr(sym)
            go_right = (r & bit) if rightmost else (l & bit)
            if go_right:
                pos += g.length[a]
                sym = b
            else:
                sym = a
        return pos

    def extremes(self, sp: int, ep: int) -> dict[int, tuple[int, int]]:
        """Leftmost and rightmost row of every document occurring in DA[sp..ep]."""
        root, _ = self._tree(sp, ep)
        docs = present(root.lr, self.mask)
        out = {}
        while docs:
            low = docs & -docs
            doc = low.bit_length()
            out[doc] = (self._descend(root, low, False), self._descend(root, low, True))
            docs ^= low
        return out
