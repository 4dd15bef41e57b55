import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from docfreq import suffix
from docfreq.collection import Collection
from docfreq.errors import DocMismatch, EmptyPattern, OutOfRange
from docfreq.rindex import GrammarDiffSa, PlainSa, RIndex, RIndexSet

from conftest import docs_strategy, naive_sa


def naive_bwt(text):
    return bytes(text[p - 2] if p > 1 else text[-1] for p in naive_sa(text))


def test_runs_small():
    ri = RIndex.build(b"aaaa\x00")
    assert ri.bwt() == naive_bwt(b"aaaa\x00")
    assert ri.r <= 3
    assert sum(ri.run_len.tolist()) == 5


@given(st.binary(min_size=0, max_size=60).map(lambda b: bytes(x % 3 + 2 for x in b) + b"\x00"),
       st.sampled_from(["plain", "grammar-diff"]))
@settings(max_examples=80)
def test_bwt_invert_and_access(text, provider):
    ri = RIndex.build(text, provider=provider)
    assert ri.bwt() == naive_bwt(text)
    assert ri.invert() == text
    sa = naive_sa(text)
    for i in range(1, len(text) + 1):
        assert ri.sa_access(i) == sa[i - 1]
        assert ri.isa_access(sa[i - 1]) == i


def test_lf_cycle(corpus_a):
    ri = RIndex.build(corpus_a.concat)
    row, seen = 1, set()
    for _ in range(corpus_a.n):
        seen.add(row)
        row = ri.lf(row)
    assert seen == set(range(1, corpus_a.n + 1))


def test_corpus_a_search(corpus_a):
    ri = RIndex.build(corpus_a.concat)
    sp, ep = ri.pattern_interval(b"ta")
    assert ep - sp + 1 == 3
    assert sorted(ri.locate(sp, ep)) == [2, 5, 7]
    assert ri.pattern_interval(b"g") is None
    with pytest.raises(EmptyPattern):
        ri.pattern_interval(b"")


def test_width_one_sample(corpus_a):
    ri = RIndex.build(corpus_a.concat)
    sa = naive_sa(corpus_a.concat)
    # the last row of every run is sampled
    ends = np.cumsum(ri.run_len)
    for k, row in enumerate(ends.tolist()):
        assert ri.end_samples[k] == sa[row - 1]
        assert ri.locate(row, row) == [sa[row - 1]]


def test_locate_random_patterns():
    rng = np.random.default_rng(5)
    text = bytes(rng.choice(list(b"acg"), size=400).tolist()) + b"\x00"
    ri = RIndex.build(text, provider="grammar-diff")
    for _ in range(100):
        m = int(rng.integers(1, 6))
        s = int(rng.integers(0, 400 - m))
        pat = text[s : s + m]
        occ = [i + 1 for i in range(len(text) - m + 1) if text[i : i + m] == pat]
        assert sorted(ri.locate_pattern(pat)) == occ
        assert ri.count(pat) == len(occ)


def test_grammar_diff_matches_plain():
    rng = np.random.default_rng(2)
    text = bytes(rng.choice(list(b"ab"), size=3000).tolist()) + b"\x00"
    sa = suffix.suffix_array(np.frombuffer(text, dtype=np.uint8)) + 1
    isa = np.empty_like(sa)
    isa[sa - 1] = np.arange(1, len(sa) + 1)
    plain = PlainSa(sa, isa)
    gd = GrammarDiffSa.from_arrays(sa, isa)
    for i in rng.integers(1, len(sa) + 1, size=10000).tolist():
        assert gd.sa(i) == plain.sa(i)
        assert gd.isa(i) == plain.isa(i)
    with pytest.raises(OutOfRange):
        gd.sa(0)


@given(docs_strategy("ab", max_docs=4, max_len=20))
@settings(max_examples=50)
def test_freq_from_extremes(docs):
    coll = Collection.from_docs(docs)
    rset = RIndexSet.build(coll, provider="plain")
    for m in (1, 2, 3):
        for d in range(1, coll.t + 1):
            doc = coll.docs[d - 1]
            for s in range(len(doc) - m + 1):
                pat = doc[s : s + m]
                sp, ep = rset.pattern_interval(pat)
                rows = [i for i in range(sp, ep + 1) if rset.da(i) == d]
                assert rset.freq_from_extremes(d, rows[0], rows[-1]) == len(rows)
    if coll.t > 1:
        sp, ep = 1, coll.n
        other = next(i for i in range(1, coll.n + 1) if rset.da(i) != 1)
        with pytest.raises(DocMismatch):
            rset.freq_from_extremes(1, other, other)
