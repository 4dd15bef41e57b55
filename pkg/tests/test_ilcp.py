import numpy as np
import pytest
from hypothesis import given, settings

from docfreq import suffix
from docfreq.collection import Collection
from docfreq.errors import EmptyInterval
from docfreq.ilcp import DoubleRleIlcp, IlcpIndex, RleIlcp

from conftest import docs_strategy, leftmost_scan, rightmost_scan


def pad(xs):
    return np.array([0] + list(xs))


def star(ilcp, da):
    return DoubleRleIlcp.build_from(RleIlcp.build(pad(ilcp)), pad(da))


def test_rle_examples():
    rle = RleIlcp.build(pad([0, 2, 3, 0, 1]))
    assert rle.rho == 5
    assert RleIlcp.build(pad([1, 1, 1])).rho == 1
    assert rle.decode()[1:].tolist() == [0, 2, 3, 0, 1]


def test_double_rle_example():
    s = star([0, 2, 3, 0, 1], [1, 1, 1, 2, 2])
    assert s.values.tolist() == [0, 0]
    assert s.lengths().tolist() == [3, 2]
    assert s.same_doc == [True, True]


def test_mixed_run_not_merged():
    s = star([0, 0, 5, 5], [1, 2, 2, 2])
    # run (0,0) spans two documents, run (5,5) is one document
    assert s.values.tolist() == [0, 5]
    assert s.same_doc == [False, True]


# Targeted fixtures for the boundary cases of same-document runs.
# Rows 2..4 belong to doc 2 and merge into one run of value 1.
ILCP = [0, 5, 1, 2, 0]
DA = [1, 2, 2, 2, 1]


def query(s, sp, ep, m, da):
    padded = [0] + da
    return s.distinct_first(sp, ep, m, lambda k: padded[k])


def test_run_inside_interval():
    s = star(ILCP, DA)
    assert s.values.tolist() == [0, 1, 0]
    # doc 2's first row carries value 5 >= m, but the merged run starts there
    assert query(s, 1, 5, 2, DA) == {1: 1, 2: 2}


def test_run_broken_by_left_boundary():
    s = star(ILCP, DA)
    assert query(s, 3, 5, 2, DA) == {2: 3, 1: 5}
    assert query(s, 4, 4, 2, DA) == {2: 4}


def test_run_broken_by_right_boundary():
    # the small value lies beyond ep; no earlier small value inside
    s = star([0, 5, 3, 1, 0], DA)
    assert query(s, 1, 2, 2, DA) == {1: 1, 2: 2}
    # an earlier small value inside the clipped part
    s = star([0, 1, 3, 1, 0], DA)
    assert query(s, 1, 3, 2, DA) == {1: 1, 2: 2}


def test_leftmost_of_two():
    da = [1, 1, 2, 1]
    s = star([1, 2, 0, 0], da)
    # doc 1 is reported by the clipped same-doc run (row 2) and the mixed run (row 4)
    assert query(s, 2, 4, 3, da) == {1: 2, 2: 3}


def test_empty_interval():
    with pytest.raises(EmptyInterval):
        query(star(ILCP, DA), 3, 2, 1, DA)


def intervals(coll, st):
    """(sp, ep, m) for every distinct substring of length <= 4."""
    text = coll.concat
    seen = set()
    sa = st.sa
    for m in range(1, 5):
        for p in range(len(text) - m + 1):
            pat = text[p : p + m]
            if pat in seen or min(pat) < 2:
                continue
            seen.add(pat)
            rows = [i for i in range(1, coll.n + 1) if text[sa[i] - 1 : sa[i] - 1 + m] == pat]
            yield rows[0], rows[-1], m


@given(docs_strategy("ab", max_docs=4, max_len=20))
@settings(max_examples=60)
def test_small_values_mark_leftmost_plain(docs):
    coll = Collection.from_docs(docs)
    st = suffix.build(coll)
    ilcp = suffix.build_ilcp(coll, st).ilcp
    for sp, ep, m in intervals(coll, st):
        small = {i for i in range(sp, ep + 1) if ilcp[i] < m}
        assert small == set(leftmost_scan(st.da, sp, ep).values())


@given(docs_strategy("ab", max_docs=4, max_len=20))
@settings(max_examples=60)
def test_extremes_plain_and_star(docs):
    coll = Collection.from_docs(docs)
    st = suffix.build(coll)
    arrays = suffix.build_ilcp(coll, st)
    da = st.da.tolist()
    getter = lambda k: da[k]
    plain = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=False)
    starred = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=True)
    assert starred.left.rho <= plain.left.rho
    assert starred.right_rev.rho <= plain.right_rev.rho
    for sp, ep, m in intervals(coll, st):
        left, right = leftmost_scan(da, sp, ep), rightmost_scan(da, sp, ep)
        for idx in (plain, starred):
            assert idx.distinct_leftmost(sp, ep, m, getter) == left
            assert idx.distinct_rightmost(sp, ep, m, getter) == right


@given(docs_strategy("ab", max_docs=5, max_len=15))
@settings(max_examples=60)
def test_star_runs_structure(docs):
    coll = Collection.from_docs(docs)
    st = suffix.build(coll)
    ilcp = suffix.build_ilcp(coll, st).ilcp
    rle = RleIlcp.build(ilcp)
    s = DoubleRleIlcp.build_from(rle, st.da)
    plain_starts = set(rle._starts)
    for k in range(1, s.rho + 1):
        a, b = s.run_span(k)
        assert a in plain_starts and b + 1 in plain_starts
        assert s.values[k - 1] == ilcp[a : b + 1].min()
        inner = [x for x in plain_starts if a < x <= b]
        if inner:
            assert s.same_doc[k - 1] and len(set(st.da[a : b + 1].tolist())) == 1
    if s.rho == rle.rho:
        for k in range(1, rle.rho):
            a, _ = rle.run_span(k)
            _, d = rle.run_span(k + 1)
            assert len(set(st.da[a : d + 1].tolist())) > 1
