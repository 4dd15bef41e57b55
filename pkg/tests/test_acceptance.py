"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines are repeated in the terminal summary) or directly
with ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from docfreq import container, suffix
from docfreq.collection import Collection
from docfreq.ilcp import DoubleRleIlcp, IlcpIndex, RleIlcp
from docfreq.index import METHODS, BuildConfig, DocFreqIndex
from docfreq.pseudoalign import Status, assign
from docfreq.rindex import RIndex
from docfreq.synthgen import DNA, LETTERS, gen_concat, mutate

from conftest import random_patterns

RESULTS = []
ALPHABETS = {"binary": b"ab", "dna": DNA, "letters": LETTERS}


def report(num, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


# ---------------------------------------------------------------------------
# grid shared by criteria 1, 2, 3 and 6


def _grid_collections():
    rng = np.random.default_rng(2024)
    out = []
    for t in (1, 2, 3, 8, 16):
        for name, alpha in ALPHABETS.items():
            lut = np.frombuffer(alpha, dtype=np.uint8)
            lens = np.exp(rng.uniform(math.log(10), math.log(5000), size=t)).astype(int)
            lens[0] = 10 if t > 1 else lens[0]
            if t > 1:
                lens[1] = 5000
            docs = [lut[rng.integers(0, len(alpha), size=int(m))].tobytes() for m in lens]
            out.append((f"t={t} {name}", Collection.from_docs(docs), alpha))
    for d in (2, 10):
        for R in (0.0, 0.001, 0.01, 0.1):
            coll = gen_concat(d, 4 * d, R, 400, seed=int(R * 1000) + d)
            out.append((f"concat d={d} R={R}", coll, LETTERS))
    return out


def _grid_patterns(coll, alpha, seed):
    rng = np.random.default_rng(seed)
    pats = random_patterns(coll, rng, 196, max_len=16, alphabet=alpha)
    # symbols outside the collection alphabet, and lengths 1 and 16 for sure
    pats += [b"#", b"Z#", coll.docs[0][:1], (coll.docs[-1] * 16)[:16]]
    return pats


@pytest.fixture(scope="module")
def grid():
    out = []
    for k, (name, coll, alpha) in enumerate(_grid_collections()):
        provider = "grammar-diff" if k % 2 == 0 else "plain"
        idx = DocFreqIndex.build(coll, BuildConfig(METHODS, provider, seed=k))
        out.append((name, coll, idx, _grid_patterns(coll, alpha, k)))
    return out


def test_criterion_1_cross_method(grid):
    start = time.perf_counter()
    bad, queries, absent = [], 0, 0
    for name, coll, idx, pats in grid:
        for pat in pats:
            want = suffix.oracle_doc_freq(coll, pat)
            absent += not want
            for method in METHODS:
                queries += 1
                got = idx.query(pat, method)
                if got != want:
                    bad.append((name, method, pat))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    detail = f"{len(grid)} collections, {queries} queries, {absent} oracle-empty answers, {elapsed:.1f}s"
    if bad:
        detail += f", first mismatch {bad[0]}"
    assert report(1, "cross-method oracle equivalence", ok, detail)


def _leftmost(da, sp, ep):
    _, first = np.unique(da[sp : ep + 1], return_index=True)
    return set((first + sp).tolist())


def _rightmost(da, sp, ep):
    seg = da[sp : ep + 1][::-1]
    _, first = np.unique(seg, return_index=True)
    return set((ep - first).tolist())


def _boundary_fixtures():
    """Same-document run inside, clipped at the left, clipped at the right, two reporters."""

    def q(ilcp, da, sp, ep, m):
        s = DoubleRleIlcp.build_from(RleIlcp.build(np.array([0] + ilcp)), np.array([0] + da))
        padded = [0] + da
        return s.distinct_first(sp, ep, m, padded.__getitem__)

    da = [1, 2, 2, 2, 1]
    cases = [
        (q([0, 5, 1, 2, 0], da, 1, 5, 2), {1: 1, 2: 2}),
        (q([0, 5, 1, 2, 0], da, 3, 5, 2), {2: 3, 1: 5}),
        (q([0, 5, 3, 1, 0], da, 1, 2, 2), {1: 1, 2: 2}),
        (q([0, 1, 3, 1, 0], da, 1, 3, 2), {1: 1, 2: 2}),
        (q([1, 2, 0, 0], [1, 1, 2, 1], 2, 4, 3), {1: 2, 2: 3}),
    ]
    return all(got == want for got, want in cases), len(cases)


def test_criterion_2_leftmost_property(grid):
    start = time.perf_counter()
    failures, checked = [], 0
    for name, coll, idx, pats in grid:
        st = suffix.build(coll)
        arrays = suffix.build_ilcp(coll, st)
        da = st.da
        dal = da.tolist()
        getter = dal.__getitem__
        for pat in pats:
            hit = idx.rset.pattern_interval(pat)
            if hit is None:
                continue
            sp, ep = hit
            m = len(pat)
            left, right = _leftmost(da, sp, ep), _rightmost(da, sp, ep)
            small = set((np.flatnonzero(arrays.ilcp[sp : ep + 1] < m) + sp).tolist())
            star_left = set(idx.ilcs.distinct_leftmost(sp, ep, m, getter).values())
            star_right = set(idx.ilcs.distinct_rightmost(sp, ep, m, getter).values())
            checked += 1
            if small != left or star_left != left or star_right != right:
                failures.append((name, pat))
    fixtures_ok, n_fix = _boundary_fixtures()
    elapsed = time.perf_counter() - start
    ok = not failures and fixtures_ok and elapsed < 60
    detail = f"{checked} intervals, {n_fix} boundary fixtures {'ok' if fixtures_ok else 'FAILED'}, {elapsed:.1f}s"
    if failures:
        detail += f", first failure {failures[0]}"
    assert report(2, "ILCP / ILCP-star leftmost-occurrence property", ok, detail)


def _lr_direct(g, lr, sym, t):
    a, b = g.children(sym)
    left, right = set(g.expand(a)), set(g.expand(b))
    l = r = 0
    for doc in range(1, t + 1):
        bit = 1 << (doc - 1)
        if doc not in left:
            l |= bit
        if doc in right:
            r |= bit
    return lr.symbol_lr(sym) == (l, r)


def test_criterion_3_structure(grid):
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    problems = []
    nodes_checked = 0
    for name, coll, idx, pats in grid:
        ri = idx.rset.global_index
        n = coll.n
        st = suffix.build(coll)
        if ri.invert() != coll.concat:
            problems.append((name, "invert"))
        if any(ri.sa_access(ri.isa_access(p)) != p for p in range(1, n + 1)):
            problems.append((name, "sa/isa"))
        if any(ri.sa_access(i) != st.sa[i] for i in rng.integers(1, n + 1, size=500).tolist()):
            problems.append((name, "sa values"))
        g = idx.grammar
        if g.expand() != st.da[1:].tolist():
            problems.append((name, "expand"))
        for _ in range(200):
            l = int(rng.integers(1, n + 1))
            r = int(rng.integers(l, n + 1))
            cover = g.maximal_cover(l, r)
            tiled = [x for sym, _ in cover for x in g.expand(sym)]
            if tiled != st.da[l : r + 1].tolist() or len(cover) > 2 * max(1, g.height):
                problems.append((name, "cover", l, r))
                break
        syms = range(g.n_terms, g.n_symbols)
        if g.nu > 3000:
            syms = rng.choice(np.arange(g.n_terms, g.n_symbols), size=3000, replace=False).tolist()
        for sym in syms:
            nodes_checked += 1
            if not _lr_direct(g, idx.lr, sym, coll.t):
                problems.append((name, "lr", sym))
                break
        if idx.ilcs.left.rho > idx.ilcp.left.rho:
            problems.append((name, "rho"))
        for pat in pats:
            if sum(idx.query(pat).values()) != suffix.count_occurrences(coll.concat, pat):
                problems.append((name, "occ", pat))
                break
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 120
    detail = f"{len(grid)} collections, {nodes_checked} grammar nodes, {elapsed:.1f}s"
    if problems:
        detail += f", first problem {problems[0]}"
    assert report(3, "structural invariants", ok, detail)


def test_criterion_4_trend():
    start = time.perf_counter()
    rows = []
    for R in (0.001, 0.003, 0.01, 0.03):
        coll = gen_concat(10, 1000, R, 1000, seed=0)
        st = suffix.build(coll)
        r = RIndex.build(coll.text[1:], st.sa[1:] - 1, provider=None).r
        arrays = suffix.build_ilcp(coll, st)
        plain = len(container.encode_ilcp(IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=False)))
        starred = len(container.encode_ilcp(IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=True)))
        rows.append((R, r, plain, starred))
    elapsed = time.perf_counter() - start
    rs = [row[1] for row in rows]
    increasing = all(a < b for a, b in zip(rs, rs[1:]))
    smaller = all(s <= p for _, _, p, s in rows)
    ok = increasing and smaller and elapsed < 180
    detail = "; ".join(f"R={R}: r={r} ilcp={p}B ilcp*={s}B" for R, r, p, s in rows) + f"; {elapsed:.1f}s"
    assert report(4, "repetitiveness trend", ok, detail)


def _species_collection(rng, n_species=3, strains=10, length=2000, divergence=0.01):
    sigma = len(DNA)
    lut = np.frombuffer(DNA, dtype=np.uint8)
    docs, strain_seqs = [], []
    for _ in range(n_species):
        base = rng.integers(0, sigma, size=length)
        seqs = [lut[mutate(base, divergence, sigma, rng)].tobytes() for _ in range(strains)]
        strain_seqs.append(seqs)
        docs.append(b"".join(seqs))
    return Collection.from_docs(docs), strain_seqs


def _noisy(read, rng, rate=0.001):
    arr = np.frombuffer(read, dtype=np.uint8).copy()
    hit = np.flatnonzero(rng.random(len(arr)) < rate)
    for i in hit:
        arr[i] = rng.choice([c for c in DNA if c != arr[i]])
    return arr.tobytes()


def test_criterion_5_pseudoalign():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    coll, strains = _species_collection(rng)
    idx = DocFreqIndex.build(coll, BuildConfig(("pdl",)))
    k, read_len, n_reads = 31, 100, 1000
    reads = []
    for _ in range(n_reads):
        sp = int(rng.integers(len(strains)))
        seq = strains[sp][int(rng.integers(len(strains[sp])))]
        s = int(rng.integers(0, len(seq) - read_len + 1))
        reads.append((sp + 1, _noisy(seq[s : s + read_len], rng)))
    lut = np.frombuffer(DNA, dtype=np.uint8)
    randoms = [lut[rng.integers(0, 4, size=read_len)].tobytes() for _ in range(n_reads)]
    rates = {}
    for crit in ("kmer", "maxrun"):
        correct = sum(
            (res := assign(idx, read, k, crit)).status is Status.ASSIGNED and res.doc == sp for sp, read in reads
        )
        unassigned = sum(assign(idx, read, k, crit).status is Status.UNASSIGNED for read in randoms)
        rates[crit] = (correct / n_reads, unassigned / n_reads)
    elapsed = time.perf_counter() - start
    ok = all(c >= 0.95 and u >= 0.99 for c, u in rates.values()) and elapsed < 120
    detail = "; ".join(f"{c}: correct={a:.3f} random-unassigned={b:.3f}" for c, (a, b) in rates.items())
    assert report(5, "pseudoalignment (harness thresholds)", ok, f"{detail}; {elapsed:.1f}s")


def test_criterion_6_serialization(grid, tmp_path):
    start = time.perf_counter()
    bad = []
    for k, (name, coll, idx, pats) in enumerate(grid):
        path = tmp_path / f"{k}.idx"
        container.save(idx, path)
        again = container.load(path)
        if container.dumps(again) != path.read_bytes():
            bad.append((name, "bytes"))
        for pat in pats:
            want = idx.query(pat)
            if any(again.query(pat, m) != want for m in METHODS):
                bad.append((name, pat))
                break
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    detail = f"{len(grid)} indexes, {elapsed:.1f}s" + (f", first problem {bad[0]}" if bad else "")
    assert report(6, "serialization round-trip", ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
