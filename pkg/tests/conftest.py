import numpy as np
import pytest
from hypothesis import strategies as st

from docfreq.collection import Collection
from docfreq.index import METHODS, BuildConfig, DocFreqIndex

CORPUS_A = [b"ata", b"tata"]


@pytest.fixture(scope="session")
def corpus_a():
    return Collection.from_docs(CORPUS_A)


@pytest.fixture(scope="session")
def index_a(corpus_a):
    return DocFreqIndex.build(corpus_a, BuildConfig(METHODS))


def docs_strategy(alphabet="ab", max_docs=5, max_len=25):
    doc = st.text(alphabet=alphabet, min_size=1, max_size=max_len).map(str.encode)
    return st.lists(doc, min_size=1, max_size=max_docs)


def naive_sa(text: bytes) -> list[int]:
    """1-based suffix array by comparison sort."""
    return [i + 1 for i in sorted(range(len(text)), key=lambda i: text[i:])]


def leftmost_scan(da, sp, ep):
    out = {}
    for i in range(sp, ep + 1):
        out.setdefault(int(da[i]), i)
    return out


def rightmost_scan(da, sp, ep):
    out = {}
    for i in range(ep, sp - 1, -1):
        out.setdefault(int(da[i]), i)
    return out


def random_patterns(coll, rng, count, max_len=16, alphabet=None):
    """Mix of substrings of the documents and random strings (mostly absent)."""
    alphabet = alphabet or bytes(sorted(set(b"".join(coll.docs))))
    out = []
    for k in range(count):
        m = int(rng.integers(1, max_len + 1))
        doc = coll.docs[int(rng.integers(coll.t))]
        if k % 2 == 0 and m <= len(doc):
            s = int(rng.integers(0, len(doc) - m + 1))
            out.append(doc[s : s + m])
        else:
            out.append(bytes(rng.choice(np.frombuffer(alphabet, dtype=np.uint8), size=m).tolist()))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
