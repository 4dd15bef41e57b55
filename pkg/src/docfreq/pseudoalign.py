"""Read assignment on top of a document-listing index.

Two criteria:

* ``kmer``: a document qualifies when some k-mer of the read occurs in it
  and every other k-mer occurs in it or nowhere;
* ``maxrun``: backward-search the read from its end, cut it where the SA
  interval empties, and keep the documents listed by every matched
  segment of length >= k.

Either way the read is ASSIGNED when exactly one document qualifies.

k-mers containing ``N`` never match. Reads are independent, so callers
may process them in parallel against one shared index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ReadShorterThanK

_COMPLEMENT = bytes.maketrans(b"ACGTNacgtn", b"TGCANtgcan")


def revcomp(seq: bytes) -> bytes:
    return seq.translate(_COMPLEMENT)[::-1]


class Status(enum.Enum):
    ASSIGNED = "ASSIGNED"
    AMBIGUOUS = "AMBIGUOUS"
    UNASSIGNED = "UNASSIGNED"


@dataclass
class Segment:
    start: int  # 1-based, inclusive
    end: int
    freqs: dict | None = None  # reported only when the segment is long enough

    def __len__(self):
        return self.end - self.start + 1


@dataclass
class AssignmentResult:
    read_id: str
    status: Status
    docs: frozenset = frozenset()
    segments: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    kmers_total: int = 0
    kmers_hit: int = 0

    @property
    def doc(self):
        return next(iter(self.docs)) if self.status is Status.ASSIGNED else None

    def evidence(self) -> str:
        if self.segments:
            parts = []
            for seg in self.segments:
                if seg.freqs:
                    docs = ",".join(f"{d}:{f}" for d, f in sorted(seg.freqs.items()))
                    parts.append(f"{seg.start}-{seg.end}={docs}")
            return ";".join(parts) or "-"
        if self.kmers_total:
            return f"kmers={self.kmers_total},hits={self.kmers_hit}"
        return "-"


def _decide(docsets):
    """Documents listed by every informative k-mer or segment, and the resulting status."""
    if not docsets:
        return Status.UNASSIGNED, frozenset()
    common = frozenset.intersection(*docsets)
    status = {0: Status.UNASSIGNED, 1: Status.ASSIGNED}.get(len(common), Status.AMBIGUOUS)
    return status, common


def kmer_assign(index, read: bytes, k: int, *, method=None, rc=False, read_id="") -> AssignmentResult:
    """Classic pseudoalignment: documents compatible with every hitting k-mer."""
    read = bytes(read)
    if k < 1 or len(read) < k:
        raise ReadShorterThanK(f"read of length {len(read)} shorter than k={k}")
    cache = {}
    flags = []

    def docs_of(kmer):
        got = cache.get(kmer)
        if got is None:
            if b"N" in kmer or b"n" in kmer:
                got = frozenset()
            else:
                got = frozenset(index.query(kmer, method))
                if rc:
                    got |= frozenset(index.query(revcomp(kmer), method))
            cache[kmer] = got
        return got

    total = len(read) - k + 1
    hits = []
    for i in range(total):
        kmer = read[i : i + k]
        if (b"N" in kmer or b"n" in kmer) and "N_KMER" not in flags:
            flags.append("N_KMER")
        ds = docs_of(kmer)
        if ds:
            hits.append(ds)
    # a document qualifies iff it contains every k-mer that occurs anywhere
    status, common = _decide(hits)
    return AssignmentResult(read_id, status, common, flags=flags, kmers_total=total, kmers_hit=len(hits))


def maximal_segments(index, read: bytes, k: int, method=None) -> list[Segment]:
    """Cut ``read`` into maximal backward-search matches, right to left.

    Every position of the read lands in exactly one segment. A symbol that
    occurs nowhere forms a segment of its own without frequencies.
    """
    ri = index.rset.global_index
    segments = []
    end = len(read)
    while end >= 1:
        sp, ep = 1, ri.n
        j = end
        while j >= 1:
            c = read[j - 1]
            nxt = None if c in b"Nn" else ri.step(sp, ep, c)
            if nxt is None:
                break
            sp, ep = nxt
            j -= 1
        if j == end:
            segments.append(Segment(end, end))
            end -= 1
            continue
        seg = Segment(j + 1, end)
        if len(seg) >= k:
            seg.freqs = index.query_interval(sp, ep, len(seg), method)
        segments.append(seg)
        end = j
    segments.reverse()
    return segments


def maxrun_assign(index, read: bytes, k: int, *, method=None, rc=False, read_id="") -> AssignmentResult:
    read = bytes(read)
    if k < 1 or len(read) < k:
        raise ReadShorterThanK(f"read of length {len(read)} shorter than k={k}")
    segments = maximal_segments(index, read, k, method)
    reported = [seg for seg in segments if seg.freqs]
    if rc:
        rc_segments = maximal_segments(index, revcomp(read), k, method)
        reported += [seg for seg in rc_segments if seg.freqs]
    docsets = [frozenset(seg.freqs) for seg in reported]
    status, docs = _decide(docsets)
    flags = []
    if docsets and status is Status.UNASSIGNED:
        flags.append("CONFLICT")
    if b"N" in read or b"n" in read:
        flags.append("N_BASE")
    return AssignmentResult(read_id, status, docs, segments=segments, flags=flags)


def assign(index, read, k, criterion="kmer", **kw) -> AssignmentResult:
    """Dispatch on ``criterion``; reads shorter than ``k`` come back UNASSIGNED and flagged."""
    fn = {"kmer": kmer_assign, "maxrun": maxrun_assign}[criterion]
    try:
        return fn(index, read, k, **kw)
    except ReadShorterThanK:
        return AssignmentResult(kw.get("read_id", ""), Status.UNASSIGNED, flags=["SHORTER_THAN_K"])


def read_fasta(path):
    """Yield ``(read_id, sequence)`` pairs from a FASTA file."""
    rid, chunks = None, []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(b">"):
                if rid is not None:
                    yield rid, b"".join(chunks)
                rid = line[1:].split()[0].decode() if len(line) > 1 else ""
                chunks = []
            else:
                chunks.append(line)
    if rid is not None:
        yield rid, b"".join(chunks)
