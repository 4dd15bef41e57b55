"""Index container: ``DLFQ`` magic, u32 version, then tagged sections.

Each section is a 4-byte tag, a u64 payload length and the payload. All
integers are little-endian; bit arrays are packed least-significant bit
first. Readers skip tags they do not know.

Integer arrays are stored as a dtype code, a u64 element count and the
raw little-endian elements, using the narrowest integer type that holds
the values.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .baselines import ChainIndex, WtDocArray
from .collection import Collection
from .errors import FormatError
from .gcda import LrIndex
from .grammar import BalancedSlp
from .ilcp import DoubleRleIlcp, IlcpIndex, Reversed, RleIlcp
from .index import BuildConfig, DocFreqIndex
from .pdl import PdlIndex
from .rindex import GrammarDiffSa, PlainSa, RIndex, RIndexSet
from .succinct import WaveletTree

MAGIC = b"DLFQ"
VERSION = 1

_DTYPES = [np.uint8, np.int8, np.uint16, np.int16, np.uint32, np.int32, np.uint64, np.int64]
_CODES = {np.dtype(d).str.lstrip("<|"): k for k, d in enumerate(_DTYPES)}


def _narrow(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.size == 0:
        return arr.astype(np.uint8)
    lo, hi = int(arr.min()), int(arr.max())
    for d in _DTYPES:
        info = np.iinfo(d)
        if info.min <= lo and hi <= info.max:
            return arr.astype(d)
    raise FormatError("integer out of 64-bit range")


class Writer:
    def __init__(self):
        self.buf = bytearray()

    def u8(self, v):
        self.buf += struct.pack("<B", v)

    def u32(self, v):
        self.buf += struct.pack("<I", v)

    def u64(self, v):
        self.buf += struct.pack("<Q", v)

    def blob(self, data: bytes):
        self.u64(len(data))
        self.buf += data

    def array(self, arr):
        arr = _narrow(arr)
        self.u8(_CODES[arr.dtype.str.lstrip("<|")])
        self.u64(arr.size)
        self.buf += arr.astype(arr.dtype.newbyteorder("<")).tobytes()

    def bits(self, arr):
        arr = np.asarray(arr, dtype=bool)
        self.u64(arr.size)
        self.buf += np.packbits(arr, bitorder="little").tobytes()

    def getvalue(self) -> bytes:
        return bytes(self.buf)


class Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def _take(self, k: int) -> memoryview:
        if self.pos + k > len(self.data):
            raise FormatError("truncated payload")
        out = self.data[self.pos : self.pos + k]
        self.pos += k
        return out

    def u8(self):
        return struct.unpack("<B", self._take(1))[0]

    def u32(self):
        return struct.unpack("<I", self._take(4))[0]

    def u64(self):
        return struct.unpack("<Q", self._take(8))[0]

    def blob(self) -> bytes:
        return bytes(self._take(self.u64()))

    def array(self) -> np.ndarray:
        code = self.u8()
        if code >= len(_DTYPES):
            raise FormatError(f"bad dtype code {code}")
        dt = np.dtype(_DTYPES[code]).newbyteorder("<")
        count = self.u64()
        raw = self._take(count * dt.itemsize)
        return np.frombuffer(raw, dtype=dt).astype(np.int64)

    def bits(self) -> np.ndarray:
        n = self.u64()
        raw = np.frombuffer(self._take((n + 7) // 8), dtype=np.uint8)
        return np.unpackbits(raw, count=n, bitorder="little").astype(bool)


# -- per-structure encoders ------------------------------------------------


def write_grammar(w: Writer, g: BalancedSlp):
    w.array(g.term_values)
    w.array(np.asarray(g.left, dtype=np.int64))
    w.array(np.asarray(g.right, dtype=np.int64))
    w.u64(g.root)


def read_grammar(r: Reader) -> BalancedSlp:
    terms = r.array()
    left = r.array().tolist()
    right = r.array().tolist()
    return BalancedSlp(terms, left, right, r.u64())


def encode_collection(coll: Collection) -> bytes:
    w = Writer()
    w.u32(coll.t)
    for d in coll.docs:
        w.blob(d)
    return w.getvalue()


def decode_collection(data: bytes) -> Collection:
    r = Reader(data)
    return Collection.from_docs([r.blob() for _ in range(r.u32())])


def encode_rindex(ix: RIndex) -> bytes:
    w = Writer()
    w.array(ix.run_sym)
    w.array(ix.run_len)
    w.array(ix.end_samples)
    w.array(ix.phi_keys)
    w.array(ix.phi_vals)
    prov = ix.provider
    if prov is None:
        w.u8(0)
    elif isinstance(prov, PlainSa):
        w.u8(1)
        w.array(prov.sa_arr)
        w.array(prov.isa_arr)
    else:
        w.u8(2)
        write_grammar(w, prov.sa_grammar)
        write_grammar(w, prov.isa_grammar)
    return w.getvalue()


def decode_rindex(data: bytes) -> RIndex:
    r = Reader(data)
    arrays = [r.array() for _ in range(5)]
    kind = r.u8()
    if kind == 0:
        prov = None
    elif kind == 1:
        prov = PlainSa(r.array(), r.array())
    elif kind == 2:
        prov = GrammarDiffSa(read_grammar(r), read_grammar(r))
    else:
        raise FormatError(f"unknown SA provider code {kind}")
    return RIndex(*arrays, provider=prov)


def encode_pdl(pdl: PdlIndex) -> bytes:
    w = Writer()
    w.u64(pdl.threshold)
    syms = sorted(pdl.lists)
    offsets = [0]
    gaps, freqs = [], []
    for s in syms:
        docs, fr = pdl.lists[s]
        prev = 0
        for d in docs:
            gaps.append(d - prev)
            prev = d
        freqs.extend(fr)
        offsets.append(len(gaps))
    w.array(np.asarray(syms, dtype=np.int64))
    w.array(np.asarray(offsets, dtype=np.int64))
    w.array(np.asarray(gaps, dtype=np.int64))
    w.array(np.asarray(freqs, dtype=np.int64))
    return w.getvalue()


def decode_pdl(data: bytes, grammar: BalancedSlp) -> PdlIndex:
    r = Reader(data)
    threshold = r.u64()
    syms = r.array().tolist()
    offsets = r.array().tolist()
    gaps = r.array()
    freqs = r.array().tolist()
    lists = {}
    for k, s in enumerate(syms):
        a, b = offsets[k], offsets[k + 1]
        lists[s] = (tuple(np.cumsum(gaps[a:b]).tolist()), tuple(freqs[a:b]))
    return PdlIndex(grammar, lists, threshold)


def encode_lr(lr: LrIndex) -> bytes:
    w = Writer()
    width = (lr.t + 7) // 8
    w.u32(lr.t)
    w.u64(len(lr.lr))
    w.buf += b"".join(l.to_bytes(width, "little") for l, _ in lr.lr)
    w.buf += b"".join(r.to_bytes(width, "little") for _, r in lr.lr)
    return w.getvalue()


def decode_lr(data: bytes, grammar: BalancedSlp) -> LrIndex:
    r = Reader(data)
    t = r.u32()
    count = r.u64()
    width = (t + 7) // 8
    ls = r._take(count * width)
    rs = r._take(count * width)
    pairs = [
        (int.from_bytes(ls[k * width : (k + 1) * width], "little"),
         int.from_bytes(rs[k * width : (k + 1) * width], "little"))
        for k in range(count)
    ]
    return LrIndex(grammar, t, pairs)


def _write_rle(w: Writer, rle: RleIlcp, star: bool):
    w.u64(rle.n)
    w.array(rle.values)
    w.array(rle.bounds.positions)
    if star:
        w.bits(rle.same_doc)


def _read_rle(r: Reader, star: bool) -> RleIlcp:
    n = r.u64()
    values = r.array()
    starts = r.array()
    if star:
        return DoubleRleIlcp(values, starts, n, r.bits())
    return RleIlcp(values, starts, n)


def encode_ilcp(ix: IlcpIndex) -> bytes:
    w = Writer()
    _write_rle(w, ix.left, ix.star)
    _write_rle(w, ix.right_rev, ix.star)
    return w.getvalue()


def decode_ilcp(data: bytes, star: bool) -> IlcpIndex:
    r = Reader(data)
    left = _read_rle(r, star)
    right = _read_rle(r, star)
    return IlcpIndex(left, right, star)


def encode_chains(ch: ChainIndex) -> bytes:
    w = Writer()
    w.array(ch.c)
    w.array(ch.cnext)
    return w.getvalue()


def decode_chains(data: bytes) -> ChainIndex:
    r = Reader(data)
    return ChainIndex(r.array(), r.array())


def encode_wt(wt: WtDocArray) -> bytes:
    w = Writer()
    w.u64(wt.wt.n)
    w.u32(wt.wt.sigma)
    nodes = wt.wt.node_bits()
    w.u32(len(nodes))
    for bits in nodes:
        w.bits(bits)
    return w.getvalue()


def decode_wt(data: bytes) -> WtDocArray:
    r = Reader(data)
    n, sigma = r.u64(), r.u32()
    nodes = [r.bits() for _ in range(r.u32())]
    return WtDocArray(WaveletTree.from_node_bits(n, sigma, nodes))


# -- container ---------------------------------------------------------------


def sections(index: DocFreqIndex) -> list[tuple[bytes, bytes]]:
    cfg = index.config
    meta = {
        "methods": list(index.methods),
        "sa_provider": cfg.sa_provider,
        "pdl_threshold": cfg.pdl_threshold,
        "seed": cfg.seed,
    }
    out = [(b"META", json.dumps(meta, sort_keys=True).encode())]
    out.append((b"COLL", encode_collection(index.collection)))
    out.append((b"RIDX", encode_rindex(index.rset.global_index)))
    for ix in index.rset.doc_indexes or ():
        out.append((b"RIDX", encode_rindex(ix)))
    if index.grammar is not None:
        out.append((b"GRMR", _grammar_payload(index.grammar)))
    if index.pdl is not None:
        out.append((b"PDLX", encode_pdl(index.pdl)))
    if index.lr is not None:
        out.append((b"GLRX", encode_lr(index.lr)))
    if index.ilcp is not None:
        out.append((b"ILCP", encode_ilcp(index.ilcp)))
    if index.ilcs is not None:
        out.append((b"ILCS", encode_ilcp(index.ilcs)))
    if index.chains is not None:
        out.append((b"CHNS", encode_chains(index.chains)))
    if index.wt is not None:
        out.append((b"WTDA", encode_wt(index.wt)))
    return out


def _grammar_payload(g: BalancedSlp) -> bytes:
    w = Writer()
    write_grammar(w, g)
    return w.getvalue()


def dumps(index: DocFreqIndex) -> bytes:
    w = Writer()
    w.buf += MAGIC
    w.u32(VERSION)
    for tag, payload in sections(index):
        w.buf += tag
        w.blob(payload)
    return w.getvalue()


def section_sizes(index: DocFreqIndex) -> dict[str, int]:
    """Serialized bytes per section tag (header included), summed over repeats."""
    sizes = {}
    for tag, payload in sections(index):
        key = tag.decode()
        sizes[key] = sizes.get(key, 0) + 12 + len(payload)
    return sizes


def iter_sections(data: bytes):
    if data[:4] != MAGIC:
        raise FormatError("not a docfreq index (bad magic)")
    r = Reader(data)
    r.pos = 4
    version = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    while r.pos < len(data):
        tag = bytes(r._take(4))
        yield tag, r.blob()


def loads(data: bytes) -> DocFreqIndex:
    found = {}
    ridx = []
    for tag, payload in iter_sections(data):
        if tag == b"RIDX":
            ridx.append(payload)
        elif tag in (b"META", b"COLL", b"GRMR", b"PDLX", b"GLRX", b"ILCP", b"ILCS", b"CHNS", b"WTDA"):
            found[tag] = payload
    if b"META" not in found or b"COLL" not in found or not ridx:
        raise FormatError("container lacks META, COLL or RIDX")
    meta = json.loads(found[b"META"])
    config = BuildConfig(tuple(meta["methods"]), meta["sa_provider"], meta["pdl_threshold"], meta["seed"])
    coll = decode_collection(found[b"COLL"])
    rindexes = [decode_rindex(p) for p in ridx]
    rset = RIndexSet(coll, rindexes[0], rindexes[1:] or None)
    parts = {}
    if b"GRMR" in found:
        parts["grammar"] = read_grammar(Reader(found[b"GRMR"]))
    if b"PDLX" in found:
        parts["pdl"] = decode_pdl(found[b"PDLX"], parts["grammar"])
    if b"GLRX" in found:
        parts["lr"] = decode_lr(found[b"GLRX"], parts["grammar"])
    if b"ILCP" in found:
        parts["ilcp"] = decode_ilcp(found[b"ILCP"], star=False)
    if b"ILCS" in found:
        parts["ilcs"] = decode_ilcp(found[b"ILCS"], star=True)
    if b"CHNS" in found:
        parts["chains"] = decode_chains(found[b"CHNS"])
    if b"WTDA" in found:
        parts["wt"] = decode_wt(found[b"WTDA"])
    return DocFreqIndex(coll, rset, config.methods, config=config, **parts)


def save(index: DocFreqIndex, path) -> int:
    data = dumps(index)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load(path) -> DocFreqIndex:
    with open(path, "rb") as fh:
        return loads(fh.read())
