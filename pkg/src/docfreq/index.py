"""Build and query document-listing-with-frequencies indexes."""

from __future__ import annotations

from dataclasses import dataclass

from . import suffix
from .baselines import ChainIndex, WtDocArray, scan_freq
from .collection import Collection, check_pattern
from .gcda import LrIndex
from .grammar import BalancedSlp
from .ilcp import IlcpIndex
from .pdl import PdlIndex
from .rindex import RIndexSet

METHODS = ("pdl", "gcda", "ilcp", "ilcp-star", "sada", "wt", "scan")
PROVIDERS = ("plain", "grammar-diff")
_PER_DOC = {"gcda", "ilcp", "ilcp-star", "sada"}
_GRAMMAR = {"pdl", "gcda"}
_CHAINS = {"sada", "wt"}


@dataclass
class BuildConfig:
    methods: tuple = METHODS
    sa_provider: str = "grammar-diff"
    pdl_threshold: int = 0
    seed: int = 0

    def __post_init__(self):
        self.methods = tuple(self.methods)
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if self.sa_provider not in PROVIDERS:
            raise ValueError(f"unknown SA provider {self.sa_provider!r}")


class DocFreqIndex:
    def __init__(self, collection: Collection, rset: RIndexSet, methods, *, grammar=None, pdl=None,
                 lr=None, ilcp=None, ilcs=None, chains=None, wt=None, config=None):
        self.collection = collection
        self.rset = rset
        self.methods = tuple(methods)
        self.grammar = grammar
        self.pdl = pdl
        self.lr = lr
        self.ilcp = ilcp
        self.ilcs = ilcs
        self.chains = chains
        self.wt = wt
        self.config = config or BuildConfig(methods)

    @classmethod
    def build(cls, collection: Collection, config: BuildConfig | None = None) -> "DocFreqIndex":
        config = config or BuildConfig()
        methods = set(config.methods)
        st = suffix.build(collection)
        need_docs = bool(methods & (_PER_DOC | {"ilcp", "ilcp-star"}))
        doc_sas = suffix.doc_suffix_arrays(collection) if need_docs else None
        rset = RIndexSet.build(collection, st.sa[1:] - 1, doc_sas, config.sa_provider,
                               per_doc=bool(methods & _PER_DOC), seed=config.seed)
        parts = {}
        if methods & _GRAMMAR:
            parts["grammar"] = BalancedSlp.build(st.da[1:], config.seed)
        if "pdl" in methods:
            parts["pdl"] = PdlIndex.build(parts["grammar"], config.pdl_threshold)
        if "gcda" in methods:
            parts["lr"] = LrIndex.build(parts["grammar"], collection.t)
        if methods & {"ilcp", "ilcp-star"}:
            arrays = suffix.build_ilcp(collection, st, doc_sas)
            if "ilcp" in methods:
                parts["ilcp"] = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=False)
            if "ilcp-star" in methods:
                parts["ilcs"] = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=True)
        if methods & _CHAINS:
            parts["chains"] = ChainIndex(st.c, st.cnext)
        if "wt" in methods:
            parts["wt"] = WtDocArray.build(st.da, collection.t)
        ordered = tuple(m for m in METHODS if m in methods)
        return cls(collection, rset, ordered, config=config, **parts)

    @property
    def default_method(self) -> str:
        return self.methods[0]

    def query(self, pattern, method: str | None = None) -> dict[int, int]:
        """Documents containing ``pattern`` mapped to their occurrence counts."""
        pattern = check_pattern(pattern)
        method = method or self.default_method
        self._require(method)
        if method == "scan":
            return scan_freq(self.rset, pattern)
        hit = self.rset.pattern_interval(pattern)
        if hit is None:
            return {}
        return self.query_interval(hit[0], hit[1], len(pattern), method)

    def query_interval(self, sp: int, ep: int, m: int, method: str | None = None) -> dict[int, int]:
        """Frequencies for the SA interval ``sp..ep`` of some pattern of length ``m``."""
        method = method or self.default_method
        self._require(method)
        rset = self.rset
        if method == "pdl":
            return self.pdl.query_interval(sp, ep)
        if method == "scan":
            out = {}
            coll = self.collection
            for p in rset.global_index.locate(sp, ep):
                d = coll.doc_of(p)
                out[d] = out.get(d, 0) + 1
            return out
        if method == "wt":
            wt = self.wt
            docs = self.chains.muthu_list(sp, ep, wt.da)
            return {d: wt.freq(d, sp, ep) for d in sorted(docs)}
        ext = self.extremes(sp, ep, m, method)
        return {d: rset.freq_from_extremes(d, a, b) for d, (a, b) in sorted(ext.items())}

    def extremes(self, sp, ep, m, method) -> dict[int, tuple[int, int]]:
        """Leftmost and rightmost SA rows of every document in ``sp..ep``."""
        da = self.rset.da
        if method == "gcda":
            return self.lr.extremes(sp, ep)
        if method == "ilcp":
            return self.ilcp.extremes(sp, ep, m, da)
        if method == "ilcp-star":
            return self.ilcs.extremes(sp, ep, m, da)
        if method == "sada":
            lefts = self.chains.leftmost(sp, ep, da)
            rights = self.chains.rightmost(sp, ep, da)
            return {d: (lefts[d], rights[d]) for d in lefts}
        raise ValueError(f"method {method!r} does not compute extremes")

    def _require(self, method):
        if method not in self.methods:
            raise ValueError(f"index was not built with method {method!r} (has {self.methods})")

    def stats(self) -> dict:
        coll = self.collection
        out = {
            "n": coll.n,
            "t": coll.t,
            "sigma": coll.sigma,
            "r": self.rset.global_index.r,
            "R": self.rset.big_r,
        }
        if self.grammar is not None:
            out["nu"] = self.grammar.nu
            out["grammar_height"] = self.grammar.height
        if self.ilcp is not None:
            out["rho"] = self.ilcp.left.rho
        if self.ilcs is not None:
            out["rho_star"] = self.ilcs.left.rho
        return out
