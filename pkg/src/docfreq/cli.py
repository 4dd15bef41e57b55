"""``docfreq`` command line: build, query, pseudoalign, bench, gen.

Exit statuses: 0 success, 1 input/ingest errors, 2 I/O errors, 64 usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import container
from .bench import CSV_HEADER, GenSpec, run as run_bench
from .collection import check_pattern, ingest, read_manifest
from .errors import DocFreqError, FormatError, IngestError
from .index import METHODS, PROVIDERS, BuildConfig, DocFreqIndex
from .pseudoalign import assign, read_fasta
from .synthgen import DNA, LETTERS, gen_concat, write_collection

log = logging.getLogger("docfreq")

EXIT_INPUT, EXIT_IO, EXIT_USAGE = 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _methods(text: str) -> tuple:
    if text == "all":
        return METHODS
    out = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in out if m not in METHODS]
    if bad or not out:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {', '.join(METHODS)} or all")
    return out


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="docfreq", description="Document listing with frequencies over repetitive collections.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="index a collection")
    b.add_argument("--input", required=True, help="manifest: one document path per line")
    b.add_argument("--format", choices=("plain", "fasta"), default="plain")
    b.add_argument("--method", type=_methods, default=("pdl",), help="method, comma list or 'all'")
    b.add_argument("--sa-provider", choices=PROVIDERS, default="grammar-diff")
    b.add_argument("--pdl-threshold", type=int, default=0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--output", required=True)

    q = sub.add_parser("query", help="document frequencies for a pattern file")
    q.add_argument("--index", required=True)
    q.add_argument("--patterns", required=True, help="one pattern per line")
    q.add_argument("--method", choices=METHODS)

    a = sub.add_parser("pseudoalign", help="assign FASTA reads to documents")
    a.add_argument("--index", required=True)
    a.add_argument("--reads", required=True)
    a.add_argument("-k", type=int, required=True)
    a.add_argument("--criterion", choices=("kmer", "maxrun"), default="kmer")
    a.add_argument("--rc", action="store_true", help="also query reverse complements")
    a.add_argument("--method", choices=METHODS)

    bench = sub.add_parser("bench", help="time/space benchmark on generated collections")
    bench.add_argument("--gen", action="append", required=True,
                       help="generator parameters, e.g. d=10,R=0.01,base_len=1000,versions=100,seed=0")
    bench.add_argument("--methods", type=_methods, default=METHODS)
    bench.add_argument("--reps", type=int, default=1)
    bench.add_argument("--patterns", type=int, default=100, help="patterns per length")
    bench.add_argument("--lengths", default="8,12,16")
    bench.add_argument("--sa-provider", choices=PROVIDERS, default="grammar-diff")
    bench.add_argument("--output", help="CSV file (default: stdout)")

    g = sub.add_parser("gen", help="write a synthetic Concat collection")
    g.add_argument("--d", type=int, default=10)
    g.add_argument("--versions", type=int, default=100)
    g.add_argument("--R", type=float, default=0.01)
    g.add_argument("--base-len", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--alphabet", choices=("letters", "dna"), default="letters")
    g.add_argument("--out", required=True, help="output directory")
    return p


def cmd_build(args) -> int:
    coll = ingest(read_manifest(args.input), args.format)
    config = BuildConfig(args.method, args.sa_provider, args.pdl_threshold, args.seed)
    index = DocFreqIndex.build(coll, config)
    size = container.save(index, args.output)
    stats = index.stats()
    stats["methods"] = list(index.methods)
    stats["bytes"] = size
    stats["bits_per_symbol"] = round(size * 8 / coll.n, 4)
    print(json.dumps(stats, sort_keys=True))
    return 0


def _read_patterns(path):
    with open(path, "rb") as fh:
        data = fh.read()
    for lineno, line in enumerate(data.split(b"\n"), 1):
        if line.endswith(b"\r"):
            line = line[:-1]
        if lineno > 1 and not line and lineno == data.count(b"\n") + 1:
            break  # trailing newline
        yield lineno, line


def cmd_query(args) -> int:
    index = container.load(args.index)
    out = sys.stdout
    for lineno, raw in _read_patterns(args.patterns):
        try:
            pattern = check_pattern(raw)
        except DocFreqError as exc:
            log.warning("line %d skipped: %s", lineno, exc)
            continue
        text = pattern.decode("latin-1")
        for doc, freq in sorted(index.query(pattern, args.method).items()):
            out.write(f"{text}\t{doc}\t{freq}\n")
    return 0


def cmd_pseudoalign(args) -> int:
    index = container.load(args.index)
    out = sys.stdout
    for rid, seq in read_fasta(args.reads):
        res = assign(index, seq, args.k, args.criterion, method=args.method, rc=args.rc, read_id=rid)
        doc = ",".join(map(str, sorted(res.docs))) if res.docs else "-"
        flags = ",".join(res.flags) or "-"
        out.write(f"{rid}\t{res.status.value}\t{doc}\t{res.evidence()}\t{flags}\n")
    return 0


def cmd_bench(args) -> int:
    lengths = tuple(int(x) for x in args.lengths.split(",") if x)
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        for spec in args.gen:
            try:
                gen = GenSpec.parse(spec)
            except (ValueError, TypeError) as exc:
                raise UsageError(str(exc)) from exc
            for row in run_bench(gen, args.methods, args.reps, args.patterns, lengths, args.sa_provider):
                writer.writerow(row)
            fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_gen(args) -> int:
    alpha = {"letters": LETTERS, "dna": DNA}[args.alphabet]
    coll = gen_concat(args.d, args.versions, args.R, args.base_len, args.seed, alpha)
    manifest = write_collection(coll, args.out)
    print(manifest)
    return 0


COMMANDS = {
    "build": cmd_build,
    "query": cmd_query,
    "pseudoalign": cmd_pseudoalign,
    "bench": cmd_bench,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"docfreq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestError, FormatError) as exc:
        print(f"docfreq: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, IngestError) else EXIT_IO
    except OSError as exc:
        print(f"docfreq: {exc}", file=sys.stderr)
        return EXIT_IO
    except DocFreqError as exc:
        print(f"docfreq: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
