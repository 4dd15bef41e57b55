"""Read assignment accuracy on simulated species/strain collections.

Each species is one document made of mutated strains of a random base
genome. Reads are sampled from a strain with substitution noise; random
reads measure false assignments.

    python scripts/pseudoalign_strains.py --species 3 --strains 10 --noise 0.001 -k 31
"""

import argparse
from collections import Counter

import numpy as np

from docfreq.collection import Collection
from docfreq.index import BuildConfig, DocFreqIndex
from docfreq.pseudoalign import Status, assign
from docfreq.synthgen import DNA, mutate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--species", type=int, default=3)
    ap.add_argument("--strains", type=int, default=10)
    ap.add_argument("--genome", type=int, default=2000)
    ap.add_argument("--divergence", type=float, default=0.01, help="strain vs species base")
    ap.add_argument("--noise", type=float, default=0.001, help="per-base read error")
    ap.add_argument("--reads", type=int, default=1000)
    ap.add_argument("--read-len", type=int, default=100)
    ap.add_argument("-k", type=int, default=31)
    ap.add_argument("--method", default="pdl")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    lut = np.frombuffer(DNA, dtype=np.uint8)
    strains, docs = [], []
    for _ in range(args.species):
        base = rng.integers(0, 4, size=args.genome)
        seqs = [mutate(base, args.divergence, 4, rng) for _ in range(args.strains)]
        strains.append(seqs)
        docs.append(lut[np.concatenate(seqs)].tobytes())
    index = DocFreqIndex.build(Collection.from_docs(docs), BuildConfig((args.method,)))

    sampled = []
    for _ in range(args.reads):
        sp = int(rng.integers(args.species))
        seq = strains[sp][int(rng.integers(args.strains))]
        s = int(rng.integers(0, args.genome - args.read_len + 1))
        read = mutate(seq[s : s + args.read_len], args.noise, 4, rng)
        sampled.append((sp + 1, lut[read].tobytes()))
    randoms = [lut[rng.integers(0, 4, size=args.read_len)].tobytes() for _ in range(args.reads)]

    print("criterion\tcorrect\twrong\tambiguous\tunassigned\trandom_unassigned")
    for crit in ("kmer", "maxrun"):
        tally = Counter()
        for sp, read in sampled:
            res = assign(index, read, args.k, crit, method=args.method)
            if res.status is Status.ASSIGNED:
                tally["correct" if res.doc == sp else "wrong"] += 1
            else:
                tally[res.status.value.lower()] += 1
        rnd = sum(assign(index, r, args.k, crit).status is Status.UNASSIGNED for r in randoms)
        n = args.reads
        print(f"{crit}\t{tally['correct'] / n:.3f}\t{tally['wrong'] / n:.3f}\t"
              f"{tally['ambiguous'] / n:.3f}\t{tally['unassigned'] / n:.3f}\t{rnd / n:.3f}")


if __name__ == "__main__":
    main()
