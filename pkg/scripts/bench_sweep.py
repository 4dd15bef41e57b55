"""Time/space sweep of every method over mutation rates (the CSV of ``docfreq bench``).

    python scripts/bench_sweep.py --rates 0.001,0.01,0.1 --versions 200 --out sweep.csv
"""

import argparse
import csv
import logging
import sys

from docfreq import bench


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rates", default="0.001,0.003,0.01,0.03,0.1")
    ap.add_argument("--d", type=int, default=10)
    ap.add_argument("--versions", type=int, default=200)
    ap.add_argument("--base-len", type=int, default=1000)
    ap.add_argument("--alphabet", choices=("letters", "dna"), default="letters")
    ap.add_argument("--patterns", type=int, default=100, help="patterns per length")
    ap.add_argument("--lengths", default="4,8,16")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    lengths = tuple(int(x) for x in args.lengths.split(","))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=("R",) + bench.CSV_HEADER)
    writer.writeheader()
    for R in (float(x) for x in args.rates.split(",")):
        spec = bench.GenSpec(args.d, args.versions, R, args.base_len, args.seed, args.alphabet)
        for row in bench.run(spec, reps=args.reps, n_patterns=args.patterns, lengths=lengths):
            writer.writerow({"R": R, **row})
        fh.flush()
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
