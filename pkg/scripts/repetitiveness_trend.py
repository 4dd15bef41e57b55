"""BWT runs, ILCP runs and ILCP/ILCP-star sizes as the mutation rate grows.

    python scripts/repetitiveness_trend.py --rates 0.001,0.003,0.01,0.03 > trend.csv
"""

import argparse
import csv
import sys

from docfreq import container, suffix
from docfreq.ilcp import IlcpIndex
from docfreq.rindex import RIndex
from docfreq.synthgen import gen_concat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rates", default="0.001,0.003,0.01,0.03")
    ap.add_argument("--d", type=int, default=10)
    ap.add_argument("--versions", type=int, default=1000)
    ap.add_argument("--base-len", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["R", "n", "r", "rho", "rho_star", "ilcp_bytes", "ilcp_star_bytes"])
    for R in (float(x) for x in args.rates.split(",")):
        coll = gen_concat(args.d, args.versions, R, args.base_len, args.seed)
        st = suffix.build(coll)
        r = RIndex.build(coll.text[1:], st.sa[1:] - 1, provider=None).r
        arrays = suffix.build_ilcp(coll, st)
        plain = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=False)
        starred = IlcpIndex.build(arrays.ilcp, arrays.rilcp, st.da, star=True)
        out.writerow([R, coll.n, r, plain.left.rho, starred.left.rho,
                      len(container.encode_ilcp(plain)), len(container.encode_ilcp(starred))])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
