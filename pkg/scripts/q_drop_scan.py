"""Scan indices for baskets where K + qA is a nontrivial torsion class."""

import argparse
import time

from qfano.search import search_q_drop

DEFAULT_QS = (4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("q", type=int, nargs="*", default=list(DEFAULT_QS))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--long-running", action="store_true", help="needed for q = 3")
    args = ap.parse_args()
    for q in args.q:
        t0 = time.perf_counter()
        res = search_q_drop([q], workers=args.workers, long_running=args.long_running)
        found = ", ".join(f"n={r.n} ({len(r.witnesses)} witnesses)" for r in res) or "none"
        print(f"q={q}: {found}  [{time.perf_counter() - t0:.1f}s]")


if __name__ == "__main__":
    main()
