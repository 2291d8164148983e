"""Check every shipped table and the case corpus, printing one line per row or case."""

import argparse
import time

from qfano.sarkisov import run_corpus
from qfano.search import TABLE_IDS, verify_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tables", nargs="*", default=list(TABLE_IDS))
    ap.add_argument("--skip-cases", action="store_true")
    args = ap.parse_args()

    bad = 0
    for table in args.tables:
        t0 = time.perf_counter()
        rep = verify_tables(table)
        print(f"== {table} ({time.perf_counter() - t0:.1f}s)")
        for row in rep.rows:
            print(f"  {'ok  ' if row.ok else 'FAIL'} {row.row}" + (f"  {'; '.join(row.diffs)}" if row.diffs else ""))
            for note in row.notes:
                print(f"       {note}")
        bad += sum(not r.ok for r in rep.rows)
    if not args.skip_cases:
        print("== cases")
        for res in run_corpus():
            print(f"  {'ok  ' if res.passed else 'FAIL'} {res.spec.id}: {res.outcome}")
            bad += not res.passed
    print(f"{bad} mismatches")


if __name__ == "__main__":
    main()
