"""Sample every registry entry and print the PASS/FAIL table plus findings."""

import argparse
import json
import time

from homlie.registry import audit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", default="3,4,5,6,7")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rep = audit([int(d) for d in args.dims.split(",")], args.samples, args.seed)
    elapsed = time.perf_counter() - t0
    print(f"{'entry':<14}{'check':<16}{'passed':>8}{'total':>7}  status")
    for row in rep.rows:
        print(f"{row.key:<14}{row.check:<16}{row.passed:>8}{row.total:>7}  {row.status}")
    print()
    for e in rep.identity:
        flag = "admits alpha=id" if e["admits_identity"] else "no identity instance"
        print(f"{e['entry']:<14}{flag}")
    print(f"\n{len(rep.findings)} findings, {elapsed:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.as_dict(), fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
