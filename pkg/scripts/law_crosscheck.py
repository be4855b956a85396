"""Closed-form coefficient laws against conjugation, with a constant scan."""

import argparse
import json

from homlie.laws import run_harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nu-samples", type=int, default=200)
    ap.add_argument("--law-samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--C10", default="1")
    ap.add_argument("--C11", default="0")
    ap.add_argument("--C20", default="0")
    ap.add_argument("--json")
    args = ap.parse_args()
    c = {"C10": args.C10, "C11": args.C11, "C20": args.C20}
    rep = run_harness(nu_samples=args.nu_samples, law_samples=args.law_samples, seed=args.seed, c_params=c)
    print(f"nu law: {rep.nu_matches}/{rep.nu_total} instances match conjugation")
    print(f"sigma/tau at {c}: {rep.checked - len(rep.findings)}/{rep.checked} match")
    print("constant scan over", "{-2..2}:")
    for fam, res in rep.scan.items():
        print(f"  {fam:<18} constants {','.join(res['constants']):<12} matching {res['matching'] or 'none'}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.as_dict(), fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
