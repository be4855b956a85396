"""Adapted-change orbits of mu_0 + a psi_{1,4} over F_p, and mu_5^1 vs mu_5^2."""

import argparse
import time

from homlie.exactlin import GF
from homlie.filiform import PsiCoefficients, assemble
from homlie.isomorphism import iso_bruteforce, orbits
from homlie.registry import identity_params, instantiate, lookup


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    args = ap.parse_args()
    F = GF(args.p)
    t0 = time.perf_counter()
    family = [assemble(5, PsiCoefficients(5, {(1, 4): F(a)}), None, F) for a in range(args.p)]
    cls = orbits(family)
    print(f"F_{args.p}: orbits of a in {{0..{args.p - 1}}}: {cls}  ({len(cls)} classes)")
    reps = []
    for key in ("mu_5^1", "mu_5^2"):
        rep = lookup(key)
        reps.append(instantiate(rep, {k: F(v) for k, v in identity_params(key).items()}, F))
    res = iso_bruteforce(reps[0], reps[1])
    print(f"mu_5^1 ~ mu_5^2: {res.isomorphic} after {res.candidates} candidates")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
