"""Literal coboundary against the circle form on every psi_{k,r}, n <= 6."""

import argparse
import random

from homlie.exactlin import QQ, Matrix
from homlie.filiform import delta_gate


def random_lower(n, rng):
    return Matrix.of(QQ, [[rng.randint(-3, 3) if j < i else (rng.randint(1, 3) if i == j else 0)
                           for j in range(n + 1)] for i in range(n + 1)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--trials", type=int, default=3, help="random triangular twists per n")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print("alpha = id")
    for n in range(2, args.max_n + 1):
        for r in delta_gate(n):
            print(f"  n={n} psi{r.key}: literal0={r.literal_zero} circle0={r.circle_zero} agree={r.agree}"
                  f" unsigned0={r.unsigned_zero} alt_sign0={r.alt_sign_circle_zero}")
    print("random lower triangular alpha")
    for n in range(4, args.max_n + 1):
        for _ in range(args.trials):
            rows = delta_gate(n, random_lower(n, rng))
            cells = " ".join(f"psi{r.key}:{'Z' if r.circle_zero else '-'}{'=' if r.agree else '!'}" for r in rows)
            print(f"  n={n} {cells}")


if __name__ == "__main__":
    main()
