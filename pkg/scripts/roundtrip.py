"""Disguise representatives with random adapted changes and classify them back."""

import argparse
import random
import time

from homlie.basis_change import ChangeError, General, apply_change
from homlie.classify import ClassificationError, classify
from homlie.registry import identity_params, instantiate, registry


def random_general(dim, rng):
    a = [rng.choice([1, 2, -1, 3])] + [rng.randint(-3, 3) for _ in range(dim - 1)]
    b = [0, rng.choice([1, 2, -1, -2])] + [rng.randint(-3, 3) for _ in range(dim - 2)]
    return General(tuple(a), tuple(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", default="5,6")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for d in map(int, args.dims.split(",")):
        for rep in registry(d):
            params = identity_params(rep.key)
            if params is None:
                continue
            g = instantiate(rep, params)
            rng = random.Random(f"{args.seed}:{rep.key}")
            ok, fails, t0 = 0, [], time.perf_counter()
            for _ in range(args.trials):
                while True:
                    try:
                        h = apply_change(random_general(g.dim, rng), g)
                        break
                    except ChangeError:
                        continue
                try:
                    res = classify(h, check_twist=False)
                    ok += res.name == rep.key
                except ClassificationError as e:
                    fails.append(str(e))
            print(f"{rep.key}: {ok}/{args.trials} ({time.perf_counter() - t0:.1f}s)"
                  + (f"  e.g. {fails[0]}" if fails else ""))


if __name__ == "__main__":
    main()
