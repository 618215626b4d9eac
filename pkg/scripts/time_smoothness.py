"""Compare the case-split smoothness test with the direct Jacobian test on random forms."""
import argparse
import random
import time

from hodgeloci.cycles import is_smooth, random_form
from hodgeloci.polyring import indexed_ring


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nvars", type=int, default=4)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    r = indexed_ring("x", args.nvars)
    split_t = direct_t = 0.0
    disagree = 0
    for _ in range(args.samples):
        f = random_form(r, args.degree, rng, density=args.density, coeff=3)
        if f.is_zero():
            continue
        t0 = time.perf_counter()
        a = is_smooth(f, split=True).smooth
        t1 = time.perf_counter()
        b = is_smooth(f, split=False).smooth
        t2 = time.perf_counter()
        split_t += t1 - t0
        direct_t += t2 - t1
        disagree += a != b
    print(f"split {split_t:.2f}s  direct {direct_t:.2f}s  disagreements {disagree}")


if __name__ == "__main__":
    main()
