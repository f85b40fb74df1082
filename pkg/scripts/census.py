"""Count every stuquandle structure of order n (n <= 3 is tractable)."""

import argparse
import time

from stuquandle.algebra import count_all


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        total = count_all(n)
        print(f"n={n}  structures={total}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
